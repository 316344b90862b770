/**
 * @file gauge.hpp
 * @brief Gauge group elements, the group action, and K-orbit comparison.
 *
 * Elements [A; e] of the symmetry group act on configurations by
 *   (p, q) . [A; e] = (e_i^{-1} p_i A, A^{-1} q_i e_i).
 * The compact flavor requires A in SU(2) and |e_i| = 1; the complexified
 * flavor requires det A = 1 and e_i != 0.  [A; e] and [-A; -e] act
 * identically (the Z/2 quotient); nothing below distinguishes them.
 *
 * canonical_form picks a unique representative of each compact-group orbit of
 * a stable configuration: q_1 is rotated onto the positive first axis, each
 * e_i makes the first nonzero component of q_i real positive, and the
 * leftover diagonal circle is pinned by the first available "phase witness"
 * (a column with both components nonzero, else a row component).  On the zero
 * level of the complex moment map a witness always exists for stable points,
 * so equality of canonical forms decides K-orbit equality there.
 */
#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "nullhyp/errors.hpp"
#include "nullhyp/hyperpolygon.hpp"
#include "nullhyp/mat2.hpp"
#include "nullhyp/rng.hpp"

namespace nullhyp {

enum class GaugeFlavor { kCompact, kComplex };

struct GaugeElement {
  Mat2 a = Mat2::identity();
  std::vector<cx> e;
  GaugeFlavor flavor = GaugeFlavor::kCompact;

  static GaugeElement identity(int n, GaugeFlavor flavor = GaugeFlavor::kCompact) {
    GaugeElement g;
    g.e.assign(n, cx{1.0, 0.0});
    g.flavor = flavor;
    return g;
  }
};

/// Validate the defining constraints of a gauge element.
inline void validate_gauge(const GaugeElement& g, double tol = 1e-6) {
  if (g.flavor == GaugeFlavor::kCompact) {
    if (!is_special_unitary(g.a, tol)) {
      fail(ErrorCode::kPrecondition, "gauge: compact element must have A in SU(2)");
    }
    for (const cx& e : g.e) {
      if (std::abs(std::abs(e) - 1.0) > tol) {
        fail(ErrorCode::kPrecondition, "gauge: compact element needs unit scalars");
      }
    }
  } else {
    if (std::abs(det(g.a) - cx{1.0, 0.0}) > tol) {
      fail(ErrorCode::kPrecondition, "gauge: complex element must have det A = 1");
    }
    for (const cx& e : g.e) {
      if (std::abs(e) <= tol) {
        fail(ErrorCode::kPrecondition, "gauge: complex element needs nonzero scalars");
      }
    }
  }
}

/// Right action (p, q) . [A; e].
inline HyperpolygonPoint act(const HyperpolygonPoint& x, const GaugeElement& g) {
  validate_sizes(x);
  if (static_cast<int>(g.e.size()) != x.n()) {
    fail(ErrorCode::kPrecondition, "act: gauge scalar count does not match point size");
  }
  const Mat2 ainv = inverse(g.a);
  HyperpolygonPoint out;
  out.p.resize(x.n());
  out.q.resize(x.n());
  for (int i = 0; i < x.n(); ++i) {
    out.p[i] = (cx{1.0, 0.0} / g.e[i]) * (x.p[i] * g.a);
    out.q[i] = (ainv * x.q[i]) * g.e[i];
  }
  return out;
}

/// Composition in action order: act(x, compose(g, h)) = act(act(x, g), h).
inline GaugeElement compose(const GaugeElement& g, const GaugeElement& h) {
  if (g.e.size() != h.e.size()) {
    fail(ErrorCode::kPrecondition, "compose: mismatched gauge sizes");
  }
  GaugeElement out;
  out.a = g.a * h.a;
  out.e.resize(g.e.size());
  for (std::size_t i = 0; i < g.e.size(); ++i) out.e[i] = g.e[i] * h.e[i];
  out.flavor = (g.flavor == GaugeFlavor::kComplex || h.flavor == GaugeFlavor::kComplex)
                   ? GaugeFlavor::kComplex
                   : GaugeFlavor::kCompact;
  return out;
}

inline GaugeElement inverse_gauge(const GaugeElement& g) {
  GaugeElement out;
  out.a = inverse(g.a);
  out.e.resize(g.e.size());
  for (std::size_t i = 0; i < g.e.size(); ++i) out.e[i] = cx{1.0, 0.0} / g.e[i];
  out.flavor = g.flavor;
  return out;
}

/// Haar-ish random SU(2) element (normalized complex Gaussian quaternion).
inline Mat2 random_su2(Rng& rng) {
  for (;;) {
    const cx z1 = rng.complex_normal();
    const cx z2 = rng.complex_normal();
    const double n = std::sqrt(std::norm(z1) + std::norm(z2));
    if (n < 1e-6) continue;
    return {z1 / n, -std::conj(z2 / n), z2 / n, std::conj(z1 / n)};
  }
}

inline GaugeElement random_compact_gauge(int n, Rng& rng) {
  GaugeElement g;
  g.a = random_su2(rng);
  g.e.resize(n);
  for (int i = 0; i < n; ++i) g.e[i] = rng.unit_phase();
  g.flavor = GaugeFlavor::kCompact;
  return g;
}

/// Random complexified element exp(H) R with Pauli coordinates of H and the
/// logs of the scalars drawn at the given spread; spread <= ~0.5 keeps the
/// conditioning moderate.
inline GaugeElement random_complex_gauge(int n, Rng& rng, double spread = 0.35) {
  GaugeElement g;
  const Mat2 h = hermitian_from_pauli(
      {spread * rng.normal(), spread * rng.normal(), spread * rng.normal()});
  g.a = exp_hermitian_traceless(h) * random_su2(rng);
  g.e.resize(n);
  for (int i = 0; i < n; ++i) {
    const cx w = cx{spread * rng.normal(), 0.0} + kI * rng.uniform(0.0, 6.28318530717958648);
    g.e[i] = std::exp(w);
  }
  g.flavor = GaugeFlavor::kComplex;
  return g;
}

// ---------------------------------------------------------------------------
// Canonical orbit representatives
// ---------------------------------------------------------------------------

struct CanonicalForm {
  HyperpolygonPoint point;  ///< the canonical representative act(x, gauge)
  GaugeElement gauge;       ///< compact element carrying x to the representative
};

/// Canonical representative of the compact-group orbit of a stable point.
/// See the file comment for the normalization; deterministic, and invariant
/// under compact gauge on the stable zero level of the complex moment map.
inline CanonicalForm canonical_form(const HyperpolygonPoint& x, double tol = kDefaultTol) {
  validate_sizes(x);
  const int n = x.n();
  if (!is_stable(x, std::max(tol, 1e-12))) {
    fail(ErrorCode::kPrecondition, "canonical_form: point is unstable within tolerance");
  }
  // Step 1: rotate q_1 onto the positive first axis.  The SU(2) element with
  // prescribed first column u = q_1/|q_1| is unique.
  const double n1 = abs(x.q[0]);
  const Vec2 u{x.q[0].a / n1, x.q[0].b / n1};
  GaugeElement g0 = GaugeElement::identity(n);
  g0.a = Mat2{u.a, -std::conj(u.b), u.b, std::conj(u.a)};
  HyperpolygonPoint y = act(x, g0);

  // Step 2: pin the residual diagonal circle.  Only e^{2 i theta} matters for
  // the output; it is fixed by the first phase witness in scan order.
  cx u2{1.0, 0.0};
  bool found = false;
  for (int i = 0; i < n && !found; ++i) {  // mixed columns first
    const double ti = tol * abs(y.q[i]);
    if (std::abs(y.q[i].a) > ti && std::abs(y.q[i].b) > ti) {
      const cx w = y.q[i].a * std::conj(y.q[i].b);
      u2 = w / std::abs(w);
      found = true;
    }
  }
  for (int i = 0; i < n && !found; ++i) {  // then row components
    const double ti = tol * abs(y.q[i]);
    const double tp = tol * std::max(abs(y.p[i]), 1e-300);
    if (std::abs(y.q[i].a) > ti) {
      if (std::abs(y.p[i].b) > tp) {
        const cx w = y.p[i].b * y.q[i].a;
        u2 = w / std::abs(w);
        found = true;
      }
    } else if (std::abs(y.q[i].b) > ti && std::abs(y.p[i].a) > tp) {
      const cx w = std::conj(y.p[i].a * y.q[i].b);
      u2 = w / std::abs(w);
      found = true;
    }
  }
  // (If no witness exists the configuration is outside the stable zero level;
  // u2 = 1 keeps the map total and deterministic.)
  const cx s = std::sqrt(u2);  // either branch yields the same output below
  GaugeElement g1 = GaugeElement::identity(n);
  g1.a = Mat2::diag(s, std::conj(s));
  y = act(y, g1);

  // Step 3: make the first nonzero component of every q_i real positive.
  GaugeElement g2 = GaugeElement::identity(n);
  for (int i = 0; i < n; ++i) {
    const double ti = tol * abs(y.q[i]);
    const cx z = (std::abs(y.q[i].a) > ti) ? y.q[i].a : y.q[i].b;
    g2.e[i] = std::conj(z) / std::abs(z);
  }
  CanonicalForm out;
  out.point = act(y, g2);
  out.gauge = compose(compose(g0, g1), g2);
  return out;
}

/// Largest componentwise distance between two configurations of equal size.
inline double point_distance(const HyperpolygonPoint& x, const HyperpolygonPoint& y) {
  double d = 0.0;
  for (int i = 0; i < x.n(); ++i) {
    d = std::max(d, std::abs(x.p[i].a - y.p[i].a));
    d = std::max(d, std::abs(x.p[i].b - y.p[i].b));
    d = std::max(d, std::abs(x.q[i].a - y.q[i].a));
    d = std::max(d, std::abs(x.q[i].b - y.q[i].b));
  }
  return d;
}

// ---------------------------------------------------------------------------
// Compact-group invariants and orbit equality
// ---------------------------------------------------------------------------

/// Flat list of compact-group invariants: traces of words in M_i = q_i p_i
/// and H_i = q_i q_i* - p_i* p_i, both of which transform by conjugation with
/// A in SU(2) (the scalars cancel).  Used as a cheap pre-filter before the
/// canonical-form comparison; equal orbits have equal fingerprints.
inline std::vector<double> orbit_fingerprint(const HyperpolygonPoint& x) {
  const int n = x.n();
  std::vector<Mat2> m(n), h(n);
  for (int i = 0; i < n; ++i) {
    m[i] = outer(x.q[i], x.p[i]);
    h[i] = outer(x.q[i], adjoint(x.q[i])) - outer(adjoint(x.p[i]), x.p[i]);
  }
  std::vector<double> f;
  f.reserve(2 * n + n * n * 3 + n * n * n / 3);
  for (int i = 0; i < n; ++i) {
    const cx t = trace(m[i]);
    f.push_back(t.real());
    f.push_back(t.imag());
    f.push_back(trace(h[i]).real());
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const cx tmm = trace(m[i] * m[j]);
      f.push_back(tmm.real());
      f.push_back(tmm.imag());
      f.push_back(trace(h[i] * h[j]).real());
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const cx tmh = trace(m[i] * h[j]);
      f.push_back(tmh.real());
      f.push_back(tmh.imag());
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      for (int k = j; k < n; ++k) {
        const cx t = trace(m[i] * (m[j] * m[k]));
        f.push_back(t.real());
        f.push_back(t.imag());
      }
    }
  }
  return f;
}

/// Decide whether two stable configurations lie on one compact-group orbit,
/// within tolerance: fingerprint pre-filter, then canonical-form comparison.
/// Distance between the canonical compact-orbit representatives; near zero
/// exactly when the stable configurations lie on one compact-group orbit.
inline double orbit_distance_compact(const HyperpolygonPoint& x,
                                     const HyperpolygonPoint& y,
                                     double tol = kDefaultTol) {
  return point_distance(canonical_form(x, tol).point, canonical_form(y, tol).point);
}

inline bool orbit_equivalent_compact(const HyperpolygonPoint& x,
                                     const HyperpolygonPoint& y,
                                     double tol = 1e-8) {
  if (x.n() != y.n()) return false;
  const double scale =
      1.0 + std::max(total_norm2(x), total_norm2(y));
  const std::vector<double> fx = orbit_fingerprint(x);
  const std::vector<double> fy = orbit_fingerprint(y);
  for (std::size_t i = 0; i < fx.size(); ++i) {
    // Fingerprints are cubic in the components; give them a generous margin
    // and leave the decision to the canonical forms.
    if (std::abs(fx[i] - fy[i]) > 1e3 * tol * scale * scale) return false;
  }
  const CanonicalForm cfx = canonical_form(x);
  const CanonicalForm cfy = canonical_form(y);
  return point_distance(cfx.point, cfy.point) <=
         tol * (1.0 + std::sqrt(std::max(total_norm2(x), total_norm2(y))));
}

}  // namespace nullhyp
