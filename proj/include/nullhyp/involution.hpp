/**
 * @file involution.hpp
 * @brief The transpose involution on hyperpolygon configurations, its fixed
 *        locus, and the census of fixed components.
 *
 * The involution swaps the two halves of each edge pair by transposition:
 * iota[p, q] = [q^t, p^t].  It descends to the quotient, and a class is fixed
 * exactly when some compact gauge element carries the configuration to its
 * transpose.  Fixed classes are indexed by subsets S of {1, ..., n} with
 * 1 in S and 2 <= |S| <= n-2: after a rotation, a fixed configuration takes
 * the block form
 *   p_i = (0, b_i), q_i = (c_i, 0)^t   for i in S,
 *   p_i = (a_i, 0), q_i = (0, d_i)^t   for i not in S,
 * with |b_i| = |c_i|, |a_i| = |d_i|, sum_S b_i c_i = 0, sum_{S^c} a_i d_i = 0
 * and sum_S |c_i|^2 = sum_{S^c} |a_i|^2.  On such a block configuration the
 * witness gauge is explicit: A = [[0, i], [i, 0]] with scalars
 * e_i = i b_i / c_i on S and i a_i / d_i off S.  There are 2^{n-1} - (n + 1)
 * admissible subsets.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "nullhyp/errors.hpp"
#include "nullhyp/gauge.hpp"
#include "nullhyp/hyperpolygon.hpp"
#include "nullhyp/mat2.hpp"
#include "nullhyp/rng.hpp"

namespace nullhyp {

/// The transpose involution: p_i' = q_i^t, q_i' = p_i^t.  Exact; applying it
/// twice returns the input bit for bit.
inline HyperpolygonPoint iota(const HyperpolygonPoint& x) {
  validate_sizes(x);
  HyperpolygonPoint y;
  y.p.resize(x.n());
  y.q.resize(x.n());
  for (int i = 0; i < x.n(); ++i) {
    y.p[i] = transpose(x.q[i]);
    y.q[i] = transpose(x.p[i]);
  }
  return y;
}

/// The group automorphism intertwining the action with the involution:
/// iota(x . g) = iota(x) . dual_gauge(g), with [A; e] -> [(A^t)^{-1}; e^{-1}].
/// Preserves the compact subgroup.
inline GaugeElement dual_gauge(const GaugeElement& g) {
  GaugeElement h;
  h.a = inverse(transpose(g.a));
  h.e.resize(g.e.size());
  for (std::size_t i = 0; i < g.e.size(); ++i) {
    if (std::abs(g.e[i]) <= 0.0) {
      fail(ErrorCode::kDegenerate, "dual_gauge: zero scalar component");
    }
    h.e[i] = 1.0 / g.e[i];
  }
  h.flavor = g.flavor;
  return h;
}

/// True when S (0-based, sorted) indexes a fixed component: contains 0,
/// no duplicates, 2 <= |S| <= n-2.
inline bool is_valid_s(const std::vector<int>& s, int n) {
  const int k = static_cast<int>(s.size());
  if (k < 2 || k > n - 2) return false;
  if (s.front() != 0) return false;
  for (int i = 0; i < k; ++i) {
    if (s[i] < 0 || s[i] >= n) return false;
    if (i > 0 && s[i] <= s[i - 1]) return false;
  }
  return true;
}

inline std::vector<int> complement_of(const std::vector<int>& s, int n) {
  std::vector<int> c;
  c.reserve(n - s.size());
  std::size_t j = 0;
  for (int i = 0; i < n; ++i) {
    if (j < s.size() && s[j] == i) {
      ++j;
    } else {
      c.push_back(i);
    }
  }
  return c;
}

/// All index sets labelling fixed components, ordered by (size, lexicographic).
/// Empty for n = 3 (the constraints are unsatisfiable); error below that.
inline std::vector<std::vector<int>> component_census(int n) {
  if (n < 3) {
    fail(ErrorCode::kDomain, "component_census: need n >= 3");
  }
  std::vector<std::vector<int>> out;
  // Subsets of {1, ..., n-1} joined with {0}.
  for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
    std::vector<int> s{0};
    for (int i = 1; i < n; ++i) {
      if (mask & (1u << (i - 1))) s.push_back(i);
    }
    if (is_valid_s(s, n)) out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });
  return out;
}

/// Build the block configuration for an index set S from the per-index data
/// b, c (over S, in S order) and a, d (over the complement, in its order).
/// Validates every fixed-locus constraint and names the first violated one.
inline HyperpolygonPoint construct_zs(const std::vector<int>& s, int n,
                                      const std::vector<cx>& b,
                                      const std::vector<cx>& c,
                                      const std::vector<cx>& a,
                                      const std::vector<cx>& d,
                                      double tol = kDefaultTol) {
  if (!is_valid_s(s, n)) {
    fail(ErrorCode::kPrecondition,
         "construct_zs: S must contain index 1, be sorted, and satisfy 2 <= |S| <= n-2");
  }
  const std::vector<int> sc = complement_of(s, n);
  if (b.size() != s.size() || c.size() != s.size() || a.size() != sc.size() ||
      d.size() != sc.size()) {
    fail(ErrorCode::kSchema, "construct_zs: data lengths do not match |S| and |S^c|");
  }
  double scale2 = 0.0;
  for (const cx& v : b) scale2 = std::max(scale2, std::norm(v));
  for (const cx& v : a) scale2 = std::max(scale2, std::norm(v));
  scale2 = std::max(scale2, 1e-300);
  const double scale = std::sqrt(scale2);

  cx sum_bc = 0.0, sum_ad = 0.0;
  double sum_c2 = 0.0, sum_a2 = 0.0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (std::abs(b[k]) <= tol * scale || std::abs(c[k]) <= tol * scale) {
      fail(ErrorCode::kPrecondition,
           "construct_zs: entries on S must be nonzero (index " +
               std::to_string(s[k] + 1) + ")");
    }
    if (std::abs(std::abs(b[k]) - std::abs(c[k])) > tol * scale) {
      fail(ErrorCode::kPrecondition,
           "construct_zs: |b_i| = |c_i| violated at index " + std::to_string(s[k] + 1));
    }
    sum_bc += b[k] * c[k];
    sum_c2 += std::norm(c[k]);
  }
  for (std::size_t k = 0; k < sc.size(); ++k) {
    if (std::abs(a[k]) <= tol * scale || std::abs(d[k]) <= tol * scale) {
      fail(ErrorCode::kPrecondition,
           "construct_zs: entries on the complement must be nonzero (index " +
               std::to_string(sc[k] + 1) + ")");
    }
    if (std::abs(std::abs(a[k]) - std::abs(d[k])) > tol * scale) {
      fail(ErrorCode::kPrecondition,
           "construct_zs: |a_i| = |d_i| violated at index " + std::to_string(sc[k] + 1));
    }
    sum_ad += a[k] * d[k];
    sum_a2 += std::norm(a[k]);
  }
  if (std::abs(sum_bc) > tol * scale2 * static_cast<double>(s.size())) {
    fail(ErrorCode::kPrecondition, "construct_zs: sum over S of b_i c_i must vanish");
  }
  if (std::abs(sum_ad) > tol * scale2 * static_cast<double>(sc.size())) {
    fail(ErrorCode::kPrecondition,
         "construct_zs: sum over the complement of a_i d_i must vanish");
  }
  if (std::abs(sum_c2 - sum_a2) > tol * scale2 * n) {
    fail(ErrorCode::kPrecondition,
         "construct_zs: sum_S |c_i|^2 must equal sum over the complement of |a_i|^2");
  }

  HyperpolygonPoint x;
  x.p.assign(n, RowVec2{});
  x.q.assign(n, Vec2{});
  for (std::size_t k = 0; k < s.size(); ++k) {
    x.p[s[k]] = RowVec2{cx{0.0, 0.0}, b[k]};
    x.q[s[k]] = Vec2{c[k], cx{0.0, 0.0}};
  }
  for (std::size_t k = 0; k < sc.size(); ++k) {
    x.p[sc[k]] = RowVec2{a[k], cx{0.0, 0.0}};
    x.q[sc[k]] = Vec2{cx{0.0, 0.0}, d[k]};
  }
  return x;
}

/// Random admissible block data for a given S (used by generators and tests).
inline HyperpolygonPoint random_zs(const std::vector<int>& s, int n, Rng& rng) {
  if (!is_valid_s(s, n)) {
    fail(ErrorCode::kPrecondition, "random_zs: invalid index set");
  }
  const std::vector<int> sc = complement_of(s, n);
  for (int attempt = 0; attempt < 256; ++attempt) {
    // Zero-sum nonzero products t_i = b_i c_i, then split each product into
    // factors of equal modulus with a random phase.
    auto sample_products = [&](std::size_t m) {
      std::vector<cx> t(m);
      cx mean = 0.0;
      for (auto& v : t) {
        v = rng.complex_normal();
        mean += v;
      }
      mean /= static_cast<double>(m);
      double least = 1e300;
      for (auto& v : t) {
        v -= mean;
        least = std::min(least, std::abs(v));
      }
      return std::pair<std::vector<cx>, double>{t, least};
    };
    auto [tb, least_s] = sample_products(s.size());
    auto [ta, least_c] = sample_products(sc.size());
    if (least_s < 0.05 || least_c < 0.05) continue;

    std::vector<cx> b(s.size()), c(s.size()), a(sc.size()), d(sc.size());
    double sum_c2 = 0.0, sum_a2 = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) {
      const double r = std::sqrt(std::abs(tb[k]));
      c[k] = r * rng.unit_phase();
      b[k] = tb[k] / c[k];
      sum_c2 += std::norm(c[k]);
    }
    for (std::size_t k = 0; k < sc.size(); ++k) {
      const double r = std::sqrt(std::abs(ta[k]));
      a[k] = r * rng.unit_phase();
      d[k] = ta[k] / a[k];
      sum_a2 += std::norm(a[k]);
    }
    // Balance the two sides: scaling (a, d) by real r rescales the products
    // but keeps their zero sum and the modulus matching.
    const double r = std::sqrt(sum_c2 / sum_a2);
    for (auto& v : a) v *= r;
    for (auto& v : d) v *= r;
    return construct_zs(s, n, b, c, a, d, 1e-7);
  }
  fail(ErrorCode::kNonConvergence, "random_zs: sampling failed to produce admissible data");
}

/// A verified fixed-point certificate: the component label S (0-based,
/// containing 0) and a compact gauge g with act(x, g) = iota(x).  The block
/// normalization k0 carries x to the block configuration block_point.
struct FixedPointWitness {
  std::vector<int> s;
  GaugeElement gauge;
  GaugeElement block_gauge;
  HyperpolygonPoint block_point;
};

namespace detail {

/// Witness gauge for a configuration already in block form.
inline GaugeElement block_witness(const HyperpolygonPoint& xb,
                                  const std::vector<int>& s) {
  const int n = xb.n();
  GaugeElement g;
  g.a = Mat2{cx{0, 0}, kI, kI, cx{0, 0}};
  g.e.assign(n, cx{1.0, 0.0});
  g.flavor = GaugeFlavor::kCompact;
  std::vector<bool> in_s(n, false);
  for (int i : s) in_s[i] = true;
  for (int i = 0; i < n; ++i) {
    const cx ratio = in_s[i] ? (xb.p[i].b / xb.q[i].a) : (xb.p[i].a / xb.q[i].b);
    cx e = kI * ratio;
    const double m = std::abs(e);
    if (m <= 0.0) fail(ErrorCode::kDegenerate, "block witness: zero scalar");
    g.e[i] = e / m;  // |b_i| = |c_i| holds up to residual; snap onto the circle
  }
  return g;
}

}  // namespace detail

/// Decide whether the class of x (stable, both moment maps zero) is fixed by
/// the involution.  If so, return the component label S and an explicit
/// compact witness gauge, reconstructed through the block normal form;
/// otherwise return nothing.
inline std::optional<FixedPointWitness> classify_fixed(const HyperpolygonPoint& x,
                                                       double tol = 1e-8) {
  validate_sizes(x);
  const int n = x.n();
  const double scale = std::sqrt(std::max(total_norm2(x), 1e-300));
  if (!is_stable(x, 1e-9) || mu_real_norm(x) > 1e-6 * scale * scale ||
      mu_complex_norm(x) > 1e-6 * scale * scale) {
    fail(ErrorCode::kPrecondition,
         "classify_fixed: configuration must be stable with both moment maps zero");
  }
  if (!orbit_equivalent_compact(x, iota(x), tol)) {
    return std::nullopt;
  }

  // Group indices into proportionality classes of the q directions.  A fixed
  // class has exactly two, mutually orthogonal, with matched weight; the
  // class of index 0 is S.
  std::vector<int> cls(n, -1);
  std::vector<Vec2> reps;
  for (int i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < reps.size(); ++k) {
      const cx cross = x.q[i].a * reps[k].b - x.q[i].b * reps[k].a;
      if (std::abs(cross) <= 1e-6 * abs(x.q[i]) * abs(reps[k])) {
        cls[i] = static_cast<int>(k);
        break;
      }
    }
    if (cls[i] < 0) {
      cls[i] = static_cast<int>(reps.size());
      reps.push_back(x.q[i]);
    }
  }
  if (reps.size() != 2) {
    fail(ErrorCode::kDegenerate,
         "classify_fixed: fixed configuration without two straight halves "
         "(expected exactly 2 direction classes, found " +
             std::to_string(reps.size()) + ")");
  }
  std::vector<int> s, sc;
  for (int i = 0; i < n; ++i) {
    (cls[i] == cls[0] ? s : sc).push_back(i);
  }
  if (!is_valid_s(s, n)) {
    fail(ErrorCode::kDegenerate,
         "classify_fixed: block sizes violate 2 <= |S| <= n-2");
  }

  // Rotate the S-direction onto the first basis vector; the complementary
  // direction is orthogonal, so the block pattern appears automatically.
  const double qn = abs(x.q[0]);
  const Vec2 u{x.q[0].a / qn, x.q[0].b / qn};
  GaugeElement k0;
  k0.a = Mat2{u.a, -std::conj(u.b), u.b, std::conj(u.a)};  // columns u, u-perp
  k0.e.assign(n, cx{1.0, 0.0});
  k0.flavor = GaugeFlavor::kCompact;

  FixedPointWitness w;
  w.s = s;
  w.block_gauge = k0;
  w.block_point = act(x, k0);
  // Snap the off-block entries (proportionality and orthogonality residuals).
  for (int i : s) {
    w.block_point.p[i].a = 0.0;
    w.block_point.q[i].b = 0.0;
  }
  for (int i : sc) {
    w.block_point.p[i].b = 0.0;
    w.block_point.q[i].a = 0.0;
  }
  const GaugeElement gfp = detail::block_witness(w.block_point, s);
  w.gauge = compose(k0, compose(gfp, inverse_gauge(dual_gauge(k0))));

  const double res = point_distance(act(x, w.gauge), iota(x));
  if (res > std::max(1e-6, 100.0 * tol) * (1.0 + scale)) {
    fail(ErrorCode::kDegenerate,
         "classify_fixed: witness reconstruction residual too large");
  }
  return w;
}

}  // namespace nullhyp
