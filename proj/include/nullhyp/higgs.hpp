/**
 * @file higgs.hpp
 * @brief Rank-2 parabolic-type Higgs data on the projective line with trivial
 *        underlying bundle, and the correspondence with hyperpolygon
 *        configurations.
 *
 * A configuration (p, q) on the complex zero level determines, for any choice
 * of n distinct affine marked points x_1, ..., x_n, the meromorphic field
 *   Phi(z) = sum_i N_i / (z - x_i),   N_i = q_i p_i,
 * together with the line F_i = <q_i> at each marked point.  Each residue is
 * traceless and nilpotent (p_i q_i = 0 on the level), kills its line, and the
 * residues sum to zero, so Phi decays like 1/z^2 and extends over infinity.
 * Conversely q_i is recovered as a representative of F_i and
 * p_i = q_i* N_i / |q_i|^2; the residual scale/phase freedom in the flag
 * representative is exactly a diagonal complex torus gauge, so the round trip
 * preserves complexified-group orbits.
 */
#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "nullhyp/errors.hpp"
#include "nullhyp/hyperpolygon.hpp"
#include "nullhyp/mat2.hpp"

namespace nullhyp {

/// Default marked points: the n-th roots of unity.
inline std::vector<cx> default_marked(int n) {
  std::vector<cx> xs(n);
  for (int k = 0; k < n; ++k) {
    const double th = 2.0 * M_PI * k / n;
    xs[k] = cx{std::cos(th), std::sin(th)};
  }
  return xs;
}

/// Scale of a marked-point set (for relative tolerances).
inline double marked_scale(const std::vector<cx>& xs) {
  double m = 1.0;
  for (const cx& x : xs) m = std::max(m, std::abs(x));
  return m;
}

inline void validate_marked(const std::vector<cx>& xs) {
  if (xs.size() < 3) {
    fail(ErrorCode::kSchema, "marked points: need at least 3");
  }
  const double scale = marked_scale(xs);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      if (std::abs(xs[i] - xs[j]) <= 1e-6 * scale) {
        fail(ErrorCode::kSchema, "marked points: x_" + std::to_string(i + 1) +
                                     " and x_" + std::to_string(j + 1) +
                                     " coincide");
      }
    }
  }
}

/// Normalize a line representative: unit norm, first component of magnitude
/// above 1e-12 made real positive.  Deterministic for serialization.
inline Vec2 normalize_flag(const Vec2& v) {
  const double len = abs(v);
  if (len <= 0.0) fail(ErrorCode::kDegenerate, "flag line: zero representative");
  Vec2 u = (1.0 / len) * v;
  const cx lead = (std::abs(u.a) > 1e-12) ? u.a : u.b;
  const double la = std::abs(lead);
  if (la <= 0.0) fail(ErrorCode::kDegenerate, "flag line: zero representative");
  return (std::conj(lead) / la) * u;
}

/// Projective distance between two lines: |det [u | v]| / (|u| |v|).
inline double flag_distance(const Vec2& u, const Vec2& v) {
  const double du = abs(u), dv = abs(v);
  if (du <= 0.0 || dv <= 0.0) return 1.0;
  return std::abs(u.a * v.b - u.b * v.a) / (du * dv);
}

/// Higgs data: marked points, one line per point, one residue per point.
/// The residue list determines the field; evaluation is derived.
struct HiggsData {
  std::vector<cx> marked;
  std::vector<Vec2> flags;
  std::vector<Mat2> residues;

  int n() const { return static_cast<int>(marked.size()); }
};

inline double residue_scale(const HiggsData& h) {
  double m = 0.0;
  for (const Mat2& r : h.residues) m = std::max(m, max_abs(r));
  return m;
}

/// Check the structural invariants: distinct marked points; nonzero
/// traceless nilpotent residues killing their flag lines; zero residue sum.
inline void validate_higgs(const HiggsData& h, double tol = 1e-10) {
  if (h.flags.size() != h.marked.size() || h.residues.size() != h.marked.size()) {
    fail(ErrorCode::kSchema, "higgs data: field lengths disagree");
  }
  validate_marked(h.marked);
  const double scale = std::max(1.0, residue_scale(h));
  Mat2 sum = Mat2::zero();
  for (int i = 0; i < h.n(); ++i) {
    const Mat2& r = h.residues[i];
    const std::string tag = "residue " + std::to_string(i + 1);
    if (max_abs(r) <= tol * scale) {
      fail(ErrorCode::kDegenerate, tag + ": vanishes");
    }
    if (std::abs(trace(r)) > tol * scale) {
      fail(ErrorCode::kDegenerate, tag + ": not traceless");
    }
    if (max_abs(r * r) > tol * scale * scale) {
      fail(ErrorCode::kDegenerate, tag + ": not nilpotent");
    }
    const Vec2 rv = r * h.flags[i];
    if (abs(rv) > tol * scale * abs(h.flags[i])) {
      fail(ErrorCode::kDegenerate, tag + ": does not kill its flag line");
    }
    sum = sum + r;
  }
  if (max_abs(sum) > tol * scale * h.n()) {
    fail(ErrorCode::kDegenerate, "higgs data: residues do not sum to zero");
  }
}

/// Stability on the Higgs side: all residues nonzero and the flag lines not
/// all equal.
inline bool higgs_stable(const HiggsData& h, double tol = kDefaultTol) {
  const double scale = std::max(1.0, residue_scale(h));
  for (const Mat2& r : h.residues) {
    if (max_abs(r) <= tol * scale) return false;
  }
  for (int i = 1; i < h.n(); ++i) {
    if (flag_distance(h.flags[0], h.flags[i]) > tol) return true;
  }
  return false;
}

/// Build Higgs data from a stable configuration on the complex zero level:
/// flags <q_i>, residues q_i p_i.
inline HiggsData from_hyperpolygon(const HyperpolygonPoint& x,
                                   const std::vector<cx>& marked) {
  validate_sizes(x);
  validate_marked(marked);
  if (static_cast<int>(marked.size()) != x.n()) {
    fail(ErrorCode::kSchema, "marked point count differs from edge count");
  }
  if (!is_stable(x)) {
    fail(ErrorCode::kPrecondition, "higgs correspondence: configuration is unstable");
  }
  const double scale = std::sqrt(std::max(total_norm2(x), 1e-300));
  if (mu_complex_norm(x) > 1e-8 * scale * scale) {
    fail(ErrorCode::kPrecondition,
         "higgs correspondence: configuration is off the complex zero level");
  }
  HiggsData h;
  h.marked = marked;
  h.flags.reserve(x.n());
  h.residues.reserve(x.n());
  for (int i = 0; i < x.n(); ++i) {
    h.flags.push_back(normalize_flag(x.q[i]));
    h.residues.push_back(outer(x.q[i], x.p[i]));
  }
  return h;
}

/// Recover a configuration from Higgs data: q_i = flag representative,
/// p_i = q_i* N_i / |q_i|^2.  Verifies that the residues factor through the
/// flags (q_i p_i = N_i) and that the result is stable on the zero level.
inline HyperpolygonPoint to_hyperpolygon(const HiggsData& h) {
  validate_higgs(h);
  if (!higgs_stable(h)) {
    fail(ErrorCode::kPrecondition,
         "higgs correspondence: unstable data (zero residue or all flag lines equal)");
  }
  const double scale = std::max(1.0, residue_scale(h));
  HyperpolygonPoint x;
  x.p.resize(h.n());
  x.q.resize(h.n());
  for (int i = 0; i < h.n(); ++i) {
    const Vec2 q = normalize_flag(h.flags[i]);
    const RowVec2 p = (adjoint(q) * h.residues[i]);
    if (max_abs(outer(q, p) - h.residues[i]) > 1e-8 * scale) {
      fail(ErrorCode::kPrecondition,
           "higgs correspondence: residue " + std::to_string(i + 1) +
               " is not supported on its flag line");
    }
    x.q[i] = q;
    x.p[i] = p;
  }
  return x;
}

/// Evaluate the field Phi(z) = sum_i N_i / (z - x_i).
inline Mat2 higgs_eval(const HiggsData& h, cx z) {
  validate_higgs(h);
  const double scale = marked_scale(h.marked);
  Mat2 out = Mat2::zero();
  for (int i = 0; i < h.n(); ++i) {
    const cx d = z - h.marked[i];
    if (std::abs(d) <= 1e-9 * scale) {
      fail(ErrorCode::kDomain,
           "higgs_eval: z coincides with marked point " + std::to_string(i + 1));
    }
    out = out + (1.0 / d) * h.residues[i];
  }
  return out;
}

/// The duality (E, Phi) -> (E*, Phi^t): residues transpose and each flag
/// line moves to the transposed annihilator covector line <p_i^t>.
inline HiggsData theta_involution(const HiggsData& h) {
  validate_higgs(h);
  HiggsData out;
  out.marked = h.marked;
  out.flags.reserve(h.n());
  out.residues.reserve(h.n());
  for (int i = 0; i < h.n(); ++i) {
    const Vec2 q = normalize_flag(h.flags[i]);
    const RowVec2 p = adjoint(q) * h.residues[i];
    out.flags.push_back(normalize_flag(Vec2{p.a, p.b}));
    out.residues.push_back(transpose(h.residues[i]));
  }
  return out;
}

}  // namespace nullhyp
