/**
 * @file hyperpolygon.hpp
 * @brief Hyperpolygon configurations, moment maps, and stability predicates.
 *
 * A configuration is a tuple (p, q) of n covector/vector pairs on C^2:
 * p_i = (a_i, b_i) is a row, q_i = (c_i, d_i)^t a column.  The compact group
 * (SU(2) x U(1)^n)/(Z/2) acts by (p, q) . [A; e] = (e_i^{-1} p_i A, A^{-1} q_i e_i),
 * and the two moment maps for this action are
 *
 *   mu_real(p, q)    = 1/2 sum_i (q_i q_i* - p_i* p_i)_0  (+)  (-1/2 (|q_i|^2 - |p_i|^2))_i
 *   mu_complex(p, q) = -i sum_i (q_i p_i)_0               (+)  (i p_i q_i)_i
 *
 * where (.)_0 is the traceless part.  The zero locus of both maps, with no
 * pair (p_i, q_i) vanishing, is the configuration space whose quotient the
 * rest of the library computes in; its GIT counterpart uses the zero level of
 * mu_complex together with the stability predicate below (all p_i, q_i
 * nonzero and the q_i not all pairwise proportional).
 */
#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "nullhyp/errors.hpp"
#include "nullhyp/mat2.hpp"
#include "nullhyp/rng.hpp"

namespace nullhyp {

struct HyperpolygonPoint {
  std::vector<RowVec2> p;  ///< rows p_i = (a_i, b_i)
  std::vector<Vec2> q;     ///< columns q_i = (c_i, d_i)^t

  int n() const { return static_cast<int>(q.size()); }
};

/// Sum of all squared pair norms; the natural quadratic scale of a point.
inline double total_norm2(const HyperpolygonPoint& x) {
  double s = 0.0;
  for (int i = 0; i < x.n(); ++i) s += norm2(x.p[i]) + norm2(x.q[i]);
  return s;
}

/// Smallest |p_i|^2 + |q_i|^2 over all indices.
inline double min_pair_norm2(const HyperpolygonPoint& x) {
  double m = std::numeric_limits<double>::infinity();
  for (int i = 0; i < x.n(); ++i) m = std::min(m, norm2(x.p[i]) + norm2(x.q[i]));
  return m;
}

inline void validate_sizes(const HyperpolygonPoint& x) {
  if (x.p.size() != x.q.size() || x.q.empty()) {
    fail(ErrorCode::kSchema, "hyperpolygon: p and q must be nonempty and equally sized");
  }
}

// ---------------------------------------------------------------------------
// Moment maps
// ---------------------------------------------------------------------------

/// Value of the real moment map: a traceless Hermitian matrix plus n reals.
struct RealMoment {
  Mat2 su2;                ///< 1/2 sum_i (q_i q_i* - p_i* p_i)_0
  std::vector<double> rn;  ///< (-1/2 (|q_i|^2 - |p_i|^2))_i
};

/// Value of the complex moment map: a traceless matrix plus n complex scalars.
struct ComplexMoment {
  Mat2 sl2;            ///< -i sum_i (q_i p_i)_0
  std::vector<cx> cn;  ///< (i p_i q_i)_i
};

inline RealMoment mu_real(const HyperpolygonPoint& x) {
  RealMoment out;
  out.rn.resize(x.n());
  Mat2 s = Mat2::zero();
  for (int i = 0; i < x.n(); ++i) {
    // q_i q_i* - p_i* p_i (Hermitian).
    s = s + outer(x.q[i], adjoint(x.q[i])) - outer(adjoint(x.p[i]), x.p[i]);
    out.rn[i] = -0.5 * (norm2(x.q[i]) - norm2(x.p[i]));
  }
  out.su2 = traceless(s) * cx{0.5, 0.0};
  return out;
}

inline ComplexMoment mu_complex(const HyperpolygonPoint& x) {
  ComplexMoment out;
  out.cn.resize(x.n());
  Mat2 s = Mat2::zero();
  for (int i = 0; i < x.n(); ++i) {
    s = s + outer(x.q[i], x.p[i]);
    out.cn[i] = kI * dot(x.p[i], x.q[i]);
  }
  out.sl2 = traceless(s) * (-kI);
  return out;
}

/// Combined norm: Frobenius on the matrix block, Euclidean on the scalars.
inline double mu_real_norm(const RealMoment& m) {
  double s = frobenius_norm2(m.su2);
  for (double r : m.rn) s += r * r;
  return std::sqrt(s);
}

inline double mu_complex_norm(const ComplexMoment& m) {
  double s = frobenius_norm2(m.sl2);
  for (const cx& z : m.cn) s += std::norm(z);
  return std::sqrt(s);
}

inline double mu_real_norm(const HyperpolygonPoint& x) { return mu_real_norm(mu_real(x)); }
inline double mu_complex_norm(const HyperpolygonPoint& x) {
  return mu_complex_norm(mu_complex(x));
}

// ---------------------------------------------------------------------------
// Predicates
// ---------------------------------------------------------------------------

/// True when every pair of columns q_i, q_j with i, j in S is proportional,
/// measured by the cross determinant |c_i d_j - c_j d_i| <= tol |q_i| |q_j|.
/// Empty and singleton sets are straight by convention.
inline bool is_straight(const HyperpolygonPoint& x, const std::vector<int>& s,
                        double tol = kDefaultTol) {
  for (std::size_t u = 0; u < s.size(); ++u) {
    for (std::size_t v = u + 1; v < s.size(); ++v) {
      const Vec2& qi = x.q[s[u]];
      const Vec2& qj = x.q[s[v]];
      const double cross = std::abs(qi.a * qj.b - qj.a * qi.b);
      if (cross > tol * abs(qi) * abs(qj)) return false;
    }
  }
  return true;
}

/// is_straight over the full index set {0, ..., n-1}.
inline bool is_straight(const HyperpolygonPoint& x, double tol = kDefaultTol) {
  std::vector<int> all(x.n());
  for (int i = 0; i < x.n(); ++i) all[i] = i;
  return is_straight(x, all, tol);
}

/// GIT stability: every p_i and q_i nonzero and the q_i not all proportional.
inline bool is_stable(const HyperpolygonPoint& x, double tol = kDefaultTol) {
  const double scale = std::sqrt(std::max(total_norm2(x), 1e-300) / (2.0 * x.n()));
  for (int i = 0; i < x.n(); ++i) {
    if (abs(x.p[i]) <= tol * scale || abs(x.q[i]) <= tol * scale) return false;
  }
  return !is_straight(x, tol);
}

/// Membership in the zero level of both moment maps with no vanishing pair.
inline bool in_zero_level(const HyperpolygonPoint& x, double tol = kDefaultTol) {
  return mu_real_norm(x) <= tol && mu_complex_norm(x) <= tol &&
         min_pair_norm2(x) > tol;
}

/// Reorder the edge pairs: slot k of the result takes pair order[k] of the
/// input.  order must be a permutation of {0, ..., n-1}.
inline HyperpolygonPoint reindex(const HyperpolygonPoint& x,
                                 const std::vector<int>& order) {
  validate_sizes(x);
  if (static_cast<int>(order.size()) != x.n()) {
    fail(ErrorCode::kSchema, "reindex: order length must equal n");
  }
  std::vector<bool> seen(x.n(), false);
  HyperpolygonPoint y;
  y.p.reserve(x.n());
  y.q.reserve(x.n());
  for (int src : order) {
    if (src < 0 || src >= x.n() || seen[src]) {
      fail(ErrorCode::kSchema, "reindex: order must be a permutation");
    }
    seen[src] = true;
    y.p.push_back(x.p[src]);
    y.q.push_back(x.q[src]);
  }
  return y;
}

// ---------------------------------------------------------------------------
// Random stable configurations on the complex zero level
// ---------------------------------------------------------------------------

namespace detail {

/// Solve a 3x3 complex linear system by Gaussian elimination with partial
/// pivoting.  Sizes here are tiny and fixed; no library solver is warranted.
inline std::array<cx, 3> solve3(std::array<std::array<cx, 3>, 3> m,
                                std::array<cx, 3> rhs) {
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r) {
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    }
    if (std::abs(m[piv][col]) < 1e-300) {
      fail(ErrorCode::kPrecondition, "solve3: singular system");
    }
    std::swap(m[col], m[piv]);
    std::swap(rhs[col], rhs[piv]);
    for (int r = col + 1; r < 3; ++r) {
      const cx f = m[r][col] / m[col][col];
      for (int c = col; c < 3; ++c) m[r][c] -= f * m[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  std::array<cx, 3> sol{};
  for (int r = 2; r >= 0; --r) {
    cx acc = rhs[r];
    for (int c = r + 1; c < 3; ++c) acc -= m[r][c] * sol[c];
    sol[r] = acc / m[r][r];
  }
  return sol;
}

}  // namespace detail

/// Draw a random stable configuration on the zero level of the complex moment
/// map.  Columns q_i are sampled from a complex Gaussian; each row is a scalar
/// multiple of the annihilator of its column (killing the scalar components
/// i p_i q_i), and the scalars are projected onto the kernel of the resulting
/// 3-row complex linear system so that the matrix component vanishes too.
/// Draws are rejected until the scalars are uniformly bounded away from zero,
/// so the output is stable.  The real moment map is generically nonzero.
inline HyperpolygonPoint random_stable_complex_zero(int n, Rng& rng) {
  // On the zero level each p_i is a multiple of the annihilator of q_i; for
  // n <= 3 the resulting nilpotent sum can only vanish on straight (hence
  // unstable) configurations, so the stable zero level is empty.
  if (n < 4) {
    fail(ErrorCode::kPrecondition,
         "random_stable_complex_zero: the stable zero level is empty for n < 4");
  }
  for (int attempt = 0; attempt < 256; ++attempt) {
    HyperpolygonPoint x;
    x.q.resize(n);
    x.p.resize(n);
    std::vector<RowVec2> ann(n);
    // Columns of the 3 x n constraint matrix: independent entries of the
    // traceless nilpotent matrices q_i ann(q_i).
    std::vector<std::array<cx, 3>> bcols(n);
    for (int i = 0; i < n; ++i) {
      x.q[i] = rng.vec2_normal();
      ann[i] = annihilator(x.q[i]);
      const Mat2 ni = outer(x.q[i], ann[i]);
      bcols[i] = {ni.m00, ni.m01, ni.m10};
    }
    // Project a random scalar vector onto the kernel: t = t0 - B*(BB*)^{-1}B t0.
    std::vector<cx> t0(n);
    for (int i = 0; i < n; ++i) t0[i] = rng.complex_normal();
    std::array<cx, 3> bt0{};
    std::array<std::array<cx, 3>, 3> gram{};
    for (int i = 0; i < n; ++i) {
      for (int r = 0; r < 3; ++r) {
        bt0[r] += bcols[i][r] * t0[i];
        for (int c = 0; c < 3; ++c) {
          gram[r][c] += bcols[i][r] * std::conj(bcols[i][c]);
        }
      }
    }
    std::array<cx, 3> y{};
    try {
      y = detail::solve3(gram, bt0);
    } catch (const Error&) {
      continue;  // degenerate Gram matrix; redraw
    }
    std::vector<cx> t(n);
    double tmin = std::numeric_limits<double>::infinity();
    double tsum = 0.0;
    for (int i = 0; i < n; ++i) {
      cx corr{0.0, 0.0};
      for (int r = 0; r < 3; ++r) corr += std::conj(bcols[i][r]) * y[r];
      t[i] = t0[i] - corr;
      tmin = std::min(tmin, std::abs(t[i]));
      tsum += std::abs(t[i]);
    }
    if (tmin < 0.05 * tsum / n) continue;  // some row nearly vanishes; redraw
    for (int i = 0; i < n; ++i) x.p[i] = t[i] * ann[i];
    // Normalize the quadratic scale (a global real scaling preserves both the
    // complex zero level and stability).
    const double s = std::sqrt(2.0 * n / total_norm2(x));
    for (int i = 0; i < n; ++i) {
      x.p[i] = x.p[i] * cx{s, 0.0};
      x.q[i] = x.q[i] * cx{s, 0.0};
    }
    if (!is_stable(x, 1e-6)) continue;
    if (mu_complex_norm(x) > 1e-10 * total_norm2(x)) continue;
    return x;
  }
  fail(ErrorCode::kNonConvergence,
       "random_stable_complex_zero: rejection sampling failed to produce a stable draw");
}

}  // namespace nullhyp
