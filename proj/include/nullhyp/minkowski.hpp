/**
 * @file minkowski.hpp
 * @brief Closed null polygons in 2+1 Minkowski space, the correspondence with
 *        fixed-locus block configurations, normalization under the isometry
 *        group, the diagonal-length function, and the bending flow.
 *
 * The Minkowski product is v . w = -v_x w_x - v_y w_y + v_t w_t.  Vectors act
 * through the orientation/time-orientation preserving isometries realized as
 * coadjoint matrices A_{alpha,beta} (|alpha|^2 - |beta|^2 = 1):
 * alpha = e^{i theta/2} rotates by theta about the t-axis, real
 * (alpha, beta) = (cosh(phi/2), sinh(phi/2)) boosts in the (y, t) plane.
 *
 * A block configuration for an index set S maps to a closed polygon with
 * null edges
 *   u_i = (Re(b_i c_i),  Im(b_i c_i), -|c_i|^2)   i in S     (past cone),
 *   u_i = (Re(a_i d_i), -Im(a_i d_i), +|a_i|^2)   i in S^c   (future cone),
 * listed S first; the fixed-locus constraints are exactly closure, and
 * |b|=|c|, |a|=|d| are exactly nullity.  Conversely a polygon in normal
 * position (past-edge sum on the negative t-axis) lifts by l_i = sqrt(|t_i|):
 * past p_i = (0, (x_i + i y_i)/l_i), q_i = (l_i, 0)^t; future
 * p_i = ((x_i - i y_i)/l_i, 0), q_i = (0, l_i)^t.
 */
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "nullhyp/errors.hpp"
#include "nullhyp/hyperpolygon.hpp"
#include "nullhyp/involution.hpp"
#include "nullhyp/mat2.hpp"

namespace nullhyp {

struct MinkVector {
  double x = 0.0, y = 0.0, t = 0.0;
};

inline MinkVector operator+(const MinkVector& v, const MinkVector& w) {
  return {v.x + w.x, v.y + w.y, v.t + w.t};
}
inline MinkVector operator-(const MinkVector& v, const MinkVector& w) {
  return {v.x - w.x, v.y - w.y, v.t - w.t};
}
inline MinkVector operator*(double s, const MinkVector& v) {
  return {s * v.x, s * v.y, s * v.t};
}

/// Signature (-, -, +) product.
inline double mink(const MinkVector& v, const MinkVector& w) {
  return -v.x * w.x - v.y * w.y + v.t * w.t;
}

/// Lorentzian cross product: mink(cross(v, w), z) = det[v w z] pattern,
/// matching the commutator of the matrix realization below.
inline MinkVector mink_cross(const MinkVector& v, const MinkVector& w) {
  return {-(v.y * w.t - v.t * w.y), v.x * w.t - v.t * w.x, v.x * w.y - v.y * w.x};
}

inline double euclid_norm(const MinkVector& v) {
  return std::sqrt(v.x * v.x + v.y * v.y + v.t * v.t);
}

/// Matrix realization of (x, y, t) in the 2x2 anti-Hermitian picture:
/// (1/2) [[-it, x + iy], [x - iy, it]].  Commutators realize mink_cross.
inline Mat2 su11_from_vector(const MinkVector& v) {
  return Mat2{0.5 * cx{0.0, -v.t}, 0.5 * cx{v.x, v.y}, 0.5 * cx{v.x, -v.y},
              0.5 * cx{0.0, v.t}};
}

/// Row-major 3x3 real matrix acting on (x, y, t).
struct Mat3 {
  std::array<double, 9> m{};

  static Mat3 identity() {
    Mat3 a;
    a.m = {1, 0, 0, 0, 1, 0, 0, 0, 1};
    return a;
  }
};

inline Mat3 operator*(const Mat3& a, const Mat3& b) {
  Mat3 c;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += a.m[3 * i + k] * b.m[3 * k + j];
      c.m[3 * i + j] = s;
    }
  }
  return c;
}

inline MinkVector apply(const Mat3& a, const MinkVector& v) {
  return {a.m[0] * v.x + a.m[1] * v.y + a.m[2] * v.t,
          a.m[3] * v.x + a.m[4] * v.y + a.m[5] * v.t,
          a.m[6] * v.x + a.m[7] * v.y + a.m[8] * v.t};
}

/// Coadjoint matrix of the unit-determinant element [[alpha, beta],
/// [conj(beta), conj(alpha)]] acting on (x, y, t).  Requires
/// |alpha|^2 - |beta|^2 = 1.
inline Mat3 su11_coadjoint_matrix(cx alpha, cx beta, double tol = 1e-9) {
  if (std::abs(std::norm(alpha) - std::norm(beta) - 1.0) > tol) {
    fail(ErrorCode::kPrecondition,
         "su11_coadjoint_matrix: |alpha|^2 - |beta|^2 must equal 1");
  }
  const cx a2 = alpha * alpha, b2 = beta * beta;
  const cx ab = alpha * beta;
  const cx abc = alpha * std::conj(beta);
  Mat3 g;
  g.m = {(a2 - b2).real(), -(a2 + b2).imag(), -2.0 * ab.imag(),
         (a2 - b2).imag(), (a2 + b2).real(),  2.0 * ab.real(),
         2.0 * abc.imag(), 2.0 * abc.real(),  std::norm(alpha) + std::norm(beta)};
  return g;
}

/// Rotation by theta about the t-axis (counterclockwise in the (x, y) plane).
inline Mat3 rotation_about_t(double theta) {
  return su11_coadjoint_matrix(cx{std::cos(theta / 2), std::sin(theta / 2)}, cx{0, 0});
}

/// Boost in the (y, t) plane with rapidity phi.
inline Mat3 boost_y(double phi) {
  return su11_coadjoint_matrix(cx{std::cosh(phi / 2), 0.0}, cx{std::sinh(phi / 2), 0.0});
}

/// Ordered closed polygon with k1 past-null then k2 future-null edges.
struct NullPolygon {
  int k1 = 0;
  int k2 = 0;
  std::vector<MinkVector> edges;

  int n() const { return k1 + k2; }
};

inline double polygon_scale(const NullPolygon& p) {
  double s = 0.0;
  for (const MinkVector& e : p.edges) s = std::max(s, euclid_norm(e));
  return std::max(s, 1e-300);
}

/// Structural checks: cone membership and nullity of every edge, closure,
/// and regularity (neither the past nor the future edges are all parallel).
inline void validate_polygon(const NullPolygon& p, double tol = kDefaultTol) {
  if (p.k1 < 2 || p.k2 < 2) {
    fail(ErrorCode::kSchema, "polygon: need at least two edges on each cone");
  }
  if (static_cast<int>(p.edges.size()) != p.n()) {
    fail(ErrorCode::kSchema, "polygon: edge count differs from k1 + k2");
  }
  const double scale = polygon_scale(p);
  MinkVector sum{};
  for (int i = 0; i < p.n(); ++i) {
    const MinkVector& u = p.edges[i];
    const double len = euclid_norm(u);
    const std::string tag = "polygon edge " + std::to_string(i + 1);
    if (len <= tol * scale) fail(ErrorCode::kDegenerate, tag + ": vanishes");
    if (std::abs(mink(u, u)) > tol * len * len) {
      fail(ErrorCode::kDegenerate, tag + ": not null");
    }
    if (i < p.k1 ? (u.t >= 0.0) : (u.t <= 0.0)) {
      fail(ErrorCode::kDegenerate, tag + (i < p.k1 ? ": not past-pointing"
                                                   : ": not future-pointing"));
    }
    sum = sum + u;
  }
  if (euclid_norm(sum) > tol * std::max(1.0, scale) * p.n()) {
    fail(ErrorCode::kDegenerate, "polygon: edges do not close up");
  }
  auto all_parallel = [&](int lo, int hi) {
    for (int i = lo; i < hi; ++i) {
      for (int j = i + 1; j < hi; ++j) {
        if (euclid_norm(mink_cross(p.edges[i], p.edges[j])) >
            tol * euclid_norm(p.edges[i]) * euclid_norm(p.edges[j])) {
          return false;
        }
      }
    }
    return true;
  };
  if (all_parallel(0, p.k1)) {
    fail(ErrorCode::kDegenerate, "polygon: past edges are all parallel");
  }
  if (all_parallel(p.k1, p.n())) {
    fail(ErrorCode::kDegenerate, "polygon: future edges are all parallel");
  }
}

/// Sum of the past edges (one diagonal of the polygon); time-like on regular
/// polygons.
inline MinkVector past_diagonal(const NullPolygon& p) {
  MinkVector w{};
  for (int i = 0; i < p.k1; ++i) w = w + p.edges[i];
  return w;
}

/// Minkowski length of the past diagonal.
inline double diagonal_length(const NullPolygon& p) {
  const MinkVector w = past_diagonal(p);
  const double w2 = mink(w, w);
  if (w2 <= 0.0) {
    fail(ErrorCode::kDegenerate,
         "diagonal_length: past edges sum to a non-time-like vector");
  }
  return std::sqrt(w2);
}

struct NormalizedPolygon {
  NullPolygon polygon;
  Mat3 gauge;  ///< isometry with polygon = gauge . input
};

/// Carry the past diagonal onto the negative t-axis: first rotate about the
/// t-axis to zero the x-component, then boost in (y, t) to zero y.
inline NormalizedPolygon normalize_diagonal(const NullPolygon& p) {
  validate_polygon(p);
  const MinkVector w = past_diagonal(p);
  const double w2 = mink(w, w);
  if (w2 <= 1e-12 * euclid_norm(w) * euclid_norm(w)) {
    fail(ErrorCode::kDegenerate,
         "normalize_diagonal: past diagonal is not time-like (edges too close "
         "to parallel)");
  }
  const double chi = M_PI / 2 - std::atan2(w.y, w.x);
  const Mat3 rot = rotation_about_t(chi);
  const MinkVector wr = apply(rot, w);
  const double phi = std::atanh(-wr.y / wr.t);
  const Mat3 g = boost_y(phi) * rot;

  NormalizedPolygon out;
  out.gauge = g;
  out.polygon.k1 = p.k1;
  out.polygon.k2 = p.k2;
  out.polygon.edges.reserve(p.n());
  for (const MinkVector& u : p.edges) out.polygon.edges.push_back(apply(g, u));
  return out;
}

/// True when the past diagonal already lies on the t-axis.
inline bool is_normalized(const NullPolygon& p, double tol = kDefaultTol) {
  const MinkVector w = past_diagonal(p);
  const double scale = std::max(1.0, euclid_norm(w));
  return std::abs(w.x) <= tol * scale && std::abs(w.y) <= tol * scale && w.t < 0.0;
}

/// Rotate the future edges by theta about the (normalized) diagonal axis.
/// Closure persists because the rotation fixes the axis; lengths, nullity
/// and the diagonal length are rotation invariants.
inline NullPolygon bend(const NullPolygon& p, double theta, double tol = 1e-8) {
  validate_polygon(p, tol);
  if (!is_normalized(p, tol)) {
    fail(ErrorCode::kPrecondition,
         "bend: polygon must be normalized (past diagonal on the t-axis)");
  }
  const Mat3 r = rotation_about_t(theta);
  NullPolygon out = p;
  for (int i = p.k1; i < p.n(); ++i) out.edges[i] = apply(r, p.edges[i]);
  return out;
}

/// The scaling family with two edges bent apart: past (0, m, -m) then
/// k1 - 1 copies of (0, -m/(k1-1), -m/(k1-1)); future (0, m, m) then k2 - 1
/// copies of (0, -m/(k2-1), +m/(k2-1)).  Closed, null, regular, in normal
/// position, with diagonal length exactly 2m.
inline NullPolygon m_family(int k1, int k2, double m) {
  if (k1 < 2 || k2 < 2) {
    fail(ErrorCode::kDomain, "m_family: need k1 >= 2 and k2 >= 2");
  }
  if (!(m > 0.0)) {
    fail(ErrorCode::kDomain, "m_family: need m > 0");
  }
  NullPolygon p;
  p.k1 = k1;
  p.k2 = k2;
  p.edges.reserve(k1 + k2);
  p.edges.push_back({0.0, m, -m});
  for (int i = 1; i < k1; ++i) {
    const double c = m / (k1 - 1);
    p.edges.push_back({0.0, -c, -c});
  }
  p.edges.push_back({0.0, m, m});
  for (int i = 1; i < k2; ++i) {
    const double c = m / (k2 - 1);
    p.edges.push_back({0.0, -c, c});
  }
  return p;
}

/// Equality in the moduli space: normalize both diagonals, kill the residual
/// rotation about the axis by turning the first past edge into the half-plane
/// {y = 0, x > 0}, then compare edgewise.
inline bool polygons_equivalent(const NullPolygon& p, const NullPolygon& q,
                                double tol = 1e-8) {
  if (p.k1 != q.k1 || p.k2 != q.k2) return false;
  auto canon = [](const NullPolygon& in) {
    NullPolygon c = normalize_diagonal(in).polygon;
    const MinkVector& e0 = c.edges[0];
    const Mat3 r = rotation_about_t(-std::atan2(e0.y, e0.x));
    for (MinkVector& u : c.edges) u = apply(r, u);
    return c;
  };
  const NullPolygon cp = canon(p);
  const NullPolygon cq = canon(q);
  const double scale = std::max(polygon_scale(cp), polygon_scale(cq));
  for (int i = 0; i < cp.n(); ++i) {
    if (euclid_norm(cp.edges[i] - cq.edges[i]) > tol * std::max(1.0, scale)) {
      return false;
    }
  }
  return true;
}

namespace detail {

inline void require_block_form(const HyperpolygonPoint& x, const std::vector<int>& s,
                               double tol) {
  const double scale = std::sqrt(std::max(total_norm2(x), 1e-300));
  std::vector<bool> in_s(x.n(), false);
  for (int i : s) in_s[i] = true;
  for (int i = 0; i < x.n(); ++i) {
    const double off = in_s[i] ? std::max(std::abs(x.p[i].a), std::abs(x.q[i].b))
                               : std::max(std::abs(x.p[i].b), std::abs(x.q[i].a));
    const double on = in_s[i] ? std::min(std::abs(x.p[i].b), std::abs(x.q[i].a))
                              : std::min(std::abs(x.p[i].a), std::abs(x.q[i].b));
    if (off > tol * scale || on <= tol * scale) {
      fail(ErrorCode::kPrecondition,
           "expected a block configuration for the given index set (run "
           "classify_fixed and use its block normalization first)");
    }
  }
}

}  // namespace detail

/// Map a block configuration to its null polygon, edges ordered S then S^c.
inline NullPolygon zs_to_polygon(const HyperpolygonPoint& x, const std::vector<int>& s,
                                 double tol = 1e-6) {
  validate_sizes(x);
  if (!is_valid_s(s, x.n())) {
    fail(ErrorCode::kPrecondition, "zs_to_polygon: invalid index set");
  }
  detail::require_block_form(x, s, tol);
  const std::vector<int> sc = complement_of(s, x.n());
  NullPolygon p;
  p.k1 = static_cast<int>(s.size());
  p.k2 = static_cast<int>(sc.size());
  p.edges.reserve(x.n());
  for (int i : s) {
    const cx bc = x.p[i].b * x.q[i].a;
    p.edges.push_back({bc.real(), bc.imag(), -std::norm(x.q[i].a)});
  }
  for (int i : sc) {
    const cx ad = x.p[i].a * x.q[i].b;
    p.edges.push_back({ad.real(), -ad.imag(), std::norm(x.p[i].a)});
  }
  validate_polygon(p, tol);
  return p;
}

/// Lift a polygon in normal position to the block configuration with
/// S = {1, ..., k1}: past p_i = (0, (x_i + i y_i)/l_i), q_i = (l_i, 0)^t and
/// future p_i = ((x_i - i y_i)/l_i, 0), q_i = (0, l_i)^t, l_i = sqrt(|t_i|).
inline HyperpolygonPoint polygon_to_zs(const NullPolygon& p, double tol = 1e-6) {
  validate_polygon(p, tol);
  const double scale = polygon_scale(p);
  const MinkVector w = past_diagonal(p);
  if (std::abs(w.x) > tol * scale * p.k1 || std::abs(w.y) > tol * scale * p.k1) {
    fail(ErrorCode::kPrecondition,
         "polygon_to_zs: polygon not in normal position (apply "
         "normalize_diagonal first)");
  }
  const int n = p.n();
  std::vector<int> s(p.k1);
  for (int i = 0; i < p.k1; ++i) s[i] = i;
  std::vector<cx> b(p.k1), c(p.k1), a(p.k2), d(p.k2);
  for (int i = 0; i < n; ++i) {
    const MinkVector& u = p.edges[i];
    const double l = std::sqrt(std::abs(u.t));
    if (l <= std::sqrt(tol * scale)) {
      fail(ErrorCode::kDegenerate,
           "polygon_to_zs: edge " + std::to_string(i + 1) + " has zero length");
    }
    if (i < p.k1) {
      b[i] = cx{u.x, u.y} / l;
      c[i] = l;
    } else {
      a[i - p.k1] = cx{u.x, -u.y} / l;
      d[i - p.k1] = l;
    }
  }
  return construct_zs(s, n, b, c, a, d, tol);
}

}  // namespace nullhyp
