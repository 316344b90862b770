/**
 * @file mat2.hpp
 * @brief Closed-form complex 2x2 linear algebra.
 *
 * Everything the library needs from linear algebra in two dimensions is
 * available in closed form: determinants, inverses, Hermitian eigenpairs,
 * Hermitian square roots (via trace/determinant), matrix exponentials of
 * traceless Hermitian matrices, and polar decompositions.  No general-purpose
 * eigenvalue or SVD routine is used anywhere.
 *
 * Conventions:
 *  - Vec2 is a column vector, RowVec2 a row vector; dot(p, q) for a row p and
 *    a column q is the bilinear product p*q with no conjugation.
 *  - The Pauli basis sigma1 = [[0,1],[1,0]], sigma2 = [[0,-i],[i,0]],
 *    sigma3 = [[1,0],[0,-1]] spans traceless Hermitian matrices; real
 *    coordinates s map to H = s1*sigma1 + s2*sigma2 + s3*sigma3.
 */
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <string>

#include "nullhyp/errors.hpp"

namespace nullhyp {

using cx = std::complex<double>;

/// Library-wide default tolerance for residual checks.
inline constexpr double kDefaultTol = 1e-9;

inline constexpr cx kI{0.0, 1.0};

// ---------------------------------------------------------------------------
// Vectors
// ---------------------------------------------------------------------------

/// Column vector (a, b)^t in C^2.
struct Vec2 {
  cx a{0.0, 0.0};
  cx b{0.0, 0.0};

  Vec2 operator+(const Vec2& o) const { return {a + o.a, b + o.b}; }
  Vec2 operator-(const Vec2& o) const { return {a - o.a, b - o.b}; }
  Vec2 operator*(cx s) const { return {a * s, b * s}; }
};

/// Row vector (a, b) in (C^2)^*.
struct RowVec2 {
  cx a{0.0, 0.0};
  cx b{0.0, 0.0};

  RowVec2 operator+(const RowVec2& o) const { return {a + o.a, b + o.b}; }
  RowVec2 operator-(const RowVec2& o) const { return {a - o.a, b - o.b}; }
  RowVec2 operator*(cx s) const { return {a * s, b * s}; }
};

inline Vec2 operator*(cx s, const Vec2& v) { return v * s; }
inline RowVec2 operator*(cx s, const RowVec2& v) { return v * s; }

/// Squared Euclidean norm |a|^2 + |b|^2.
inline double norm2(const Vec2& v) { return std::norm(v.a) + std::norm(v.b); }
inline double norm2(const RowVec2& v) { return std::norm(v.a) + std::norm(v.b); }
inline double abs(const Vec2& v) { return std::sqrt(norm2(v)); }
inline double abs(const RowVec2& v) { return std::sqrt(norm2(v)); }

/// Bilinear pairing of a row with a column: p q = p.a q.a + p.b q.b.
inline cx dot(const RowVec2& p, const Vec2& q) { return p.a * q.a + p.b * q.b; }

/// Row vector annihilating the column v: ann(v) v = 0, ann(v) = (-v.b, v.a).
inline RowVec2 annihilator(const Vec2& v) { return {-v.b, v.a}; }

/// Conjugate transpose of a column (a row) and of a row (a column).
inline RowVec2 adjoint(const Vec2& v) { return {std::conj(v.a), std::conj(v.b)}; }
inline Vec2 adjoint(const RowVec2& v) { return {std::conj(v.a), std::conj(v.b)}; }

/// Plain transpose: column <-> row with no conjugation.
inline RowVec2 transpose(const Vec2& v) { return {v.a, v.b}; }
inline Vec2 transpose(const RowVec2& v) { return {v.a, v.b}; }

// ---------------------------------------------------------------------------
// Matrices
// ---------------------------------------------------------------------------

/// Dense complex 2x2 matrix [[m00, m01], [m10, m11]].
struct Mat2 {
  cx m00{0.0, 0.0}, m01{0.0, 0.0}, m10{0.0, 0.0}, m11{0.0, 0.0};

  static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static Mat2 zero() { return {}; }
  /// Diagonal matrix diag(d0, d1).
  static Mat2 diag(cx d0, cx d1) { return {d0, 0.0, 0.0, d1}; }

  Mat2 operator+(const Mat2& o) const {
    return {m00 + o.m00, m01 + o.m01, m10 + o.m10, m11 + o.m11};
  }
  Mat2 operator-(const Mat2& o) const {
    return {m00 - o.m00, m01 - o.m01, m10 - o.m10, m11 - o.m11};
  }
  Mat2 operator*(const Mat2& o) const {
    return {m00 * o.m00 + m01 * o.m10, m00 * o.m01 + m01 * o.m11,
            m10 * o.m00 + m11 * o.m10, m10 * o.m01 + m11 * o.m11};
  }
  Mat2 operator*(cx s) const { return {m00 * s, m01 * s, m10 * s, m11 * s}; }
};

inline Mat2 operator*(cx s, const Mat2& m) { return m * s; }

inline Vec2 operator*(const Mat2& m, const Vec2& v) {
  return {m.m00 * v.a + m.m01 * v.b, m.m10 * v.a + m.m11 * v.b};
}
inline RowVec2 operator*(const RowVec2& v, const Mat2& m) {
  return {v.a * m.m00 + v.b * m.m10, v.a * m.m01 + v.b * m.m11};
}

/// Outer product of a column with a row: (q p)_ij = q_i p_j.
inline Mat2 outer(const Vec2& q, const RowVec2& p) {
  return {q.a * p.a, q.a * p.b, q.b * p.a, q.b * p.b};
}

inline cx trace(const Mat2& m) { return m.m00 + m.m11; }
inline cx det(const Mat2& m) { return m.m00 * m.m11 - m.m01 * m.m10; }

inline Mat2 transpose(const Mat2& m) { return {m.m00, m.m10, m.m01, m.m11}; }
inline Mat2 conj(const Mat2& m) {
  return {std::conj(m.m00), std::conj(m.m01), std::conj(m.m10), std::conj(m.m11)};
}
inline Mat2 adjoint(const Mat2& m) { return transpose(conj(m)); }

/// Traceless part M - (tr M / 2) Id.
inline Mat2 traceless(const Mat2& m) {
  const cx h = trace(m) * 0.5;
  return {m.m00 - h, m.m01, m.m10, m.m11 - h};
}

inline double frobenius_norm2(const Mat2& m) {
  return std::norm(m.m00) + std::norm(m.m01) + std::norm(m.m10) + std::norm(m.m11);
}
inline double frobenius_norm(const Mat2& m) { return std::sqrt(frobenius_norm2(m)); }

inline double max_abs(const Mat2& m) {
  return std::max(std::max(std::abs(m.m00), std::abs(m.m01)),
                  std::max(std::abs(m.m10), std::abs(m.m11)));
}

/// Inverse via the adjugate; rejects matrices with |det| <= tol.
inline Mat2 inverse(const Mat2& m, double tol = 1e-14) {
  const cx d = det(m);
  if (std::abs(d) <= tol) {
    fail(ErrorCode::kPrecondition, "inverse: matrix is singular within tolerance");
  }
  const cx r = 1.0 / d;
  return {m.m11 * r, -m.m01 * r, -m.m10 * r, m.m00 * r};
}

inline bool is_hermitian(const Mat2& m, double tol = kDefaultTol) {
  return frobenius_norm(m - adjoint(m)) <= tol * (1.0 + frobenius_norm(m));
}

inline bool is_special_unitary(const Mat2& m, double tol = kDefaultTol) {
  const double unitary = frobenius_norm(m * adjoint(m) - Mat2::identity());
  return unitary <= tol && std::abs(det(m) - cx{1.0, 0.0}) <= tol;
}

// ---------------------------------------------------------------------------
// Pauli coordinates for traceless Hermitian matrices
// ---------------------------------------------------------------------------

inline const Mat2 kSigma1{0.0, 1.0, 1.0, 0.0};
inline const Mat2 kSigma2{0.0, cx{0.0, -1.0}, cx{0.0, 1.0}, 0.0};
inline const Mat2 kSigma3{1.0, 0.0, 0.0, -1.0};

/// H = s1 sigma1 + s2 sigma2 + s3 sigma3 (traceless Hermitian for real s).
inline Mat2 hermitian_from_pauli(const std::array<double, 3>& s) {
  return {cx{s[2], 0.0}, cx{s[0], -s[1]}, cx{s[0], s[1]}, cx{-s[2], 0.0}};
}

/// Inverse of hermitian_from_pauli; uses only the Hermitian part of m.
inline std::array<double, 3> pauli_coords(const Mat2& m) {
  return {0.5 * (m.m01.real() + m.m10.real()),
          0.5 * (m.m10.imag() - m.m01.imag()),
          0.5 * (m.m00.real() - m.m11.real())};
}

// ---------------------------------------------------------------------------
// Spectral closed forms
// ---------------------------------------------------------------------------

/// Eigendecomposition of a traceless Hermitian matrix H = U diag(x,-x) U*,
/// with x >= 0 and U in SU(2).  The branch used to build the leading
/// eigenvector is chosen for numerical stability (largest candidate norm).
struct HermitianEig {
  double x = 0.0;  ///< nonnegative eigenvalue; spectrum is {x, -x}
  Mat2 u;          ///< special unitary matrix of eigenvectors (columns)
};

inline HermitianEig eig_hermitian_traceless(const Mat2& hm) {
  const double h = hm.m00.real();
  const cx w = hm.m01;
  const double x = std::sqrt(h * h + std::norm(w));
  HermitianEig out;
  out.x = x;
  if (x <= 0.0) {
    out.u = Mat2::identity();
    return out;
  }
  // Eigenvector for +x: (h + x, conj(w)) when h >= 0, else (-w, h - x);
  // either choice has squared norm >= x^2 in its regime.
  Vec2 v = (h >= 0.0) ? Vec2{cx{h + x, 0.0}, std::conj(w)}
                      : Vec2{-w, cx{h - x, 0.0}};
  const double n = abs(v);
  v = v * cx{1.0 / n, 0.0};
  // Complete to an SU(2) matrix; the second column spans the -x eigenspace.
  out.u = Mat2{v.a, -std::conj(v.b), v.b, std::conj(v.a)};
  return out;
}

/// exp(H) for traceless Hermitian H, via H^2 = x^2 Id:
/// exp(H) = cosh(x) Id + (sinh(x)/x) H.
inline Mat2 exp_hermitian_traceless(const Mat2& hm) {
  const double x = std::sqrt(std::max(0.0, -det(hm).real()));
  const double c = std::cosh(x);
  const double s = (x < 1e-8) ? 1.0 + x * x / 6.0 : std::sinh(x) / x;
  return Mat2::identity() * cx{c, 0.0} + hm * cx{s, 0.0};
}

/// Square root of a positive-definite Hermitian matrix by trace/determinant:
/// sqrt(P) = (P + sqrt(det P) Id) / sqrt(tr P + 2 sqrt(det P)).
inline Mat2 sqrt_hermitian_pd(const Mat2& p, double tol = 1e-14) {
  const double tr = trace(p).real();
  const double dt = det(p).real();
  if (!(tr > tol) || !(dt > tol * tol)) {
    fail(ErrorCode::kPrecondition, "sqrt_hermitian_pd: matrix not positive definite");
  }
  const double delta = std::sqrt(dt);
  const double s = std::sqrt(tr + 2.0 * delta);
  return (p + Mat2::diag(delta, delta)) * cx{1.0 / s, 0.0};
}

/// Left polar decomposition A = H R with H Hermitian positive definite and R
/// unitary, both in closed form.  For A in SL(2,C) this gives det H = 1 and
/// R in SU(2).  Rejects matrices singular within tolerance.
struct PolarDecomposition {
  Mat2 h;  ///< Hermitian positive-definite factor, det H = |det A|
  Mat2 r;  ///< unitary factor, det R = det A / |det A|
};

inline PolarDecomposition polar_decompose(const Mat2& a, double tol = 1e-12) {
  if (std::abs(det(a)) <= tol) {
    fail(ErrorCode::kPrecondition, "polar_decompose: matrix is singular within tolerance");
  }
  PolarDecomposition out;
  out.h = sqrt_hermitian_pd(a * adjoint(a));
  out.r = inverse(out.h) * a;
  return out;
}

}  // namespace nullhyp
