// Unit tests for the fixed-size complex linear algebra kernel.
#include <gtest/gtest.h>

#include "nullhyp/mat2.hpp"
#include "nullhyp/rng.hpp"

using namespace nullhyp;

namespace {

constexpr std::uint64_t kSeed = 42;

Mat2 random_mat(Rng& rng) {
  return {rng.complex_normal(), rng.complex_normal(), rng.complex_normal(),
          rng.complex_normal()};
}

}  // namespace

TEST(Mat2Test, ArithmeticIdentities) {
  Rng rng(kSeed);
  for (int trial = 0; trial < 100; ++trial) {
    const Mat2 a = random_mat(rng);
    const Mat2 b = random_mat(rng);
    EXPECT_LT(max_abs(a * Mat2::identity() - a), 1e-15);
    EXPECT_LT(max_abs(Mat2::identity() * a - a), 1e-15);
    EXPECT_LT(max_abs((a + b) - (b + a)), 1e-15);
    EXPECT_LT(max_abs(transpose(a * b) - transpose(b) * transpose(a)), 1e-13);
    EXPECT_LT(max_abs(adjoint(a * b) - adjoint(b) * adjoint(a)), 1e-13);
    EXPECT_LT(std::abs(det(a * b) - det(a) * det(b)), 1e-12);
    EXPECT_LT(std::abs(trace(a * b) - trace(b * a)), 1e-13);
  }
}

TEST(Mat2Test, InverseRecoversIdentity) {
  Rng rng(kSeed);
  for (int trial = 0; trial < 100; ++trial) {
    const Mat2 a = random_mat(rng);
    if (std::abs(det(a)) < 1e-6) continue;
    EXPECT_LT(max_abs(a * inverse(a) - Mat2::identity()), 1e-12);
    EXPECT_LT(max_abs(inverse(a) * a - Mat2::identity()), 1e-12);
  }
  EXPECT_THROW(inverse(Mat2::zero()), Error);
}

TEST(Mat2Test, OuterProductAndVectors) {
  Rng rng(kSeed);
  for (int trial = 0; trial < 50; ++trial) {
    const Vec2 q = rng.vec2_normal();
    const Vec2 t = rng.vec2_normal();
    const RowVec2 p{t.a, t.b};
    const Mat2 n = outer(q, p);
    // rank-one: trace = pairing, determinant = 0.
    EXPECT_LT(std::abs(trace(n) - dot(p, q)), 1e-14);
    EXPECT_LT(std::abs(det(n)), 1e-13);
    // the annihilator pairs to zero.
    EXPECT_LT(std::abs(dot(annihilator(q), q)), 1e-15);
    // matrix-vector against explicit expansion.
    const Vec2 mv = n * q;
    EXPECT_LT(std::abs(mv.a - (n.m00 * q.a + n.m01 * q.b)), 1e-14);
    EXPECT_LT(std::abs(mv.b - (n.m10 * q.a + n.m11 * q.b)), 1e-14);
  }
}

TEST(Mat2Test, PauliCoordinatesRoundTrip) {
  Rng rng(kSeed);
  for (int trial = 0; trial < 50; ++trial) {
    const std::array<double, 3> s{rng.normal(), rng.normal(), rng.normal()};
    const Mat2 h = hermitian_from_pauli(s);
    EXPECT_TRUE(is_hermitian(h));
    EXPECT_LT(std::abs(trace(h)), 1e-15);
    const auto back = pauli_coords(h);
    for (int k = 0; k < 3; ++k) EXPECT_NEAR(back[k], s[k], 1e-14);
  }
  // sigma_a sigma_b = delta_ab I + i eps_abc sigma_c (spot check one case).
  EXPECT_LT(max_abs(kSigma1 * kSigma2 - kI * kSigma3), 1e-15);
  EXPECT_LT(max_abs(kSigma1 * kSigma1 - Mat2::identity()), 1e-15);
}

TEST(Mat2Test, HermitianEigenDecomposition) {
  Rng rng(kSeed);
  for (int trial = 0; trial < 100; ++trial) {
    const Mat2 h = hermitian_from_pauli({rng.normal(), rng.normal(), rng.normal()});
    const HermitianEig e = eig_hermitian_traceless(h);
    EXPECT_GE(e.x, 0.0);
    // u diag(x,-x) u* reproduces h; u is special unitary.
    const Mat2 d = Mat2::diag(cx{e.x, 0.0}, cx{-e.x, 0.0});
    EXPECT_LT(max_abs(e.u * d * adjoint(e.u) - h), 1e-13);
    EXPECT_TRUE(is_special_unitary(e.u, 1e-12));
  }
}

TEST(Mat2Test, ExponentialOfHermitian) {
  Rng rng(kSeed);
  for (int trial = 0; trial < 100; ++trial) {
    const Mat2 h = hermitian_from_pauli({rng.normal(), rng.normal(), rng.normal()});
    const Mat2 g = exp_hermitian_traceless(h);
    // positive hermitian with unit determinant, and exp(h)exp(-h) = 1.
    EXPECT_TRUE(is_hermitian(g, 1e-12));
    EXPECT_LT(std::abs(det(g) - cx{1.0, 0.0}), 1e-12);
    EXPECT_LT(max_abs(g * exp_hermitian_traceless(h * cx{-1.0, 0.0}) -
                      Mat2::identity()),
              1e-12);
    // series agreement for small arguments.
    const Mat2 hs = h * cx{1e-4, 0.0};
    const Mat2 series = Mat2::identity() + hs + hs * hs * cx{0.5, 0.0} +
                        hs * hs * hs * cx{1.0 / 6.0, 0.0};
    EXPECT_LT(max_abs(exp_hermitian_traceless(hs) - series), 1e-12);
  }
  EXPECT_LT(max_abs(exp_hermitian_traceless(Mat2::zero()) - Mat2::identity()),
            1e-15);
}

TEST(Mat2Test, SqrtOfPositiveHermitian) {
  Rng rng(kSeed);
  for (int trial = 0; trial < 100; ++trial) {
    const Mat2 a = random_mat(rng);
    const Mat2 p = a * adjoint(a) + Mat2::identity() * cx{0.1, 0.0};
    const Mat2 r = sqrt_hermitian_pd(p);
    EXPECT_TRUE(is_hermitian(r, 1e-11));
    EXPECT_LT(max_abs(r * r - p), 1e-11 * (1.0 + max_abs(p)));
  }
}

TEST(Mat2Test, PolarDecomposition) {
  Rng rng(kSeed);
  for (int trial = 0; trial < 100; ++trial) {
    Mat2 a = random_mat(rng);
    if (std::abs(det(a)) < 1e-3) continue;
    // normalize to unit determinant so the unitary factor is special.
    a = a * (cx{1.0, 0.0} / std::sqrt(det(a)));
    const PolarDecomposition pd = polar_decompose(a);
    EXPECT_TRUE(is_special_unitary(pd.r, 1e-10));
    EXPECT_TRUE(is_hermitian(pd.h, 1e-10));
    EXPECT_LT(max_abs(pd.h * pd.r - a), 1e-10 * (1.0 + max_abs(a)));
  }
}

TEST(Mat2Test, TracelessPartProjects) {
  Rng rng(kSeed);
  const Mat2 a = random_mat(rng);
  const Mat2 t = traceless(a);
  EXPECT_LT(std::abs(trace(t)), 1e-14);
  EXPECT_LT(max_abs((a - t) - Mat2::identity() * (trace(a) * cx{0.5, 0.0})), 1e-14);
}
