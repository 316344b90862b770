// Unit tests for the swap involution, its fixed components, and the classifier.
#include <gtest/gtest.h>

#include "nullhyp/fixtures.hpp"
#include "nullhyp/gauge.hpp"
#include "nullhyp/involution.hpp"
#include "nullhyp/kempf_ness.hpp"
#include "nullhyp/rng.hpp"

using namespace nullhyp;

namespace {

constexpr std::uint64_t kSeed = 19;

}  // namespace

TEST(InvolutionTest, IotaIsAnExactInvolution) {
  Rng rng(kSeed);
  for (int trial = 0; trial < 20; ++trial) {
    const HyperpolygonPoint x = random_stable_complex_zero(4 + trial % 5, rng);
    EXPECT_EQ(point_distance(iota(iota(x)), x), 0.0);
  }
}

TEST(InvolutionTest, IotaPreservesBothMomentLevels) {
  Rng rng(kSeed);
  for (int trial = 0; trial < 10; ++trial) {
    const HyperpolygonPoint x =
        kn_solve(random_stable_complex_zero(4 + trial % 3, rng)).point;
    const HyperpolygonPoint y = iota(x);
    EXPECT_NEAR(mu_real_norm(y), mu_real_norm(x), 1e-12);
    EXPECT_NEAR(mu_complex_norm(y), mu_complex_norm(x), 1e-12);
  }
}

TEST(InvolutionTest, DualGaugeIntertwines) {
  // iota(x . g) = iota(x) . dual(g) for every group element.
  Rng rng(kSeed);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 4 + trial % 3;
    const HyperpolygonPoint x = random_stable_complex_zero(n, rng);
    const GaugeElement g = trial % 2 == 0 ? random_compact_gauge(n, rng)
                                          : random_complex_gauge(n, rng);
    EXPECT_LT(point_distance(iota(act(x, g)), act(iota(x), dual_gauge(g))),
              1e-11);
  }
  // dual respects composition and is an involution on the group.
  const GaugeElement g = random_compact_gauge(4, rng);
  const GaugeElement h = random_compact_gauge(4, rng);
  const GaugeElement lhs = dual_gauge(compose(g, h));
  const GaugeElement rhs = compose(dual_gauge(g), dual_gauge(h));
  EXPECT_LT(max_abs(lhs.a - rhs.a), 1e-13);
  const GaugeElement back = dual_gauge(dual_gauge(g));
  EXPECT_LT(max_abs(back.a - g.a), 1e-13);
}

TEST(InvolutionTest, CensusMatchesClosedFormCount) {
  for (int n = 4; n <= 12; ++n) {
    const auto census = component_census(n);
    EXPECT_EQ(static_cast<long>(census.size()), (1L << (n - 1)) - (n + 1))
        << "n = " << n;
    for (const auto& s : census) EXPECT_TRUE(is_valid_s(s, n));
  }
  EXPECT_TRUE(component_census(3).empty());
  EXPECT_THROW(component_census(2), Error);
}

TEST(InvolutionTest, CensusN4ExplicitAndOrdered) {
  const auto census = component_census(4);
  const std::vector<std::vector<int>> want{{0, 1}, {0, 2}, {0, 3}};
  EXPECT_EQ(census, want);
  const auto c7 = component_census(7);
  for (std::size_t i = 1; i < c7.size(); ++i) {
    const bool ordered =
        c7[i - 1].size() < c7[i].size() ||
        (c7[i - 1].size() == c7[i].size() && c7[i - 1] < c7[i]);
    EXPECT_TRUE(ordered);
  }
}

TEST(InvolutionTest, ValidIndexSets) {
  EXPECT_TRUE(is_valid_s({0, 1}, 4));
  EXPECT_FALSE(is_valid_s({1, 2}, 4));     // must contain the first index
  EXPECT_FALSE(is_valid_s({0}, 4));        // too small
  EXPECT_FALSE(is_valid_s({0, 1, 2}, 4));  // complement too small
  EXPECT_FALSE(is_valid_s({0, 2, 1}, 5));  // not sorted
  EXPECT_EQ(complement_of({0, 2}, 5), (std::vector<int>{1, 3, 4}));
}

TEST(InvolutionTest, ConstructedBlockPointsSitOnBothLevels) {
  Rng rng(kSeed);
  for (int n : {4, 5, 6, 8}) {
    for (const auto& s : component_census(n)) {
      const HyperpolygonPoint x = random_zs(s, n, rng);
      EXPECT_LT(mu_real_norm(x), 1e-10);
      EXPECT_LT(mu_complex_norm(x), 1e-10);
      EXPECT_TRUE(is_stable(x));
    }
  }
}

TEST(InvolutionTest, ConstructRejectsImbalancedData) {
  const std::vector<int> s{0, 1};
  const std::vector<cx> b{cx{1, 0}, cx{-1, 0}};
  const std::vector<cx> c{cx{1, 0}, cx{1, 0}};
  const std::vector<cx> a{cx{1, 0}, cx{-1, 0}};
  const std::vector<cx> d{cx{1, 0}, cx{1, 0}};
  EXPECT_NO_THROW(construct_zs(s, 4, b, c, a, d));
  // breaking |b_i| = |c_i| must be caught.
  EXPECT_THROW(construct_zs(s, 4, {cx{2, 0}, cx{-1, 0}}, c, a, d), Error);
  // breaking the zero-sum condition must be caught.
  EXPECT_THROW(construct_zs(s, 4, {cx{1, 0}, cx{1, 0}}, c, a, d), Error);
  // breaking the balance between the halves must be caught.
  EXPECT_THROW(
      construct_zs(s, 4, b, c, {cx{2, 0}, cx{-2, 0}}, {cx{2, 0}, cx{2, 0}}),
      Error);
  // zero entries are degenerate.
  EXPECT_THROW(construct_zs(s, 4, {cx{0, 0}, cx{-1, 0}}, c, a, d), Error);
}

TEST(InvolutionTest, FixtureIsAFixedPointWithSmallestComponent) {
  const auto w = classify_fixed(p4_fixture());
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->s, (std::vector<int>{0, 1}));
}

TEST(InvolutionTest, ClassifierRecoversTheComponentLabel) {
  Rng rng(kSeed);
  for (int n : {4, 5, 6}) {
    for (const auto& s : component_census(n)) {
      const HyperpolygonPoint xb = random_zs(s, n, rng);
      // scramble by a compact gauge so the block structure is hidden.
      const HyperpolygonPoint x = act(xb, random_compact_gauge(n, rng));
      const auto w = classify_fixed(x);
      ASSERT_TRUE(w.has_value()) << "n = " << n;
      EXPECT_EQ(w->s, s);
      // the witness actually conjugates the point onto its involution image.
      EXPECT_LT(point_distance(act(x, w->gauge), iota(x)), 1e-6);
      EXPECT_NO_THROW(validate_gauge(w->gauge));
      // the normalized point is in literal block form.
      for (int i : w->s) {
        EXPECT_LT(std::abs(w->block_point.p[i].a), 1e-12);
        EXPECT_LT(std::abs(w->block_point.q[i].b), 1e-12);
      }
      for (int i : complement_of(w->s, n)) {
        EXPECT_LT(std::abs(w->block_point.p[i].b), 1e-12);
        EXPECT_LT(std::abs(w->block_point.q[i].a), 1e-12);
      }
    }
  }
}

TEST(InvolutionTest, BlockWitnessIsExactOnBlockPoints) {
  Rng rng(kSeed);
  const std::vector<int> s{0, 2};
  const HyperpolygonPoint xb = random_zs(s, 5, rng);
  const auto w = classify_fixed(xb);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->s, s);
  // on a configuration already in block form the witness is exact algebra,
  // so the residual is pure rounding.
  EXPECT_LT(point_distance(act(xb, w->gauge), iota(xb)), 1e-12);
  // the recorded normalization carries the input onto the block representative.
  EXPECT_LT(point_distance(act(xb, w->block_gauge), w->block_point), 1e-12);
}

TEST(InvolutionTest, GenericPointsAreNotFixed) {
  Rng rng(kSeed);
  for (int trial = 0; trial < 20; ++trial) {
    const HyperpolygonPoint x =
        kn_solve(random_stable_complex_zero(5, rng)).point;
    EXPECT_FALSE(classify_fixed(x).has_value());
  }
}

TEST(InvolutionTest, ClassifierRequiresTheZeroLevel) {
  Rng rng(kSeed);
  const HyperpolygonPoint x = random_stable_complex_zero(4, rng);
  // generic samples satisfy mu_C = 0 but not mu_R = 0.
  EXPECT_THROW(classify_fixed(x), Error);
}
