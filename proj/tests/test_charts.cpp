// Unit tests for the coordinate charts on the parabolic moduli description.
#include <gtest/gtest.h>

#include "nullhyp/charts.hpp"
#include "nullhyp/fixtures.hpp"
#include "nullhyp/gauge.hpp"
#include "nullhyp/higgs.hpp"
#include "nullhyp/rng.hpp"

using namespace nullhyp;

namespace {

constexpr std::uint64_t kSeed = 29;

}  // namespace

TEST(ChartsTest, NormalFormsAreNilpotentAndKillTheirFlags) {
  Rng rng(kSeed);
  for (int trial = 0; trial < 40; ++trial) {
    const cx coord = rng.complex_normal();
    const cx lambda = rng.complex_normal() + cx{2.0, 0.0};
    for (ChartSide side : {ChartSide::kA, ChartSide::kB}) {
      const Mat2 n = chart_residue(coord, lambda, side);
      const Vec2 f = chart_flag(coord, side);
      EXPECT_LT(std::abs(trace(n)), 1e-13);
      EXPECT_LT(max_abs(n * n), 1e-12);
      EXPECT_LT(abs(n * f), 1e-12);
      // the corner entry exposes lambda * coord on both sides.
      EXPECT_LT(std::abs(n.m11 - lambda * coord), 1e-13);
    }
  }
  EXPECT_THROW(chart_residue(cx{0, 0}, cx{0, 0}, ChartSide::kA), Error);
}

TEST(ChartsTest, FixtureChartClosedForm) {
  const HiggsData h = from_hyperpolygon(p4_fixture(), p4_marked());
  const ChartNormalization cn = chart_normalize(h, {0, 2});
  EXPECT_EQ(cn.coords.sigma[0], 0);
  EXPECT_EQ(cn.coords.sigma[1], 2);
  EXPECT_EQ(cn.coords.side_a, (std::vector<int>{0, 1}));
  EXPECT_EQ(cn.coords.side_b, (std::vector<int>{2, 3}));
  EXPECT_EQ(cn.coords.eliminated, 1);
  ASSERT_EQ(cn.coords.free_entries.size(), 1u);
  EXPECT_EQ(cn.coords.free_entries[0].index, 3);
  EXPECT_LT(std::abs(cn.coords.free_entries[0].coord), 1e-14);
  EXPECT_LT(std::abs(cn.coords.free_entries[0].lambda - cx{1.0, 0.0}), 1e-14);
  // the fixture is already normalized, so the frame is +-identity.
  EXPECT_LT(std::min(max_abs(cn.g - Mat2::identity()),
                     max_abs(cn.g + Mat2::identity())),
            1e-12);
}

TEST(ChartsTest, ExplicitFrameFormula) {
  // For pivot data with flag lines [1 : w1], [z2 : 1] and first residue
  // l1 * [[-w1, 1], [-w1^2, w1]], the normalizing frame has the closed form
  //   [[ 1/(r (1 - w1 z2)), -z2/(r (1 - w1 z2)) ], [ -r w1, r ]],  r = l1^{1/2}.
  Rng rng(kSeed);
  for (int trial = 0; trial < 40; ++trial) {
    const cx w1 = 0.8 * rng.complex_normal();
    const cx z2 = 0.8 * rng.complex_normal();
    const cx l1 = rng.unit_phase() * rng.uniform(0.5, 2.0);
    if (std::abs(cx{1.0, 0.0} - w1 * z2) < 0.1) continue;
    const cx r = std::sqrt(l1);
    const cx den = r * (cx{1.0, 0.0} - w1 * z2);
    const Mat2 gf{cx{1.0, 0.0} / den, -z2 / den, -r * w1, r};
    EXPECT_LT(std::abs(det(gf) - cx{1.0, 0.0}), 1e-12);
    // it sends the two flag lines to the coordinate axes...
    const Vec2 f1 = gf * Vec2{cx{1.0, 0.0}, w1};
    const Vec2 f2 = gf * Vec2{z2, cx{1.0, 0.0}};
    EXPECT_LT(std::abs(f1.b), 1e-12);
    EXPECT_LT(std::abs(f2.a), 1e-12);
    // ...and conjugates the first residue to the elementary nilpotent.
    const Mat2 n1 = chart_residue(w1, l1, ChartSide::kA);
    const Mat2 e12{cx{0, 0}, cx{1, 0}, cx{0, 0}, cx{0, 0}};
    EXPECT_LT(max_abs(gf * n1 * inverse(gf) - e12), 1e-11);
  }
}

TEST(ChartsTest, NormalizationProducesTheNormalForm) {
  Rng rng(kSeed);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 4 + trial % 5;
    const ChartCoords c = random_chart(n, rng);
    const HiggsData h = chart_reconstruct(c);
    const ChartNormalization cn = chart_normalize(h);
    const HiggsData t = higgs_gauge_transform(h, cn.g);
    // pivot flags on the axes, pivot-1 residue elementary, unit lambda.
    EXPECT_LT(std::abs(t.flags[cn.coords.sigma[0]].b), 1e-9);
    EXPECT_LT(std::abs(t.flags[cn.coords.sigma[1]].a), 1e-9);
    const Mat2& n1 = t.residues[cn.coords.sigma[0]];
    EXPECT_LT(std::abs(n1.m00), 1e-9);
    EXPECT_LT(std::abs(n1.m10), 1e-9);
    EXPECT_LT(std::abs(n1.m01 - cx{1.0, 0.0}), 1e-9);
    const Mat2& n2 = t.residues[cn.coords.sigma[1]];
    EXPECT_LT(std::abs(n2.m00), 1e-9);
    EXPECT_LT(std::abs(n2.m01), 1e-9);
  }
}

TEST(ChartsTest, ReconstructionSatisfiesTheConstraints) {
  Rng rng(kSeed);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 4 + trial % 5;
    const ChartCoords c = random_chart(n, rng);
    const HiggsData h = chart_reconstruct(c);
    EXPECT_NO_THROW(validate_higgs(h, 1e-9));
    Mat2 sum = Mat2::zero();
    for (const Mat2& r : h.residues) sum = sum + r;
    EXPECT_LT(max_abs(sum), 1e-12);
  }
}

TEST(ChartsTest, RoundTripThroughNormalization) {
  Rng rng(kSeed);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 4 + trial % 5;
    const ChartCoords c = random_chart(n, rng);
    const HiggsData h = chart_reconstruct(c);
    const ChartNormalization cn = chart_normalize(h);
    EXPECT_EQ(cn.coords.sigma, c.sigma);
    EXPECT_EQ(cn.coords.side_a, c.side_a);
    EXPECT_EQ(cn.coords.side_b, c.side_b);
    EXPECT_EQ(cn.coords.eliminated, c.eliminated);
    ASSERT_EQ(cn.coords.free_entries.size(), c.free_entries.size());
    for (std::size_t k = 0; k < c.free_entries.size(); ++k) {
      EXPECT_EQ(cn.coords.free_entries[k].index, c.free_entries[k].index);
      EXPECT_LT(std::abs(cn.coords.free_entries[k].coord - c.free_entries[k].coord),
                1e-8);
      EXPECT_LT(
          std::abs(cn.coords.free_entries[k].lambda - c.free_entries[k].lambda),
          1e-8);
    }
  }
}

TEST(ChartsTest, CoordinatesAreGaugeInvariant) {
  Rng rng(kSeed);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 4 + trial % 4;
    const ChartCoords c = random_chart(n, rng);
    const HiggsData h = chart_reconstruct(c);
    const Mat2 g0 = random_complex_gauge(n, rng).a;
    const ChartNormalization cn0 = chart_normalize(h);
    const ChartNormalization cn1 = chart_normalize(higgs_gauge_transform(h, g0));
    ASSERT_EQ(cn0.coords.side_a, cn1.coords.side_a);
    ASSERT_EQ(cn0.coords.eliminated, cn1.coords.eliminated);
    for (std::size_t k = 0; k < cn0.coords.free_entries.size(); ++k) {
      EXPECT_LT(std::abs(cn0.coords.free_entries[k].coord -
                         cn1.coords.free_entries[k].coord),
                1e-8);
      EXPECT_LT(std::abs(cn0.coords.free_entries[k].lambda -
                         cn1.coords.free_entries[k].lambda),
                1e-8);
    }
    // the two frames agree up to the overall sign ambiguity.
    const Mat2 prod = cn1.g * g0;
    EXPECT_LT(std::min(max_abs(prod - cn0.g), max_abs(prod + cn0.g)), 1e-8);
  }
}

TEST(ChartsTest, GaugeTransformConjugatesConsistently) {
  Rng rng(kSeed);
  const ChartCoords c = random_chart(5, rng);
  const HiggsData h = chart_reconstruct(c);
  const Mat2 g = random_complex_gauge(5, rng).a;
  const HiggsData t = higgs_gauge_transform(h, g);
  for (int i = 0; i < 5; ++i) {
    EXPECT_LT(max_abs(t.residues[i] - g * h.residues[i] * inverse(g)), 1e-10);
    // transformed flags stay annihilated by transformed residues.
    EXPECT_LT(abs(t.residues[i] * t.flags[i]), 1e-10);
  }
  // only determinant-one transformations are accepted.
  EXPECT_THROW(higgs_gauge_transform(h, Mat2::diag(cx{2, 0}, cx{2, 0})), Error);
}

TEST(ChartsTest, DegeneratePivotsAreRejected) {
  Rng rng(kSeed);
  const ChartCoords c = random_chart(4, rng);
  HiggsData h = chart_reconstruct(c);
  // force the two pivot flag lines to coincide.
  h.flags[c.sigma[1]] = h.flags[c.sigma[0]];
  EXPECT_THROW(chart_normalize(h, c.sigma), Error);
  EXPECT_THROW(chart_normalize(chart_reconstruct(c), {0, 0}), Error);
}

TEST(ChartsTest, RandomChartsAreDeterministic) {
  Rng a(kSeed), b(kSeed);
  const ChartCoords ca = random_chart(6, a);
  const ChartCoords cb = random_chart(6, b);
  EXPECT_EQ(ca.side_a, cb.side_a);
  ASSERT_EQ(ca.free_entries.size(), cb.free_entries.size());
  for (std::size_t k = 0; k < ca.free_entries.size(); ++k) {
    EXPECT_EQ(ca.free_entries[k].coord, cb.free_entries[k].coord);
    EXPECT_EQ(ca.free_entries[k].lambda, cb.free_entries[k].lambda);
  }
}
