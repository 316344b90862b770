/**
 * @file charts.hpp
 * @brief Holomorphic coordinate charts on the moduli of stable Higgs data:
 *        normalization to a point of C^{n-3} x (C*)^{n-3} and reconstruction.
 *
 * A unique unit-determinant matrix (up to sign) carries two chosen pivot
 * flags to [1:0] and [0:1] and scales the first pivot residue to
 * [[0, 1], [0, 0]].  Every other index then lives on side A (flag [1:w_i],
 * residue lambda_i [[-w, 1], [-w^2, w]]) or side B (flag [z_i:1], residue
 * lambda_i [[-z, z^2], [-1, z]]).  The zero-residue-sum condition reads
 *   1 + sum_{A'} lambda_i + sum_{B'} z_i^2 lambda_i = 0,
 *   sum_{A'} w_i lambda_i + sum_{B'} z_i lambda_i = 0,
 *   sum_{A'} w_i^2 lambda_i + sum_B lambda_i = 0,
 * (primes: pivots excluded), which determines the second pivot's lambda and,
 * after eliminating one index i0, leaves n-3 free flag coordinates and n-3
 * free nonzero lambdas as chart coordinates.  When A has a non-pivot index,
 * i0 is taken there and
 *   lambda_{i0} = -(1 + sum' lambda + sum z^2 lambda),
 *   w_{i0} = (sum' w lambda + sum z lambda) / (1 + sum' lambda + sum z^2 lambda);
 * otherwise i0 is a non-pivot B index and
 *   z_{i0} = (1 + sum' z^2 lambda) / (sum' z lambda),
 *   lambda_{i0} = -(sum' z lambda)^2 / (1 + sum' z^2 lambda).
 * Vanishing denominators signal the chart boundary.
 */
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "nullhyp/errors.hpp"
#include "nullhyp/higgs.hpp"
#include "nullhyp/mat2.hpp"
#include "nullhyp/rng.hpp"

namespace nullhyp {

enum class ChartSide { kA, kB };

/// Residue normal form of a chart point: side A has kernel line [1:w], side B
/// has kernel line [z:1].  Traceless and nilpotent for every argument.
inline Mat2 chart_residue(cx coord, cx lambda, ChartSide side) {
  if (std::abs(lambda) <= 0.0) {
    fail(ErrorCode::kPrecondition, "chart_residue: lambda must be nonzero");
  }
  if (side == ChartSide::kA) {
    return Mat2{-lambda * coord, lambda, -lambda * coord * coord, lambda * coord};
  }
  return Mat2{-lambda * coord, lambda * coord * coord, -lambda, lambda * coord};
}

/// Flag representative of a chart coordinate.
inline Vec2 chart_flag(cx coord, ChartSide side) {
  return side == ChartSide::kA ? Vec2{cx{1.0, 0.0}, coord} : Vec2{coord, cx{1.0, 0.0}};
}

/// One free index of a chart point.
struct ChartEntry {
  int index = 0;  ///< 0-based configuration index
  cx coord;       ///< w (side A) or z (side B)
  cx lambda;      ///< nonzero residue scale
};

/// A point of the coordinate chart: pivot pair, side partition, eliminated
/// index, and the n-3 free (coordinate, lambda) pairs.  Marked points ride
/// along so the chart determines full Higgs data.
struct ChartCoords {
  std::vector<cx> marked;
  std::array<int, 2> sigma{0, 1};  ///< pivots, sigma[0] in A, sigma[1] in B
  std::vector<int> side_a;         ///< sorted, contains sigma[0]
  std::vector<int> side_b;         ///< sorted, contains sigma[1]
  int eliminated = -1;             ///< i0
  std::vector<ChartEntry> free_entries;  ///< sorted by index

  int n() const { return static_cast<int>(marked.size()); }
};

namespace detail {

inline bool chart_side_is_a(const ChartCoords& c, int index) {
  return std::binary_search(c.side_a.begin(), c.side_a.end(), index);
}

/// Magnitude scale of the elimination sums, for relative degeneracy tests.
inline double chart_denominator_scale(const std::vector<ChartEntry>& entries) {
  double s = 1.0;
  for (const ChartEntry& e : entries) {
    const double am = std::abs(e.coord);
    s += std::abs(e.lambda) * (1.0 + am + am * am);
  }
  return s;
}

inline void validate_chart_structure(const ChartCoords& c) {
  const int n = c.n();
  if (n < 4) fail(ErrorCode::kSchema, "chart: need n >= 4");
  if (c.sigma[0] == c.sigma[1] || c.sigma[0] < 0 || c.sigma[1] < 0 ||
      c.sigma[0] >= n || c.sigma[1] >= n) {
    fail(ErrorCode::kSchema, "chart: invalid pivot pair");
  }
  std::vector<int> seen(n, 0);
  for (int i : c.side_a) {
    if (i < 0 || i >= n || seen[i]++) fail(ErrorCode::kSchema, "chart: bad side A");
  }
  for (int i : c.side_b) {
    if (i < 0 || i >= n || seen[i]++) fail(ErrorCode::kSchema, "chart: bad side B");
  }
  for (int i = 0; i < n; ++i) {
    if (seen[i] != 1) fail(ErrorCode::kSchema, "chart: sides must partition the indices");
  }
  if (!std::is_sorted(c.side_a.begin(), c.side_a.end()) ||
      !std::is_sorted(c.side_b.begin(), c.side_b.end())) {
    fail(ErrorCode::kSchema, "chart: sides must be sorted");
  }
  if (!chart_side_is_a(c, c.sigma[0]) || chart_side_is_a(c, c.sigma[1])) {
    fail(ErrorCode::kSchema, "chart: sigma[0] must lie in A and sigma[1] in B");
  }
  const bool a_has_spare = c.side_a.size() > 1;
  const bool elim_in_a = chart_side_is_a(c, c.eliminated);
  if (c.eliminated == c.sigma[0] || c.eliminated == c.sigma[1] ||
      c.eliminated < 0 || c.eliminated >= n || (a_has_spare && !elim_in_a) ||
      (!a_has_spare && elim_in_a)) {
    fail(ErrorCode::kSchema,
         "chart: eliminated index must be the designated non-pivot slot "
         "(side A when A has one, otherwise side B)");
  }
  if (static_cast<int>(c.free_entries.size()) != n - 3) {
    fail(ErrorCode::kSchema, "chart: expected n - 3 free entries");
  }
  int prev = -1;
  for (const ChartEntry& e : c.free_entries) {
    if (e.index <= prev || e.index == c.sigma[0] || e.index == c.sigma[1] ||
        e.index == c.eliminated || e.index >= n) {
      fail(ErrorCode::kSchema, "chart: free entries must cover the non-derived indices");
    }
    if (std::abs(e.lambda) <= 0.0) {
      fail(ErrorCode::kPrecondition, "chart: free lambdas must be nonzero");
    }
    prev = e.index;
  }
}

}  // namespace detail

/// Recover full Higgs data from chart coordinates.  The second pivot's
/// lambda and the eliminated index's pair come from the zero-sum equations,
/// so the residues sum to zero by construction.
inline HiggsData chart_reconstruct(const ChartCoords& c) {
  detail::validate_chart_structure(c);
  validate_marked(c.marked);
  if (static_cast<int>(c.marked.size()) != c.n()) {
    fail(ErrorCode::kSchema, "chart: marked point count mismatch");
  }
  const int n = c.n();
  const double scale = detail::chart_denominator_scale(c.free_entries);

  // Sums over the free entries (pivot sigma[0] contributes the constant 1).
  cx sum_a_l = 0.0, sum_a_wl = 0.0, sum_a_wwl = 0.0;
  cx sum_b_l = 0.0, sum_b_zl = 0.0, sum_b_zzl = 0.0;
  for (const ChartEntry& e : c.free_entries) {
    if (detail::chart_side_is_a(c, e.index)) {
      sum_a_l += e.lambda;
      sum_a_wl += e.coord * e.lambda;
      sum_a_wwl += e.coord * e.coord * e.lambda;
    } else {
      sum_b_l += e.lambda;
      sum_b_zl += e.coord * e.lambda;
      sum_b_zzl += e.coord * e.coord * e.lambda;
    }
  }

  cx coord0, lambda0;  // eliminated index values
  if (detail::chart_side_is_a(c, c.eliminated)) {
    const cx den = cx{1.0, 0.0} + sum_a_l + sum_b_zzl;
    if (std::abs(den) <= 1e-6 * scale) {
      fail(ErrorCode::kDegenerate,
           "chart_reconstruct: elimination denominator vanishes (chart boundary)");
    }
    lambda0 = -den;
    coord0 = (sum_a_wl + sum_b_zl) / den;
    sum_a_l += lambda0;
    sum_a_wl += coord0 * lambda0;
    sum_a_wwl += coord0 * coord0 * lambda0;
  } else {
    const cx num = cx{1.0, 0.0} + sum_b_zzl;
    const cx den = sum_b_zl;
    if (std::abs(den) <= 1e-6 * scale || std::abs(num) <= 1e-6 * scale) {
      fail(ErrorCode::kDegenerate,
           "chart_reconstruct: elimination denominator vanishes (chart boundary)");
    }
    coord0 = num / den;
    lambda0 = -den * den / num;
    sum_b_l += lambda0;
    sum_b_zl += coord0 * lambda0;
    sum_b_zzl += coord0 * coord0 * lambda0;
  }

  // Second pivot from the remaining equation; first pivot fixed at
  // (w, lambda) = (0, 1).
  const cx lambda2 = -(sum_b_l + sum_a_wwl);
  if (std::abs(lambda2) <= 1e-6 * scale) {
    fail(ErrorCode::kDegenerate,
         "chart_reconstruct: second pivot residue vanishes (chart boundary)");
  }

  std::vector<cx> coord(n, cx{0.0, 0.0});
  std::vector<cx> lambda(n, cx{0.0, 0.0});
  coord[c.sigma[0]] = 0.0;
  lambda[c.sigma[0]] = 1.0;
  coord[c.sigma[1]] = 0.0;
  lambda[c.sigma[1]] = lambda2;
  coord[c.eliminated] = coord0;
  lambda[c.eliminated] = lambda0;
  for (const ChartEntry& e : c.free_entries) {
    coord[e.index] = e.coord;
    lambda[e.index] = e.lambda;
  }

  HiggsData h;
  h.marked = c.marked;
  h.flags.reserve(n);
  h.residues.reserve(n);
  for (int i = 0; i < n; ++i) {
    const ChartSide side = detail::chart_side_is_a(c, i) ? ChartSide::kA : ChartSide::kB;
    h.flags.push_back(normalize_flag(chart_flag(coord[i], side)));
    h.residues.push_back(chart_residue(coord[i], lambda[i], side));
  }
  validate_higgs(h, 1e-9);
  return h;
}

/// Apply a unit-determinant change of frame to Higgs data: flags map by g,
/// residues by conjugation.
inline HiggsData higgs_gauge_transform(const HiggsData& h, const Mat2& g,
                                       double tol = kDefaultTol) {
  if (std::abs(det(g) - cx{1.0, 0.0}) > 1e-8) {
    fail(ErrorCode::kPrecondition, "higgs_gauge_transform: determinant must be 1");
  }
  const Mat2 ginv = inverse(g, tol);
  HiggsData out;
  out.marked = h.marked;
  out.flags.reserve(h.n());
  out.residues.reserve(h.n());
  for (int i = 0; i < h.n(); ++i) {
    out.flags.push_back(normalize_flag(g * h.flags[i]));
    out.residues.push_back(g * h.residues[i] * ginv);
  }
  return out;
}

struct ChartNormalization {
  ChartCoords coords;
  Mat2 g;  ///< unit determinant; transforming the input by g yields the
           ///< normalized representative (defined up to overall sign)
};

/// Normalize stable Higgs data into the chart with pivot pair sigma
/// (0-based): compute the unique (up to sign) frame, read off sides and
/// coordinates, pick the eliminated index, and verify that the elimination
/// formulas reproduce the dropped values.
inline ChartNormalization chart_normalize(const HiggsData& h,
                                          std::array<int, 2> sigma = {0, 1},
                                          double tol = 1e-8) {
  validate_higgs(h);
  const int n = h.n();
  if (n < 4) fail(ErrorCode::kSchema, "chart_normalize: need n >= 4");
  if (sigma[0] < 0 || sigma[1] < 0 || sigma[0] >= n || sigma[1] >= n ||
      sigma[0] == sigma[1]) {
    fail(ErrorCode::kSchema, "chart_normalize: invalid pivot pair");
  }
  if (!higgs_stable(h)) {
    fail(ErrorCode::kPrecondition, "chart_normalize: data is unstable");
  }
  const Vec2 v1 = normalize_flag(h.flags[sigma[0]]);
  const Vec2 v2 = normalize_flag(h.flags[sigma[1]]);
  if (flag_distance(v1, v2) <= 1e-9) {
    fail(ErrorCode::kDegenerate,
         "chart_normalize: pivot flags coincide; choose a different pivot pair");
  }

  // Frame sending the pivot flags to [1:0], [0:1] with determinant one...
  const Mat2 basis{v1.a, v2.a, v1.b, v2.b};
  const cx sqrt_det = std::sqrt(det(basis));
  const Mat2 c0 = sqrt_det * inverse(basis);
  // ...then a diagonal correction scaling the first pivot residue to
  // [[0, 1], [0, 0]].
  const Mat2 n1 = c0 * h.residues[sigma[0]] * inverse(c0);
  const cx kappa = n1.m01;
  if (std::abs(kappa) <= 1e-12 * std::max(1.0, residue_scale(h))) {
    fail(ErrorCode::kDegenerate,
         "chart_normalize: first pivot residue degenerates in the pivot frame");
  }
  const cx s = 1.0 / std::sqrt(kappa);
  const Mat2 g = Mat2::diag(s, 1.0 / s) * c0;
  const HiggsData hn = higgs_gauge_transform(h, g);

  // Classify sides and read coordinates off the normalized data.
  std::vector<int> side_a, side_b;
  std::vector<cx> coord(n), lambda(n);
  const double rscale = std::max(1.0, residue_scale(hn));
  for (int i = 0; i < n; ++i) {
    const Vec2 f = hn.flags[i];
    bool in_a;
    if (i == sigma[0]) {
      in_a = true;
    } else if (i == sigma[1]) {
      in_a = false;
    } else {
      in_a = std::abs(f.b) <= std::abs(f.a);
    }
    if (in_a) {
      if (std::abs(f.a) <= 1e-12) {
        fail(ErrorCode::kDegenerate, "chart_normalize: flag collapsed onto [0:1]");
      }
      side_a.push_back(i);
      coord[i] = f.b / f.a;
      lambda[i] = hn.residues[i].m01;
    } else {
      if (std::abs(f.b) <= 1e-12) {
        fail(ErrorCode::kDegenerate, "chart_normalize: flag collapsed onto [1:0]");
      }
      side_b.push_back(i);
      coord[i] = f.a / f.b;
      lambda[i] = -hn.residues[i].m10;
    }
    const ChartSide side = in_a ? ChartSide::kA : ChartSide::kB;
    if (std::abs(lambda[i]) <= 1e-12 * rscale) {
      fail(ErrorCode::kDegenerate,
           "chart_normalize: residue " + std::to_string(i + 1) + " vanishes in chart");
    }
    if (max_abs(hn.residues[i] - chart_residue(coord[i], lambda[i], side)) >
        1e-7 * rscale) {
      fail(ErrorCode::kDegenerate,
           "chart_normalize: residue " + std::to_string(i + 1) +
               " does not match its chart normal form");
    }
  }

  // Eliminated index: smallest admissible slot whose elimination denominator
  // is safely nonzero.  On side A the denominator equals -lambda_{i0} when
  // the zero-sum equations hold, but compute it from the sums so degeneracy
  // is detected the same way reconstruction would.
  const bool a_has_spare = side_a.size() > 1;
  const std::vector<int>& pool = a_has_spare ? side_a : side_b;
  const int skip = a_has_spare ? sigma[0] : sigma[1];

  auto try_candidate = [&](int i0, ChartCoords* out) {
    ChartCoords cc;
    cc.marked = h.marked;
    cc.sigma = sigma;
    cc.side_a = side_a;
    cc.side_b = side_b;
    cc.eliminated = i0;
    for (int i = 0; i < n; ++i) {
      if (i == sigma[0] || i == sigma[1] || i == i0) continue;
      cc.free_entries.push_back(ChartEntry{i, coord[i], lambda[i]});
    }
    const double scale = detail::chart_denominator_scale(cc.free_entries);
    if (a_has_spare) {
      cx den{1.0, 0.0};
      for (const ChartEntry& e : cc.free_entries) {
        den += detail::chart_side_is_a(cc, e.index) ? e.lambda
                                                    : e.coord * e.coord * e.lambda;
      }
      if (std::abs(den) <= 1e-6 * scale) return false;
    } else {
      cx num{1.0, 0.0}, den{0.0, 0.0};
      for (const ChartEntry& e : cc.free_entries) {
        num += e.coord * e.coord * e.lambda;
        den += e.coord * e.lambda;
      }
      if (std::abs(den) <= 1e-6 * scale || std::abs(num) <= 1e-6 * scale) return false;
    }
    *out = std::move(cc);
    return true;
  };

  ChartNormalization out;
  out.g = g;
  bool found = false;
  for (int i0 : pool) {
    if (i0 == skip) continue;
    if (try_candidate(i0, &out.coords)) {
      found = true;
      break;
    }
  }
  if (!found) {
    fail(ErrorCode::kDegenerate,
         "chart_normalize: every admissible elimination denominator vanishes "
         "(chart boundary); retry with a different pivot pair");
  }

  // The dropped values must be reproducible from the kept ones.
  const HiggsData back = chart_reconstruct(out.coords);
  for (int i : {out.coords.eliminated, sigma[1]}) {
    if (max_abs(back.residues[i] - hn.residues[i]) > tol * (1.0 + rscale)) {
      fail(ErrorCode::kDegenerate,
           "chart_normalize: elimination formulas disagree with the observed "
           "values (ill-conditioned data)");
    }
  }
  return out;
}

/// Random chart point with pivots (0, 1): free flags in the 0.9-disk, free
/// lambdas in a modulus annulus, membership coin-flipped, eliminated index by
/// the same smallest-admissible rule used in normalization.  Rejects samples
/// whose derived values leave the safe region, so normalization recovers the
/// same chart data.
inline ChartCoords random_chart(int n, Rng& rng) {
  if (n < 4) fail(ErrorCode::kSchema, "random_chart: need n >= 4");
  for (int attempt = 0; attempt < 512; ++attempt) {
    ChartCoords c;
    c.marked = default_marked(n);
    c.sigma = {0, 1};
    c.side_a.push_back(0);
    c.side_b.push_back(1);
    for (int i = 2; i < n; ++i) {
      (rng.uniform() < 0.5 ? c.side_a : c.side_b).push_back(i);
    }
    c.eliminated = -1;
    const bool a_has_spare = c.side_a.size() > 1;
    c.eliminated = a_has_spare ? c.side_a[1] : c.side_b[1];
    for (int i = 2; i < n; ++i) {
      if (i == c.eliminated) continue;
      const double r = 0.9 * std::sqrt(rng.uniform());
      const cx w = r * rng.unit_phase();
      const cx l = rng.uniform(0.5, 1.5) * rng.unit_phase();
      c.free_entries.push_back(ChartEntry{i, w, l});
    }
    HiggsData h;
    try {
      h = chart_reconstruct(c);
    } catch (const Error&) {
      continue;
    }
    // Keep the derived values inside the region where re-normalization
    // reads back the same sides and eliminated index.
    const ChartSide side =
        a_has_spare ? ChartSide::kA : ChartSide::kB;
    const Mat2& r0 = h.residues[c.eliminated];
    const cx l0 = side == ChartSide::kA ? r0.m01 : -r0.m10;
    const cx w0 = r0.m11 / l0;  // both normal forms have m11 = lambda * coord
    if (std::abs(w0) > 0.9 || std::abs(l0) < 1e-3 || std::abs(l0) > 1e3) continue;
    const cx l2 = -h.residues[1].m10;
    if (std::abs(l2) < 1e-3 || std::abs(l2) > 1e3) continue;
    return c;
  }
  fail(ErrorCode::kNonConvergence, "random_chart: rejection sampling failed");
}

}  // namespace nullhyp
