// Acceptance gate: the eight quantitative bars the library must clear, each
// printed as a single PASS/FAIL line with its measured extremes.
#include <gtest/gtest.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "nullhyp/nullhyp.hpp"

using namespace nullhyp;

namespace {

constexpr double kPi = 3.14159265358979323846;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

void report(int index, const std::string& name, bool pass,
            const std::string& detail) {
  std::cout << "ACCEPTANCE " << index << " (" << name
            << "): " << (pass ? "PASS" : "FAIL") << " — " << detail << "\n";
  EXPECT_TRUE(pass) << name << ": " << detail;
}

HyperpolygonPoint random_generic(int n, Rng& rng) {
  HyperpolygonPoint x;
  for (int i = 0; i < n; ++i) {
    const Vec2 t = rng.vec2_normal();
    x.p.push_back(RowVec2{t.a, t.b});
    x.q.push_back(rng.vec2_normal());
  }
  return x;
}

FlowDirection random_direction(int n, Rng& rng) {
  FlowDirection d;
  d.s = {rng.normal(), rng.normal(), rng.normal()};
  d.xi.resize(n);
  for (double& v : d.xi) v = rng.normal();
  return d;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Acceptance, Criterion1ComponentCensus) {
  const auto t0 = std::chrono::steady_clock::now();
  bool pass = true;
  for (int n = 4; n <= 12; ++n) {
    const auto census = component_census(n);
    const long expected = (1L << (n - 1)) - (n + 1);
    pass = pass && static_cast<long>(census.size()) == expected;
  }
  const auto c4 = component_census(4);
  pass = pass && c4 == std::vector<std::vector<int>>{{0, 1}, {0, 2}, {0, 3}};
  const double elapsed = seconds_since(t0);
  pass = pass && elapsed < 1.0;
  std::ostringstream d;
  d << "counts equal 2^(n-1)-(n+1) for n=4..12, n=4 gives 3 components, in "
    << elapsed << " s";
  report(1, "component census", pass, d.str());
}

TEST(Acceptance, Criterion2SolverConvergence) {
  Rng rng(20250801);
  bool pass = true;
  double max_residual = 0.0, max_time = 0.0, max_mismatch = 0.0;
  int max_iters = 0;
  for (int n = 4; n <= 10; ++n) {
    for (int trial = 0; trial < 100; ++trial) {
      const HyperpolygonPoint x = random_stable_complex_zero(n, rng);
      const auto t0 = std::chrono::steady_clock::now();
      const SolveResult r = kn_solve(x);
      max_time = std::max(max_time, seconds_since(t0));
      max_residual = std::max(max_residual, r.report.mu_real_residual);
      max_iters = std::max(max_iters, r.report.iterations);

      const SolveResult ra = kn_solve(act(x, random_complex_gauge(n, rng, 0.3)));
      const SolveResult rb = kn_solve(act(x, random_complex_gauge(n, rng, 0.3)));
      max_mismatch =
          std::max(max_mismatch, orbit_distance_compact(ra.point, rb.point));
    }
  }
  pass = max_residual <= 1e-9 && max_iters <= 10000 && max_time < 1.0 &&
         max_mismatch <= 1e-8;
  std::ostringstream d;
  d << "700 solves (100 per n=4..10): max |mu_R| " << max_residual
    << ", max iterations " << max_iters << ", max time " << max_time
    << " s, max orbit mismatch across perturbed starts " << max_mismatch;
  report(2, "moment-map solver", pass, d.str());
}

TEST(Acceptance, Criterion3DerivativeFidelity) {
  Rng rng(20250802);
  double max_fd_err = 0.0, min_curvature = 1e300, min_stable_curv = 1e300;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 4 + trial % 5;
    const HyperpolygonPoint x = random_generic(n, rng);
    const FlowDirection dir = random_direction(n, rng);
    const double d0 = kn_directional_derivative(x, dir);
    const double h = 1e-5;
    const double fd =
        (kn_value(x, gauge_exp(dir, h)) - kn_value(x, gauge_exp(dir, -h))) /
        (2.0 * h);
    max_fd_err =
        std::max(max_fd_err, std::abs(d0 - fd) / std::max(1.0, std::abs(d0)));
    min_curvature = std::min(
        min_curvature, kn_second_derivative(x, dir, rng.uniform(-1.0, 1.0)));
  }
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 4 + trial % 5;
    const HyperpolygonPoint x = random_stable_complex_zero(n, rng);
    FlowDirection dir = random_direction(n, rng);
    const double nn = chart_norm(dir);
    for (double& s : dir.s) s /= nn;
    for (double& v : dir.xi) v /= nn;
    min_stable_curv = std::min(min_stable_curv, kn_second_derivative(x, dir));
  }
  const bool pass =
      max_fd_err <= 1e-6 && min_curvature >= -1e-12 && min_stable_curv > 1e-8;
  std::ostringstream d;
  d << "1000 finite-difference samples: max relative error " << max_fd_err
    << "; min curvature sampled " << min_curvature
    << "; min unit-direction curvature at 200 stable points "
    << min_stable_curv;
  report(3, "derivative fidelity", pass, d.str());
}

TEST(Acceptance, Criterion4TrialityRoundTrips) {
  Rng rng(20250803);
  double max_higgs_rt = 0.0, max_sum = 0.0, max_nilp = 0.0, max_poly_rt = 0.0;
  for (int n = 4; n <= 8; ++n) {
    const auto census = component_census(n);
    for (int trial = 0; trial < 100; ++trial) {
      // configuration -> parabolic data -> configuration.
      const HyperpolygonPoint x = random_stable_complex_zero(n, rng);
      const HiggsData hd = from_hyperpolygon(x, default_marked(n));
      const HyperpolygonPoint y = to_hyperpolygon(hd);
      max_higgs_rt = std::max(
          max_higgs_rt, orbit_distance_compact(kn_solve(x).point,
                                               kn_solve(y).point));
      Mat2 sum = Mat2::zero();
      for (const Mat2& r : hd.residues) {
        sum = sum + r;
        max_nilp = std::max(max_nilp, max_abs(r * r));
      }
      max_sum = std::max(max_sum, max_abs(sum));

      // block configuration -> polygon -> block configuration.
      const auto& s = census[trial % census.size()];
      const HyperpolygonPoint xb = random_zs(s, n, rng);
      const NullPolygon p = zs_to_polygon(xb, s);
      const HyperpolygonPoint lifted = polygon_to_zs(p);
      std::vector<int> order = s;
      for (int i : complement_of(s, n)) order.push_back(i);
      max_poly_rt = std::max(
          max_poly_rt, orbit_distance_compact(reindex(xb, order), lifted));
    }
  }
  const bool pass = max_higgs_rt <= 1e-8 && max_poly_rt <= 1e-8 &&
                    max_sum <= 1e-10 && max_nilp <= 1e-10;
  std::ostringstream d;
  d << "500 instances per direction (100 per n=4..8): max parabolic round-trip "
       "residual "
    << max_higgs_rt << ", max polygon round-trip residual " << max_poly_rt
    << ", max residue sum " << max_sum << ", max nilpotency defect " << max_nilp;
  report(4, "triality round trips", pass, d.str());
}

TEST(Acceptance, Criterion5InvolutionSuite) {
  Rng rng(20250804);
  bool iota_exact = true;
  for (int trial = 0; trial < 50; ++trial) {
    const HyperpolygonPoint x = random_generic(4 + trial % 5, rng);
    iota_exact = iota_exact && point_distance(iota(iota(x)), x) == 0.0;
  }

  int label_failures = 0, total = 0;
  double max_off_pattern = 0.0;
  for (int n : {4, 6, 8}) {
    for (const auto& s : component_census(n)) {
      for (int trial = 0; trial < 100; ++trial) {
        ++total;
        const HyperpolygonPoint xb = random_zs(s, n, rng);
        const HyperpolygonPoint x = act(xb, random_compact_gauge(n, rng));
        const auto w = classify_fixed(x);
        if (!w || w->s != s) {
          ++label_failures;
          continue;
        }
        // induced residues alternate strictly upper/lower triangular.
        const HiggsData hd = from_hyperpolygon(w->block_point, default_marked(n));
        std::vector<bool> in_s(n, false);
        for (int k : s) in_s[k] = true;
        for (int k = 0; k < n; ++k) {
          const Mat2& r = hd.residues[k];
          const double off =
              in_s[k]
                  ? std::max({std::abs(r.m00), std::abs(r.m10), std::abs(r.m11)})
                  : std::max({std::abs(r.m00), std::abs(r.m01), std::abs(r.m11)});
          max_off_pattern = std::max(max_off_pattern, off);
        }
      }
    }
  }

  int false_positives = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const HyperpolygonPoint x =
        kn_solve(random_stable_complex_zero(4 + trial % 5, rng)).point;
    if (classify_fixed(x)) ++false_positives;
  }

  const bool pass = iota_exact && label_failures == 0 && false_positives == 0 &&
                    max_off_pattern <= 1e-10;
  std::ostringstream d;
  d << "swap map exactly involutive; " << total
    << " labeled block points classified with " << label_failures
    << " label failures; 100 generic points gave " << false_positives
    << " false positives; max off-pattern residue entry " << max_off_pattern;
  report(5, "involution classification", pass, d.str());
}

TEST(Acceptance, Criterion6MinkowskiAnchors) {
  // exact fixture edges.
  const NullPolygon p4 = zs_to_polygon(p4_fixture(), {0, 1});
  const MinkVector want[4] = {{1, 0, -1}, {-1, 0, -1}, {1, 0, 1}, {-1, 0, 1}};
  bool edges_exact = true;
  for (int i = 0; i < 4; ++i) {
    edges_exact = edges_exact && p4.edges[i].x == want[i].x &&
                  p4.edges[i].y == want[i].y && p4.edges[i].t == want[i].t;
  }

  // the closed-form family realizes every even diagonal length exactly.
  bool family_exact = true;
  for (int m = 1; m <= 1000; ++m) {
    family_exact = family_exact && diagonal_length(m_family(2, 2, m)) == 2.0 * m;
  }

  // bending preserves the invariants over a thousand steps and closes up.
  NullPolygon p = p4;
  double drift = 0.0;
  const double step = 2.0 * kPi / 1000;
  for (int i = 0; i < 1000; ++i) {
    p = bend(p, step);
    MinkVector closure{};
    for (const MinkVector& e : p.edges) {
      closure = closure + e;
      drift = std::max(drift, std::abs(mink(e, e)));
    }
    drift = std::max(drift, euclid_norm(closure));
    drift = std::max(drift, std::abs(diagonal_length(p) - 2.0));
  }
  double return_err = 0.0;
  const NullPolygon full = bend(p4, 2.0 * kPi);
  for (int i = 0; i < 4; ++i) {
    return_err = std::max(return_err, euclid_norm(full.edges[i] - p4.edges[i]));
    return_err = std::max(return_err, euclid_norm(p.edges[i] - p4.edges[i]));
  }

  const bool pass =
      edges_exact && family_exact && drift <= 1e-10 && return_err <= 1e-10;
  std::ostringstream d;
  d << "fixture edges exact; diagonal length 2m exact for m=1..1000; max "
       "bending drift over 1000 steps "
    << drift << "; full-turn return error " << return_err;
  report(6, "Minkowski anchors", pass, d.str());
}

TEST(Acceptance, Criterion7CoordinateCharts) {
  Rng rng(20250805);
  double max_rt = 0.0, max_gauge = 0.0, max_sum = 0.0;
  bool structure_ok = true;
  for (int n = 4; n <= 8; ++n) {
    for (int trial = 0; trial < 100; ++trial) {
      const ChartCoords c = random_chart(n, rng);
      const HiggsData h = chart_reconstruct(c);

      Mat2 sum = Mat2::zero();
      for (const Mat2& r : h.residues) sum = sum + r;
      max_sum = std::max(max_sum, max_abs(sum));

      const ChartNormalization back = chart_normalize(h);
      const ChartNormalization moved =
          chart_normalize(higgs_gauge_transform(h, random_complex_gauge(n, rng).a));
      for (const ChartNormalization* cand : {&back, &moved}) {
        const ChartCoords& cc = cand->coords;
        if (cc.side_a != c.side_a || cc.side_b != c.side_b ||
            cc.eliminated != c.eliminated ||
            cc.free_entries.size() != c.free_entries.size()) {
          structure_ok = false;
          continue;
        }
        double& target = (cand == &back) ? max_rt : max_gauge;
        for (std::size_t k = 0; k < cc.free_entries.size(); ++k) {
          target = std::max(target, std::abs(cc.free_entries[k].coord -
                                             c.free_entries[k].coord));
          target = std::max(target, std::abs(cc.free_entries[k].lambda -
                                             c.free_entries[k].lambda));
        }
      }
    }
  }
  const bool pass =
      structure_ok && max_rt <= 1e-8 && max_gauge <= 1e-8 && max_sum <= 1e-12;
  std::ostringstream d;
  d << "500 charts (100 per n=4..8): max round-trip coordinate error " << max_rt
    << ", max error after a random determinant-one pre-transformation "
    << max_gauge << ", max reconstructed residue sum " << max_sum;
  report(7, "coordinate charts", pass, d.str());
}

TEST(Acceptance, Criterion8Determinism) {
  // library level: every suite report is byte-identical across runs.
  bool lib_identical = true;
  for (const std::string& name : verify_suite_names()) {
    const std::string a = dump_json(run_verify_suite(name, 41));
    const std::string b = dump_json(run_verify_suite(name, 41));
    lib_identical = lib_identical && a == b && !a.empty();
  }
  // process level: two CLI invocations write byte-identical report files.
  const std::string fa = "nullhyp_acceptance_verify_a.json";
  const std::string fb = "nullhyp_acceptance_verify_b.json";
  const std::string base = std::string(NULLHYP_CLI_PATH) +
                           " verify census --seed 41 --out ";
  const int ra = std::system((base + fa).c_str());
  const int rb = std::system((base + fb).c_str());
  const bool cli_identical =
      ra == 0 && rb == 0 && slurp(fa) == slurp(fb) && !slurp(fa).empty();
  std::remove(fa.c_str());
  std::remove(fb.c_str());

  const bool pass = lib_identical && cli_identical;
  report(8, "deterministic verification", pass,
         std::string("suite reports byte-identical across runs (library: ") +
             (lib_identical ? "yes" : "no") + ", subprocess: " +
             (cli_identical ? "yes" : "no") + ")");
}
