/**
 * @file verify.hpp
 * @brief Deterministic self-verification suites.  Each suite draws all of its
 *        randomness from one seed and reports every invariant it measured,
 *        so a fixed seed yields a byte-identical report.
 */
#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "nullhyp/charts.hpp"
#include "nullhyp/fixtures.hpp"
#include "nullhyp/gauge.hpp"
#include "nullhyp/higgs.hpp"
#include "nullhyp/hyperpolygon.hpp"
#include "nullhyp/involution.hpp"
#include "nullhyp/json_io.hpp"
#include "nullhyp/kempf_ness.hpp"
#include "nullhyp/mat2.hpp"
#include "nullhyp/minkowski.hpp"
#include "nullhyp/rng.hpp"

namespace nullhyp {

/// Optional overrides for suite coverage; zero means "use the suite default".
struct VerifyConfig {
  int n_lo = 0;    ///< smallest edge count to exercise
  int n_hi = 0;    ///< largest edge count to exercise
  int count = 0;   ///< instances per case (suites scale their loops by this)
};

/// Accumulates named residual checks into a JSON report.
class SuiteRecorder {
 public:
  SuiteRecorder(std::string suite, std::uint64_t seed)
      : suite_(std::move(suite)), seed_(seed) {}

  /// Record a measured residual against its tolerance.
  void check(const std::string& name, int instances, double residual, double tol) {
    const bool ok = residual <= tol;
    if (pass_ && !ok) first_failure_ = name;
    pass_ = pass_ && ok;
    checks_.push_back(json{{"name", name},
                           {"instances", instances},
                           {"max_residual", residual},
                           {"tolerance", tol},
                           {"pass", ok}});
  }

  /// Record a failure count (passes only when zero).
  void count_failures(const std::string& name, int instances, int failures) {
    check(name, instances, static_cast<double>(failures), 0.0);
  }

  bool pass() const { return pass_; }
  const std::string& first_failure() const { return first_failure_; }

  json report() const {
    json r{{"type", "verify_report"},
           {"suite", suite_},
           {"seed", seed_},
           {"pass", pass_},
           {"checks", checks_}};
    if (!pass_) r["first_failure"] = first_failure_;
    return r;
  }

 private:
  std::string suite_;
  std::uint64_t seed_;
  bool pass_ = true;
  std::string first_failure_;
  json checks_ = json::array();
};

namespace detail {

/// FNV-1a, so suite streams stay identical across standard libraries.
inline std::uint64_t suite_key(const std::string& name) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : name) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline int pick(int requested, int fallback) {
  return requested > 0 ? requested : fallback;
}

inline HyperpolygonPoint random_generic(int n, Rng& rng) {
  HyperpolygonPoint x;
  x.p.reserve(n);
  x.q.reserve(n);
  for (int i = 0; i < n; ++i) {
    const Vec2 a = rng.vec2_normal();
    x.p.push_back(RowVec2{a.a, a.b});
    x.q.push_back(rng.vec2_normal());
  }
  return x;
}

inline FlowDirection random_direction(int n, Rng& rng) {
  FlowDirection d;
  d.s = {rng.normal(), rng.normal(), rng.normal()};
  d.xi.resize(n);
  for (double& v : d.xi) v = rng.normal();
  return d;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Suites
// ---------------------------------------------------------------------------

inline void suite_moment(SuiteRecorder& rec, Rng& rng, const VerifyConfig& cfg) {
  const HyperpolygonPoint x4 = p4_fixture();
  rec.check("fixture_on_zero_level", 1,
            std::max(mu_real_norm(x4), mu_complex_norm(x4)), 1e-15);

  GaugeElement g4 = GaugeElement::identity(4, GaugeFlavor::kComplex);
  g4.a = Mat2::diag(cx{2.0, 0.0}, cx{0.5, 0.0});
  rec.check("fixture_objective_value", 1, std::abs(kn_value(x4, g4) - 2.25), 1e-12);

  const int lo = detail::pick(cfg.n_lo, 4);
  const int hi = detail::pick(cfg.n_hi, 8);
  const int count = detail::pick(cfg.count, 40);
  double level = 0.0, gauge_drift = 0.0;
  int unstable = 0;
  for (int i = 0; i < count; ++i) {
    const int n = lo + i % (hi - lo + 1);
    const HyperpolygonPoint x = random_stable_complex_zero(n, rng);
    level = std::max(level, mu_complex_norm(x));
    if (!is_stable(x)) ++unstable;
    const HyperpolygonPoint y = act(x, random_compact_gauge(n, rng));
    gauge_drift = std::max(gauge_drift,
                           std::abs(mu_real_norm(y) - mu_real_norm(x)) +
                               std::abs(mu_complex_norm(y) - mu_complex_norm(x)));
  }
  rec.check("samples_on_complex_zero", count, level, 1e-9);
  rec.count_failures("samples_stable", count, unstable);
  rec.check("residual_norms_gauge_invariant", count, gauge_drift, 1e-9);
}

inline void suite_kempfness(SuiteRecorder& rec, Rng& rng, const VerifyConfig& cfg) {
  const int lo = detail::pick(cfg.n_lo, 4);
  const int hi = detail::pick(cfg.n_hi, 6);
  const int span = hi - lo + 1;

  const int solves = detail::pick(cfg.count, 12);
  double residual = 0.0, match = 0.0;
  for (int i = 0; i < solves; ++i) {
    const int n = lo + i % span;
    const HyperpolygonPoint x = random_stable_complex_zero(n, rng);
    const SolveResult r1 = kn_solve(x);
    residual = std::max(residual, r1.report.mu_real_residual);
    const SolveResult r2 = kn_solve(act(x, random_complex_gauge(n, rng, 0.3)));
    match = std::max(match, orbit_distance_compact(r1.point, r2.point));
  }
  rec.check("solve_residual", solves, residual, 1e-9);
  rec.check("perturbed_starts_match", solves, match, 1e-8);

  const int samples = detail::pick(cfg.count > 0 ? 16 * cfg.count : 0, 200);
  double fd_rel = 0.0, ray_rel = 0.0, neg_curv = 0.0, hess_rel = 0.0;
  for (int i = 0; i < samples; ++i) {
    const int n = lo + i % span;
    const HyperpolygonPoint x = detail::random_generic(n, rng);
    const FlowDirection dir = detail::random_direction(n, rng);
    const KnRay ray(x, dir);

    const double d0 = kn_directional_derivative(x, dir);
    const double h = 1e-5;
    const double fd =
        (kn_value(x, gauge_exp(dir, h)) - kn_value(x, gauge_exp(dir, -h))) / (2 * h);
    fd_rel = std::max(fd_rel, std::abs(d0 - fd) / std::max(1.0, std::abs(d0)));
    ray_rel = std::max(ray_rel,
                       std::abs(d0 - ray.derivative(0.0)) / std::max(1.0, std::abs(d0)));

    const double t = rng.uniform(-0.5, 0.5);
    neg_curv = std::max(neg_curv, -ray.second_derivative(t));

    // Hessian quadratic form against the exact ray curvature at the origin.
    const int m = 3 + n;
    const std::vector<double> hess = kn_hessian(x);
    std::vector<double> u(m);
    u[0] = dir.s[0];
    u[1] = dir.s[1];
    u[2] = dir.s[2];
    for (int k = 0; k < n; ++k) u[3 + k] = dir.xi[k];
    double quad = 0.0;
    for (int r = 0; r < m; ++r) {
      for (int c = 0; c < m; ++c) quad += u[r] * hess[r * m + c] * u[c];
    }
    const double exact = ray.second_derivative(0.0);
    hess_rel = std::max(hess_rel, std::abs(quad - exact) / std::max(1.0, exact));
  }
  rec.check("directional_derivative_matches_fd", samples, fd_rel, 1e-6);
  rec.check("ray_derivative_matches_pairing", samples, ray_rel, 1e-10);
  rec.check("curvature_nonnegative", samples, neg_curv, 1e-12);
  rec.check("hessian_matches_ray_curvature", samples, hess_rel, 1e-8);

  const int stable_samples = detail::pick(cfg.count > 0 ? 2 * cfg.count : 0, 30);
  double min_curv = 1e300;
  for (int i = 0; i < stable_samples; ++i) {
    const int n = lo + i % span;
    const HyperpolygonPoint x = random_stable_complex_zero(n, rng);
    FlowDirection dir = detail::random_direction(n, rng);
    const double nn = chart_norm(dir);
    for (auto& s : dir.s) s /= nn;
    for (auto& v : dir.xi) v /= nn;
    min_curv = std::min(min_curv, kn_second_derivative(x, dir));
  }
  rec.check("curvature_strictly_positive_at_stable", stable_samples,
            std::max(0.0, 1e-8 - min_curv), 0.0);
}

inline void suite_higgs_roundtrip(SuiteRecorder& rec, Rng& rng,
                                  const VerifyConfig& cfg) {
  // Closed-form fixture values.
  const HyperpolygonPoint x4 = p4_fixture();
  const HiggsData h4 = from_hyperpolygon(x4, p4_marked());
  const Mat2 expect[4] = {Mat2{cx{0, 0}, cx{1, 0}, cx{0, 0}, cx{0, 0}},
                          Mat2{cx{0, 0}, cx{-1, 0}, cx{0, 0}, cx{0, 0}},
                          Mat2{cx{0, 0}, cx{0, 0}, cx{1, 0}, cx{0, 0}},
                          Mat2{cx{0, 0}, cx{0, 0}, cx{-1, 0}, cx{0, 0}}};
  double fix = 0.0;
  for (int i = 0; i < 4; ++i) fix = std::max(fix, max_abs(h4.residues[i] - expect[i]));
  rec.check("fixture_residues", 4, fix, 1e-15);
  rec.check("fixture_field_value", 1,
            max_abs(higgs_eval(h4, cx{0, 0}) -
                    Mat2{cx{0, 0}, cx{-2, 0}, cx{0, 2}, cx{0, 0}}),
            1e-12);

  // Decay at infinity and the residue limit at a pole.
  double sum_n = 0.0;
  for (const Mat2& r : h4.residues) sum_n += max_abs(r);
  const double far = max_abs(higgs_eval(h4, cx{1e6, 0.0}));
  rec.check("field_quadratic_decay", 1,
            std::max(0.0, far - 1e-6 * sum_n * marked_scale(h4.marked)), 0.0);
  const cx z_near = h4.marked[0] + cx{1e-8, 0.0};
  rec.check("field_residue_limit", 1,
            max_abs((z_near - h4.marked[0]) * higgs_eval(h4, z_near) - h4.residues[0]),
            1e-6);

  const int lo = detail::pick(cfg.n_lo, 4);
  const int hi = detail::pick(cfg.n_hi, 8);
  const int per_n = detail::pick(cfg.count, 3);
  double orbit = 0.0, sum_res = 0.0, nilp = 0.0, torus = 0.0, theta2 = 0.0;
  int instances = 0;
  for (int n = lo; n <= hi; ++n) {
    for (int i = 0; i < per_n; ++i) {
      ++instances;
      const HyperpolygonPoint x = random_stable_complex_zero(n, rng);
      const HiggsData h = from_hyperpolygon(x, default_marked(n));
      const HyperpolygonPoint y = to_hyperpolygon(h);
      orbit = std::max(orbit, orbit_distance_compact(kn_solve(x).point,
                                                     kn_solve(y).point));

      Mat2 s = Mat2::zero();
      for (const Mat2& r : h.residues) {
        s = s + r;
        nilp = std::max(nilp, max_abs(r * r));
      }
      sum_res = std::max(sum_res, max_abs(s));

      // A diagonal torus gauge leaves the parabolic data unchanged.
      GaugeElement tg = GaugeElement::identity(n, GaugeFlavor::kComplex);
      for (cx& e : tg.e) e = rng.uniform(0.5, 2.0) * rng.unit_phase();
      const HiggsData ht = from_hyperpolygon(act(x, tg), default_marked(n));
      for (int k = 0; k < n; ++k) {
        torus = std::max(torus, max_abs(ht.residues[k] - h.residues[k]));
        torus = std::max(torus, abs(ht.flags[k] - h.flags[k]));
      }

      const HiggsData hh = theta_involution(theta_involution(h));
      for (int k = 0; k < n; ++k) {
        theta2 = std::max(theta2, max_abs(hh.residues[k] - h.residues[k]));
        theta2 = std::max(theta2, abs(hh.flags[k] - h.flags[k]));
      }
    }
  }
  rec.check("round_trip_orbit_residual", instances, orbit, 1e-8);
  rec.check("residue_sum", instances, sum_res, 1e-10);
  rec.check("residue_nilpotency", instances, nilp, 1e-10);
  rec.check("torus_invariance", instances, torus, 1e-12);
  rec.check("theta_involutive", instances, theta2, 1e-12);

  // The flag/residue duality corresponds to the transpose involution.
  double inter = 0.0;
  for (int i = 0; i < 4; ++i) {
    const int n = 4 + i % 2;
    const HyperpolygonPoint x = random_stable_complex_zero(n, rng);
    const HiggsData h = from_hyperpolygon(x, default_marked(n));
    const HyperpolygonPoint via_theta = to_hyperpolygon(theta_involution(h));
    const HyperpolygonPoint via_iota = iota(to_hyperpolygon(h));
    inter = std::max(inter, orbit_distance_compact(kn_solve(via_theta).point,
                                                   kn_solve(via_iota).point));
  }
  rec.check("theta_matches_transpose_involution", 4, inter, 1e-8);
}

inline void suite_involution(SuiteRecorder& rec, Rng& rng, const VerifyConfig& cfg) {
  double invol = 0.0;
  for (int i = 0; i < 20; ++i) {
    const HyperpolygonPoint x = detail::random_generic(4 + i % 5, rng);
    invol = std::max(invol, point_distance(iota(iota(x)), x));
  }
  rec.check("iota_involutive", 20, invol, 0.0);

  double level_drift = 0.0;
  for (int i = 0; i < 10; ++i) {
    const HyperpolygonPoint x =
        kn_solve(random_stable_complex_zero(4 + i % 3, rng)).point;
    const HyperpolygonPoint y = iota(x);
    level_drift = std::max(
        level_drift, std::max(mu_real_norm(y) - mu_real_norm(x),
                              mu_complex_norm(y) - mu_complex_norm(x)));
  }
  rec.check("iota_preserves_levels", 10, level_drift, 1e-12);

  const int lo = detail::pick(cfg.n_lo, 4);
  const int hi = detail::pick(cfg.n_hi, 6);
  const int per_s = detail::pick(cfg.count, 2);
  int label_fail = 0, witness_n = 0;
  double witness = 0.0, tri = 0.0;
  for (int n = lo; n <= hi; ++n) {
    for (const std::vector<int>& s : component_census(n)) {
      for (int i = 0; i < per_s; ++i) {
        ++witness_n;
        const HyperpolygonPoint xb = random_zs(s, n, rng);
        const HyperpolygonPoint x = act(xb, random_compact_gauge(n, rng));
        const auto w = classify_fixed(x);
        if (!w || w->s != s) {
          ++label_fail;
          continue;
        }
        witness = std::max(witness, point_distance(act(x, w->gauge), iota(x)));

        const HiggsData h = from_hyperpolygon(w->block_point, default_marked(n));
        std::vector<bool> in_s(n, false);
        for (int k : s) in_s[k] = true;
        for (int k = 0; k < n; ++k) {
          const Mat2& r = h.residues[k];
          const double off =
              in_s[k] ? std::max({std::abs(r.m00), std::abs(r.m10), std::abs(r.m11)})
                      : std::max({std::abs(r.m00), std::abs(r.m01), std::abs(r.m11)});
          tri = std::max(tri, off);
        }
      }
    }
  }
  rec.count_failures("classify_recovers_label", witness_n, label_fail);
  rec.check("witness_gauge_residual", witness_n, witness, 1e-6);
  rec.check("block_residues_triangular", witness_n, tri, 1e-10);

  int fixed_hits = 0;
  for (int i = 0; i < 20; ++i) {
    const HyperpolygonPoint x = kn_solve(random_stable_complex_zero(5, rng)).point;
    if (classify_fixed(x)) ++fixed_hits;
  }
  rec.count_failures("generic_points_not_fixed", 20, fixed_hits);
}

inline void suite_census(SuiteRecorder& rec, Rng&, const VerifyConfig& cfg) {
  const int lo = detail::pick(cfg.n_lo, 4);
  const int hi = detail::pick(cfg.n_hi, 12);
  int formula_fail = 0;
  for (int n = lo; n <= hi; ++n) {
    const auto cs = component_census(n);
    const long expected = (1L << (n - 1)) - (n + 1);
    if (static_cast<long>(cs.size()) != expected) ++formula_fail;
  }
  rec.count_failures("census_count_matches_formula", hi - lo + 1, formula_fail);
  rec.count_failures("census_empty_for_n3", 1,
                     component_census(3).empty() ? 0 : 1);

  const auto c4 = component_census(4);
  const std::vector<std::vector<int>> want{{0, 1}, {0, 2}, {0, 3}};
  rec.count_failures("census_n4_explicit", 1, c4 == want ? 0 : 1);

  int order_fail = 0;
  const auto c8 = component_census(8);
  for (std::size_t i = 1; i < c8.size(); ++i) {
    const bool ok = c8[i - 1].size() < c8[i].size() ||
                    (c8[i - 1].size() == c8[i].size() && c8[i - 1] < c8[i]);
    if (!ok) ++order_fail;
  }
  rec.count_failures("census_ordering", static_cast<int>(c8.size()), order_fail);
}

inline void suite_polygon_roundtrip(SuiteRecorder& rec, Rng& rng,
                                    const VerifyConfig& cfg) {
  const HyperpolygonPoint x4 = p4_fixture();
  const std::vector<int> s4{0, 1};
  const NullPolygon p4 = zs_to_polygon(x4, s4);
  const MinkVector want[4] = {{1, 0, -1}, {-1, 0, -1}, {1, 0, 1}, {-1, 0, 1}};
  double fix = 0.0;
  for (int i = 0; i < 4; ++i) fix = std::max(fix, euclid_norm(p4.edges[i] - want[i]));
  rec.check("fixture_edges", 1, fix, 0.0);
  rec.check("fixture_diagonal_length", 1, std::abs(diagonal_length(p4) - 2.0), 0.0);

  const int lo = detail::pick(cfg.n_lo, 4);
  const int hi = detail::pick(cfg.n_hi, 8);
  const int per_n = detail::pick(cfg.count, 3);
  double orbit = 0.0, rot = 0.0, isom = 0.0, axis = 0.0;
  int instances = 0, equiv_fail = 0;
  for (int n = lo; n <= hi; ++n) {
    const auto census = component_census(n);
    for (int i = 0; i < per_n; ++i) {
      ++instances;
      const std::vector<int>& s = census[i % census.size()];
      const HyperpolygonPoint xb = random_zs(s, n, rng);
      const NullPolygon p = zs_to_polygon(xb, s);

      // Lift back and compare orbits after listing S first.
      std::vector<int> order = s;
      for (int k : complement_of(s, n)) order.push_back(k);
      const HyperpolygonPoint xp = reindex(xb, order);
      const HyperpolygonPoint y = polygon_to_zs(p);
      orbit = std::max(orbit, orbit_distance_compact(xp, y));

      // A diagonal compact gauge rotates the polygon about the axis by minus
      // twice the phase.
      const double theta = rng.uniform(0.0, 2 * M_PI);
      GaugeElement k = GaugeElement::identity(n);
      k.a = Mat2::diag(cx{std::cos(theta), std::sin(theta)},
                       cx{std::cos(theta), -std::sin(theta)});
      for (cx& e : k.e) e = rng.unit_phase();
      const NullPolygon p2 = zs_to_polygon(act(xb, k), s);
      const Mat3 r = rotation_about_t(-2.0 * theta);
      for (int e = 0; e < p.n(); ++e) {
        rot = std::max(rot, euclid_norm(p2.edges[e] - apply(r, p.edges[e])));
      }

      // A random isometry preserves closure, nullity, and products; the
      // normalization returns the diagonal to the axis.
      const double rr = rng.uniform(0.0, 1.5);
      const Mat3 g = su11_coadjoint_matrix(
          std::cosh(rr) * rng.unit_phase(), std::sinh(rr) * rng.unit_phase());
      NullPolygon pg = p;
      for (MinkVector& u : pg.edges) u = apply(g, u);
      validate_polygon(pg, 1e-8);
      MinkVector closure{};
      for (int e = 0; e < pg.n(); ++e) {
        closure = closure + pg.edges[e];
        isom = std::max(isom, std::abs(mink(pg.edges[e], pg.edges[e])));
        isom = std::max(isom, std::abs(mink(pg.edges[e], pg.edges[(e + 1) % pg.n()]) -
                                       mink(p.edges[e], p.edges[(e + 1) % p.n()])));
      }
      isom = std::max(isom, euclid_norm(closure));

      const NormalizedPolygon np = normalize_diagonal(pg);
      const MinkVector w = past_diagonal(np.polygon);
      axis = std::max(axis, std::hypot(w.x, w.y));
      if (!polygons_equivalent(pg, p, 1e-8)) ++equiv_fail;
    }
  }
  rec.check("round_trip_orbit_residual", instances, orbit, 1e-8);
  rec.check("diagonal_gauge_rotates_polygon", instances, rot, 1e-10);
  rec.check("isometries_preserve_structure", instances, isom, 1e-9);
  rec.check("normalization_puts_diagonal_on_axis", instances, axis, 1e-10);
  rec.count_failures("isometry_classes_equal", instances, equiv_fail);
}

inline void suite_charts(SuiteRecorder& rec, Rng& rng, const VerifyConfig& cfg) {
  // Closed-form fixture: the 4-edge configuration in the chart with pivots
  // (1, 3) has sides {1,2} / {3,4}, eliminated index 2, and one free entry
  // (index 4, coordinate 0, lambda 1).
  const HiggsData h4 = from_hyperpolygon(p4_fixture(), p4_marked());
  const ChartNormalization cn4 = chart_normalize(h4, {0, 2});
  bool fix_ok = cn4.coords.side_a == std::vector<int>{0, 1} &&
                cn4.coords.side_b == std::vector<int>{2, 3} &&
                cn4.coords.eliminated == 1 && cn4.coords.free_entries.size() == 1 &&
                cn4.coords.free_entries[0].index == 3 &&
                std::abs(cn4.coords.free_entries[0].coord) < 1e-12 &&
                std::abs(cn4.coords.free_entries[0].lambda - cx{1.0, 0.0}) < 1e-12;
  rec.count_failures("fixture_chart", 1, fix_ok ? 0 : 1);

  const int lo = detail::pick(cfg.n_lo, 4);
  const int hi = detail::pick(cfg.n_hi, 8);
  const int per_n = detail::pick(cfg.count, 4);
  double rt = 0.0, gauge_dep = 0.0, frame = 0.0, sum_res = 0.0;
  int structure_fail = 0, instances = 0;
  for (int n = lo; n <= hi; ++n) {
    for (int i = 0; i < per_n; ++i) {
      ++instances;
      const ChartCoords c = random_chart(n, rng);
      const HiggsData h = chart_reconstruct(c);

      Mat2 s = Mat2::zero();
      for (const Mat2& r : h.residues) s = s + r;
      sum_res = std::max(sum_res, max_abs(s));

      const ChartNormalization back = chart_normalize(h);
      const ChartNormalization moved =
          chart_normalize(higgs_gauge_transform(h, random_complex_gauge(n, rng).a));
      for (const ChartNormalization* cand : {&back, &moved}) {
        const ChartCoords& cc = cand->coords;
        if (cc.side_a != c.side_a || cc.side_b != c.side_b ||
            cc.eliminated != c.eliminated) {
          ++structure_fail;
          continue;
        }
        double* target = (cand == &back) ? &rt : &gauge_dep;
        for (std::size_t k = 0; k < cc.free_entries.size(); ++k) {
          *target = std::max(*target,
                             std::abs(cc.free_entries[k].coord - c.free_entries[k].coord));
          *target = std::max(
              *target, std::abs(cc.free_entries[k].lambda - c.free_entries[k].lambda));
        }
      }

      // The normalizing frame is unique up to sign.
      const Mat2 g0 = random_complex_gauge(n, rng).a;
      const ChartNormalization again = chart_normalize(higgs_gauge_transform(h, g0));
      const Mat2 prod = again.g * g0;
      frame = std::max(frame, std::min(max_abs(prod - back.g), max_abs(prod + back.g)));
    }
  }
  rec.count_failures("chart_structure_stable", 2 * instances, structure_fail);
  rec.check("round_trip_coordinates", instances, rt, 1e-8);
  rec.check("gauge_independent_coordinates", instances, gauge_dep, 1e-8);
  rec.check("frame_unique_up_to_sign", instances, frame, 1e-8);
  rec.check("reconstructed_residue_sum", instances, sum_res, 1e-12);
}

inline void suite_bending(SuiteRecorder& rec, Rng& rng, const VerifyConfig& cfg) {
  const int m_max = detail::pick(cfg.count, 1000);
  double family = 0.0;
  for (int m = 1; m <= m_max; ++m) {
    family = std::max(family,
                      std::abs(diagonal_length(m_family(2, 2, m)) - 2.0 * m));
  }
  rec.check("family_realizes_even_lengths", m_max, family, 0.0);

  int lift_fail = 0;
  for (int m = 1; m <= 5; ++m) {
    const HyperpolygonPoint x = polygon_to_zs(m_family(2, 2, m));
    if (!in_zero_level(x, 1e-9) || !is_stable(x)) ++lift_fail;
  }
  rec.count_failures("family_lifts_to_fixed_locus", 5, lift_fail);

  const NullPolygon p0 = zs_to_polygon(p4_fixture(), {0, 1});
  const int steps = 1000;
  NullPolygon p = p0;
  double drift = 0.0;
  const double step = 2 * M_PI / steps;
  for (int i = 0; i < steps; ++i) {
    p = bend(p, step);
    drift = std::max(drift, std::abs(diagonal_length(p) - 2.0));
    MinkVector closure{};
    for (const MinkVector& u : p.edges) {
      closure = closure + u;
      drift = std::max(drift, std::abs(mink(u, u)));
    }
    drift = std::max(drift, euclid_norm(closure));
  }
  rec.check("bending_preserves_invariants", steps, drift, 1e-10);
  double ret = 0.0;
  for (int i = 0; i < p.n(); ++i) {
    ret = std::max(ret, euclid_norm(p.edges[i] - p0.edges[i]));
  }
  rec.check("full_turn_returns_start", 1, ret, 1e-10);

  const NullPolygon quarter = bend(p0, M_PI / 2);
  const MinkVector wf[2] = {{0, 1, 1}, {0, -1, 1}};
  double q = std::max(euclid_norm(quarter.edges[2] - wf[0]),
                      euclid_norm(quarter.edges[3] - wf[1]));
  rec.check("quarter_turn_fixture", 1, q, 1e-15);

  double add = 0.0;
  for (int i = 0; i < 10; ++i) {
    const double t1 = rng.uniform(-3.0, 3.0), t2 = rng.uniform(-3.0, 3.0);
    const NullPolygon a = bend(bend(p0, t1), t2);
    const NullPolygon b = bend(p0, t1 + t2);
    for (int e = 0; e < a.n(); ++e) {
      add = std::max(add, euclid_norm(a.edges[e] - b.edges[e]));
    }
  }
  rec.check("bending_additive", 10, add, 1e-12);
}

// ---------------------------------------------------------------------------
// Dispatch
// ---------------------------------------------------------------------------

inline const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names{
      "moment",  "kempfness", "higgs-roundtrip",  "involution",
      "census",  "charts",    "polygon-roundtrip", "bending"};
  return names;
}

/// Run one suite with all randomness derived from the seed; returns the
/// report (field "pass" carries the verdict).
inline json run_verify_suite(const std::string& name, std::uint64_t seed,
                             const VerifyConfig& cfg = {}) {
  if (cfg.n_lo < 0 || cfg.n_hi < 0 || cfg.count < 0 ||
      (cfg.n_lo > 0 && cfg.n_hi > 0 && cfg.n_lo > cfg.n_hi)) {
    fail(ErrorCode::kDomain, "verify: invalid coverage range");
  }
  const int min_n = (name == "census") ? 3 : 4;
  if (cfg.n_lo > 0 && cfg.n_lo < min_n) {
    fail(ErrorCode::kDomain,
         "verify: suite " + name + " needs n >= " + std::to_string(min_n));
  }
  SuiteRecorder rec(name, seed);
  Rng rng = Rng(seed).child(detail::suite_key(name));
  if (name == "moment") {
    suite_moment(rec, rng, cfg);
  } else if (name == "kempfness") {
    suite_kempfness(rec, rng, cfg);
  } else if (name == "higgs-roundtrip") {
    suite_higgs_roundtrip(rec, rng, cfg);
  } else if (name == "involution") {
    suite_involution(rec, rng, cfg);
  } else if (name == "census") {
    suite_census(rec, rng, cfg);
  } else if (name == "charts") {
    suite_charts(rec, rng, cfg);
  } else if (name == "polygon-roundtrip") {
    suite_polygon_roundtrip(rec, rng, cfg);
  } else if (name == "bending") {
    suite_bending(rec, rng, cfg);
  } else {
    fail(ErrorCode::kDomain, "unknown verify suite: " + name);
  }
  return rec.report();
}

}  // namespace nullhyp
