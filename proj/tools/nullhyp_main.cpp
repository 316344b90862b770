/**
 * @file nullhyp_main.cpp
 * @brief Command-line front end.  Every subcommand is a thin adapter over the
 *        library: it parses files/flags, calls one library operation, and
 *        serializes the result.
 *
 * Exit codes: 0 success, 1 failed check or failed computation, 2 usage or
 * schema error.
 */
#include <algorithm>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nullhyp/nullhyp.hpp"

namespace {

using nullhyp::cx;
using nullhyp::json;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct GlobalOpts {
  std::uint64_t seed = 1;
  double tol = 0.0;  // 0 = per-command default
  std::string out;
  bool json_out = false;
};

double tol_or(const GlobalOpts& g, double fallback) {
  return g.tol > 0.0 ? g.tol : fallback;
}

/// Parse "re,im" (or a bare real) into a complex number.
cx parse_complex(const std::string& text) {
  std::istringstream in(text);
  double re = 0.0, im = 0.0;
  char sep = 0;
  if (!(in >> re)) {
    nullhyp::fail(nullhyp::ErrorCode::kSchema, "cannot parse complex value: " + text);
  }
  if (in >> sep) {
    if (sep != ',' || !(in >> im)) {
      nullhyp::fail(nullhyp::ErrorCode::kSchema,
                    "cannot parse complex value (want RE,IM): " + text);
    }
  }
  return cx{re, im};
}

/// Parse a comma-separated list of 1-based indices into 0-based form.
std::vector<int> parse_indices(const std::string& text, const std::string& what) {
  std::vector<int> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      const int v = std::stoi(item);
      if (v < 1) throw std::out_of_range("nonpositive");
      out.push_back(v - 1);
    } catch (const std::exception&) {
      nullhyp::fail(nullhyp::ErrorCode::kSchema,
                    what + ": expected comma-separated 1-based indices, got " + text);
    }
  }
  if (out.empty()) {
    nullhyp::fail(nullhyp::ErrorCode::kSchema, what + ": empty index list");
  }
  return out;
}

/// Parse "re,im;re,im;..." into complex marked points.
std::vector<cx> parse_marked(const std::string& text) {
  std::vector<cx> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ';')) out.push_back(parse_complex(item));
  return out;
}

/// Parse "A", "A..B", or "A-B" into an inclusive integer range.
std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  const auto dash = text.find('-', 1);
  std::string a = text, b = text;
  if (dots != std::string::npos) {
    a = text.substr(0, dots);
    b = text.substr(dots + 2);
  } else if (dash != std::string::npos) {
    a = text.substr(0, dash);
    b = text.substr(dash + 1);
  }
  try {
    return {std::stoi(a), std::stoi(b)};
  } catch (const std::exception&) {
    nullhyp::fail(nullhyp::ErrorCode::kSchema,
                  "cannot parse range (want N or A..B): " + text);
  }
}

/// Write/print one result document per the global output flags.
void emit(const json& doc, const GlobalOpts& g, const std::string& human) {
  if (!g.out.empty()) nullhyp::write_json_file(g.out, doc);
  if (g.json_out) {
    std::cout << nullhyp::dump_json(doc);
  } else if (!human.empty()) {
    std::cout << human << "\n";
  }
}

std::string format_indices(const std::vector<int>& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s[i] + 1);
  }
  return out + "}";
}

// ---------------------------------------------------------------------------
// Subcommand bodies.  Each returns the process exit code.
// ---------------------------------------------------------------------------

int run_gen(const GlobalOpts& g, int n, bool fixed_point, const std::string& s_text,
            bool solve) {
  if (fixed_point && n == 3) {
    std::cerr << "warning: no involution-fixed components exist for n = 3 "
                 "(the census is empty); nothing to generate\n";
    return kExitUsage;
  }
  if (n < 4) {
    std::cerr << "gen: need n >= 4\n";
    return kExitUsage;
  }
  nullhyp::Rng rng(g.seed);
  nullhyp::HyperpolygonPoint x;
  std::string kind;
  if (fixed_point) {
    const auto census = nullhyp::component_census(n);
    std::vector<int> s;
    if (!s_text.empty()) {
      s = parse_indices(s_text, "gen --s");
    } else {
      s = census[rng.uniform_int(0, static_cast<int>(census.size()) - 1)];
    }
    x = nullhyp::random_zs(s, n, rng);
    kind = "fixed-locus configuration with S = " + format_indices(s);
  } else {
    x = nullhyp::random_stable_complex_zero(n, rng);
    kind = "stable configuration";
  }
  if (solve) x = nullhyp::kn_solve(x, {tol_or(g, 1e-12)}).point;
  emit(nullhyp::to_json(x), g,
       "generated " + kind + " with n = " + std::to_string(n) +
           " (seed " + std::to_string(g.seed) + ")");
  return kExitOk;
}

int run_check(const GlobalOpts& g, const std::string& in_path) {
  const double tol = tol_or(g, 1e-8);
  json details;
  std::string data_type = "unknown";
  bool pass = false;
  std::string message;
  try {
    const json doc = nullhyp::read_json_file(in_path);
    if (!doc.contains("type") || !doc["type"].is_string()) {
      nullhyp::fail(nullhyp::ErrorCode::kSchema, "file has no \"type\" field");
    }
    data_type = doc["type"].get<std::string>();
    if (data_type == "hyperpolygon") {
      const auto x = nullhyp::hyperpolygon_from_json(doc);
      const double mu_r = nullhyp::mu_real_norm(x);
      const double mu_c = nullhyp::mu_complex_norm(x);
      const bool stable = nullhyp::is_stable(x);
      const double scale = std::max(1.0, nullhyp::total_norm2(x));
      pass = stable && mu_c <= tol * scale;
      details = json{{"n", x.n()},
                     {"mu_real_norm", mu_r},
                     {"mu_complex_norm", mu_c},
                     {"stable", stable}};
      if (!pass) message = stable ? "not on the complex zero level" : "not stable";
    } else if (data_type == "gauge") {
      const auto k = nullhyp::gauge_from_json(doc);
      details = json{{"n", static_cast<int>(k.e.size())},
                     {"flavor", k.flavor == nullhyp::GaugeFlavor::kCompact
                                    ? "compact"
                                    : "complex"}};
      pass = true;
    } else if (data_type == "higgs") {
      const auto h = nullhyp::higgs_from_json(doc);  // validates structure
      pass = nullhyp::higgs_stable(h);
      details = json{{"n", h.n()}, {"stable", pass}};
      if (!pass) message = "parabolic data is unstable";
    } else if (data_type == "polygon") {
      const auto p = nullhyp::polygon_from_json(doc);
      nullhyp::validate_polygon(p, tol);
      details = json{{"k1", p.k1},
                     {"k2", p.k2},
                     {"diagonal_length", nullhyp::diagonal_length(p)}};
      pass = true;
    } else if (data_type == "chart") {
      const auto c = nullhyp::chart_from_json(doc);
      const auto h = nullhyp::chart_reconstruct(c);
      details = json{{"n", c.n()}, {"reconstructs", true}, {"stable", nullhyp::higgs_stable(h)}};
      pass = true;
    } else {
      nullhyp::fail(nullhyp::ErrorCode::kSchema, "unknown type: " + data_type);
    }
  } catch (const nullhyp::Error& e) {
    pass = false;
    message = e.what();
  }
  json report{{"type", "check_report"},
              {"file", in_path},
              {"data_type", data_type},
              {"pass", pass}};
  if (!details.is_null()) report["details"] = details;
  if (!message.empty()) report["message"] = message;
  emit(report, g,
       (pass ? "OK: " : "FAIL: ") + in_path + " (" + data_type + ")" +
           (message.empty() ? "" : ": " + message));
  return pass ? kExitOk : kExitCheckFailed;
}

int run_solve(const GlobalOpts& g, const std::string& in_path,
              const std::string& report_path) {
  const auto x = nullhyp::hyperpolygon_from_json(nullhyp::read_json_file(in_path));
  nullhyp::SolveOptions opt;
  opt.tol = tol_or(g, 1e-12);
  const nullhyp::SolveResult r = nullhyp::kn_solve(x, opt);
  if (!report_path.empty()) {
    nullhyp::write_json_file(report_path, nullhyp::to_json(r.report));
  }
  GlobalOpts point_out = g;
  point_out.json_out = false;  // combined document printed below instead
  emit(nullhyp::to_json(r.point), point_out, "");
  if (g.json_out) {
    std::cout << nullhyp::dump_json(json{{"type", "solve_output"},
                                         {"point", nullhyp::to_json(r.point)},
                                         {"report", nullhyp::to_json(r.report)}});
  } else {
    std::ostringstream line;
    line << "converged in " << r.report.iterations
         << " iterations; |mu_R| = " << r.report.mu_real_residual;
    std::cout << line.str() << "\n";
  }
  return kExitOk;
}

int run_to_higgs(const GlobalOpts& g, const std::string& in_path,
                 const std::string& marked_text) {
  const auto x = nullhyp::hyperpolygon_from_json(nullhyp::read_json_file(in_path));
  const std::vector<cx> marked = marked_text.empty()
                                     ? nullhyp::default_marked(x.n())
                                     : parse_marked(marked_text);
  const auto h = nullhyp::from_hyperpolygon(x, marked);
  emit(nullhyp::to_json(h), g,
       "parabolic data with " + std::to_string(h.n()) + " marked points");
  return kExitOk;
}

int run_from_higgs(const GlobalOpts& g, const std::string& in_path) {
  const auto h = nullhyp::higgs_from_json(nullhyp::read_json_file(in_path));
  const auto x = nullhyp::to_hyperpolygon(h);
  emit(nullhyp::to_json(x), g,
       "configuration with n = " + std::to_string(x.n()));
  return kExitOk;
}

int run_higgs_eval(const GlobalOpts& g, const std::string& in_path,
                   const std::string& z_text) {
  const auto h = nullhyp::higgs_from_json(nullhyp::read_json_file(in_path));
  const cx z = parse_complex(z_text);
  const nullhyp::Mat2 v = nullhyp::higgs_eval(h, z);
  std::ostringstream line;
  line << "Phi(" << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i) = [["
       << v.m00 << ", " << v.m01 << "], [" << v.m10 << ", " << v.m11 << "]]";
  emit(json{{"type", "field_value"},
            {"z", nullhyp::to_json(z)},
            {"value", nullhyp::to_json(v)}},
       g, line.str());
  return kExitOk;
}

int run_chart(const GlobalOpts& g, const std::string& in_path,
              const std::string& sigma_text) {
  const auto h = nullhyp::higgs_from_json(nullhyp::read_json_file(in_path));
  const std::vector<int> sig = parse_indices(sigma_text, "chart --sigma");
  if (sig.size() != 2 || sig[0] == sig[1]) {
    nullhyp::fail(nullhyp::ErrorCode::kSchema,
                  "chart --sigma: expected two distinct 1-based indices");
  }
  const auto cn =
      nullhyp::chart_normalize(h, {sig[0], sig[1]}, tol_or(g, 1e-8));
  GlobalOpts coords_out = g;
  coords_out.json_out = false;
  std::ostringstream line;
  line << "chart at pivots (" << sig[0] + 1 << "," << sig[1] + 1 << "): side A has "
       << cn.coords.side_a.size() << " indices, side B has "
       << cn.coords.side_b.size() << ", eliminated index " << cn.coords.eliminated + 1;
  emit(nullhyp::to_json(cn.coords), coords_out, line.str());
  if (g.json_out) {
    std::cout << nullhyp::dump_json(json{{"type", "chart_output"},
                                         {"chart", nullhyp::to_json(cn.coords)},
                                         {"frame", nullhyp::to_json(cn.g)}});
  }
  return kExitOk;
}

int run_unchart(const GlobalOpts& g, const std::string& in_path) {
  const auto c = nullhyp::chart_from_json(nullhyp::read_json_file(in_path));
  const auto h = nullhyp::chart_reconstruct(c);
  emit(nullhyp::to_json(h), g,
       "reconstructed parabolic data with " + std::to_string(h.n()) +
           " marked points");
  return kExitOk;
}

int run_involution(const GlobalOpts& g, const std::string& in_path) {
  const auto x = nullhyp::hyperpolygon_from_json(nullhyp::read_json_file(in_path));
  const auto w = nullhyp::classify_fixed(x, tol_or(g, 1e-8));
  if (!w) {
    emit(json{{"type", "fixed_point_witness"}, {"fixed", false}}, g,
         "not a fixed point of the involution");
    return kExitOk;
  }
  emit(nullhyp::to_json(*w), g,
       "fixed point of the involution: S = " + format_indices(w->s));
  return kExitOk;
}

int run_census(const GlobalOpts& g, int n) {
  const auto census = nullhyp::component_census(n);
  json comps = json::array();
  for (const auto& s : census) {
    json one = json::array();
    for (int i : s) one.push_back(i + 1);
    comps.push_back(one);
  }
  emit(json{{"type", "census"},
            {"n", n},
            {"count", static_cast<int>(census.size())},
            {"components", comps}},
       g,
       "n = " + std::to_string(n) + ": " + std::to_string(census.size()) +
           " fixed components");
  return kExitOk;
}

int run_to_polygon(const GlobalOpts& g, const std::string& in_path,
                   const std::string& s_text) {
  const auto x = nullhyp::hyperpolygon_from_json(nullhyp::read_json_file(in_path));
  nullhyp::NullPolygon p;
  if (!s_text.empty()) {
    p = nullhyp::zs_to_polygon(x, parse_indices(s_text, "to-polygon --s"));
  } else {
    const auto w = nullhyp::classify_fixed(x, tol_or(g, 1e-8));
    if (!w) {
      nullhyp::fail(nullhyp::ErrorCode::kPrecondition,
                    "to-polygon: configuration is not an involution fixed point; "
                    "pass --s to force a block reading");
    }
    p = nullhyp::zs_to_polygon(w->block_point, w->s);
  }
  std::ostringstream line;
  line << "closed null polygon with " << p.k1 << " past and " << p.k2
       << " future edges; diagonal length " << nullhyp::diagonal_length(p);
  emit(nullhyp::to_json(p), g, line.str());
  return kExitOk;
}

int run_from_polygon(const GlobalOpts& g, const std::string& in_path,
                     bool normalize) {
  auto p = nullhyp::polygon_from_json(nullhyp::read_json_file(in_path));
  if (normalize) p = nullhyp::normalize_diagonal(p).polygon;
  const auto x = nullhyp::polygon_to_zs(p);
  emit(nullhyp::to_json(x), g,
       "lifted polygon to a fixed-locus configuration with n = " +
           std::to_string(x.n()));
  return kExitOk;
}

int run_bend(const GlobalOpts& g, const std::string& in_path, double theta,
             int steps, bool normalize) {
  if (steps < 1) {
    std::cerr << "bend: need --steps >= 1\n";
    return kExitUsage;
  }
  auto p0 = nullhyp::polygon_from_json(nullhyp::read_json_file(in_path));
  if (normalize) p0 = nullhyp::normalize_diagonal(p0).polygon;
  json frames = json::array();
  for (int i = 0; i <= steps; ++i) {
    const double t = theta * i / steps;
    const nullhyp::NullPolygon p = (i == 0) ? p0 : nullhyp::bend(p0, t);
    frames.push_back(json{{"theta", t}, {"polygon", nullhyp::to_json(p)}});
  }
  std::ostringstream line;
  line << "bent polygon through angle " << theta << " in " << steps
       << " steps; diagonal length " << nullhyp::diagonal_length(p0);
  emit(json{{"type", "bend_trajectory"},
            {"theta", theta},
            {"steps", steps},
            {"frames", frames}},
       g, line.str());
  return kExitOk;
}

int run_verify(const GlobalOpts& g, const std::string& suite,
               const std::string& n_text, int count) {
  nullhyp::VerifyConfig cfg;
  if (!n_text.empty()) {
    const auto [lo, hi] = parse_range(n_text);
    cfg.n_lo = lo;
    cfg.n_hi = hi;
  }
  cfg.count = count;

  const std::vector<std::string>& known = nullhyp::verify_suite_names();
  std::vector<std::string> names;
  if (suite == "all") {
    names = known;
  } else if (std::find(known.begin(), known.end(), suite) != known.end()) {
    names.push_back(suite);
  } else {
    std::cerr << "verify: unknown suite \"" << suite << "\" (expected one of:";
    for (const std::string& s : known) std::cerr << " " << s;
    std::cerr << " all)\n";
    return kExitUsage;
  }

  json suites = json::array();
  bool all_pass = true;
  std::string first_failure;
  for (const std::string& name : names) {
    const json report = nullhyp::run_verify_suite(name, g.seed, cfg);
    const bool pass = report["pass"].get<bool>();
    if (all_pass && !pass) {
      first_failure = name + "/" + report["first_failure"].get<std::string>();
    }
    all_pass = all_pass && pass;
    if (!g.json_out) {
      std::cout << "suite " << name << ": " << (pass ? "PASS" : "FAIL") << " ("
                << report["checks"].size() << " checks)\n";
    }
    suites.push_back(report);
  }
  const json doc = (names.size() == 1)
                       ? suites[0]
                       : json{{"type", "verify_report_set"},
                              {"seed", g.seed},
                              {"pass", all_pass},
                              {"suites", suites}};
  if (!g.out.empty()) nullhyp::write_json_file(g.out, doc);
  if (g.json_out) std::cout << nullhyp::dump_json(doc);
  if (!all_pass) {
    std::cerr << "verify: first failing check: " << first_failure << "\n";
    return kExitCheckFailed;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"computations in the moduli space of closed null polygons:\n"
               "stable configurations, their parabolic/Higgs description, and\n"
               "their Minkowski polygon realization"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOpts g;
  app.add_option("--seed", g.seed, "seed for all randomness")
      ->capture_default_str();
  app.add_option("--tol", g.tol, "override the command's default tolerance");
  app.add_option("--out", g.out, "write the result to this JSON file");
  app.add_flag("--json", g.json_out, "print the result as JSON on stdout");

  int exit_code = kExitOk;

  // gen
  auto* gen = app.add_subcommand("gen", "sample a random stable configuration");
  int gen_n = 4;
  bool gen_fixed = false, gen_solve = false;
  std::string gen_s;
  gen->add_option("-n,--n", gen_n, "number of edges")->required();
  gen->add_flag("--fixed-point", gen_fixed,
                "sample on the involution fixed locus");
  gen->add_option("--s", gen_s,
                  "index set for --fixed-point (1-based, e.g. 1,3)");
  gen->add_flag("--solve", gen_solve, "run the moment-map solver on the sample");
  gen->callback([&] { exit_code = run_gen(g, gen_n, gen_fixed || !gen_s.empty(), gen_s, gen_solve); });

  // check
  auto* check = app.add_subcommand("check", "validate a data file");
  std::string check_in;
  check->add_option("--in", check_in, "input JSON file")->required();
  check->callback([&] { exit_code = run_check(g, check_in); });

  // solve
  auto* solve = app.add_subcommand(
      "solve", "flow a stable configuration to the real moment-map zero level");
  std::string solve_in, solve_report;
  solve->add_option("--in", solve_in, "input configuration file")->required();
  solve->add_option("--report", solve_report, "write the solver report here");
  solve->callback([&] { exit_code = run_solve(g, solve_in, solve_report); });

  // to-higgs
  auto* tohiggs = app.add_subcommand(
      "to-higgs", "convert a configuration to parabolic (flag/residue) data");
  std::string tohiggs_in, tohiggs_marked;
  tohiggs->add_option("--in", tohiggs_in, "input configuration file")->required();
  tohiggs->add_option("--marked", tohiggs_marked,
                      "marked points as RE,IM;RE,IM;... (default: roots of unity)");
  tohiggs->callback([&] { exit_code = run_to_higgs(g, tohiggs_in, tohiggs_marked); });

  // from-higgs
  auto* fromhiggs = app.add_subcommand(
      "from-higgs", "convert parabolic data back to a configuration");
  std::string fromhiggs_in;
  fromhiggs->add_option("--in", fromhiggs_in, "input parabolic data file")->required();
  fromhiggs->callback([&] { exit_code = run_from_higgs(g, fromhiggs_in); });

  // higgs-eval
  auto* heval = app.add_subcommand("higgs-eval",
                                   "evaluate the meromorphic field at a point");
  std::string heval_in, heval_z;
  heval->add_option("--in", heval_in, "input parabolic data file")->required();
  heval->add_option("--z", heval_z, "evaluation point as RE,IM")->required();
  heval->callback([&] { exit_code = run_higgs_eval(g, heval_in, heval_z); });

  // chart
  auto* chart = app.add_subcommand(
      "chart", "read normalized coordinates off parabolic data");
  std::string chart_in, chart_sigma = "1,2";
  chart->add_option("--in", chart_in, "input parabolic data file")->required();
  chart->add_option("--sigma", chart_sigma,
                    "pivot pair, 1-based (default 1,2)")
      ->capture_default_str();
  chart->callback([&] { exit_code = run_chart(g, chart_in, chart_sigma); });

  // unchart
  auto* unchart = app.add_subcommand(
      "unchart", "reconstruct parabolic data from chart coordinates");
  std::string unchart_in;
  unchart->add_option("--in", unchart_in, "input chart file")->required();
  unchart->callback([&] { exit_code = run_unchart(g, unchart_in); });

  // involution
  auto* invo = app.add_subcommand(
      "involution", "test whether a configuration is an involution fixed point");
  std::string invo_in;
  invo->add_option("--in", invo_in, "input configuration file")->required();
  invo->callback([&] { exit_code = run_involution(g, invo_in); });

  // census
  auto* census = app.add_subcommand(
      "census", "enumerate the involution-fixed components");
  int census_n = 0;
  census->add_option("-n,--n", census_n, "number of edges")->required();
  census->callback([&] { exit_code = run_census(g, census_n); });

  // to-polygon
  auto* topoly = app.add_subcommand(
      "to-polygon", "realize a fixed-locus configuration as a null polygon");
  std::string topoly_in, topoly_s;
  topoly->add_option("--in", topoly_in, "input configuration file")->required();
  topoly->add_option("--s", topoly_s,
                     "past index set if already in block form (1-based)");
  topoly->callback([&] { exit_code = run_to_polygon(g, topoly_in, topoly_s); });

  // from-polygon
  auto* frompoly = app.add_subcommand(
      "from-polygon", "lift a null polygon to a fixed-locus configuration");
  std::string frompoly_in;
  bool frompoly_norm = false;
  frompoly->add_option("--in", frompoly_in, "input polygon file")->required();
  frompoly->add_flag("--normalize", frompoly_norm,
                     "move the diagonal onto the time axis first");
  frompoly->callback([&] { exit_code = run_from_polygon(g, frompoly_in, frompoly_norm); });

  // bend
  auto* bend = app.add_subcommand("bend", "run the bending flow on a polygon");
  std::string bend_in;
  double bend_theta = 0.0;
  int bend_steps = 1;
  bool bend_norm = false;
  bend->add_option("--in", bend_in, "input polygon file")->required();
  bend->add_option("--theta", bend_theta, "total bending angle")->required();
  bend->add_option("--steps", bend_steps, "number of trajectory steps")
      ->capture_default_str();
  bend->add_flag("--normalize", bend_norm,
                 "move the diagonal onto the time axis first");
  bend->callback(
      [&] { exit_code = run_bend(g, bend_in, bend_theta, bend_steps, bend_norm); });

  // verify
  auto* verify = app.add_subcommand(
      "verify", "run a deterministic self-verification suite");
  std::string verify_suite = "all", verify_n;
  int verify_count = 0;
  verify->add_option("suite", verify_suite,
                     "moment | kempfness | higgs-roundtrip | involution | "
                     "census | charts | polygon-roundtrip | bending | all")
      ->capture_default_str();
  verify->add_option("--n", verify_n, "edge-count range, e.g. 6 or 4..8");
  verify->add_option("--count", verify_count, "instances per case");
  verify->callback(
      [&] { exit_code = run_verify(g, verify_suite, verify_n, verify_count); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const nullhyp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == nullhyp::ErrorCode::kSchema ? kExitUsage : kExitCheckFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  return exit_code;
}
