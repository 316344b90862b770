// End-to-end tests of the command-line tool (spawned as a subprocess).
#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(NULLHYP_CLI_PATH) + " " + args;
  std::array<char, 4096> buf{};
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  while (fgets(buf.data(), buf.size(), pipe)) r.out += buf.data();
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) : path("nullhyp_cli_" + name) {}
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST(CliTest, GenIsDeterministic) {
  TempFile a("gen_a.json"), b("gen_b.json");
  EXPECT_EQ(run("gen -n 5 --seed 9 --out " + a.path).exit_code, 0);
  EXPECT_EQ(run("gen -n 5 --seed 9 --out " + b.path).exit_code, 0);
  const std::string ta = slurp(a.path);
  EXPECT_FALSE(ta.empty());
  EXPECT_EQ(ta, slurp(b.path));
  // a different seed gives a different configuration.
  TempFile c("gen_c.json");
  EXPECT_EQ(run("gen -n 5 --seed 10 --out " + c.path).exit_code, 0);
  EXPECT_NE(ta, slurp(c.path));
}

TEST(CliTest, CheckAcceptsGeneratedFilesAndRejectsGarbage) {
  TempFile f("check.json");
  ASSERT_EQ(run("gen -n 4 --seed 2 --out " + f.path).exit_code, 0);
  EXPECT_EQ(run("check --in " + f.path).exit_code, 0);

  TempFile g("garbage.json");
  std::ofstream(g.path) << "{ this is not json";
  EXPECT_EQ(run("check --in " + g.path).exit_code, 1);
  EXPECT_EQ(run("check --in nullhyp_cli_missing.json").exit_code, 1);
}

TEST(CliTest, GenFixedPointRefusesN3) {
  const RunResult r = run("gen -n 3 --fixed-point 2>&1");
  EXPECT_EQ(r.exit_code, 2);
}

TEST(CliTest, SolveProducesAZeroAndAReport) {
  TempFile pt("solve_in.json"), canon("solve_out.json"), rep("solve_rep.json");
  ASSERT_EQ(run("gen -n 6 --seed 4 --out " + pt.path).exit_code, 0);
  const RunResult r = run("solve --in " + pt.path + " --tol 1e-10 --out " +
                          canon.path + " --report " + rep.path);
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("converged"), std::string::npos);
  EXPECT_NE(slurp(rep.path).find("solve_report"), std::string::npos);
  EXPECT_EQ(run("check --in " + canon.path).exit_code, 0);
  // a generic solved configuration is not an involution fixed point.
  const RunResult inv = run("involution --in " + canon.path);
  EXPECT_EQ(inv.exit_code, 0);
  EXPECT_NE(inv.out.find("not a fixed point"), std::string::npos);
  // without solving first, the classifier preconditions fail.
  EXPECT_EQ(run("involution --in " + pt.path + " 2>/dev/null").exit_code, 1);
}

TEST(CliTest, FixedPointPipeline) {
  TempFile pt("fp.json"), poly("fp_poly.json"), lift("fp_lift.json");
  ASSERT_EQ(
      run("gen -n 5 --fixed-point --s 1,3 --seed 6 --out " + pt.path).exit_code,
      0);
  const RunResult inv = run("involution --in " + pt.path + " --json");
  EXPECT_EQ(inv.exit_code, 0);
  EXPECT_NE(inv.out.find("\"fixed\": true"), std::string::npos);
  EXPECT_NE(inv.out.find("[\n    1,\n    3\n  ]"), std::string::npos);

  EXPECT_EQ(run("to-polygon --in " + pt.path + " --out " + poly.path).exit_code,
            0);
  EXPECT_EQ(run("check --in " + poly.path).exit_code, 0);
  EXPECT_EQ(
      run("from-polygon --in " + poly.path + " --out " + lift.path).exit_code,
      0);
  EXPECT_EQ(run("check --in " + lift.path).exit_code, 0);
  // the lift is again a fixed point with past block listed first.
  const RunResult inv2 = run("involution --in " + lift.path + " --json");
  EXPECT_EQ(inv2.exit_code, 0);
  EXPECT_NE(inv2.out.find("\"fixed\": true"), std::string::npos);
}

TEST(CliTest, HiggsPipeline) {
  TempFile pt("hp.json"), hg("hp_h.json"), back("hp_back.json");
  ASSERT_EQ(run("gen -n 4 --seed 12 --out " + pt.path).exit_code, 0);
  EXPECT_EQ(run("to-higgs --in " + pt.path + " --out " + hg.path).exit_code, 0);
  EXPECT_EQ(run("check --in " + hg.path).exit_code, 0);
  EXPECT_EQ(run("from-higgs --in " + hg.path + " --out " + back.path).exit_code,
            0);
  EXPECT_EQ(run("check --in " + back.path).exit_code, 0);
  // evaluation away from the poles succeeds; at a pole it is a domain error.
  EXPECT_EQ(run("higgs-eval --in " + hg.path + " --z 5,5").exit_code, 0);
  EXPECT_EQ(run("higgs-eval --in " + hg.path + " --z 1,0 2>/dev/null").exit_code,
            1);
}

TEST(CliTest, ChartPipeline) {
  TempFile pt("ch.json"), hg("ch_h.json"), c1("ch_c1.json"), hh("ch_hh.json"),
      c2("ch_c2.json");
  ASSERT_EQ(run("gen -n 5 --seed 20 --out " + pt.path).exit_code, 0);
  ASSERT_EQ(run("to-higgs --in " + pt.path + " --out " + hg.path).exit_code, 0);
  ASSERT_EQ(
      run("chart --sigma 1,2 --in " + hg.path + " --out " + c1.path).exit_code,
      0);
  EXPECT_EQ(run("check --in " + c1.path).exit_code, 0);
  ASSERT_EQ(run("unchart --in " + c1.path + " --out " + hh.path).exit_code, 0);
  EXPECT_EQ(run("check --in " + hh.path).exit_code, 0);
  // charting the reconstruction reproduces the chart file exactly enough
  // to be stable under a further round trip.
  ASSERT_EQ(
      run("chart --sigma 1,2 --in " + hh.path + " --out " + c2.path).exit_code,
      0);
  EXPECT_EQ(run("check --in " + c2.path).exit_code, 0);
  // identical invocations are byte-identical.
  TempFile c3("ch_c3.json");
  ASSERT_EQ(
      run("chart --sigma 1,2 --in " + hg.path + " --out " + c3.path).exit_code,
      0);
  EXPECT_EQ(slurp(c1.path), slurp(c3.path));
}

TEST(CliTest, CensusCommand) {
  const RunResult r = run("census --n 4 --json");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("\"count\": 3"), std::string::npos);
  EXPECT_EQ(run("census --n 2 2>/dev/null").exit_code, 1);
}

TEST(CliTest, BendEmitsATrajectory) {
  TempFile pt("bend_pt.json"), poly("bend_poly.json"), traj("bend_traj.json");
  ASSERT_EQ(
      run("gen -n 4 --fixed-point --seed 8 --out " + pt.path).exit_code, 0);
  ASSERT_EQ(run("to-polygon --in " + pt.path + " --out " + poly.path).exit_code,
            0);
  const RunResult r = run("bend --in " + poly.path +
                          " --theta 6.283185307179586 --steps 8 --out " +
                          traj.path);
  EXPECT_EQ(r.exit_code, 0);
  const std::string text = slurp(traj.path);
  EXPECT_NE(text.find("bend_trajectory"), std::string::npos);
  EXPECT_NE(text.find("\"steps\": 8"), std::string::npos);
}

TEST(CliTest, VerifySuiteRunsAndIsDeterministic) {
  TempFile a("verify_a.json"), b("verify_b.json");
  const RunResult r = run("verify census --seed 3 --out " + a.path);
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("PASS"), std::string::npos);
  EXPECT_EQ(run("verify census --seed 3 --out " + b.path).exit_code, 0);
  EXPECT_EQ(slurp(a.path), slurp(b.path));
  // a configurable range, as advertised.
  EXPECT_EQ(run("verify census --n 4..10 --seed 3").exit_code, 0);
  // unknown suites are usage errors.
  EXPECT_EQ(run("verify nonsense 2>/dev/null").exit_code, 2);
}

TEST(CliTest, UsageErrors) {
  EXPECT_EQ(run("2>/dev/null").exit_code, 2);             // no subcommand
  EXPECT_EQ(run("gen 2>/dev/null").exit_code, 2);         // missing -n
  EXPECT_EQ(run("frobnicate 2>/dev/null").exit_code, 2);  // unknown command
  EXPECT_EQ(run("solve --in nullhyp_cli_nope.json 2>/dev/null").exit_code, 2);
}
