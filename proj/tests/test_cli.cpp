#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "edg/cli/commands.hpp"

using namespace edg;
using namespace edg::cli;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::path(testing::TempDir()) / ("edg_cli_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const fs::path& p) {
  std::vector<std::string> out;
  std::ifstream in(p);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

int run_tool(const std::string& args) {
  const int status = std::system((std::string(EDG_TOOL_PATH) + " " + args + " >/dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Config, ParsesKeyValueText) {
  const CliConfig c = parse_config_text(
      "# sweep\n"
      "scenario = example4\n"
      "q = 3   # displacement degree\n"
      "s=2\n"
      "\n"
      "flux = central\n"
      "n = 50, 100,200\n"
      "t = 0.5\n"
      "snapshots = 0.25\n"
      "beta = gauss:2\n"
      "init = l2\n");
  EXPECT_EQ(c.scenario, "example4");
  EXPECT_EQ(c.q, 3);
  EXPECT_EQ(c.degree_s(), 2);
  EXPECT_EQ(c.flux, "central");
  EXPECT_EQ(c.n, (std::vector<int>{50, 100, 200}));
  EXPECT_EQ(c.final_time, 0.5);
  EXPECT_EQ(c.snapshots, std::vector<double>{0.25});
  EXPECT_EQ(c.init, InitialProjection::l2);
  ASSERT_TRUE(c.beta.has_value());
  EXPECT_EQ(c.beta->kind, BetaExpr::Kind::gauss);
  EXPECT_TRUE(c.has_overrides());
}

TEST(Config, RejectsBadLines) {
  EXPECT_THROW(parse_config_text("q = 2\nwidth = 3\n"), std::invalid_argument);
  EXPECT_THROW(parse_config_text("q 2\n"), std::invalid_argument);
  EXPECT_THROW(parse_config_text("q = two\n"), std::invalid_argument);
  EXPECT_THROW(parse_config_text("dt = 1e-3x\n"), std::invalid_argument);
  EXPECT_THROW(parse_config_text("nonlinearity = quartic\n"), std::invalid_argument);
  try {
    parse_config_text("q = 2\n\nbogus = 1\n");
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
}

TEST(Config, SerializeRoundTrip) {
  CliConfig c;
  c.scenario = "example2";
  c.q = 4;
  c.s = 3;
  c.flux = "sommerfeld";
  c.xi = 0.3;
  c.n = {7, 14};
  c.final_time = 0.1;
  c.dt = 1.0 / 3.0;
  c.output_dir = "some/dir";
  c.snapshots = {0.01, 0.05};
  c.stride = 4;
  c.alpha = 2.5;
  c.beta = BetaExpr{BetaExpr::Kind::constant, -1.25};
  c.nonlinearity = NonlinearityKind::exponential;
  const std::string text = serialize_config(c);
  const CliConfig back = parse_config_text(text);
  EXPECT_EQ(serialize_config(back), text);
  EXPECT_EQ(back.dt, c.dt);
  EXPECT_EQ(back.xi, c.xi);
  EXPECT_EQ(back.output_dir, c.output_dir);

  const std::string plain = serialize_config(CliConfig{});
  EXPECT_EQ(plain.find("alpha"), std::string::npos);
  EXPECT_NE(plain.find("s = 2"), std::string::npos);
}

TEST(Config, BetaExpressions) {
  const auto g = BetaExpr::parse("gauss:0.5");
  EXPECT_NEAR(g.field()(Point(1.0, 2.0)), std::exp(-2.5), 1e-15);
  EXPECT_EQ(BetaExpr::parse(g.str()).value, 0.5);
  EXPECT_EQ(BetaExpr::parse("const:-3").field()(Point(9, 9)), -3.0);
  EXPECT_THROW(BetaExpr::parse("sin:1"), std::invalid_argument);
  EXPECT_THROW(BetaExpr::parse("3"), std::invalid_argument);
}

TEST(Config, EffectiveScenario) {
  CliConfig c;
  c.final_time = 0.25;
  auto p = effective_scenario(c);
  EXPECT_TRUE(p.problem.exact.has_value());
  EXPECT_EQ(p.final_time, 0.25);
  c.alpha = 3.0;
  p = effective_scenario(c);
  EXPECT_EQ(p.problem.alpha, 3.0);
  EXPECT_FALSE(p.problem.exact.has_value());
}

TEST(Config, Validation) {
  auto invalid = [](CliConfig c) {
    std::ostringstream out, err;
    return dispatch(c, out, err) == kExitInvalidConfig && !err.str().empty();
  };
  CliConfig c;
  c.output_dir = fresh_dir("never_written");
  c.q = 0;
  EXPECT_TRUE(invalid(c));
  c.q = 2;
  c.s = 3;
  EXPECT_TRUE(invalid(c));
  c.s.reset();
  c.flux = "upwind";
  EXPECT_TRUE(invalid(c));
  c.flux = "sommerfeld";
  c.xi = 0.0;
  EXPECT_TRUE(invalid(c));
  c.xi = 1.0;
  c.scenario = "example9";
  EXPECT_TRUE(invalid(c));
  c.scenario = "example1";
  c.dt = -1.0;
  EXPECT_TRUE(invalid(c));
  c.dt.reset();
  c.final_time = 1.0;
  c.snapshots = {2.0};
  EXPECT_TRUE(invalid(c));
  c.snapshots.clear();
  c.n = {10, 20};
  EXPECT_TRUE(invalid(c));
  c.command = Command::convergence;
  c.n = {10};
  EXPECT_TRUE(invalid(c));
  c.n = {10, 20};
  c.scenario = "example2";
  EXPECT_TRUE(invalid(c));
  c.scenario = "example1";
  c.beta = BetaExpr{BetaExpr::Kind::constant, 2.0};
  EXPECT_TRUE(invalid(c));
  EXPECT_FALSE(fs::exists(c.output_dir));
}

TEST(Commands, RunWritesOutputs) {
  CliConfig c;
  c.q = 2;
  c.n = {8};
  c.final_time = 0.1;
  c.snapshots = {0.0, 0.05};
  c.output_dir = fresh_dir("run");
  std::ostringstream out, err;
  ASSERT_EQ(dispatch(c, out, err), kExitOk) << err.str();
  EXPECT_EQ(lines(c.output_dir / "energy.csv").front(), "t,kinetic,potential,nonlinear,total");
  const auto errors = lines(c.output_dir / "errors.csv");
  EXPECT_EQ(errors.front(), "t,component,l2");
  EXPECT_EQ((errors.size() - 1) % 5, 0u);
  const auto snap = lines(c.output_dir / "snapshot_0.05.csv");
  EXPECT_EQ(snap.front(), "x,re_u,im_u,abs_u,re_v,im_v");
  EXPECT_EQ(snap.size(), 1u + 8u * 3u);
  EXPECT_TRUE(fs::exists(c.output_dir / "snapshot_0.csv"));
  EXPECT_EQ(parse_config_text(slurp(c.output_dir / "config.txt")).final_time, 0.1);
}

TEST(Commands, ZeroFinalTimeWritesSingleRows) {
  CliConfig c;
  c.n = {4};
  c.final_time = 0.0;
  c.output_dir = fresh_dir("t0");
  std::ostringstream out, err;
  ASSERT_EQ(dispatch(c, out, err), kExitOk);
  EXPECT_EQ(lines(c.output_dir / "energy.csv").size(), 2u);
  EXPECT_EQ(lines(c.output_dir / "errors.csv").size(), 6u);
}

TEST(Commands, RunIsDeterministic) {
  CliConfig c;
  c.scenario = "example3";
  c.q = 2;
  c.n = {20};
  c.final_time = 0.2;
  c.snapshots = {0.2};
  std::ostringstream out, err;
  const fs::path first = fresh_dir("det_a");
  c.output_dir = first;
  ASSERT_EQ(dispatch(c, out, err), kExitOk);
  c.output_dir = fresh_dir("det_b");
  ASSERT_EQ(dispatch(c, out, err), kExitOk);
  for (const char* f : {"energy.csv", "snapshot_0.2.csv"})
    EXPECT_EQ(slurp(first / f), slurp(c.output_dir / f)) << f;
}

TEST(Commands, ConvergenceWritesRates) {
  CliConfig c;
  c.command = Command::convergence;
  c.q = 2;
  c.n = {8, 16};
  c.final_time = 0.1;
  c.output_dir = fresh_dir("conv");
  std::ostringstream out, err;
  ASSERT_EQ(dispatch(c, out, err), kExitOk) << err.str();
  EXPECT_EQ(lines(c.output_dir / "convergence.csv").size(), 3u);
  const auto rates = lines(c.output_dir / "rates.csv");
  ASSERT_EQ(rates.size(), 6u);
  const double re_u = std::stod(rates[1].substr(rates[1].find(',') + 1));
  EXPECT_GT(re_u, 2.0);
  EXPECT_NE(out.str().find("rate"), std::string::npos);
}

TEST(Commands, EnergyWritesDrift) {
  CliConfig c;
  c.command = Command::energy;
  c.scenario = "example1";
  c.flux = "central";
  c.q = 2;
  c.n = {10};
  c.final_time = 0.5;
  c.output_dir = fresh_dir("energy");
  std::ostringstream out, err;
  ASSERT_EQ(dispatch(c, out, err), kExitOk);
  const auto drift = lines(c.output_dir / "drift.txt");
  ASSERT_EQ(drift.size(), 4u);
  EXPECT_EQ(drift[0].rfind("max_relative_drift = ", 0), 0u);
  EXPECT_LT(std::stod(drift[0].substr(21)), 1e-6);
  EXPECT_EQ(drift[3], "monotone_nonincreasing = true");
}

TEST(Commands, BlowUpExitsWithTwo) {
  CliConfig c;
  c.q = 1;
  c.n = {8};
  c.final_time = 50.0;
  c.beta = BetaExpr{BetaExpr::Kind::constant, -10.0};
  c.nonlinearity = NonlinearityKind::cubic;
  c.output_dir = fresh_dir("blowup");
  std::ostringstream out, err;
  EXPECT_EQ(dispatch(c, out, err), kExitNumericalFailure);
  const auto rows = lines(c.output_dir / "blowup.txt");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], "t,max_abs_u");
  EXPECT_NE(err.str().find("blow-up"), std::string::npos);
}

TEST(Tool, ExitCodes) {
  const fs::path dir = fresh_dir("tool");
  EXPECT_EQ(run_tool("run -n 4 -q 1 -T 0.01 -o " + dir.string()), 0);
  EXPECT_TRUE(fs::exists(dir / "energy.csv"));
  EXPECT_EQ(run_tool("run --flux upwind -o " + dir.string()), 1);
  EXPECT_EQ(run_tool("run --bogus"), 1);
  EXPECT_EQ(run_tool("convergence -n 10 -o " + dir.string()), 1);
  EXPECT_EQ(run_tool(""), 1);

  std::ofstream(dir / "cfg.txt") << "q = 1\nn = 4\nt = 0.02\nout = " << (dir / "from_file").string() << '\n';
  EXPECT_EQ(run_tool("run --scenario " + (dir / "cfg.txt").string() + " -T 0.01"), 0);
  EXPECT_EQ(parse_config_text(slurp(dir / "from_file" / "config.txt")).final_time, 0.01);
}

TEST(Commands, CentralRunConservesEnergy) {
  CliConfig c;
  c.flux = "central";
  c.q = 2;
  c.n = {20};
  c.final_time = 0.1;
  c.snapshots = {0.1};
  c.output_dir = fresh_dir("central");
  std::ostringstream out, err;
  ASSERT_EQ(dispatch(c, out, err), kExitOk);
  const auto rows = lines(c.output_dir / "energy.csv");
  const auto total = [](const std::string& row) { return std::stod(row.substr(row.rfind(',') + 1)); };
  const double e0 = total(rows[1]);
  for (std::size_t i = 2; i < rows.size(); ++i) EXPECT_NEAR(total(rows[i]), e0, 1e-9 * e0);
  EXPECT_TRUE(fs::exists(c.output_dir / "errors.csv"));
  EXPECT_TRUE(fs::exists(c.output_dir / "snapshot_0.1.csv"));
}

TEST(Commands, EnergyAtZeroTimeHasNoDrift) {
  CliConfig c;
  c.command = Command::energy;
  c.n = {6};
  c.final_time = 0.0;
  c.output_dir = fresh_dir("energy_t0");
  std::ostringstream out, err;
  ASSERT_EQ(dispatch(c, out, err), kExitOk);
  EXPECT_EQ(lines(c.output_dir / "drift.txt")[0], "max_relative_drift = 0");
}

TEST(Commands, SerializedConfigReproducesRun) {
  CliConfig c;
  c.scenario = "example2";
  c.q = 3;
  c.s = 2;
  c.flux = "alternating1";
  c.n = {12};
  c.final_time = 0.05;
  c.beta = BetaExpr{BetaExpr::Kind::gauss, 0.5};
  c.output_dir = fresh_dir("roundtrip_a");
  std::ostringstream out, err;
  ASSERT_EQ(dispatch(c, out, err), kExitOk);
  CliConfig again = parse_config_text(slurp(c.output_dir / "config.txt"));
  again.output_dir = fresh_dir("roundtrip_b");
  ASSERT_EQ(dispatch(again, out, err), kExitOk);
  EXPECT_EQ(slurp(c.output_dir / "energy.csv"), slurp(again.output_dir / "energy.csv"));
}

TEST(Commands, SnapshotColumns2D) {
  CliConfig c;
  c.scenario = "example5";
  c.q = 1;
  c.n = {2};
  c.final_time = 0.01;
  c.snapshots = {0.01};
  c.output_dir = fresh_dir("snap2d");
  std::ostringstream out, err;
  ASSERT_EQ(dispatch(c, out, err), kExitOk);
  const auto rows = lines(c.output_dir / "snapshot_0.01.csv");
  EXPECT_EQ(rows.front(), "x,y,re_u,im_u,abs_u,re_v,im_v");
  EXPECT_EQ(rows.size(), 1u + 4u * 4u);
}
