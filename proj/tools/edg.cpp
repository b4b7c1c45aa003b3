// edg: command-line driver for the energy-based DG solver.
//
//   edg run         --scenario example1 -q 2 -n 20 -T 1 --out out/run
//   edg convergence --scenario example1 -q 3 -s 2 -n 10,20,40,80
//   edg energy      --scenario example2 -q 3 -n 160 --flux central -T 100
//
// --scenario also accepts a config file (`key = value` lines); flags given on
// the command line override values from the file.

#include <algorithm>
#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "edg/cli/commands.hpp"

namespace {

struct Flags {
  std::string scenario;
  std::string config;
  std::optional<int> q, s;
  std::optional<std::string> flux;
  std::optional<double> xi, t, dt, alpha;
  std::vector<int> n;
  std::optional<std::string> out, beta, nonlinearity, init;
  std::vector<double> snapshots;
  std::optional<int> stride;
};

void add_common(CLI::App* app, Flags& f) {
  app->add_option("--scenario", f.scenario, "Preset name (example1..example5) or config file");
  app->add_option("--config", f.config, "Config file read before the other flags")
      ->check(CLI::ExistingFile);
  app->add_option("-q", f.q, "Degree of the displacement space");
  app->add_option("-s", f.s, "Degree of the velocity space (default q)");
  app->add_option("--flux", f.flux, "central | alternating0 | alternating1 | sommerfeld");
  app->add_option("--xi", f.xi, "Sommerfeld flux parameter");
  app->add_option("-n", f.n, "Elements per axis; a list for convergence")->delimiter(',');
  app->add_option("-T,--final-time", f.t, "Final time (default: preset)");
  app->add_option("--dt", f.dt, "Time step (default 0.00975 h / pi)");
  app->add_option("-o,--out", f.out, "Output directory");
  app->add_option("--snapshots", f.snapshots, "Snapshot times")->delimiter(',');
  app->add_option("--stride", f.stride, "Steps between diagnostic rows");
  app->add_option("--init", f.init, "Projection of u0: h1 | l2");
  app->add_option("--alpha", f.alpha, "Override alpha");
  app->add_option("--beta", f.beta, "Override beta: const:<c> | gauss:<a>");
  app->add_option("--nonlinearity", f.nonlinearity, "constant | cubic | exponential");
}

edg::cli::CliConfig build_config(const Flags& f, edg::cli::Command command) {
  using namespace edg::cli;
  CliConfig c;
  if (!f.config.empty()) c = load_config_file(f.config, c);
  if (!f.scenario.empty()) {
    const auto& names = edg::scenario_names();
    if (std::find(names.begin(), names.end(), f.scenario) == names.end() &&
        std::filesystem::is_regular_file(f.scenario))
      c = load_config_file(f.scenario, c);
    else
      c.scenario = f.scenario;
  }
  c.command = command;
  if (f.q) c.q = *f.q;
  if (f.s) c.s = *f.s;
  if (f.flux) c.flux = *f.flux;
  if (f.xi) c.xi = *f.xi;
  if (!f.n.empty()) c.n = f.n;
  if (f.t) c.final_time = *f.t;
  if (f.dt) c.dt = *f.dt;
  if (f.out) c.output_dir = *f.out;
  if (!f.snapshots.empty()) c.snapshots = f.snapshots;
  if (f.stride) c.stride = *f.stride;
  if (f.init) c.init = edg::parse_initial_projection(*f.init);
  if (f.alpha) c.alpha = *f.alpha;
  if (f.beta) c.beta = BetaExpr::parse(*f.beta);
  if (f.nonlinearity) c.nonlinearity = edg::parse_nonlinearity(*f.nonlinearity);
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy-based DG solver for the nonlinear Schrodinger equation with wave operator"};
  app.require_subcommand(1);
  Flags flags;
  struct Sub {
    CLI::App* app;
    edg::cli::Command command;
  };
  const std::vector<Sub> subs{
      {app.add_subcommand("run", "Single simulation with energy, error and snapshot output"),
       edg::cli::Command::run},
      {app.add_subcommand("convergence", "Mesh sweep with least-squares rates"),
       edg::cli::Command::convergence},
      {app.add_subcommand("energy", "Energy drift study"), edg::cli::Command::energy}};
  for (const Sub& s : subs) add_common(s.app, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : edg::cli::kExitInvalidConfig;
  }

  edg::cli::CliConfig config;
  try {
    for (const Sub& s : subs)
      if (s.app->parsed()) config = build_config(flags, s.command);
  } catch (const std::exception& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return edg::cli::kExitInvalidConfig;
  }
  return edg::cli::dispatch(config, std::cout, std::cerr);
}
