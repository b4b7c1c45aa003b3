#include "edg/cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <memory>
#include <stdexcept>

#include "edg/timestep.hpp"

namespace edg::cli {

namespace {

namespace fs = std::filesystem;

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

class CsvFile {
 public:
  CsvFile(const fs::path& path, const std::string& header) : out_(path) {
    if (!out_) throw std::runtime_error("cannot write " + path.string());
    out_ << header << '\n';
  }
  void row(std::initializer_list<std::string> cells) {
    bool first = true;
    for (const auto& c : cells) {
      if (!first) out_ << ',';
      out_ << c;
      first = false;
    }
    out_ << '\n';
  }

 private:
  std::ofstream out_;
};

struct Setup {
  ScenarioPreset preset;
  std::unique_ptr<Discretization> disc;
  FluxParams flux;
  RunConfig run;
};

Setup make_setup(const CliConfig& c, int n) {
  Setup s;
  s.preset = effective_scenario(c);
  s.disc = std::make_unique<Discretization>(make_mesh(s.preset, n),
                                            BasisSpec{c.q, c.degree_s(), s.preset.problem.dim},
                                            s.preset.problem);
  s.flux = flux_from_name(c.flux, c.xi);
  s.run.final_time = s.preset.final_time;
  s.run.dt = c.dt;
  s.run.snapshot_times = c.snapshots;
  s.run.initial_projection = c.init;
  const double dt = c.dt ? *c.dt : dt_from_mesh(s.disc->mesh().min_h());
  const double steps = std::ceil(s.run.final_time / dt);
  s.run.diagnostics_stride =
      c.stride ? *c.stride : static_cast<int>(std::max(1.0, std::floor(steps / 1000.0)));
  return s;
}

void prepare_output(const CliConfig& c) {
  fs::create_directories(c.output_dir);
  std::ofstream(c.output_dir / "config.txt") << serialize_config(c);
}

void write_snapshot(const fs::path& dir, const State& state, const Discretization& disc) {
  char name[64];
  std::snprintf(name, sizeof name, "snapshot_%g.csv", state.t);
  const bool two_d = disc.mesh().dim == 2;
  CsvFile csv(dir / name, two_d ? "x,y,re_u,im_u,abs_u,re_v,im_v" : "x,re_u,im_u,abs_u,re_v,im_v");
  const auto& ref = disc.reference_points();
  for (int e = 0; e < state.num_elements(); ++e) {
    const Eigen::VectorXcd u = disc.phi_u() * state.u.col(e);
    const Eigen::VectorXcd v = disc.phi_v() * state.v.col(e);
    for (std::size_t k = 0; k < ref.size(); ++k) {
      const Point x = disc.to_physical(e, ref[k]);
      const Complex uk = u(k), vk = v(k);
      if (two_d)
        csv.row({fmt(x.x()), fmt(x.y()), fmt(uk.real()), fmt(uk.imag()), fmt(std::abs(uk)),
                 fmt(vk.real()), fmt(vk.imag())});
      else
        csv.row({fmt(x.x()), fmt(uk.real()), fmt(uk.imag()), fmt(std::abs(uk)), fmt(vk.real()),
                 fmt(vk.imag())});
    }
  }
}

void energy_row(CsvFile& csv, const EnergyRecord& e) {
  csv.row({fmt(e.t), fmt(e.kinetic), fmt(e.potential), fmt(e.nonlinear), fmt(e.total())});
}

constexpr const char* kEnergyHeader = "t,kinetic,potential,nonlinear,total";

// Runs `body`, mapping solver failures to exit code 2.
template <typename Body>
int guarded(const CliConfig& c, std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const BlowUp& b) {
    std::ofstream(c.output_dir / "blowup.txt")
        << "t,max_abs_u\n" << fmt(b.time()) << ',' << fmt(b.max_abs_u()) << '\n';
    err << "blow-up at t = " << fmt(b.time()) << " (max |u| = " << fmt(b.max_abs_u()) << ")\n";
    return kExitNumericalFailure;
  } catch (const NumericalFailure& f) {
    err << "numerical failure: " << f.what() << '\n';
    return kExitNumericalFailure;
  } catch (const NonFiniteValue& f) {
    err << "numerical failure: " << f.what() << '\n';
    return kExitNumericalFailure;
  }
}

}  // namespace

int cmd_run(const CliConfig& c, std::ostream& out, std::ostream& err) {
  Setup s = make_setup(c, c.n.front());
  prepare_output(c);
  return guarded(c, err, [&] {
    CsvFile energy(c.output_dir / "energy.csv", kEnergyHeader);
    std::unique_ptr<CsvFile> errors;
    if (s.preset.problem.exact)
      errors = std::make_unique<CsvFile>(c.output_dir / "errors.csv", "t,component,l2");
    RunSinks sinks;
    sinks.on_diagnostic = [&](const DiagnosticRecord& r) {
      energy_row(energy, r.energy);
      for (const ErrorRecord& e : r.errors)
        errors->row({fmt(e.t), to_string(e.component), fmt(e.l2)});
    };
    sinks.on_snapshot = [&](const State& st) { write_snapshot(c.output_dir, st, *s.disc); };
    const RunResult r = run_simulation(*s.disc, s.flux, s.run, sinks);
    out << "steps " << r.steps << ", dt " << fmt(r.dt) << ", final energy "
        << fmt(discrete_energy(r.final_state, *s.disc).total()) << '\n';
    return kExitOk;
  });
}

int cmd_convergence(const CliConfig& c, std::ostream& out, std::ostream& err) {
  prepare_output(c);
  const auto& comps = all_error_components();
  std::vector<double> hs;
  std::vector<std::vector<double>> errs(comps.size());
  const int code = guarded(c, err, [&] {
    CsvFile csv(c.output_dir / "convergence.csv", "n,h,re_u,im_u,re_v,im_v,abs_u");
    for (int n : c.n) {
      Setup s = make_setup(c, n);
      s.run.compute_errors = false;
      s.run.snapshot_times.clear();
      const RunResult r = run_simulation(*s.disc, s.flux, s.run);
      const double h = s.disc->mesh().min_h();
      hs.push_back(h);
      std::vector<std::string> cells{std::to_string(n), fmt(h)};
      for (std::size_t i = 0; i < comps.size(); ++i) {
        errs[i].push_back(l2_error(r.final_state, *s.disc, comps[i]));
        cells.push_back(fmt(errs[i].back()));
      }
      csv.row({cells[0], cells[1], cells[2], cells[3], cells[4], cells[5], cells[6]});
    }
    return kExitOk;
  });
  if (code != kExitOk) return code;

  CsvFile rates(c.output_dir / "rates.csv", "component,rate");
  char line[160];
  std::snprintf(line, sizeof line, "%6s %12s", "n", "h");
  out << line;
  for (auto comp : comps) {
    std::snprintf(line, sizeof line, " %12s", to_string(comp).c_str());
    out << line;
  }
  out << '\n';
  for (std::size_t k = 0; k < hs.size(); ++k) {
    std::snprintf(line, sizeof line, "%6d %12.4e", c.n[k], hs[k]);
    out << line;
    for (std::size_t i = 0; i < comps.size(); ++i) {
      std::snprintf(line, sizeof line, " %12.4e", errs[i][k]);
      out << line;
    }
    out << '\n';
  }
  std::snprintf(line, sizeof line, "%19s", "rate");
  out << line;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    double rate = std::numeric_limits<double>::quiet_NaN();
    try {
      rate = fit_convergence_rate(hs, errs[i]);
    } catch (const std::invalid_argument&) {
      // A zero error has no logarithm; the rate is reported as nan.
    }
    rates.row({to_string(comps[i]), fmt(rate)});
    std::snprintf(line, sizeof line, " %12.4f", rate);
    out << line;
  }
  out << '\n';
  return kExitOk;
}

int cmd_energy(const CliConfig& c, std::ostream& out, std::ostream& err) {
  Setup s = make_setup(c, c.n.front());
  s.run.compute_errors = false;
  prepare_output(c);
  double e0 = std::numeric_limits<double>::quiet_NaN();
  double prev = 0.0, max_drift = 0.0, max_increase = 0.0, last = 0.0;
  bool monotone = true;
  const int code = guarded(c, err, [&] {
    CsvFile energy(c.output_dir / "energy.csv", kEnergyHeader);
    RunSinks sinks;
    sinks.on_diagnostic = [&](const DiagnosticRecord& r) {
      energy_row(energy, r.energy);
      if (std::isnan(e0)) e0 = prev = last = r.energy.total();
    };
    sinks.on_snapshot = [&](const State& st) { write_snapshot(c.output_dir, st, *s.disc); };
    sinks.on_step = [&](const State& st) {
      const double e = discrete_energy(st, *s.disc).total();
      const double scale = std::abs(e0);
      max_drift = std::max(max_drift, std::abs(e - e0) / scale);
      max_increase = std::max(max_increase, (e - prev) / scale);
      if (e - prev > 1e-10 * scale) monotone = false;
      prev = last = e;
    };
    run_simulation(*s.disc, s.flux, s.run, sinks);
    return kExitOk;
  });
  std::ofstream drift(c.output_dir / "drift.txt");
  drift << "max_relative_drift = " << fmt(max_drift) << '\n'
        << "final_relative_change = " << fmt((last - e0) / std::abs(e0)) << '\n'
        << "max_relative_increase = " << fmt(max_increase) << '\n'
        << "monotone_nonincreasing = " << (monotone ? "true" : "false") << '\n';
  if (code == kExitOk)
    out << "max relative drift " << fmt(max_drift) << ", monotone "
        << (monotone ? "yes" : "no") << '\n';
  return code;
}

int dispatch(const CliConfig& c, std::ostream& out, std::ostream& err) {
  try {
    c.validate();
  } catch (const std::exception& e) {
    err << "invalid configuration: " << e.what() << '\n';
    return kExitInvalidConfig;
  }
  switch (c.command) {
    case Command::run: return cmd_run(c, out, err);
    case Command::convergence: return cmd_convergence(c, out, err);
    case Command::energy: return cmd_energy(c, out, err);
  }
  return kExitInvalidConfig;
}

}  // namespace edg::cli
