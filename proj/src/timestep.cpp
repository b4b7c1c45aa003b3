#include "edg/timestep.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace edg {

double dt_from_mesh(double h) {
  if (!(h > 0.0)) throw std::invalid_argument("dt_from_mesh: h must be positive");
  return 0.00975 * h / std::numbers::pi;
}

State rk4_step(const State& state, double dt, const RhsClosure& rhs) {
  auto stage = [&](const StateDerivative& k, double c) {
    return State{state.t + c * dt, state.u + (c * dt) * k.u_t, state.v + (c * dt) * k.v_t};
  };
  const StateDerivative k1 = rhs(state);
  const StateDerivative k2 = rhs(stage(k1, 0.5));
  const StateDerivative k3 = rhs(stage(k2, 0.5));
  const StateDerivative k4 = rhs(stage(k3, 1.0));
  State next;
  next.t = state.t + dt;
  next.u = state.u + (dt / 6.0) * (k1.u_t + 2.0 * k2.u_t + 2.0 * k3.u_t + k4.u_t);
  next.v = state.v + (dt / 6.0) * (k1.v_t + 2.0 * k2.v_t + 2.0 * k3.v_t + k4.v_t);
  return next;
}

namespace {

double max_abs_u(const State& s, const Discretization& disc) {
  const Eigen::MatrixXcd pts = disc.phi_u().cast<Complex>() * s.u;
  if (!pts.allFinite()) return std::numeric_limits<double>::infinity();
  return pts.cwiseAbs().maxCoeff();
}

DiagnosticRecord make_record(const State& s, const Discretization& disc, bool errors) {
  DiagnosticRecord rec;
  rec.energy = discrete_energy(s, disc);
  if (errors && disc.problem().exact) {
    for (ErrorComponent c : all_error_components())
      rec.errors.push_back({s.t, c, l2_error(s, disc, c)});
  }
  return rec;
}

}  // namespace

RunResult run_simulation(const Discretization& disc, const FluxParams& params,
                         const RunConfig& config, const RunSinks& sinks) {
  params.validate();
  if (!(config.final_time >= 0.0)) throw std::invalid_argument("run_simulation: T must be >= 0");
  const double dt = config.dt ? *config.dt : dt_from_mesh(disc.mesh().min_h());
  if (!(dt > 0.0)) throw std::invalid_argument("run_simulation: dt must be positive");
  if (config.diagnostics_stride < 1)
    throw std::invalid_argument("run_simulation: diagnostics stride must be >= 1");

  std::vector<double> stops;
  bool snapshot_at_start = false;
  for (double ts : config.snapshot_times) {
    if (!(ts >= 0.0)) throw std::invalid_argument("run_simulation: negative snapshot time");
    if (ts == 0.0) snapshot_at_start = true;
    else if (ts <= config.final_time) stops.push_back(ts);
  }
  std::sort(stops.begin(), stops.end());
  stops.erase(std::unique(stops.begin(), stops.end()), stops.end());
  const std::size_t snapshot_stops = stops.size();
  if (stops.empty() || stops.back() < config.final_time) stops.push_back(config.final_time);

  const EdgOperator op(disc, params);
  const RhsClosure rhs = [&op](const State& s) { return op(s); };

  RunResult result;
  result.dt = dt;
  State state = project_initial(disc.problem(), disc.mesh(), disc.basis(), config.initial_projection);

  if (sinks.on_diagnostic) sinks.on_diagnostic(make_record(state, disc, config.compute_errors));
  if (snapshot_at_start && sinks.on_snapshot) sinks.on_snapshot(state);

  int step = 0;
  bool last_recorded = true;
  for (std::size_t i = 0; i < stops.size(); ++i) {
    const double t0 = state.t;
    const double stop = stops[i];
    const double span = stop - t0;
    if (span > 0.0) {
      const long n = std::max(1L, static_cast<long>(std::ceil(span / dt - 1e-9)));
      for (long k = 1; k <= n; ++k) {
        const double h = k < n ? dt : stop - (t0 + (n - 1) * dt);
        state = rk4_step(state, h, rhs);
        state.t = k < n ? t0 + k * dt : stop;
        ++step;
        const double peak = state.all_finite() ? state.u.cwiseAbs().maxCoeff()
                                               : std::numeric_limits<double>::infinity();
        if (!(peak <= config.blowup_threshold)) throw BlowUp(state.t, max_abs_u(state, disc));
        if (sinks.on_step) sinks.on_step(state);
        last_recorded = step % config.diagnostics_stride == 0;
        if (last_recorded && sinks.on_diagnostic)
          sinks.on_diagnostic(make_record(state, disc, config.compute_errors));
      }
    }
    if (i < snapshot_stops && sinks.on_snapshot) sinks.on_snapshot(state);
  }
  if (!last_recorded && sinks.on_diagnostic)
    sinks.on_diagnostic(make_record(state, disc, config.compute_errors));

  result.final_state = std::move(state);
  result.steps = step;
  return result;
}

}  // namespace edg
