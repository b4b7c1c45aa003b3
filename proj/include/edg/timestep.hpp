#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "edg/diagnostics.hpp"
#include "edg/edg_operator.hpp"
#include "edg/state.hpp"

namespace edg {

/// dt = 0.00975 h / pi, small enough that spatial error dominates.
double dt_from_mesh(double h);

/// Classic RK4 for any vector-space type Y (Y + Y and double * Y defined);
/// f(t, y) returns dy/dt.
template <typename Y, typename F>
Y rk4_step(const Y& y, double t, double dt, F&& f) {
  const Y k1 = f(t, y);
  const Y k2 = f(t + 0.5 * dt, Y(y + (0.5 * dt) * k1));
  const Y k3 = f(t + 0.5 * dt, Y(y + (0.5 * dt) * k2));
  const Y k4 = f(t + dt, Y(y + dt * k3));
  return Y(y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
}

using RhsClosure = std::function<StateDerivative(const State&)>;

/// One RK4 step of the semi-discrete system. Stage states carry the stage time
/// so time-dependent boundary data is sampled at t, t+dt/2 and t+dt.
State rk4_step(const State& state, double dt, const RhsClosure& rhs);

struct RunConfig {
  double final_time = 1.0;
  std::optional<double> dt;            // defaults to dt_from_mesh(min h)
  std::vector<double> snapshot_times;  // landed on exactly
  int diagnostics_stride = 1;          // steps between diagnostic records
  bool compute_errors = true;          // when an exact solution exists
  double blowup_threshold = 1e8;       // on the largest modal coefficient
  InitialProjection initial_projection = InitialProjection::h1;
};

struct DiagnosticRecord {
  EnergyRecord energy;
  std::vector<ErrorRecord> errors;
};

struct RunSinks {
  std::function<void(const DiagnosticRecord&)> on_diagnostic;
  std::function<void(const State&)> on_snapshot;
  /// Called after every accepted step with the new state.
  std::function<void(const State&)> on_step;
};

struct RunResult {
  State final_state;
  int steps = 0;
  double dt = 0.0;
};

/// Steps from t = 0 to final_time. Throws BlowUp when the state becomes
/// non-finite or exceeds the blow-up threshold.
RunResult run_simulation(const Discretization& disc, const FluxParams& params,
                         const RunConfig& config, const RunSinks& sinks = {});

}  // namespace edg
