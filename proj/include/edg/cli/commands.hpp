#pragma once

#include <ostream>

#include "edg/cli/config.hpp"

namespace edg::cli {

/// Exit codes shared by all commands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidConfig = 1;
inline constexpr int kExitNumericalFailure = 2;

/// Single run: energy.csv, errors.csv (with an exact solution), snapshot_<t>.csv
/// and config.txt in config.output_dir. Blow-up writes blowup.txt.
int cmd_run(const CliConfig& config, std::ostream& out, std::ostream& err);

/// Mesh sweep: convergence.csv, rates.csv and a table on `out`.
int cmd_convergence(const CliConfig& config, std::ostream& out, std::ostream& err);

/// Energy study: energy.csv and drift.txt. The drift and the monotonicity flag
/// are evaluated after every step, independent of the CSV stride.
int cmd_energy(const CliConfig& config, std::ostream& out, std::ostream& err);

/// Validates, then dispatches on config.command. Invalid configs return 1
/// before any computation.
int dispatch(const CliConfig& config, std::ostream& out, std::ostream& err);

}  // namespace edg::cli
