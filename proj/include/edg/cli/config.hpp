#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "edg/problem.hpp"

namespace edg::cli {

enum class Command { run, convergence, energy };

std::string to_string(Command c);

/// Whitelisted beta(x): const:<c> or gauss:<a> meaning exp(-a |x|^2).
struct BetaExpr {
  enum class Kind { constant, gauss };
  Kind kind = Kind::constant;
  double value = 1.0;

  static BetaExpr parse(std::string_view text);
  std::string str() const;
  RealField field() const;
};

struct CliConfig {
  Command command = Command::run;
  std::string scenario = "example1";
  int q = 2;
  std::optional<int> s;  // defaults to q
  std::string flux = "sommerfeld";
  double xi = 1.0;
  std::vector<int> n{20};
  std::optional<double> final_time;  // defaults to the preset's
  std::optional<double> dt;
  std::filesystem::path output_dir = "out";
  std::vector<double> snapshots;
  std::optional<int> stride;  // diagnostics every `stride` steps; automatic when unset
  InitialProjection init = InitialProjection::h1;

  // Problem overrides. Setting any of them drops the preset's exact solution.
  std::optional<double> alpha;
  std::optional<BetaExpr> beta;
  std::optional<NonlinearityKind> nonlinearity;

  int degree_s() const { return s.value_or(q); }
  bool has_overrides() const { return alpha || beta || nonlinearity; }

  /// Throws std::invalid_argument describing the first bad field.
  void validate() const;
};

/// Applies `key = value` lines on top of `base`. Blank lines and `#` comments
/// are skipped; unknown keys and malformed values throw std::invalid_argument.
CliConfig parse_config_text(std::string_view text, CliConfig base = {});
CliConfig load_config_file(const std::filesystem::path& path, CliConfig base = {});

/// Effective configuration in the same `key = value` format. Optional
/// overrides are written only when set.
std::string serialize_config(const CliConfig& config);

/// The preset named by config.scenario with alpha/beta/nonlinearity overrides.
ScenarioPreset effective_scenario(const CliConfig& config);

}  // namespace edg::cli
