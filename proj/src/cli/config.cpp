#include "edg/cli/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "edg/edg_operator.hpp"

namespace edg::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto comma = s.find(',', start);
    const auto end = comma == std::string_view::npos ? s.size() : comma;
    const auto item = trim(s.substr(start, end - start));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_double(std::string_view key, std::string_view text) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value))
    throw std::invalid_argument("config: '" + std::string(key) + "' expects a number, got '" +
                                std::string(text) + "'");
  return value;
}

int parse_int(std::string_view key, std::string_view text) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw std::invalid_argument("config: '" + std::string(key) + "' expects an integer, got '" +
                                std::string(text) + "'");
  return value;
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::string to_string(Command c) {
  switch (c) {
    case Command::run: return "run";
    case Command::convergence: return "convergence";
    case Command::energy: return "energy";
  }
  return "run";
}

BetaExpr BetaExpr::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw std::invalid_argument("beta: expected const:<c> or gauss:<a>, got '" +
                                std::string(text) + "'");
  const auto kind = trim(text.substr(0, colon));
  BetaExpr b;
  b.value = parse_double("beta", trim(text.substr(colon + 1)));
  if (kind == "const") b.kind = Kind::constant;
  else if (kind == "gauss") b.kind = Kind::gauss;
  else throw std::invalid_argument("beta: unknown form '" + std::string(kind) + "'");
  return b;
}

std::string BetaExpr::str() const {
  return (kind == Kind::constant ? "const:" : "gauss:") + format_double(value);
}

RealField BetaExpr::field() const {
  const double c = value;
  if (kind == Kind::constant) return [c](const Point&) { return c; };
  return [c](const Point& x) { return std::exp(-c * x.squaredNorm()); };
}

void CliConfig::validate() const {
  const ScenarioPreset preset = make_scenario(scenario);
  BasisSpec{q, degree_s(), preset.problem.dim}.validate();
  flux_from_name(flux, xi);
  if (n.empty()) throw std::invalid_argument("config: no mesh size given");
  for (int ni : n)
    if (ni < 1) throw std::invalid_argument("config: n must be >= 1");
  const double T = final_time.value_or(preset.final_time);
  if (!(T >= 0.0)) throw std::invalid_argument("config: t must be >= 0");
  if (dt && !(*dt > 0.0)) throw std::invalid_argument("config: dt must be positive");
  if (stride && *stride < 1) throw std::invalid_argument("config: stride must be >= 1");
  for (double ts : snapshots)
    if (!(ts >= 0.0 && ts <= T))
      throw std::invalid_argument("config: snapshot time " + format_double(ts) +
                                  " outside [0, t]");
  if (command == Command::convergence) {
    if (n.size() < 2) throw std::invalid_argument("convergence: need at least two mesh sizes");
    if (has_overrides() || !preset.problem.exact)
      throw std::invalid_argument("convergence: scenario has no exact solution");
  } else if (n.size() != 1) {
    throw std::invalid_argument(to_string(command) + ": expects exactly one mesh size");
  }
  if (beta && beta->kind == BetaExpr::Kind::gauss && !(beta->value >= 0.0))
    throw std::invalid_argument("beta: gauss width must be >= 0");
}

CliConfig parse_config_text(std::string_view text, CliConfig base) {
  CliConfig c = std::move(base);
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected key = value");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key == "scenario") c.scenario = std::string(value);
    else if (key == "q") c.q = parse_int(key, value);
    else if (key == "s") c.s = parse_int(key, value);
    else if (key == "flux") c.flux = std::string(value);
    else if (key == "xi") c.xi = parse_double(key, value);
    else if (key == "n") {
      c.n.clear();
      for (auto item : split_list(value)) c.n.push_back(parse_int(key, item));
    } else if (key == "t") c.final_time = parse_double(key, value);
    else if (key == "dt") c.dt = parse_double(key, value);
    else if (key == "out") c.output_dir = std::string(value);
    else if (key == "snapshots") {
      c.snapshots.clear();
      for (auto item : split_list(value)) c.snapshots.push_back(parse_double(key, item));
    } else if (key == "stride") c.stride = parse_int(key, value);
    else if (key == "init") c.init = parse_initial_projection(value);
    else if (key == "alpha") c.alpha = parse_double(key, value);
    else if (key == "beta") c.beta = BetaExpr::parse(value);
    else if (key == "nonlinearity") c.nonlinearity = parse_nonlinearity(value);
    else
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": unknown key '" +
                                  std::string(key) + "'");
  }
  return c;
}

CliConfig load_config_file(const std::filesystem::path& path, CliConfig base) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), std::move(base));
}

std::string serialize_config(const CliConfig& c) {
  std::ostringstream out;
  out << "scenario = " << c.scenario << '\n';
  out << "q = " << c.q << '\n';
  out << "s = " << c.degree_s() << '\n';
  out << "flux = " << c.flux << '\n';
  out << "xi = " << format_double(c.xi) << '\n';
  out << "n = ";
  for (std::size_t i = 0; i < c.n.size(); ++i) out << (i ? "," : "") << c.n[i];
  out << '\n';
  if (c.final_time) out << "t = " << format_double(*c.final_time) << '\n';
  if (c.dt) out << "dt = " << format_double(*c.dt) << '\n';
  out << "out = " << c.output_dir.string() << '\n';
  if (!c.snapshots.empty()) {
    out << "snapshots = ";
    for (std::size_t i = 0; i < c.snapshots.size(); ++i)
      out << (i ? "," : "") << format_double(c.snapshots[i]);
    out << '\n';
  }
  if (c.stride) out << "stride = " << *c.stride << '\n';
  out << "init = " << to_string(c.init) << '\n';
  if (c.alpha) out << "alpha = " << format_double(*c.alpha) << '\n';
  if (c.beta) out << "beta = " << c.beta->str() << '\n';
  if (c.nonlinearity) out << "nonlinearity = " << to_string(*c.nonlinearity) << '\n';
  return out.str();
}

ScenarioPreset effective_scenario(const CliConfig& c) {
  ScenarioPreset preset = make_scenario(c.scenario);
  ProblemSpec& p = preset.problem;
  if (c.alpha) p.alpha = *c.alpha;
  if (c.beta) p.beta = c.beta->field();
  if (c.nonlinearity) p.nonlinearity = make_nonlinearity(*c.nonlinearity);
  if (c.has_overrides()) p.exact.reset();
  if (c.final_time) preset.final_time = *c.final_time;
  return preset;
}

}  // namespace edg::cli
