#pragma once

// Scenario files: one `key = value` pair per line, dotted keys, `#` starts a
// comment. String values may be double-quoted.
//
//   params.delta params.delta_a params.delta_m params.kappa_a params.kappa_m
//   params.g params.chi params.omega_d
//   cutoffs.magnon cutoffs.photon
//   solver = analytic | lindblad | both
//   g2_variant = amplitude_sum | probability
//   gain_model = negative_rate | gain_dissipator
//   sweep.variable = delta | g | kappa_a | chi
//   sweep.from sweep.to sweep.points
//   supermode.epsilon
//   output.csv output.plot output.rho

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ptmag/errors.hpp"
#include "ptmag/lindblad.hpp"
#include "ptmag/params.hpp"
#include "ptmag/weakdrive.hpp"

namespace ptmag::cli {

enum class Solver { analytic, lindblad, both };
enum class SweepVariable { delta, g, kappa_a, chi };

inline std::string to_string(Solver s) {
  switch (s) {
    case Solver::analytic: return "analytic";
    case Solver::lindblad: return "lindblad";
    case Solver::both: return "both";
  }
  return "?";
}

inline std::string to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::delta: return "delta";
    case SweepVariable::g: return "g";
    case SweepVariable::kappa_a: return "kappa_a";
    case SweepVariable::chi: return "chi";
  }
  return "?";
}

struct SweepSpec {
  SweepVariable variable = SweepVariable::delta;
  double from = -5.0;
  double to = 5.0;
  int points = 201;

  /// Evenly spaced, endpoints exact; a single point sits at `from`.
  std::vector<double> grid() const {
    std::vector<double> x(points);
    for (int i = 0; i < points; ++i)
      x[i] = points == 1 ? from : (i == points - 1 ? to : from + (to - from) * i / (points - 1));
    return x;
  }
};

/// Sets the swept quantity. `delta` moves the common detuning of both modes.
inline SystemParams apply_sweep(SystemParams p, SweepVariable v, double x) {
  switch (v) {
    case SweepVariable::delta: p.delta_a = p.delta_m = x; break;
    case SweepVariable::g: p.g = x; break;
    case SweepVariable::kappa_a: p.kappa_a = x; break;
    case SweepVariable::chi: p.chi = x; break;
  }
  return p;
}

struct Outputs {
  std::string csv_path;
  std::optional<std::string> plot_path;
  std::optional<std::string> rho_path;
};

struct ScenarioConfig {
  SystemParams params{0.0, 0.0, 1.0, 1.0, 1.0, 0.1, 0.01};
  int n_max_m = 5;
  int n_max_a = 5;
  Solver solver = Solver::both;
  G2Variant g2_variant = G2Variant::amplitude_sum;
  GainModel gain_model = GainModel::negative_rate;
  SweepSpec sweep;
  double epsilon = 0.0;
  Outputs outputs;

  FockSpace space() const { return {n_max_m, n_max_a}; }
  LindbladConfig lindblad() const { return {gain_model}; }
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline double parse_real(const std::string& key, int line, const std::string& v) {
  errno = 0;
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (v.empty() || end != v.c_str() + v.size() || errno == ERANGE || !std::isfinite(x))
    throw ConfigError(key, line, "expected a finite real number, got '" + v + "'");
  return x;
}

inline int parse_int(const std::string& key, int line, const std::string& v) {
  errno = 0;
  char* end = nullptr;
  const long x = std::strtol(v.c_str(), &end, 10);
  if (v.empty() || end != v.c_str() + v.size() || errno == ERANGE || x < -1000000 || x > 1000000)
    throw ConfigError(key, line, "expected an integer, got '" + v + "'");
  return int(x);
}

template <class E>
E parse_enum(const std::string& key, int line, const std::string& v,
             const std::map<std::string, E>& names) {
  const auto it = names.find(v);
  if (it != names.end()) return it->second;
  std::string allowed;
  for (const auto& [n, _] : names) allowed += (allowed.empty() ? "" : ", ") + n;
  throw ConfigError(key, line, "'" + v + "' is not one of {" + allowed + "}");
}

}  // namespace detail

/// Parses and validates a scenario; unset keys keep their defaults.
inline ScenarioConfig parse_config(const std::string& text) {
  using detail::parse_int;
  using detail::parse_real;
  ScenarioConfig cfg;
  std::map<std::string, int> seen;

  using Setter = std::function<void(const std::string&, int, const std::string&)>;
  auto real = [&](double& field) -> Setter {
    return [&field](const std::string& k, int l, const std::string& v) { field = parse_real(k, l, v); };
  };
  auto integer = [&](int& field) -> Setter {
    return [&field](const std::string& k, int l, const std::string& v) { field = parse_int(k, l, v); };
  };
  auto text_value = [&](std::string& field) -> Setter {
    return [&field](const std::string& k, int l, const std::string& v) {
      if (v.empty()) throw ConfigError(k, l, "empty path");
      field = v;
    };
  };
  auto optional_text = [&](std::optional<std::string>& field) -> Setter {
    return [&field](const std::string& k, int l, const std::string& v) {
      if (v.empty()) throw ConfigError(k, l, "empty path");
      field = v;
    };
  };

  const std::map<std::string, Setter> schema{
      {"params.delta",
       [&](const std::string& k, int l, const std::string& v) {
         cfg.params.delta_a = cfg.params.delta_m = parse_real(k, l, v);
       }},
      {"params.delta_a", real(cfg.params.delta_a)},
      {"params.delta_m", real(cfg.params.delta_m)},
      {"params.kappa_a", real(cfg.params.kappa_a)},
      {"params.kappa_m", real(cfg.params.kappa_m)},
      {"params.g", real(cfg.params.g)},
      {"params.chi", real(cfg.params.chi)},
      {"params.omega_d", real(cfg.params.omega_d_amp)},
      {"cutoffs.magnon", integer(cfg.n_max_m)},
      {"cutoffs.photon", integer(cfg.n_max_a)},
      {"solver",
       [&](const std::string& k, int l, const std::string& v) {
         cfg.solver = detail::parse_enum<Solver>(
             k, l, v, {{"analytic", Solver::analytic}, {"lindblad", Solver::lindblad}, {"both", Solver::both}});
       }},
      {"g2_variant",
       [&](const std::string& k, int l, const std::string& v) {
         cfg.g2_variant = detail::parse_enum<G2Variant>(
             k, l, v, {{"amplitude_sum", G2Variant::amplitude_sum}, {"probability", G2Variant::probability}});
       }},
      {"gain_model",
       [&](const std::string& k, int l, const std::string& v) {
         cfg.gain_model = detail::parse_enum<GainModel>(
             k, l, v,
             {{"negative_rate", GainModel::negative_rate}, {"gain_dissipator", GainModel::gain_dissipator}});
       }},
      {"sweep.variable",
       [&](const std::string& k, int l, const std::string& v) {
         cfg.sweep.variable = detail::parse_enum<SweepVariable>(k, l, v,
                                                                {{"delta", SweepVariable::delta},
                                                                 {"g", SweepVariable::g},
                                                                 {"kappa_a", SweepVariable::kappa_a},
                                                                 {"chi", SweepVariable::chi}});
       }},
      {"sweep.from", real(cfg.sweep.from)},
      {"sweep.to", real(cfg.sweep.to)},
      {"sweep.points", integer(cfg.sweep.points)},
      {"supermode.epsilon", real(cfg.epsilon)},
      {"output.csv", text_value(cfg.outputs.csv_path)},
      {"output.plot", optional_text(cfg.outputs.plot_path)},
      {"output.rho", optional_text(cfg.outputs.rho_path)},
  };

  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') quoted = !quoted;
      if (line[i] == '#' && !quoted) {
        line.resize(i);
        break;
      }
    }
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("", line_no, "expected 'key = value'");
    const std::string key = detail::trim(line.substr(0, eq));
    std::string value = detail::trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    const auto it = schema.find(key);
    if (it == schema.end()) throw ConfigError(key, line_no, "unknown key");
    if (seen.count(key)) throw ConfigError(key, line_no, "duplicate key (first on line " + std::to_string(seen[key]) + ")");
    seen[key] = line_no;
    it->second(key, line_no, value);
  }

  auto line_of = [&](const std::string& key) { return seen.count(key) ? seen[key] : 0; };
  auto check = [&](bool ok, const std::string& key, const std::string& what) {
    if (!ok) throw ConfigError(key, line_of(key), what);
  };
  check(cfg.params.kappa_m > 0.0, "params.kappa_m", "must be > 0");
  check(cfg.params.g >= 0.0, "params.g", "must be >= 0");
  check(cfg.params.chi >= 0.0, "params.chi", "must be >= 0");
  check(cfg.params.omega_d_amp >= 0.0, "params.omega_d", "must be >= 0");
  check(cfg.n_max_m >= 2 && cfg.n_max_m <= 30, "cutoffs.magnon", "must be in [2, 30]");
  check(cfg.n_max_a >= 2 && cfg.n_max_a <= 30, "cutoffs.photon", "must be in [2, 30]");
  check(cfg.sweep.points >= 1, "sweep.points", "must be >= 1");
  check(cfg.sweep.from <= cfg.sweep.to, seen.count("sweep.to") ? "sweep.to" : "sweep.from",
        "sweep.from must not exceed sweep.to");
  check(cfg.sweep.points == 1 || cfg.sweep.from < cfg.sweep.to, "sweep.points",
        "a multi-point sweep needs sweep.from < sweep.to");
  check(cfg.epsilon >= 0.0, "supermode.epsilon", "must be >= 0");
  const double lo = cfg.sweep.from;
  switch (cfg.sweep.variable) {
    case SweepVariable::g: check(lo >= 0.0, "sweep.from", "coupling sweep must start at >= 0"); break;
    case SweepVariable::chi: check(lo >= 0.0, "sweep.from", "Kerr sweep must start at >= 0"); break;
    default: break;
  }
  return cfg;
}

inline ScenarioConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

}  // namespace ptmag::cli
