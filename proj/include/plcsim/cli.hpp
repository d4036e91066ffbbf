#pragma once

#include <CLI11.hpp>

#include <algorithm>
#include <array>
#include <cerrno>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "plcsim/csv.hpp"
#include "plcsim/error.hpp"
#include "plcsim/experiments.hpp"

namespace plcsim::cli {

// Bad command line or config file. Maps to a nonzero exit status.
class UsageError : public Error {
 public:
  using Error::Error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitIo = 2;

inline const std::array<std::string_view, 6> kSubcommands = {"trial",       "sweep-threshold", "sweep-u",
                                                             "sweep-beta", "sweep-gamma",     "gain-series"};

struct CliInvocation {
  std::string subcommand;
  ExperimentConfig config;
  std::optional<std::string> config_path;
  std::string out_path;
  bool u_values_given = false;
  std::string help_text;  // non-empty when --help was requested
};

namespace detail {

struct Setting {
  std::string_view key;
  std::string_view help;
};

// Every key is both a --flag and a config-file key.
inline const std::vector<Setting>& settings() {
  static const std::vector<Setting> s = {
      {"n", "number of subcarriers (power of two)"},
      {"u", "number of SLM phase vectors U"},
      {"sbnr-db", "signal-to-background-noise ratio in dB"},
      {"sinr-db", "signal-to-impulsive-noise ratio in dB"},
      {"p", "impulse probability per sample"},
      {"gamma", "optimized-threshold constant gamma"},
      {"seed", "master RNG seed"},
      {"symbols", "OFDM symbols per trial"},
      {"trials", "number of trials"},
      {"grid", "fixed-threshold grid t_min:t_step:t_max"},
      {"u-values", "comma-separated U list for sweep-u and gain-series"},
      {"beta-grid", "beta grid min:step:max for sweep-beta"},
      {"gamma-grid", "gamma grid min:step:max for sweep-gamma"},
      {"threshold", "fixed blanking threshold for `trial` (default: optimized threshold)"},
      {"threads", "worker threads, 0 = all cores"},
  };
  return s;
}

inline std::string grid_string(const Grid& g) {
  return format_number(g.min) + ":" + format_number(g.step) + ":" + format_number(g.max);
}

inline std::string default_value(std::string_view key, const ExperimentConfig& d) {
  if (key == "n") return std::to_string(d.n);
  if (key == "u") return std::to_string(d.u_count);
  if (key == "sbnr-db") return format_number(d.sbnr_db);
  if (key == "sinr-db") return format_number(d.sinr_db);
  if (key == "p") return format_number(d.p);
  if (key == "gamma") return format_number(d.gamma);
  if (key == "seed") return std::to_string(d.master_seed);
  if (key == "symbols") return std::to_string(d.symbols_per_point);
  if (key == "trials") return std::to_string(d.trials);
  if (key == "grid") return grid_string(d.threshold_grid);
  if (key == "beta-grid") return grid_string(d.beta_grid);
  if (key == "gamma-grid") return grid_string(d.gamma_grid);
  if (key == "threads") return std::to_string(d.threads);
  if (key == "threshold") return "optimized";
  if (key == "u-values") {
    std::string s;
    for (auto u : d.u_values) s += (s.empty() ? "" : ",") + std::to_string(u);
    return s;
  }
  return "";
}

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] inline void bad_value(std::string_view key, const std::string& value, std::string_view why) {
  throw UsageError("--" + std::string(key) + ": invalid value '" + value + "': " + std::string(why));
}

inline double to_double(std::string_view key, const std::string& value) {
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (value.empty() || *end != '\0' || std::isnan(v)) bad_value(key, value, "not a number");
  return v;
}

inline std::uint64_t to_uint(std::string_view key, const std::string& value) {
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(value.c_str(), &end, 10);
  if (value.empty() || *end != '\0' || errno == ERANGE || value.find('-') != std::string::npos) {
    bad_value(key, value, "not a non-negative integer");
  }
  return v;
}

inline Grid to_grid(std::string_view key, const std::string& value) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream ss(value);
  while (std::getline(ss, part, ':')) parts.push_back(part);
  if (parts.size() != 3) bad_value(key, value, "expected min:step:max");
  Grid g{to_double(key, parts[0]), to_double(key, parts[1]), to_double(key, parts[2])};
  if (!(g.step > 0.0)) bad_value(key, value, "step must be > 0");
  if (!std::isfinite(g.min) || !std::isfinite(g.max) || !std::isfinite(g.step)) {
    bad_value(key, value, "bounds must be finite");
  }
  if (g.max < g.min) bad_value(key, value, "max < min");
  return g;
}

inline void apply(ExperimentConfig& c, std::string_view key, const std::string& value) {
  if (key == "n") {
    c.n = to_uint(key, value);
    if (!is_power_of_two(c.n)) bad_value(key, value, "must be a power of two");
  } else if (key == "u") {
    c.u_count = to_uint(key, value);
    if (c.u_count == 0) bad_value(key, value, "must be >= 1");
  } else if (key == "sbnr-db") {
    c.sbnr_db = to_double(key, value);
  } else if (key == "sinr-db") {
    c.sinr_db = to_double(key, value);
  } else if (key == "p") {
    c.p = to_double(key, value);
    if (!(c.p >= 0.0 && c.p <= 1.0)) bad_value(key, value, "probability outside [0, 1]");
  } else if (key == "gamma") {
    c.gamma = to_double(key, value);
    if (!(c.gamma > 0.0) || !std::isfinite(c.gamma)) bad_value(key, value, "must be positive");
  } else if (key == "seed") {
    c.master_seed = to_uint(key, value);
  } else if (key == "symbols") {
    c.symbols_per_point = to_uint(key, value);
    if (c.symbols_per_point == 0) bad_value(key, value, "must be >= 1");
  } else if (key == "trials") {
    c.trials = to_uint(key, value);
    if (c.trials == 0) bad_value(key, value, "must be >= 1");
  } else if (key == "grid") {
    c.threshold_grid = to_grid(key, value);
    if (c.threshold_grid.min < 0.0) bad_value(key, value, "thresholds must be >= 0");
  } else if (key == "beta-grid") {
    c.beta_grid = to_grid(key, value);
    if (!(c.beta_grid.min > 0.0)) bad_value(key, value, "beta must be > 0");
  } else if (key == "gamma-grid") {
    c.gamma_grid = to_grid(key, value);
    if (!(c.gamma_grid.min > 0.0)) bad_value(key, value, "gamma must be > 0");
  } else if (key == "threshold") {
    const double t = to_double(key, value);
    if (!(t >= 0.0)) bad_value(key, value, "must be >= 0");
    c.fixed_threshold = t;
  } else if (key == "threads") {
    c.threads = static_cast<unsigned>(to_uint(key, value));
  } else if (key == "u-values") {
    std::vector<std::size_t> us;
    std::string item;
    std::istringstream ss(value);
    while (std::getline(ss, item, ',')) {
      const auto u = to_uint(key, trim(item));
      if (u == 0) bad_value(key, value, "entries must be >= 1");
      us.push_back(u);
    }
    if (us.empty()) bad_value(key, value, "empty list");
    c.u_values = std::move(us);
  } else {
    throw UsageError("unknown setting '" + std::string(key) + "'");
  }
}

inline bool is_known_key(std::string_view key) {
  const auto& s = settings();
  return std::any_of(s.begin(), s.end(), [&](const Setting& x) { return x.key == key; });
}

}  // namespace detail

// Plain `key = value` lines; `#` starts a comment. Keys are the long flag
// names without the leading "--". Unknown keys are errors.
inline std::map<std::string, std::string> read_config_file(std::istream& is, const std::string& name) {
  std::map<std::string, std::string> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string body = detail::trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    const std::string where = name + ":" + std::to_string(line_no);
    if (eq == std::string::npos) throw UsageError(where + ": expected 'key = value', got '" + body + "'");
    const std::string key = detail::trim(std::string_view(body).substr(0, eq));
    const std::string value = detail::trim(std::string_view(body).substr(eq + 1));
    if (!detail::is_known_key(key)) throw UsageError(where + ": unknown key '" + key + "'");
    out[key] = value;
  }
  return out;
}

inline std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("--config: cannot open '" + path + "'");
  return read_config_file(in, path);
}

// Precedence: built-in defaults < config file < flags.
inline CliInvocation parse_args(const std::vector<std::string>& args) {
  const ExperimentConfig defaults;
  CLI::App app{"SLM-assisted blanking simulator for OFDM over impulsive power-line channels", "plcsim"};
  app.require_subcommand(1, 1);

  std::map<std::string, std::string> flag_values;
  std::string config_path;
  std::string out_path;

  std::map<std::string, CLI::App*> subs;
  for (auto name : kSubcommands) {
    auto* sub = app.add_subcommand(std::string(name));
    for (const auto& s : detail::settings()) {
      const std::string key(s.key);
      sub->add_option_function<std::string>(
             "--" + key, [&flag_values, key](const std::string& v) { flag_values[key] = v; }, std::string(s.help))
          ->default_str(detail::default_value(s.key, defaults))
          ->type_name("VALUE");
    }
    sub->add_option("--config", config_path, "config file of key = value lines")->type_name("PATH");
    sub->add_option("--out", out_path, "CSV output path (default: <subcommand>.csv)")->type_name("PATH");
    subs[std::string(name)] = sub;
  }
  app.get_subcommand("trial")->description("run independent trials at U (optimized threshold unless --threshold)");
  app.get_subcommand("sweep-threshold")->description("SNR versus fixed blanking threshold at U; reports the OBT");
  app.get_subcommand("sweep-u")->description("threshold sweep at each U in --u-values; OBT versus U");
  app.get_subcommand("sweep-beta")->description("SNR versus beta with the measured impulse estimate");
  app.get_subcommand("sweep-gamma")->description("SNR versus gamma of the optimized threshold");
  app.get_subcommand("gain-series")->description("per-trial SNR gain of SLM over the unmodified system");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  CliInvocation inv;
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    inv.help_text = app.help();
    for (auto* s : app.get_subcommands()) inv.help_text = s->help();
    return inv;
  } catch (const CLI::CallForAllHelp&) {
    inv.help_text = app.help("", CLI::AppFormatMode::All);
    return inv;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  inv.subcommand = app.get_subcommands().front()->get_name();
  std::map<std::string, std::string> file_values;
  if (!config_path.empty()) {
    inv.config_path = config_path;
    file_values = read_config_file(config_path);
  }
  for (const auto& s : detail::settings()) {
    const std::string key(s.key);
    if (auto it = flag_values.find(key); it != flag_values.end()) {
      detail::apply(inv.config, key, it->second);
    } else if (auto jt = file_values.find(key); jt != file_values.end()) {
      detail::apply(inv.config, key, jt->second);
    } else {
      continue;
    }
    if (key == "u-values") inv.u_values_given = true;
  }
  try {
    inv.config.validate();
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
  inv.out_path = out_path.empty() ? inv.subcommand + ".csv" : out_path;
  return inv;
}

inline CliInvocation parse_args(int argc, const char* const* argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return parse_args(args);
}

namespace detail {

inline void print_summary(std::ostream& out, const std::string& sub, const std::string& argmax,
                          const std::string& best) {
  out << sub << " argmax=" << argmax << " best_snr_db=" << best;
}

inline std::string opt_number(const std::optional<double>& v) { return v ? format_number(*v) : "nan"; }
inline std::string opt_snr(const std::optional<SnrDb>& v) { return v ? v->to_string() : "nan"; }

inline void summarize_sweep(std::ostream& out, const std::string& sub, const SweepResult& r) {
  print_summary(out, sub, opt_number(r.argmax()), opt_snr(r.best_snr()));
  out << '\n';
}

inline void probe_writable(const std::string& path) {
  std::ofstream probe(path, std::ios::app);
  if (!probe) throw IoError("cannot open '" + path + "' for writing");
}

}  // namespace detail

// Dispatches the invocation, writes the CSV and prints a one-line summary.
inline int run(const CliInvocation& inv, std::ostream& out, std::ostream& err) {
  if (!inv.help_text.empty()) {
    out << inv.help_text;
    return kExitOk;
  }
  const ExperimentConfig& cfg = inv.config;
  try {
    detail::probe_writable(inv.out_path);
    if (inv.subcommand == "trial") {
      const auto records = run_trials(cfg);
      write_csv(inv.out_path, std::span<const TrialRecord>(records));
      const auto best = std::max_element(records.begin(), records.end(),
                                         [](const TrialRecord& a, const TrialRecord& b) { return a.snr_db < b.snr_db; });
      detail::print_summary(out, inv.subcommand, std::to_string(best->trial_index), best->snr_db.to_string());
      out << '\n';
    } else if (inv.subcommand == "sweep-threshold") {
      const auto r = sweep_threshold(cfg);
      write_csv(inv.out_path, r);
      detail::summarize_sweep(out, inv.subcommand, r);
    } else if (inv.subcommand == "sweep-u") {
      USweepResult all;
      for (auto u : cfg.u_values) {
        err << "sweep-u: U = " << u << '\n';
        auto part = sweep_u(cfg, {u});
        all.u_values.push_back(u);
        all.curves.push_back(std::move(part.curves.front()));
      }
      write_csv(inv.out_path, std::span<const SweepResult>(all.curves));
      detail::summarize_sweep(out, inv.subcommand, all.curves.back());
    } else if (inv.subcommand == "sweep-beta") {
      const auto r = sweep_beta(cfg, cfg.beta_grid.values());
      write_csv(inv.out_path, r);
      detail::summarize_sweep(out, inv.subcommand, r);
    } else if (inv.subcommand == "sweep-gamma") {
      const auto r = sweep_gamma(cfg, cfg.gamma_grid.values());
      write_csv(inv.out_path, r);
      detail::summarize_sweep(out, inv.subcommand, r);
    } else if (inv.subcommand == "gain-series") {
      const std::vector<std::size_t> us = inv.u_values_given ? cfg.u_values : std::vector<std::size_t>{cfg.u_count};
      const auto records = gain_series(cfg, us, cfg.trials);
      write_csv(inv.out_path, std::span<const TrialRecord>(records));
      const auto best = std::max_element(records.begin(), records.end(), [](const TrialRecord& a, const TrialRecord& b) {
        return a.gain_db.value_or(-HUGE_VAL) < b.gain_db.value_or(-HUGE_VAL);
      });
      detail::print_summary(out, inv.subcommand, std::to_string(best->trial_index), best->snr_db.to_string());
      out << " max_gain_db=" << format_number(best->gain_db.value_or(std::nan(""))) << '\n';
    } else {
      throw UsageError("unknown subcommand '" + inv.subcommand + "'");
    }
  } catch (const IoError& e) {
    err << "plcsim: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    err << "plcsim: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace plcsim::cli
