#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "plcsim/blanking.hpp"
#include "plcsim/block.hpp"
#include "plcsim/channel.hpp"
#include "plcsim/error.hpp"
#include "plcsim/fft.hpp"
#include "plcsim/metrics.hpp"
#include "plcsim/parallel.hpp"
#include "plcsim/qam.hpp"
#include "plcsim/random.hpp"
#include "plcsim/slm.hpp"

namespace plcsim {

// Inclusive arithmetic grid min, min + step, ..., <= max.
struct Grid {
  double min = 0.0;
  double step = 1.0;
  double max = 0.0;

  void validate(const std::string& name) const {
    if (!std::isfinite(min) || !std::isfinite(max) || !std::isfinite(step)) {
      throw ConfigError(name + " grid bounds must be finite");
    }
    if (!(step > 0.0)) throw ConfigError(name + " grid step must be > 0, got " + std::to_string(step));
    if (max < min) throw ConfigError(name + " grid is empty: max < min");
  }

  std::vector<double> values() const {
    // The epsilon keeps an endpoint like 5.0 = 0.05 + 99 * 0.05 on the grid.
    const auto count = static_cast<std::size_t>(std::floor((max - min) / step + 1e-9)) + 1;
    std::vector<double> v(count);
    for (std::size_t i = 0; i < count; ++i) v[i] = min + static_cast<double>(i) * step;
    return v;
  }
};

inline std::vector<std::size_t> default_u_values() { return {1, 2, 4, 8, 16, 32, 64, 128, 256}; }

// Defaults: N = 64, 16-QAM, SBNR 40 dB, SINR -10 dB, p = 0.01, gamma = 7.
struct ExperimentConfig {
  std::size_t n = 64;
  std::size_t u_count = 64;
  double sbnr_db = 40.0;
  double sinr_db = -10.0;
  double p = 0.01;
  double gamma = kDefaultGamma;
  std::size_t symbols_per_point = 100;
  std::size_t trials = 50;
  std::uint64_t master_seed = 1;
  Grid threshold_grid{0.05, 0.05, 5.0};
  std::vector<std::size_t> u_values = default_u_values();
  Grid beta_grid{0.25, 0.25, 10.0};
  Grid gamma_grid{1.0, 1.0, 20.0};
  std::optional<double> fixed_threshold;  // `trial` uses the optimized threshold when unset
  unsigned threads = 0;                   // 0 = hardware concurrency

  ChannelParams channel() const { return ChannelParams(sbnr_db, sinr_db, p); }

  std::uint64_t phase_seed() const { return stream_key(master_seed, 0, lane::kPhaseVectors); }

  void validate() const {
    if (!is_power_of_two(n)) throw ConfigError("n = " + std::to_string(n) + " is not a power of two");
    if (u_count == 0) throw ConfigError("u must be >= 1");
    (void)channel();
    if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ConfigError("gamma must be positive");
    if (symbols_per_point == 0) throw ConfigError("symbols must be >= 1");
    if (trials == 0) throw ConfigError("trials must be >= 1");
    threshold_grid.validate("threshold");
    beta_grid.validate("beta");
    gamma_grid.validate("gamma");
    if (!(beta_grid.min > 0.0)) throw ConfigError("beta grid values must be > 0");
    if (!(gamma_grid.min > 0.0)) throw ConfigError("gamma grid values must be > 0");
    if (threshold_grid.min < 0.0) throw ConfigError("threshold grid values must be >= 0");
    if (u_values.empty()) throw ConfigError("u-values must not be empty");
    for (auto u : u_values) {
      if (u == 0) throw ConfigError("u-values entries must be >= 1");
    }
    if (fixed_threshold && !(*fixed_threshold >= 0.0)) throw ConfigError("threshold must be >= 0");
  }
};

// The three independent random sources of one trial.
struct TrialStreams {
  RngStream bits;
  RngStream awgn;
  RngStream impulses;

  static TrialStreams for_trial(std::uint64_t master_seed, std::uint64_t trial_index) {
    return {derive_stream(master_seed, trial_index, lane::kDataBits),
            derive_stream(master_seed, trial_index, lane::kAwgn),
            derive_stream(master_seed, trial_index, lane::kImpulses)};
  }
};

struct SymbolRealization {
  TimeBlock transmitted;  // SLM-selected time signal
  TimeBlock received;
  std::size_t chosen_index = 0;
};

// Transmitter plus channel for one value of U: random bits -> 16-QAM ->
// SLM selection -> AWGN + impulsive noise. Immutable after construction and
// safe to share between worker threads.
class Link {
 public:
  Link(const ExperimentConfig& config, std::size_t u_count)
      : n_(config.n),
        channel_(config.channel()),
        fft_(config.n),
        vectors_(generate_phase_vectors(u_count, config.n, config.phase_seed())) {}

  explicit Link(const ExperimentConfig& config) : Link(config, config.u_count) {}

  std::size_t n() const noexcept { return n_; }
  std::size_t u_count() const noexcept { return vectors_.u_count(); }
  const PhaseVectorSet& phase_vectors() const noexcept { return vectors_; }
  const Radix2Fft& fft() const noexcept { return fft_; }

  SymbolRealization realize(TrialStreams& streams) const {
    std::vector<Bit> bits(Qam16::kBitsPerSymbol * n_);
    for (auto& b : bits) b = streams.bits.bit() ? 1 : 0;
    SlmSelection sel = slm_select(qam16_modulate(bits), vectors_, fft_);
    ChannelRealization ch = transmit(sel.signal, channel_, streams.awgn, streams.impulses);
    return {std::move(sel.signal), std::move(ch.received), sel.chosen_index};
  }

 private:
  std::size_t n_;
  ChannelParams channel_;
  Radix2Fft fft_;
  PhaseVectorSet vectors_;
};

struct SymbolOutcome {
  SnrMeasurement contribution;
  double applied_threshold = 0.0;
};

// One OFDM symbol through the full chain, blanked according to `spec` and
// measured against the transmitted signal.
inline SymbolOutcome run_symbol(const Link& link, const ThresholdSpec& spec, TrialStreams& streams) {
  const SymbolRealization sym = link.realize(streams);
  BlankingResult blanked = blank_with_spec(sym.received, spec);
  return {measure_block(sym.transmitted, blanked.output), blanked.threshold};
}

inline SymbolOutcome run_symbol(const ExperimentConfig& config, const ThresholdSpec& spec, TrialStreams& streams) {
  return run_symbol(Link(config), spec, streams);
}

struct TrialOutcome {
  SnrMeasurement measurement;
  double mean_threshold = 0.0;
};

inline TrialOutcome run_trial(const Link& link, const ThresholdSpec& spec, std::uint64_t master_seed,
                              std::size_t trial_index, std::size_t symbols) {
  TrialStreams streams = TrialStreams::for_trial(master_seed, trial_index);
  TrialOutcome out;
  double threshold_sum = 0.0;
  for (std::size_t s = 0; s < symbols; ++s) {
    const SymbolOutcome o = run_symbol(link, spec, streams);
    out.measurement += o.contribution;
    threshold_sum += o.applied_threshold;
  }
  out.mean_threshold = threshold_sum / static_cast<double>(symbols);
  return out;
}

struct SweepPoint {
  SnrMeasurement measurement;
  std::size_t symbols = 0;
  std::size_t excluded_symbols = 0;

  // nullopt when every symbol was excluded.
  std::optional<SnrDb> snr() const {
    if (symbols == 0) return std::nullopt;
    return snr_db(measurement);
  }
};

namespace detail {

// Index of the best point; ties go to the smallest swept value.
inline std::optional<std::size_t> best_index(const std::vector<double>& values, const std::vector<SweepPoint>& points) {
  std::optional<std::size_t> best;
  std::optional<SnrDb> best_snr;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto snr = points[i].snr();
    if (!snr) continue;
    if (!best || *snr > *best_snr || (*snr == *best_snr && values[i] < values[*best])) {
      best = i;
      best_snr = snr;
    }
  }
  return best;
}

}  // namespace detail

struct SweepResult {
  std::string parameter;
  std::vector<double> values;
  std::vector<SweepPoint> points;
  std::optional<std::size_t> argmax_index;
  // Argmax of each trial's own curve, in trial order (threshold sweeps only).
  std::vector<double> per_trial_argmax;

  std::optional<double> argmax() const {
    if (!argmax_index) return std::nullopt;
    return values[*argmax_index];
  }
  std::optional<SnrDb> best_snr() const {
    if (!argmax_index) return std::nullopt;
    return points[*argmax_index].snr();
  }
};

namespace detail {

struct TrialCurve {
  std::vector<SweepPoint> points;
};

// Runs `trials` independent trials, each realizing symbols and scoring every
// swept value on the same realizations, then reduces in trial order.
template <typename ScoreSymbol>
SweepResult run_sweep(const ExperimentConfig& config, const Link& link, std::string parameter,
                      std::vector<double> values, ScoreSymbol score, bool keep_per_trial) {
  const std::size_t m = values.size();
  auto curves = map_indices(config.trials, config.threads, [&](std::size_t trial) {
    TrialCurve curve{std::vector<SweepPoint>(m)};
    TrialStreams streams = TrialStreams::for_trial(config.master_seed, trial);
    for (std::size_t s = 0; s < config.symbols_per_point; ++s) {
      const SymbolRealization sym = link.realize(streams);
      score(sym, curve.points);
    }
    return curve;
  });

  SweepResult result;
  result.parameter = std::move(parameter);
  result.values = std::move(values);
  result.points.assign(m, SweepPoint{});
  for (const auto& curve : curves) {
    for (std::size_t i = 0; i < m; ++i) {
      result.points[i].measurement += curve.points[i].measurement;
      result.points[i].symbols += curve.points[i].symbols;
      result.points[i].excluded_symbols += curve.points[i].excluded_symbols;
    }
    if (keep_per_trial) {
      const auto idx = best_index(result.values, curve.points);
      result.per_trial_argmax.push_back(idx ? result.values[*idx] : std::nan(""));
    }
  }
  result.argmax_index = best_index(result.values, result.points);
  return result;
}

inline void score_blanked(const SymbolRealization& sym, double t, SweepPoint& point) {
  point.measurement += measure_block(sym.transmitted, blank(sym.received, t));
  ++point.symbols;
}

}  // namespace detail

// Fixed-threshold sweep at config.u_count over config.threshold_grid. The
// argmax is the optimal blanking threshold (OBT).
inline SweepResult sweep_threshold(const ExperimentConfig& config) {
  config.validate();
  const Link link(config);
  auto values = config.threshold_grid.values();
  return detail::run_sweep(
      config, link, "threshold", values,
      [&values](const SymbolRealization& sym, std::vector<SweepPoint>& points) {
        for (std::size_t i = 0; i < values.size(); ++i) detail::score_blanked(sym, values[i], points[i]);
      },
      true);
}

struct USweepResult {
  std::vector<std::size_t> u_values;
  std::vector<SweepResult> curves;  // threshold sweep per U

  std::vector<double> obt() const {
    std::vector<double> v;
    for (const auto& c : curves) v.push_back(c.argmax().value_or(std::nan("")));
    return v;
  }
};

inline std::string u_curve_name(std::size_t u) { return "threshold_u" + std::to_string(u); }

// Threshold sweep at each U. Phase-vector sets share one seed, so they nest.
inline USweepResult sweep_u(const ExperimentConfig& config, const std::vector<std::size_t>& u_values) {
  if (u_values.empty()) throw ConfigError("sweep over U needs at least one value");
  USweepResult out;
  for (auto u : u_values) {
    if (u == 0) throw ConfigError("U must be >= 1");
    ExperimentConfig c = config;
    c.u_count = u;
    SweepResult r = sweep_threshold(c);
    r.parameter = u_curve_name(u);
    out.u_values.push_back(u);
    out.curves.push_back(std::move(r));
  }
  return out;
}

// Optimized-threshold blanking with a swept beta: T = INE / beta, where INE
// is still measured from each received block.
inline SweepResult sweep_beta(const ExperimentConfig& config, std::vector<double> beta_values) {
  config.validate();
  for (double b : beta_values) {
    if (!(b > 0.0) || !std::isfinite(b)) throw ConfigError("beta values must be positive, got " + std::to_string(b));
  }
  const Link link(config);
  const auto betas = beta_values;
  return detail::run_sweep(
      config, link, "beta", std::move(beta_values),
      [&betas](const SymbolRealization& sym, std::vector<SweepPoint>& points) {
        const double ine = impulsive_noise_estimate(envelope_stats(sym.received));
        for (std::size_t i = 0; i < betas.size(); ++i) detail::score_blanked(sym, ine / betas[i], points[i]);
      },
      false);
}

// Full optimized-threshold rule with a swept gamma. Symbols whose beta
// comes out <= 0 are excluded from that grid point and counted.
inline SweepResult sweep_gamma(const ExperimentConfig& config, std::vector<double> gamma_values) {
  config.validate();
  for (double g : gamma_values) {
    if (!(g > 0.0) || !std::isfinite(g)) throw ConfigError("gamma values must be positive, got " + std::to_string(g));
  }
  const Link link(config);
  const auto gammas = gamma_values;
  return detail::run_sweep(
      config, link, "gamma", std::move(gamma_values),
      [&gammas](const SymbolRealization& sym, std::vector<SweepPoint>& points) {
        const EnvelopeStats stats = envelope_stats(sym.received);
        for (std::size_t i = 0; i < gammas.size(); ++i) {
          try {
            detail::score_blanked(sym, estimate_ot(stats, gammas[i]).ot, points[i]);
          } catch (const DegenerateThresholdError&) {
            ++points[i].excluded_symbols;
          }
        }
      },
      false);
}

struct TrialRecord {
  std::size_t trial_index = 0;
  std::size_t u_count = 1;
  double applied_threshold = 0.0;  // mean over the trial's symbols
  SnrDb snr_db = SnrDb::finite(0.0);
  std::optional<double> gain_db;
  std::uint64_t seed = 0;
  std::size_t symbols = 0;

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

// Per-trial SNR of the optimized-threshold receiver at each U against the
// unmodified (U = 1) system. Both arms of a trial see the same bits and the
// same noise streams; only the transmitted signal differs.
inline std::vector<TrialRecord> gain_series(const ExperimentConfig& config, const std::vector<std::size_t>& u_values,
                                            std::size_t series_length) {
  config.validate();
  if (series_length == 0) throw ConfigError("gain series needs at least one trial");
  if (u_values.empty()) throw ConfigError("gain series needs at least one U");
  for (auto u : u_values) {
    if (u == 0) throw ConfigError("U must be >= 1");
  }
  const ThresholdSpec spec = ThresholdSpec::optimized(config.gamma);
  const Link baseline(config, 1);
  std::vector<Link> links;
  links.reserve(u_values.size());
  for (auto u : u_values) links.emplace_back(config, u);

  auto per_trial = map_indices(series_length, config.threads, [&](std::size_t trial) {
    const TrialOutcome base = run_trial(baseline, spec, config.master_seed, trial, config.symbols_per_point);
    const double base_snr = snr_linear(base.measurement);
    std::vector<TrialRecord> recs;
    for (const auto& link : links) {
      const TrialOutcome arm = run_trial(link, spec, config.master_seed, trial, config.symbols_per_point);
      TrialRecord r;
      r.trial_index = trial;
      r.u_count = link.u_count();
      r.applied_threshold = arm.mean_threshold;
      r.snr_db = snr_db(arm.measurement);
      r.gain_db = relative_gain_db(snr_linear(arm.measurement), base_snr);
      r.seed = config.master_seed;
      r.symbols = config.symbols_per_point;
      recs.push_back(r);
    }
    return recs;
  });

  // Series by U, then by trial.
  std::vector<TrialRecord> out;
  out.reserve(series_length * u_values.size());
  for (std::size_t j = 0; j < u_values.size(); ++j) {
    for (const auto& recs : per_trial) out.push_back(recs[j]);
  }
  return out;
}

// Independent trials at config.u_count with a fixed or optimized threshold;
// no baseline, so gain_db is left empty.
inline std::vector<TrialRecord> run_trials(const ExperimentConfig& config) {
  config.validate();
  const ThresholdSpec spec = config.fixed_threshold ? ThresholdSpec::fixed(*config.fixed_threshold)
                                                    : ThresholdSpec::optimized(config.gamma);
  const Link link(config);
  return map_indices(config.trials, config.threads, [&](std::size_t trial) {
    const TrialOutcome o = run_trial(link, spec, config.master_seed, trial, config.symbols_per_point);
    TrialRecord r;
    r.trial_index = trial;
    r.u_count = link.u_count();
    r.applied_threshold = o.mean_threshold;
    r.snr_db = snr_db(o.measurement);
    r.seed = config.master_seed;
    r.symbols = config.symbols_per_point;
    return r;
  });
}

}  // namespace plcsim
