#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "plcsim/block.hpp"
#include "plcsim/error.hpp"

namespace plcsim {

inline constexpr double kDefaultGamma = 7.0;

// Either a fixed amplitude threshold or the per-block optimized threshold
// parameterized by gamma.
class ThresholdSpec {
 public:
  enum class Mode { kFixed, kOptimized };

  static ThresholdSpec fixed(double t) {
    if (!(t >= 0.0)) throw ConfigError("blanking threshold must be >= 0, got " + std::to_string(t));
    return ThresholdSpec(Mode::kFixed, t, kDefaultGamma);
  }

  static ThresholdSpec optimized(double gamma = kDefaultGamma) {
    if (!(gamma > 0.0) || std::isinf(gamma)) {
      throw ConfigError("gamma must be a positive finite number, got " + std::to_string(gamma));
    }
    return ThresholdSpec(Mode::kOptimized, 0.0, gamma);
  }

  Mode mode() const noexcept { return mode_; }
  bool is_fixed() const noexcept { return mode_ == Mode::kFixed; }
  double threshold() const noexcept { return t_fixed_; }
  double gamma() const noexcept { return gamma_; }

 private:
  ThresholdSpec(Mode m, double t, double g) : mode_(m), t_fixed_(t), gamma_(g) {}

  Mode mode_;
  double t_fixed_;
  double gamma_;
};

// Order statistics and mean of the magnitude envelope |r_k|.
struct EnvelopeStats {
  double max = 0.0;
  double mean = 0.0;
  double median = 0.0;
};

inline EnvelopeStats envelope_stats(const TimeBlock& received) {
  if (received.empty()) throw InputError("envelope statistics of an empty block");
  std::vector<double> mag(received.size());
  double sum = 0.0;
  double peak = 0.0;
  for (std::size_t k = 0; k < received.size(); ++k) {
    mag[k] = std::abs(received[k]);
    sum += mag[k];
    peak = std::max(peak, mag[k]);
  }
  const std::size_t n = mag.size();
  const std::size_t mid = n / 2;
  std::nth_element(mag.begin(), mag.begin() + static_cast<std::ptrdiff_t>(mid), mag.end());
  double median = mag[mid];
  if (n % 2 == 0) {
    const double lower = *std::max_element(mag.begin(), mag.begin() + static_cast<std::ptrdiff_t>(mid));
    median = 0.5 * (lower + median);
  }
  return {peak, sum / static_cast<double>(n), median};
}

struct ThresholdEstimate {
  double ot = 0.0;
  double ine = 0.0;
  double beta = 0.0;
  EnvelopeStats stats;
  bool zero_threshold = false;  // all-zero block, nothing to estimate
};

// max >= mean always; the clamp only absorbs rounding in the mean.
inline double impulsive_noise_estimate(const EnvelopeStats& s) { return std::max(0.0, s.max - s.mean); }

inline double beta_from_gamma(const EnvelopeStats& s, double gamma) { return gamma - (s.median - s.mean); }

// OT = INE / beta, INE = max - mean, beta = gamma - (median - mean).
inline ThresholdEstimate estimate_ot(const EnvelopeStats& stats, double gamma) {
  if (!(gamma > 0.0)) throw ConfigError("gamma must be positive, got " + std::to_string(gamma));
  ThresholdEstimate est;
  est.stats = stats;
  est.ine = impulsive_noise_estimate(stats);
  est.beta = beta_from_gamma(stats, gamma);
  if (!(est.beta > 0.0)) {
    throw DegenerateThresholdError("optimized threshold is degenerate: beta = " + std::to_string(est.beta) +
                                       " <= 0 for gamma = " + std::to_string(gamma),
                                   est.beta);
  }
  est.ot = est.ine / est.beta;
  est.zero_threshold = stats.max == 0.0;
  return est;
}

inline ThresholdEstimate estimate_ot(const TimeBlock& received, double gamma) {
  return estimate_ot(envelope_stats(received), gamma);
}

// y_k = r_k if |r_k| <= t, else 0.
inline TimeBlock blank(const TimeBlock& received, double t) {
  if (!(t >= 0.0)) throw ConfigError("blanking threshold must be >= 0, got " + std::to_string(t));
  TimeBlock out(received.size());
  for (std::size_t k = 0; k < received.size(); ++k) {
    if (std::abs(received[k]) <= t) out[k] = received[k];
  }
  return out;
}

struct BlankingResult {
  TimeBlock output;
  double threshold = 0.0;
};

inline BlankingResult blank_with_spec(const TimeBlock& received, const ThresholdSpec& spec) {
  const double t = spec.is_fixed() ? spec.threshold() : estimate_ot(received, spec.gamma()).ot;
  return {blank(received, t), t};
}

}  // namespace plcsim
