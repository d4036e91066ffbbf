#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "plcsim/block.hpp"
#include "plcsim/error.hpp"
#include "plcsim/random.hpp"

namespace plcsim {

// Noise levels are given relative to a unit-power transmit signal:
// SBNR = 10 log10(1 / sigma_w^2), SINR = 10 log10(1 / sigma_i^2), with
// sigma^2 the per-component (real or imaginary) variance.
class ChannelParams {
 public:
  ChannelParams(double sbnr_db, double sinr_db, double p)
      : sbnr_db_(sbnr_db), sinr_db_(sinr_db), p_(p) {
    if (std::isnan(sbnr_db) || std::isnan(sinr_db)) throw ConfigError("SBNR/SINR must be numbers");
    if (!(p >= 0.0 && p <= 1.0)) {
      throw ConfigError("impulse probability p = " + std::to_string(p) + " is outside [0, 1]");
    }
    sigma_w_sq_ = std::pow(10.0, -sbnr_db / 10.0);
    sigma_i_sq_ = std::pow(10.0, -sinr_db / 10.0);
  }

  double sbnr_db() const noexcept { return sbnr_db_; }
  double sinr_db() const noexcept { return sinr_db_; }
  double p() const noexcept { return p_; }
  double sigma_w_sq() const noexcept { return sigma_w_sq_; }
  double sigma_i_sq() const noexcept { return sigma_i_sq_; }

 private:
  double sbnr_db_;
  double sinr_db_;
  double p_;
  double sigma_w_sq_ = 0.0;
  double sigma_i_sq_ = 0.0;
};

struct ChannelRealization {
  TimeBlock received;
  std::vector<bool> impulse_mask;
  TimeBlock awgn;
  TimeBlock impulses;
};

// Circularly-symmetric Gaussian noise, each component ~ N(0, sigma_w_sq).
inline TimeBlock awgn_noise(std::size_t n, double sigma_w_sq, RngStream& rng) {
  if (!(sigma_w_sq >= 0.0) || std::isinf(sigma_w_sq)) {
    throw ConfigError("AWGN variance must be finite and non-negative, got " + std::to_string(sigma_w_sq));
  }
  TimeBlock out(n);
  if (sigma_w_sq == 0.0) return out;
  const double sd = std::sqrt(sigma_w_sq);
  for (auto& x : out) {
    const double re = rng.gaussian();
    const double im = rng.gaussian();
    x = {sd * re, sd * im};
  }
  return out;
}

// Bernoulli-Gaussian impulses i_k = b_k g_k with b_k ~ Bernoulli(p) and g_k
// circularly-symmetric Gaussian, each component ~ N(0, sigma_i_sq).
inline std::pair<TimeBlock, std::vector<bool>> impulsive_noise(std::size_t n, double p, double sigma_i_sq,
                                                               RngStream& rng) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ConfigError("impulse probability p = " + std::to_string(p) + " is outside [0, 1]");
  }
  if (!(sigma_i_sq >= 0.0) || std::isinf(sigma_i_sq)) {
    throw ConfigError("impulse variance must be finite and non-negative, got " + std::to_string(sigma_i_sq));
  }
  TimeBlock out(n);
  std::vector<bool> mask(n, false);
  const double sd = std::sqrt(sigma_i_sq);
  for (std::size_t k = 0; k < n; ++k) {
    if (rng.bernoulli(p)) {
      mask[k] = true;
      const double re = rng.gaussian();
      const double im = rng.gaussian();
      out[k] = {sd * re, sd * im};
    }
  }
  return {std::move(out), std::move(mask)};
}

// r_k = s_k + w_k + i_k, with w and i drawn from separate streams so the
// noise does not depend on the transmitted signal.
inline ChannelRealization transmit(const TimeBlock& signal, const ChannelParams& params, RngStream& awgn_rng,
                                   RngStream& impulse_rng) {
  ChannelRealization out;
  out.awgn = awgn_noise(signal.size(), params.sigma_w_sq(), awgn_rng);
  auto [impulses, mask] = impulsive_noise(signal.size(), params.p(), params.sigma_i_sq(), impulse_rng);
  out.impulses = std::move(impulses);
  out.impulse_mask = std::move(mask);
  out.received = TimeBlock(signal.size());
  for (std::size_t k = 0; k < signal.size(); ++k) {
    out.received[k] = signal[k] + out.awgn[k] + out.impulses[k];
  }
  return out;
}

inline ChannelRealization transmit(const TimeBlock& signal, const ChannelParams& params, RngStream& rng) {
  return transmit(signal, params, rng, rng);
}

}  // namespace plcsim
