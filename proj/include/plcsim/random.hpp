#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace plcsim {

// SplitMix64 finalizer; a bijective 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// A seeded source of uniform, Gaussian and Bernoulli variates. Variate
// generation is written out explicitly (not via <random> distributions) so a
// given seed yields the same sequence on every standard library.
class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t key) {
    std::seed_seq seq{static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32)};
    engine_.seed(seq);
  }

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  // Uniform on [0, 1) with 53 bits of resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller; the second variate of each pair is cached.
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

  bool bernoulli(double p) { return uniform() < p; }

  // Uniform integer in [0, 4).
  unsigned quaternary() { return static_cast<unsigned>(engine_() >> 62); }

  bool bit() { return (engine_() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Per-trial stream lanes.
namespace lane {
inline constexpr std::uint64_t kDataBits = 0;
inline constexpr std::uint64_t kAwgn = 1;
inline constexpr std::uint64_t kImpulses = 2;
inline constexpr std::uint64_t kPhaseVectors = 3;
}  // namespace lane

// Stream key as a pure function of (master seed, trial, lane); distinct
// counters give unrelated engine seeds.
constexpr std::uint64_t stream_key(std::uint64_t master_seed, std::uint64_t trial_index,
                                   std::uint64_t lane_id) noexcept {
  std::uint64_t k = mix64(master_seed);
  k = mix64(k ^ mix64(trial_index + 0x5851f42d4c957f2dULL));
  k = mix64(k ^ mix64(lane_id + 0x14057b7ef767814fULL));
  return k;
}

inline RngStream derive_stream(std::uint64_t master_seed, std::uint64_t trial_index,
                               std::uint64_t lane_id) {
  return RngStream(stream_key(master_seed, trial_index, lane_id));
}

}  // namespace plcsim
