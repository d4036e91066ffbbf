#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "plcsim/block.hpp"
#include "plcsim/random.hpp"

namespace plcsim::test {

template <typename Domain>
Block<Domain> random_block(RngStream& rng, std::size_t n) {
  Block<Domain> b(n);
  for (auto& x : b) x = {rng.gaussian(), rng.gaussian()};
  return b;
}

inline FrequencyBlock random_frequency_block(RngStream& rng, std::size_t n) {
  return random_block<FrequencyDomain>(rng, n);
}

inline TimeBlock random_time_block(RngStream& rng, std::size_t n) { return random_block<TimeDomain>(rng, n); }

inline double sample_correlation(const std::vector<double>& a, const std::vector<double>& b) {
  const double n = static_cast<double>(a.size());
  double ma = 0, mb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

}  // namespace plcsim::test
