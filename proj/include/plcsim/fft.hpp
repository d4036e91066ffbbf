#pragma once

#include <bit>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "plcsim/block.hpp"
#include "plcsim/error.hpp"

namespace plcsim {

inline bool is_power_of_two(std::size_t n) noexcept { return std::has_single_bit(n); }

// Unitary radix-2 FFT of a fixed power-of-two length. Both directions scale
// by 1/sqrt(N), so energy is preserved and inverse(forward(x)) == x.
class Radix2Fft {
 public:
  explicit Radix2Fft(std::size_t n) : n_(n) {
    if (!is_power_of_two(n)) {
      throw ConfigError("FFT length " + std::to_string(n) + " is not a power of two");
    }
    log2n_ = static_cast<unsigned>(std::countr_zero(n));
    reversed_.resize(n);
    for (std::size_t i = 0; i < n; ++i) reversed_[i] = reverse_bits(i);
    // twiddles_[k] = exp(-j 2 pi k / N), k < N/2
    twiddles_.resize(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k) {
      const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
      twiddles_[k] = {std::cos(angle), std::sin(angle)};
    }
    scale_ = 1.0 / std::sqrt(static_cast<double>(n));
  }

  std::size_t size() const noexcept { return n_; }

  // X_k = (1/sqrt N) sum_t x_t exp(-j 2 pi k t / N)
  void forward(std::span<Complex> data) const { transform(data, false); }

  // x_t = (1/sqrt N) sum_k X_k exp(+j 2 pi k t / N)
  void inverse(std::span<Complex> data) const { transform(data, true); }

 private:
  std::size_t reverse_bits(std::size_t x) const noexcept {
    std::size_t r = 0;
    for (unsigned b = 0; b < log2n_; ++b) {
      r = (r << 1) | (x & 1u);
      x >>= 1;
    }
    return r;
  }

  void transform(std::span<Complex> data, bool inverse) const {
    if (data.size() != n_) {
      throw ShapeError("FFT input has " + std::to_string(data.size()) + " samples, plan expects " +
                       std::to_string(n_));
    }
    for (std::size_t i = 0; i < n_; ++i) {
      const std::size_t j = reversed_[i];
      if (i < j) std::swap(data[i], data[j]);
    }
    for (std::size_t len = 2; len <= n_; len <<= 1) {
      const std::size_t half = len / 2;
      const std::size_t stride = n_ / len;
      for (std::size_t start = 0; start < n_; start += len) {
        for (std::size_t k = 0; k < half; ++k) {
          Complex w = twiddles_[k * stride];
          if (inverse) w = std::conj(w);
          const Complex a = data[start + k];
          const Complex b = data[start + k + half] * w;
          data[start + k] = a + b;
          data[start + k + half] = a - b;
        }
      }
    }
    for (auto& x : data) x *= scale_;
  }

  std::size_t n_;
  unsigned log2n_ = 0;
  double scale_ = 1.0;
  std::vector<std::size_t> reversed_;
  std::vector<Complex> twiddles_;
};

// OFDM modulation: unitary IFFT of the subcarrier symbols.
inline TimeBlock ofdm_modulate(const FrequencyBlock& block, const Radix2Fft& fft) {
  std::vector<Complex> out(block.begin(), block.end());
  fft.inverse(out);
  return TimeBlock(std::move(out));
}

inline TimeBlock ofdm_modulate(const FrequencyBlock& block) {
  return ofdm_modulate(block, Radix2Fft(block.size()));
}

inline FrequencyBlock ofdm_demodulate(const TimeBlock& block, const Radix2Fft& fft) {
  std::vector<Complex> out(block.begin(), block.end());
  fft.forward(out);
  return FrequencyBlock(std::move(out));
}

inline FrequencyBlock ofdm_demodulate(const TimeBlock& block) {
  return ofdm_demodulate(block, Radix2Fft(block.size()));
}

}  // namespace plcsim
