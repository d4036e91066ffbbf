#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "plcsim/block.hpp"
#include "plcsim/error.hpp"

namespace plcsim {

using Bit = std::uint8_t;

// Square 16-QAM with unit average power. Each 4-bit group b3 b2 b1 b0 picks
// the in-phase level from (b3 b2) and the quadrature level from (b1 b0) using
// the Gray map 00 -> -3, 01 -> -1, 11 -> +1, 10 -> +3.
struct Qam16 {
  static constexpr std::size_t kBitsPerSymbol = 4;
  static constexpr std::size_t kOrder = 16;

  static double scale() { return 1.0 / std::sqrt(10.0); }

  static constexpr std::array<int, 4> kGrayLevels = {-3, -1, +3, +1};  // indexed by 2-bit value

  static double level(unsigned two_bits) { return kGrayLevels[two_bits & 3u] * scale(); }

  // Two-bit label of the nearest level on one axis (unscaled coordinate).
  static unsigned decide_axis(double x) {
    const double u = x / scale();
    if (u < -2.0) return 0b00;
    if (u < 0.0) return 0b01;
    if (u < 2.0) return 0b11;
    return 0b10;
  }

  static Complex point(unsigned symbol) {
    return {level((symbol >> 2) & 3u), level(symbol & 3u)};
  }

  static std::array<Complex, kOrder> constellation() {
    std::array<Complex, kOrder> pts{};
    for (unsigned s = 0; s < kOrder; ++s) pts[s] = point(s);
    return pts;
  }
};

inline FrequencyBlock qam16_modulate(std::span<const Bit> bits) {
  if (bits.size() % Qam16::kBitsPerSymbol != 0) {
    throw ShapeError("16-QAM needs a multiple of 4 bits, got " + std::to_string(bits.size()));
  }
  FrequencyBlock out(bits.size() / Qam16::kBitsPerSymbol);
  for (std::size_t k = 0; k < out.size(); ++k) {
    unsigned symbol = 0;
    for (std::size_t b = 0; b < Qam16::kBitsPerSymbol; ++b) {
      symbol = (symbol << 1) | (bits[Qam16::kBitsPerSymbol * k + b] & 1u);
    }
    out[k] = Qam16::point(symbol);
  }
  return out;
}

// Hard-decision demapping; the constellation is a product of two 4-PAM axes,
// so the nearest point is found axis by axis.
inline std::vector<Bit> qam16_demodulate(const FrequencyBlock& block) {
  std::vector<Bit> bits;
  bits.reserve(block.size() * Qam16::kBitsPerSymbol);
  for (const auto& z : block) {
    const unsigned i_bits = Qam16::decide_axis(z.real());
    const unsigned q_bits = Qam16::decide_axis(z.imag());
    bits.push_back(static_cast<Bit>((i_bits >> 1) & 1u));
    bits.push_back(static_cast<Bit>(i_bits & 1u));
    bits.push_back(static_cast<Bit>((q_bits >> 1) & 1u));
    bits.push_back(static_cast<Bit>(q_bits & 1u));
  }
  return bits;
}

}  // namespace plcsim
