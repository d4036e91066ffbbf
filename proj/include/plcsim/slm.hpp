#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "plcsim/block.hpp"
#include "plcsim/error.hpp"
#include "plcsim/fft.hpp"
#include "plcsim/random.hpp"

namespace plcsim {

// U phase vectors of N unit-modulus weights from {+1, -1, +j, -j}. Vector 0 is
// all ones. Vectors are drawn row by row from one stream, so the set for U
// is a prefix of the set for any larger U with the same seed.
class PhaseVectorSet {
 public:
  PhaseVectorSet(std::size_t u_count, std::size_t n, std::uint64_t seed) : n_(n), seed_(seed) {
    if (u_count == 0) throw ConfigError("SLM needs at least one phase vector (U = 0)");
    if (n == 0) throw ConfigError("phase vectors need at least one subcarrier");
    static constexpr Complex kAlphabet[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    vectors_.reserve(u_count);
    vectors_.emplace_back(n, Complex{1.0, 0.0});
    RngStream rng(seed);
    for (std::size_t u = 1; u < u_count; ++u) {
      std::vector<Complex> w(n);
      for (auto& x : w) x = kAlphabet[rng.quaternary()];
      vectors_.push_back(std::move(w));
    }
  }

  std::size_t u_count() const noexcept { return vectors_.size(); }
  std::size_t n() const noexcept { return n_; }
  std::uint64_t seed() const noexcept { return seed_; }
  const std::vector<Complex>& operator[](std::size_t u) const { return vectors_.at(u); }

 private:
  std::size_t n_;
  std::uint64_t seed_;
  std::vector<std::vector<Complex>> vectors_;
};

inline PhaseVectorSet generate_phase_vectors(std::size_t u_count, std::size_t n, std::uint64_t seed) {
  return PhaseVectorSet(u_count, n, seed);
}

// Peak-to-average power ratio max|s|^2 / mean|s|^2 as a linear ratio.
inline double papr(const TimeBlock& signal) {
  double peak = 0.0;
  double total = 0.0;
  for (const auto& s : signal) {
    const double p = std::norm(s);
    peak = std::max(peak, p);
    total += p;
  }
  if (total == 0.0) throw UndefinedPaprError("PAPR of an all-zero signal is undefined");
  return peak * static_cast<double>(signal.size()) / total;
}

inline double to_db(double linear) { return 10.0 * std::log10(linear); }
inline double from_db(double db) { return std::pow(10.0, db / 10.0); }

struct SlmSelection {
  TimeBlock signal;
  std::size_t chosen_index = 0;
  double papr = 0.0;
  std::vector<double> candidate_paprs;
};

inline FrequencyBlock slm_rotate(const FrequencyBlock& block, const PhaseVectorSet& vectors,
                                 std::size_t index) {
  if (index >= vectors.u_count()) {
    throw InputError("phase vector index " + std::to_string(index) + " out of range for U = " +
                     std::to_string(vectors.u_count()));
  }
  if (block.size() != vectors.n()) {
    throw ShapeError("block has " + std::to_string(block.size()) + " subcarriers, phase vectors have " +
                     std::to_string(vectors.n()));
  }
  const auto& w = vectors[index];
  FrequencyBlock out(block.size());
  for (std::size_t k = 0; k < block.size(); ++k) out[k] = block[k] * w[k];
  return out;
}

// Modulates every candidate S * W(u) and keeps the one with the lowest PAPR;
// ties go to the lowest index.
inline SlmSelection slm_select(const FrequencyBlock& block, const PhaseVectorSet& vectors,
                               const Radix2Fft& fft) {
  if (block.size() != vectors.n()) {
    throw ShapeError("block has " + std::to_string(block.size()) + " subcarriers, phase vectors have " +
                     std::to_string(vectors.n()));
  }
  SlmSelection sel;
  sel.candidate_paprs.reserve(vectors.u_count());
  for (std::size_t u = 0; u < vectors.u_count(); ++u) {
    TimeBlock candidate = ofdm_modulate(slm_rotate(block, vectors, u), fft);
    const double value = papr(candidate);
    sel.candidate_paprs.push_back(value);
    if (u == 0 || value < sel.papr) {
      sel.papr = value;
      sel.chosen_index = u;
      sel.signal = std::move(candidate);
    }
  }
  return sel;
}

inline SlmSelection slm_select(const FrequencyBlock& block, const PhaseVectorSet& vectors) {
  return slm_select(block, vectors, Radix2Fft(block.size()));
}

// Receiver side: multiply by the conjugate of the chosen phase vector.
inline FrequencyBlock slm_derotate(const FrequencyBlock& block, const PhaseVectorSet& vectors,
                                   std::size_t chosen_index) {
  if (chosen_index >= vectors.u_count()) {
    throw InputError("phase vector index " + std::to_string(chosen_index) + " out of range for U = " +
                     std::to_string(vectors.u_count()));
  }
  if (block.size() != vectors.n()) {
    throw ShapeError("block has " + std::to_string(block.size()) + " subcarriers, phase vectors have " +
                     std::to_string(vectors.n()));
  }
  const auto& w = vectors[chosen_index];
  FrequencyBlock out(block.size());
  for (std::size_t k = 0; k < block.size(); ++k) out[k] = block[k] * std::conj(w[k]);
  return out;
}

}  // namespace plcsim
