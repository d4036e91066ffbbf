// Mean PAPR of 16-QAM OFDM symbols (N = 64) after SLM selection for
// increasing numbers of phase vectors.

#include <cstdio>
#include <vector>

#include "plcsim/plcsim.hpp"

int main() {
  using namespace plcsim;
  constexpr std::size_t kN = 64;
  constexpr std::size_t kSymbols = 2000;
  const Radix2Fft fft(kN);
  const PhaseVectorSet vectors = generate_phase_vectors(256, kN, 2024);

  RngStream bits_rng = derive_stream(7, 0, lane::kDataBits);
  std::vector<std::vector<double>> paprs;  // per symbol, all 256 candidates
  for (std::size_t s = 0; s < kSymbols; ++s) {
    std::vector<Bit> bits(4 * kN);
    for (auto& b : bits) b = bits_rng.bit() ? 1 : 0;
    paprs.push_back(slm_select(qam16_modulate(bits), vectors, fft).candidate_paprs);
  }

  std::printf("%6s %14s\n", "U", "mean PAPR (dB)");
  for (std::size_t u = 1; u <= 256; u *= 2) {
    double sum = 0.0;
    for (const auto& c : paprs) {
      double best = c[0];
      for (std::size_t i = 1; i < u; ++i) best = std::min(best, c[i]);
      sum += to_db(best);
    }
    std::printf("%6zu %14.3f\n", u, sum / kSymbols);
  }
}
