#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "plcsim/fft.hpp"
#include "plcsim/qam.hpp"
#include "plcsim/slm.hpp"
#include "test_support.hpp"

using namespace plcsim;

namespace {

FrequencyBlock random_qam_block(RngStream& rng, std::size_t n) {
  std::vector<Bit> bits(4 * n);
  for (auto& b : bits) b = rng.bit() ? 1 : 0;
  return qam16_modulate(bits);
}

}  // namespace

TEST_CASE("phase vectors: identity first, unit modulus, nested", "[slm]") {
  const auto one = generate_phase_vectors(1, 64, 3);
  REQUIRE(one.u_count() == 1);
  for (const auto& w : one[0]) REQUIRE(w == Complex(1.0, 0.0));

  const auto four = generate_phase_vectors(4, 64, 3);
  const auto eight = generate_phase_vectors(8, 64, 3);
  for (std::size_t u = 0; u < 4; ++u) REQUIRE(four[u] == eight[u]);
  for (std::size_t u = 0; u < 8; ++u) {
    for (const auto& w : eight[u]) REQUIRE(std::norm(w) == 1.0);
  }

  const auto other_seed = generate_phase_vectors(8, 64, 4);
  REQUIRE(other_seed[1] != eight[1]);
}

TEST_CASE("phase vector alphabet is uniform over {+1,-1,+j,-j}", "[slm]") {
  const std::size_t n = 100000;
  const auto set = generate_phase_vectors(2, n, 17);
  std::size_t counts[4] = {};
  for (const auto& w : set[1]) {
    if (w == Complex(1, 0)) ++counts[0];
    else if (w == Complex(-1, 0)) ++counts[1];
    else if (w == Complex(0, 1)) ++counts[2];
    else if (w == Complex(0, -1)) ++counts[3];
    else FAIL("entry outside the alphabet");
  }
  const double expected = n / 4.0;
  const double sd = std::sqrt(n * 0.25 * 0.75);
  for (auto c : counts) REQUIRE(std::abs(static_cast<double>(c) - expected) < 3.0 * sd);
}

TEST_CASE("generate_phase_vectors rejects U = 0", "[slm]") {
  REQUIRE_THROWS_AS(generate_phase_vectors(0, 64, 1), ConfigError);
}

TEST_CASE("papr worked values", "[slm]") {
  REQUIRE(papr(TimeBlock(std::vector<Complex>(64, Complex(0.6, 0.8)))) == Catch::Approx(1.0).epsilon(1e-14));
  TimeBlock impulse(64);
  impulse[17] = Complex(0.0, 2.5);
  REQUIRE(papr(impulse) == Catch::Approx(64.0).epsilon(1e-14));
  REQUIRE(papr(TimeBlock{1.0, 1.0, Complex(0, 1), 3.0}) == Catch::Approx(3.0).epsilon(1e-14));
  REQUIRE_THROWS_AS(papr(TimeBlock(8)), UndefinedPaprError);
}

TEST_CASE("slm_select with U = 1 is plain OFDM", "[slm]") {
  RngStream rng(1);
  const auto block = random_qam_block(rng, 64);
  const auto sel = slm_select(block, generate_phase_vectors(1, 64, 9));
  REQUIRE(sel.chosen_index == 0);
  REQUIRE(sel.signal == ofdm_modulate(block));
  REQUIRE(sel.papr == papr(ofdm_modulate(block)));
}

TEST_CASE("slm_select picks the brute-force minimum", "[slm]") {
  RngStream rng(8);
  const auto vectors = generate_phase_vectors(8, 64, 21);
  for (int rep = 0; rep < 50; ++rep) {
    const auto block = random_qam_block(rng, 64);
    const auto sel = slm_select(block, vectors);

    // Independent enumeration: rotate, modulate, PAPR from first principles.
    double best = 0.0;
    std::size_t best_u = 0;
    for (std::size_t u = 0; u < 8; ++u) {
      FrequencyBlock rotated(64);
      for (std::size_t k = 0; k < 64; ++k) rotated[k] = block[k] * vectors[u][k];
      const TimeBlock t = ofdm_modulate(rotated);
      double peak = 0.0, mean = 0.0;
      for (const auto& x : t) {
        peak = std::max(peak, std::norm(x));
        mean += std::norm(x) / 64.0;
      }
      const double value = peak / mean;
      REQUIRE(value == Catch::Approx(sel.candidate_paprs[u]).epsilon(1e-12));
      if (u == 0 || value < best) {
        best = value;
        best_u = u;
      }
    }
    REQUIRE(sel.papr == Catch::Approx(best).epsilon(1e-12));
    REQUIRE(sel.chosen_index == best_u);
    REQUIRE(sel.papr == *std::min_element(sel.candidate_paprs.begin(), sel.candidate_paprs.end()));
    REQUIRE(sel.papr <= sel.candidate_paprs[0]);
    REQUIRE(sel.papr >= 1.0);
  }
}

TEST_CASE("slm selected PAPR is non-increasing as U doubles", "[slm]") {
  RngStream rng(4);
  const Radix2Fft fft(64);
  for (int rep = 0; rep < 20; ++rep) {
    const auto block = random_qam_block(rng, 64);
    double previous = 0.0;
    for (std::size_t u = 1; u <= 256; u *= 2) {
      const double value = slm_select(block, generate_phase_vectors(u, 64, 77), fft).papr;
      if (u > 1) REQUIRE(value <= previous);
      previous = value;
    }
  }
}

TEST_CASE("slm rotation preserves energy and derotation inverts it", "[slm]") {
  RngStream rng(6);
  const auto vectors = generate_phase_vectors(16, 64, 5);
  for (int rep = 0; rep < 20; ++rep) {
    const auto s = test::random_frequency_block(rng, 64);
    for (std::size_t u = 0; u < 16; ++u) {
      const auto rotated = slm_rotate(s, vectors, u);
      REQUIRE(std::abs(rotated.energy() - s.energy()) <= 1e-10 * s.energy());
      const auto back = slm_derotate(rotated, vectors, u);
      for (std::size_t k = 0; k < 64; ++k) REQUIRE(std::abs(back[k] - s[k]) < 1e-12);
    }
    REQUIRE(slm_derotate(s, vectors, 0) == s);
  }
  REQUIRE_THROWS_AS(slm_derotate(test::random_frequency_block(rng, 64), vectors, 16), InputError);
  REQUIRE_THROWS_AS(slm_select(test::random_frequency_block(rng, 32), vectors), ShapeError);
}

TEST_CASE("noiseless SLM loop recovers the bits", "[slm]") {
  RngStream rng(12);
  const Radix2Fft fft(64);
  const auto vectors = generate_phase_vectors(32, 64, 8);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<Bit> bits(256);
    for (auto& b : bits) b = rng.bit() ? 1 : 0;
    const auto sel = slm_select(qam16_modulate(bits), vectors, fft);
    const auto rx = slm_derotate(ofdm_demodulate(sel.signal, fft), vectors, sel.chosen_index);
    REQUIRE(qam16_demodulate(rx) == bits);
  }
}

TEST_CASE("slm_select is deterministic", "[slm]") {
  RngStream a(3), b(3);
  const auto block_a = random_qam_block(a, 64);
  const auto block_b = random_qam_block(b, 64);
  const auto s1 = slm_select(block_a, generate_phase_vectors(64, 64, 1));
  const auto s2 = slm_select(block_b, generate_phase_vectors(64, 64, 1));
  REQUIRE(s1.signal == s2.signal);
  REQUIRE(s1.chosen_index == s2.chosen_index);
  REQUIRE(s1.candidate_paprs == s2.candidate_paprs);
}
