#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "plcsim/metrics.hpp"
#include "plcsim/random.hpp"
#include "test_support.hpp"

using namespace plcsim;

TEST_CASE("accumulate_snr worked cases", "[metrics]") {
  RngStream rng(1);
  const TimeBlock s = test::random_time_block(rng, 64);

  const auto same = accumulate_snr({}, s, s);
  REQUIRE(same.error_energy == 0.0);
  REQUIRE(same.signal_energy == s.energy());
  REQUIRE(same.sample_count == 64);

  TimeBlock unit(64);
  for (std::size_t k = 0; k < 64; ++k) unit[k] = (k % 2) ? Complex(0.0, 1.0) : Complex(-1.0, 0.0);
  const auto zeroed = accumulate_snr({}, unit, TimeBlock(64));
  REQUIRE(zeroed.signal_energy == 64.0);
  REQUIRE(zeroed.error_energy == 64.0);
  REQUIRE(snr_db(zeroed) == SnrDb::finite(0.0));

  REQUIRE_THROWS_AS(accumulate_snr({}, s, TimeBlock(32)), InputError);
}

TEST_CASE("accumulation over A then B equals the concatenation", "[metrics]") {
  RngStream rng(2);
  const TimeBlock a = test::random_time_block(rng, 64), ya = test::random_time_block(rng, 64);
  const TimeBlock b = test::random_time_block(rng, 64), yb = test::random_time_block(rng, 64);
  std::vector<Complex> ab(a.begin(), a.end()), yab(ya.begin(), ya.end());
  ab.insert(ab.end(), b.begin(), b.end());
  yab.insert(yab.end(), yb.begin(), yb.end());

  const auto split = accumulate_snr(accumulate_snr({}, a, ya), b, yb);
  const auto joint = accumulate_snr({}, TimeBlock(ab), TimeBlock(yab));
  REQUIRE(split.sample_count == joint.sample_count);
  REQUIRE(split.signal_energy == Catch::Approx(joint.signal_energy).epsilon(1e-14));
  REQUIRE(split.error_energy == Catch::Approx(joint.error_energy).epsilon(1e-14));
  REQUIRE((measure_block(a, ya) + measure_block(b, yb)) == split);
}

TEST_CASE("snr_db conversions and sentinel", "[metrics]") {
  REQUIRE(snr_db({1.0, 0.01, 1}).db() == Catch::Approx(20.0).epsilon(1e-14));
  REQUIRE(snr_db({1.0, 0.0, 64}).is_infinite());
  REQUIRE(snr_db({1.0, 0.0, 64}).to_string() == "inf");
  REQUIRE_THROWS_AS(snr_db({}), InputError);
  REQUIRE(SnrDb::infinite() > SnrDb::finite(1e300));
  REQUIRE(SnrDb::finite(3.0) < SnrDb::finite(4.0));
  REQUIRE(SnrDb::infinite() == SnrDb::infinite());
}

TEST_CASE("SNR is invariant under joint scaling", "[metrics][property]") {
  RngStream rng(3);
  for (int rep = 0; rep < 100; ++rep) {
    const TimeBlock s = test::random_time_block(rng, 64);
    const TimeBlock y = test::random_time_block(rng, 64);
    const double c = 0.1 + 10.0 * rng.uniform();
    const double base = snr_db(measure_block(s, y)).db();
    const double scaled = snr_db(measure_block(Complex(c, 0) * s, Complex(c, 0) * y)).db();
    REQUIRE(std::abs(base - scaled) < 1e-12);
  }
}

TEST_CASE("relative_gain_db", "[metrics]") {
  REQUIRE(relative_gain_db(3.7, 3.7) == 0.0);
  REQUIRE(relative_gain_db(10.0, 1.0) == Catch::Approx(10.0).epsilon(1e-15));
  RngStream rng(4);
  for (int rep = 0; rep < 1000; ++rep) {
    const double a = std::exp(10.0 * (rng.uniform() - 0.5));
    const double b = std::exp(10.0 * (rng.uniform() - 0.5));
    REQUIRE(std::abs(relative_gain_db(a, b) + relative_gain_db(b, a)) < 1e-12);
    REQUIRE(relative_gain_db(a, a) == 0.0);
  }
  REQUIRE_THROWS_AS(relative_gain_db(0.0, 1.0), InputError);
  REQUIRE_THROWS_AS(relative_gain_db(1.0, -2.0), InputError);
}
