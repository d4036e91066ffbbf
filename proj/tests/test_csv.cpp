#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "plcsim/csv.hpp"
#include "plcsim/random.hpp"

using namespace plcsim;

namespace {

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

double round6(double x) { return std::stod(format_number(x)); }

}  // namespace

TEST_CASE("trial CSV with no records is header only", "[csv]") {
  std::ostringstream os;
  write_trial_csv(os, {});
  REQUIRE(os.str() == std::string(kTrialCsvHeader) + "\n");
}

TEST_CASE("trial CSV with one record has two lines", "[csv]") {
  TrialRecord r;
  r.trial_index = 3;
  r.u_count = 64;
  r.applied_threshold = 0.25;
  r.snr_db = SnrDb::finite(12.5);
  r.gain_db = -0.5;
  r.seed = 9;
  r.symbols = 100;
  std::ostringstream os;
  write_trial_csv(os, std::vector<TrialRecord>{r});
  REQUIRE(os.str() == std::string(kTrialCsvHeader) + "\n3,64,0.25,12.5,-0.5,9,100\n");
  REQUIRE(count_lines(os.str()) == 2);
}

TEST_CASE("trial CSV round trip", "[csv]") {
  RngStream rng(5);
  std::vector<TrialRecord> records;
  for (std::size_t i = 0; i < 200; ++i) {
    TrialRecord r;
    r.trial_index = i;
    r.u_count = std::size_t{1} << (i % 9);
    r.applied_threshold = round6(5.0 * rng.uniform());
    r.snr_db = i % 17 == 0 ? SnrDb::infinite() : SnrDb::finite(round6(40.0 * rng.uniform() - 10.0));
    if (i % 3) r.gain_db = round6(rng.gaussian());
    r.seed = rng();
    r.symbols = 1 + i;
    records.push_back(r);
  }
  std::stringstream ss;
  write_trial_csv(ss, records);
  REQUIRE(parse_trial_csv(ss) == records);
}

TEST_CASE("sweep CSV layout and round trip", "[csv]") {
  SweepResult r;
  r.parameter = "threshold";
  r.values = {0.5, 1.0, 1.5};
  r.points.resize(3);
  r.points[0] = {{10.0, 1.0, 64}, 1, 0};
  r.points[1] = {{10.0, 0.0, 64}, 1, 0};
  r.points[2] = {{}, 0, 4};
  std::stringstream ss;
  write_sweep_csv(ss, r);
  REQUIRE(ss.str() == std::string(kSweepCsvHeader) +
                          "\nthreshold,0.5,10,1,0\nthreshold,1,inf,1,0\nthreshold,1.5,nan,0,4\n");
  const auto rows = parse_sweep_csv(ss);
  REQUIRE(rows.size() == 3);
  REQUIRE(rows[0] == SweepRow{"threshold", 0.5, SnrDb::finite(10.0), 1, 0});
  REQUIRE(rows[1].snr->is_infinite());
  REQUIRE_FALSE(rows[2].snr.has_value());
  REQUIRE(rows[2].excluded_symbols == 4);
}

TEST_CASE("csv parse errors", "[csv]") {
  std::istringstream bad_header("trial,u\n");
  REQUIRE_THROWS_AS(parse_trial_csv(bad_header), InputError);
  std::istringstream bad_row(std::string(kTrialCsvHeader) + "\n1,2,x,4,,5,6\n");
  REQUIRE_THROWS_AS(parse_trial_csv(bad_row), InputError);
  std::istringstream short_row(std::string(kSweepCsvHeader) + "\nthreshold,1\n");
  REQUIRE_THROWS_AS(parse_sweep_csv(short_row), InputError);
}

TEST_CASE("write_csv to an unwritable path raises IoError naming it", "[csv]") {
  const std::string path = "/nonexistent-dir/out.csv";
  REQUIRE_THROWS_AS(write_csv(path, std::span<const TrialRecord>{}), IoError);
  REQUIRE_THROWS_WITH(write_csv(path, std::span<const TrialRecord>{}), Catch::Matchers::ContainsSubstring(path));
}
