#pragma once

#include <cerrno>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "plcsim/error.hpp"
#include "plcsim/experiments.hpp"
#include "plcsim/metrics.hpp"

namespace plcsim {

inline constexpr const char* kSweepCsvHeader = "param,value,mean_snr_db,symbols,excluded_symbols";
inline constexpr const char* kTrialCsvHeader = "trial,u,applied_threshold,snr_db,gain_db,seed,symbols";

inline void write_sweep_csv(std::ostream& os, std::span<const SweepResult> results) {
  os << kSweepCsvHeader << '\n';
  for (const auto& r : results) {
    for (std::size_t i = 0; i < r.values.size(); ++i) {
      const auto& pt = r.points[i];
      const auto snr = pt.snr();
      os << r.parameter << ',' << format_number(r.values[i]) << ',' << (snr ? snr->to_string() : "nan") << ','
         << pt.symbols << ',' << pt.excluded_symbols << '\n';
    }
  }
}

inline void write_sweep_csv(std::ostream& os, const SweepResult& result) {
  write_sweep_csv(os, std::span<const SweepResult>(&result, 1));
}

inline void write_trial_csv(std::ostream& os, std::span<const TrialRecord> records) {
  os << kTrialCsvHeader << '\n';
  for (const auto& r : records) {
    os << r.trial_index << ',' << r.u_count << ',' << format_number(r.applied_threshold) << ','
       << r.snr_db.to_string() << ',' << (r.gain_db ? format_number(*r.gain_db) : "") << ',' << r.seed << ','
       << r.symbols << '\n';
  }
}

namespace detail {

template <typename Writer>
void write_file(const std::string& path, Writer&& writer) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing: " + std::strerror(errno));
  writer(out);
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

inline std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

inline double parse_double(const std::string& s) {
  if (s == "inf") return HUGE_VAL;
  if (s == "-inf") return -HUGE_VAL;
  if (s == "nan") return std::nan("");
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || *end != '\0') throw InputError("malformed number '" + s + "' in CSV");
  return v;
}

inline std::uint64_t parse_uint(const std::string& s) {
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
  if (s.empty() || *end != '\0' || errno == ERANGE || s.front() == '-') {
    throw InputError("malformed integer '" + s + "' in CSV");
  }
  return v;
}

inline SnrDb parse_snr(const std::string& s) {
  if (s == "inf") return SnrDb::infinite();
  return SnrDb::finite(parse_double(s));
}

inline void expect_header(std::istream& is, const char* header) {
  std::string line;
  if (!std::getline(is, line) || line != header) {
    throw InputError(std::string("expected CSV header '") + header + "'");
  }
}

}  // namespace detail

inline void write_csv(const std::string& path, std::span<const SweepResult> results) {
  detail::write_file(path, [&](std::ostream& os) { write_sweep_csv(os, results); });
}

inline void write_csv(const std::string& path, const SweepResult& result) {
  write_csv(path, std::span<const SweepResult>(&result, 1));
}

inline void write_csv(const std::string& path, std::span<const TrialRecord> records) {
  detail::write_file(path, [&](std::ostream& os) { write_trial_csv(os, records); });
}

inline std::vector<TrialRecord> parse_trial_csv(std::istream& is) {
  detail::expect_header(is, kTrialCsvHeader);
  std::vector<TrialRecord> out;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto f = detail::split_fields(line);
    if (f.size() != 7) throw InputError("trial CSV row has " + std::to_string(f.size()) + " fields: " + line);
    TrialRecord r;
    r.trial_index = detail::parse_uint(f[0]);
    r.u_count = detail::parse_uint(f[1]);
    r.applied_threshold = detail::parse_double(f[2]);
    r.snr_db = detail::parse_snr(f[3]);
    if (!f[4].empty()) r.gain_db = detail::parse_double(f[4]);
    r.seed = detail::parse_uint(f[5]);
    r.symbols = detail::parse_uint(f[6]);
    out.push_back(r);
  }
  return out;
}

struct SweepRow {
  std::string param;
  double value = 0.0;
  std::optional<SnrDb> snr;  // nullopt for "nan" (all symbols excluded)
  std::size_t symbols = 0;
  std::size_t excluded_symbols = 0;

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

inline std::vector<SweepRow> parse_sweep_csv(std::istream& is) {
  detail::expect_header(is, kSweepCsvHeader);
  std::vector<SweepRow> out;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto f = detail::split_fields(line);
    if (f.size() != 5) throw InputError("sweep CSV row has " + std::to_string(f.size()) + " fields: " + line);
    SweepRow r;
    r.param = f[0];
    r.value = detail::parse_double(f[1]);
    if (f[2] != "nan") r.snr = detail::parse_snr(f[2]);
    r.symbols = detail::parse_uint(f[3]);
    r.excluded_symbols = detail::parse_uint(f[4]);
    out.push_back(r);
  }
  return out;
}

}  // namespace plcsim
