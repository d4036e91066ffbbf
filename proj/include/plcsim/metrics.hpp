#pragma once

#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdio>
#include <string>

#include "plcsim/block.hpp"
#include "plcsim/error.hpp"

namespace plcsim {

// Six significant digits, locale independent.
inline std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

// SNR in dB, or the infinite-SNR sentinel when the error energy is zero.
class SnrDb {
 public:
  static SnrDb finite(double db) { return SnrDb(db, false); }
  static SnrDb infinite() { return SnrDb(0.0, true); }

  bool is_infinite() const noexcept { return infinite_; }
  // Only meaningful when !is_infinite().
  double db() const noexcept { return db_; }

  std::string to_string() const { return infinite_ ? "inf" : format_number(db_); }

  friend bool operator==(const SnrDb& a, const SnrDb& b) noexcept {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.db_ == b.db_);
  }
  friend std::partial_ordering operator<=>(const SnrDb& a, const SnrDb& b) noexcept {
    if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
    return a.db_ <=> b.db_;
  }

 private:
  SnrDb(double db, bool inf) : db_(db), infinite_(inf) {}
  double db_;
  bool infinite_;
};

// Running energy sums for the ensemble estimate
//   SNR = sum |s_k|^2 / sum |y_k - s_k|^2.
// Measurements merge by field-wise addition.
struct SnrMeasurement {
  double signal_energy = 0.0;
  double error_energy = 0.0;
  std::size_t sample_count = 0;

  SnrMeasurement& operator+=(const SnrMeasurement& o) noexcept {
    signal_energy += o.signal_energy;
    error_energy += o.error_energy;
    sample_count += o.sample_count;
    return *this;
  }
  friend SnrMeasurement operator+(SnrMeasurement a, const SnrMeasurement& b) noexcept { return a += b; }
  friend bool operator==(const SnrMeasurement&, const SnrMeasurement&) = default;
};

inline SnrMeasurement measure_block(const TimeBlock& transmitted, const TimeBlock& blanked) {
  if (transmitted.size() != blanked.size()) {
    throw InputError("SNR measurement needs equal lengths, got " + std::to_string(transmitted.size()) +
                     " and " + std::to_string(blanked.size()));
  }
  SnrMeasurement m;
  for (std::size_t k = 0; k < transmitted.size(); ++k) {
    m.signal_energy += std::norm(transmitted[k]);
    m.error_energy += std::norm(blanked[k] - transmitted[k]);
  }
  m.sample_count = transmitted.size();
  return m;
}

inline SnrMeasurement accumulate_snr(SnrMeasurement meas, const TimeBlock& transmitted, const TimeBlock& blanked) {
  return meas += measure_block(transmitted, blanked);
}

inline double snr_linear(const SnrMeasurement& meas) {
  if (meas.sample_count == 0) throw InputError("SNR of an empty measurement");
  if (meas.error_energy == 0.0) throw InputError("linear SNR is unbounded: error energy is zero");
  return meas.signal_energy / meas.error_energy;
}

inline SnrDb snr_db(const SnrMeasurement& meas) {
  if (meas.sample_count == 0) throw InputError("SNR of an empty measurement");
  if (meas.error_energy == 0.0) return SnrDb::infinite();
  return SnrDb::finite(10.0 * std::log10(meas.signal_energy / meas.error_energy));
}

// Relative gain 10 log10(snr_u / snr_unmod) of two linear SNRs.
inline double relative_gain_db(double snr_u, double snr_unmod) {
  if (!(snr_u > 0.0) || !(snr_unmod > 0.0)) {
    throw InputError("relative gain needs positive SNRs, got " + std::to_string(snr_u) + " and " +
                     std::to_string(snr_unmod));
  }
  return 10.0 * std::log10(snr_u / snr_unmod);
}

}  // namespace plcsim
