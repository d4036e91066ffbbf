#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace plcsim {

using Complex = std::complex<double>;

struct FrequencyDomain {};
struct TimeDomain {};

// A block of complex baseband samples tagged with the domain it lives in, so
// subcarrier symbols and time samples cannot be mixed up by accident.
template <typename Domain>
class Block {
 public:
  Block() = default;
  explicit Block(std::size_t n) : samples_(n) {}
  explicit Block(std::vector<Complex> samples) : samples_(std::move(samples)) {}
  Block(std::initializer_list<Complex> init) : samples_(init) {}

  std::size_t size() const noexcept { return samples_.size(); }
  bool empty() const noexcept { return samples_.empty(); }

  Complex& operator[](std::size_t i) noexcept { return samples_[i]; }
  const Complex& operator[](std::size_t i) const noexcept { return samples_[i]; }

  std::span<Complex> samples() noexcept { return samples_; }
  std::span<const Complex> samples() const noexcept { return samples_; }

  auto begin() noexcept { return samples_.begin(); }
  auto end() noexcept { return samples_.end(); }
  auto begin() const noexcept { return samples_.begin(); }
  auto end() const noexcept { return samples_.end(); }

  const std::vector<Complex>& vector() const noexcept { return samples_; }

  double energy() const noexcept {
    double e = 0.0;
    for (const auto& s : samples_) e += std::norm(s);
    return e;
  }

  Block& operator+=(const Block& rhs) {
    for (std::size_t i = 0; i < samples_.size(); ++i) samples_[i] += rhs.samples_[i];
    return *this;
  }
  Block& operator*=(Complex c) {
    for (auto& s : samples_) s *= c;
    return *this;
  }

  friend Block operator+(Block lhs, const Block& rhs) { return lhs += rhs; }
  friend Block operator*(Complex c, Block b) { return b *= c; }

  friend bool operator==(const Block&, const Block&) = default;

 private:
  std::vector<Complex> samples_;
};

using FrequencyBlock = Block<FrequencyDomain>;
using TimeBlock = Block<TimeDomain>;

}  // namespace plcsim
