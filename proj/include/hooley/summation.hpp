#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include "hooley/error.hpp"

namespace hooley {
namespace detail {

/// Compensated (Neumaier) summation.
class NeumaierSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace detail

/// Signed 64.64 fixed-point accumulator. Each term is rounded to a multiple of
/// 2^-64 on entry; after that addition is exact integer arithmetic, so a total
/// does not depend on how the terms were grouped or ordered.
class FixedPointSum {
 public:
  static constexpr double kScale = 18446744073709551616.0;  // 2^64
  static constexpr double kMaxMagnitude = 4611686018427387904.0;  // 2^62

  void add(double x) {
    if (!(std::abs(x) < kMaxMagnitude)) {
      throw CapacityError("fixed-point accumulator term out of range: " + std::to_string(x));
    }
    raw_ += static_cast<__int128>(std::nearbyint(x * kScale));
  }

  FixedPointSum& operator+=(const FixedPointSum& other) {
    raw_ += other.raw_;
    return *this;
  }

  double value() const {
    const bool negative = raw_ < 0;
    const unsigned __int128 mag =
        negative ? static_cast<unsigned __int128>(-raw_) : static_cast<unsigned __int128>(raw_);
    const double whole = static_cast<double>(static_cast<std::uint64_t>(mag >> 64));
    const double frac = static_cast<double>(static_cast<std::uint64_t>(mag)) / kScale;
    const double v = whole + frac;
    return negative ? -v : v;
  }

  friend bool operator==(const FixedPointSum&, const FixedPointSum&) = default;

 private:
  __int128 raw_ = 0;
};

}  // namespace hooley
