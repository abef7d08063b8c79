#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>

namespace kurihara {

/// A p-adic exponent in Z>=0 extended by infinity. Used for valuations,
/// Theta-ladder entries and Fitting exponents. Addition saturates at infinity.
class Exponent {
 public:
  constexpr Exponent() = default;
  constexpr Exponent(std::int64_t v) : value_(v) {}  // NOLINT(google-explicit-constructor)

  static constexpr Exponent infinity() { return Exponent(kInf); }

  constexpr bool is_finite() const { return value_ != kInf; }
  constexpr bool is_infinite() const { return value_ == kInf; }
  constexpr std::int64_t value() const { return value_; }

  constexpr Exponent operator+(Exponent o) const {
    if (!is_finite() || !o.is_finite()) return infinity();
    return Exponent(value_ + o.value_);
  }

  constexpr auto operator<=>(const Exponent&) const = default;

  std::string to_string() const { return is_finite() ? std::to_string(value_) : "inf"; }

 private:
  static constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();
  std::int64_t value_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, Exponent e) { return os << e.to_string(); }

inline Exponent min(Exponent a, Exponent b) { return a < b ? a : b; }

}  // namespace kurihara
