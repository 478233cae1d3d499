#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "fjsp/time.hpp"

namespace fjsp {

/// Exact rational number with a normalized 64-bit numerator and positive
/// denominator. Intermediate products use 128-bit arithmetic; results that
/// do not fit in 64 bits throw std::overflow_error.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num) : num_(num) {}  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t num, std::int64_t den);

  static Rational from_ticks(TimeTicks t) { return {t.count(), TimeTicks::kPerUnit}; }

  [[nodiscard]] std::int64_t num() const { return num_; }
  [[nodiscard]] std::int64_t den() const { return den_; }
  [[nodiscard]] bool is_integer() const { return den_ == 1; }
  [[nodiscard]] double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// Exact decimal when the expansion terminates, otherwise the shortest decimal that reads
  /// back as the same double.
  [[nodiscard]] std::string to_decimal() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a) { return {-a.num_, a.den_}; }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  static Rational make(__int128 num, __int128 den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace fjsp
