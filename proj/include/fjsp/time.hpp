#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace fjsp {

/// Exact non-negative time quantity. One time unit is 150 ticks, so travel
/// times divided by 25 or 30 stay integral.
class TimeTicks {
 public:
  static constexpr std::int64_t kPerUnit = 150;

  constexpr TimeTicks() = default;
  constexpr explicit TimeTicks(std::int64_t ticks) : ticks_(ticks) {}

  static constexpr TimeTicks units(std::int64_t u) { return TimeTicks(u * kPerUnit); }

  [[nodiscard]] constexpr std::int64_t count() const { return ticks_; }

  constexpr TimeTicks& operator+=(TimeTicks o) {
    ticks_ += o.ticks_;
    return *this;
  }
  constexpr TimeTicks& operator-=(TimeTicks o) {
    ticks_ -= o.ticks_;
    return *this;
  }
  friend constexpr TimeTicks operator+(TimeTicks a, TimeTicks b) { return TimeTicks(a.ticks_ + b.ticks_); }
  friend constexpr TimeTicks operator-(TimeTicks a, TimeTicks b) { return TimeTicks(a.ticks_ - b.ticks_); }
  friend constexpr TimeTicks operator*(TimeTicks a, std::int64_t k) { return TimeTicks(a.ticks_ * k); }
  friend constexpr auto operator<=>(TimeTicks, TimeTicks) = default;

  /// Time units as a decimal string, e.g. 1075 ticks -> "7.166666666666667".
  [[nodiscard]] std::string to_units_string() const;
  [[nodiscard]] double to_units() const { return static_cast<double>(ticks_) / kPerUnit; }

 private:
  std::int64_t ticks_ = 0;
};

}  // namespace fjsp
