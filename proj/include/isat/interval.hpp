#pragma once

#include <stdexcept>
#include <string>

namespace isat {

/// Closed subinterval [lo, hi] of [0, 1]; the "sign" of an interval literal.
struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  constexpr Interval() = default;
  Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
    if (!(0.0 <= lo && lo <= hi && hi <= 1.0))
      throw std::invalid_argument("interval endpoints must satisfy 0 <= lo <= hi <= 1, got [" +
                                  std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }

  [[nodiscard]] constexpr bool contains(double x) const noexcept { return lo <= x && x <= hi; }

  /// Empty intersection under closed semantics.
  [[nodiscard]] constexpr bool disjoint(const Interval& other) const noexcept {
    return hi < other.lo || other.hi < lo;
  }

  friend constexpr bool operator==(const Interval&, const Interval&) = default;
};

/// The point of `iv` closest to 1/2.
[[nodiscard]] constexpr double bar_x(const Interval& iv) noexcept {
  if (iv.hi < 0.5) return iv.hi;
  if (iv.lo > 0.5) return iv.lo;
  return 0.5;
}

}  // namespace isat
