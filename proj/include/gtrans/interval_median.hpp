#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gtrans/scalar.hpp"

namespace gtrans {

/// Closed interval [lo, hi] on the rational line; lo == hi is allowed.
struct Interval {
  Scalar lo;
  Scalar hi;

  Interval(Scalar lo_, Scalar hi_);
  static Interval point(const Scalar& x) { return Interval(x, x); }

  bool contains(const Scalar& x) const { return lo <= x && x <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// 0 inside, x - hi above, lo - x below.
Scalar interval_distance(const Scalar& x, const Interval& iv);

/// Sum of interval_distance(x, .) over the collection.
Scalar total_interval_distance(const Scalar& x, std::span<const Interval> intervals);

/// Nearest point of iv to x.
Scalar clamp_into(const Scalar& x, const Interval& iv);

/// Set of minimisers of total_interval_distance: the interval between the lower
/// and upper median of the 2k endpoints (duplicates counted). Linear time.
/// Throws std::invalid_argument on an empty collection.
Interval interval_median(std::span<const Interval> intervals);

namespace detail {

/// Inputs at or below this size are sorted instead of running median-of-medians.
inline constexpr std::size_t kSelectSortCutoff = 32;

/// k-th smallest (0-based) element; reorders `values`. Deterministic
/// worst-case linear time for inputs above the cutoff.
Scalar select_kth(std::vector<const Scalar*>& values, std::size_t k);

}  // namespace detail

}  // namespace gtrans
