#include "gtrans/interval_median.hpp"

#include <algorithm>
#include <stdexcept>

namespace gtrans {

Interval::Interval(Scalar lo_, Scalar hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
  if (hi < lo) throw std::invalid_argument("interval with lo > hi");
}

Scalar interval_distance(const Scalar& x, const Interval& iv) {
  if (x > iv.hi) return x - iv.hi;
  if (x < iv.lo) return iv.lo - x;
  return 0;
}

Scalar total_interval_distance(const Scalar& x, std::span<const Interval> intervals) {
  Scalar sum = 0;
  for (const auto& iv : intervals) sum += interval_distance(x, iv);
  return sum;
}

Scalar clamp_into(const Scalar& x, const Interval& iv) {
  if (x < iv.lo) return iv.lo;
  if (x > iv.hi) return iv.hi;
  return x;
}

namespace detail {
namespace {

using Ptr = const Scalar*;

bool less(Ptr a, Ptr b) { return *a < *b; }

void sort_range(std::vector<Ptr>& v, std::size_t lo, std::size_t hi) {
  std::sort(v.begin() + static_cast<std::ptrdiff_t>(lo), v.begin() + static_cast<std::ptrdiff_t>(hi), less);
}

Ptr select_in(std::vector<Ptr>& v, std::size_t lo, std::size_t hi, std::size_t k);

// Median of the medians of groups of five, computed on a scratch copy.
Ptr pivot_of(std::vector<Ptr>& v, std::size_t lo, std::size_t hi) {
  std::vector<Ptr> medians;
  medians.reserve((hi - lo) / 5 + 1);
  for (std::size_t g = lo; g < hi; g += 5) {
    const std::size_t end = std::min(g + 5, hi);
    sort_range(v, g, end);
    medians.push_back(v[g + (end - g - 1) / 2]);
  }
  return select_in(medians, 0, medians.size(), (medians.size() - 1) / 2);
}

Ptr select_in(std::vector<Ptr>& v, std::size_t lo, std::size_t hi, std::size_t k) {
  while (true) {
    if (hi - lo <= kSelectSortCutoff) {
      sort_range(v, lo, hi);
      return v[lo + k];
    }
    const Scalar pivot = *pivot_of(v, lo, hi);
    // Three-way partition of [lo, hi) around the pivot value.
    std::size_t lt = lo, i = lo, gt = hi;
    while (i < gt) {
      if (*v[i] < pivot) {
        std::swap(v[lt++], v[i++]);
      } else if (pivot < *v[i]) {
        std::swap(v[i], v[--gt]);
      } else {
        ++i;
      }
    }
    const std::size_t below = lt - lo;
    const std::size_t equal = gt - lt;
    if (k < below) {
      hi = lt;
    } else if (k < below + equal) {
      return v[lt];
    } else {
      k -= below + equal;
      lo = gt;
    }
  }
}

}  // namespace

Scalar select_kth(std::vector<const Scalar*>& values, std::size_t k) {
  if (k >= values.size()) throw std::out_of_range("select_kth: rank out of range");
  return *select_in(values, 0, values.size(), k);
}

}  // namespace detail

Interval interval_median(std::span<const Interval> intervals) {
  if (intervals.empty()) throw std::invalid_argument("interval median of an empty collection");
  const std::size_t k = intervals.size();
  std::vector<const Scalar*> endpoints;
  endpoints.reserve(2 * k);
  for (const auto& iv : intervals) {
    endpoints.push_back(&iv.lo);
    endpoints.push_back(&iv.hi);
  }
  // Lower median has rank k-1 among the 2k endpoints, upper median rank k.
  Scalar lower = detail::select_kth(endpoints, k - 1);
  Scalar upper = detail::select_kth(endpoints, k);
  return Interval(std::move(lower), std::move(upper));
}

}  // namespace gtrans
