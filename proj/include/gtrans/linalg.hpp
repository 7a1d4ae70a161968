#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "gtrans/core.hpp"
#include "gtrans/scalar.hpp"

namespace gtrans {

/// Dense row-major matrix of exact rationals.
class RationalMatrix {
 public:
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  RationalMatrix select_columns(const std::vector<std::size_t>& columns) const;
  RationalMatrix transpose() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Scalar> data_;
};

/// B(i, k) = 1 iff point i belongs to group k.
RationalMatrix membership_matrix(std::size_t n, const std::vector<IndexSet>& groups);

std::size_t rank(RationalMatrix a);

/// Some solution of A x = b (free variables set to zero), or nullopt.
std::optional<std::vector<Scalar>> solve_particular(RationalMatrix a, std::vector<Scalar> b);

/// Exact minimiser of sum |x_k| subject to A x = b, or nullopt if infeasible.
std::optional<std::vector<Scalar>> minimize_l1(const RationalMatrix& a, const std::vector<Scalar>& b);

/// Some x >= 0 with A x = b, or nullopt.
std::optional<std::vector<Scalar>> nonnegative_solution(const RationalMatrix& a, const std::vector<Scalar>& b);

namespace detail {

/// Exact optimum of min c.x s.t. A x = b, x >= 0 (nullopt when infeasible).
/// A double-precision simplex proposes a basis which is then re-solved and
/// certified in rationals; a rational Bland simplex runs when that fails.
std::optional<std::vector<Scalar>> solve_standard_lp(const RationalMatrix& a, const std::vector<Scalar>& b,
                                                     const std::vector<Scalar>& c);

struct LpStats {
  std::size_t exact_fallbacks = 0;
};
LpStats& lp_stats();

}  // namespace detail

}  // namespace gtrans
