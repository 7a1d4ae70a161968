#include "gtrans/linalg.hpp"

#include <cmath>
#include <limits>

namespace gtrans {

RationalMatrix RationalMatrix::select_columns(const std::vector<std::size_t>& columns) const {
  RationalMatrix out(rows_, columns.size());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < columns.size(); ++k) out(r, k) = (*this)(r, columns[k]);
  }
  return out;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  }
  return out;
}

RationalMatrix membership_matrix(std::size_t n, const std::vector<IndexSet>& groups) {
  RationalMatrix b(n, groups.size());
  for (std::size_t k = 0; k < groups.size(); ++k) {
    for (std::size_t i : groups[k]) b(i, k) = 1;
  }
  return b;
}

namespace {

struct Echelon {
  std::vector<std::size_t> pivot_cols;  // pivot column of row r
};

// Reduced row echelon form in place; rhs (may be empty) follows the row ops.
Echelon reduce(RationalMatrix& a, std::vector<Scalar>* rhs) {
  Echelon e;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < a.rows() && a(pivot, col) == 0) ++pivot;
    if (pivot == a.rows()) continue;
    if (pivot != row) {
      for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(row, c), a(pivot, c));
      if (rhs) std::swap((*rhs)[row], (*rhs)[pivot]);
    }
    const Scalar inv = 1 / a(row, col);
    for (std::size_t c = col; c < a.cols(); ++c) a(row, c) *= inv;
    if (rhs) (*rhs)[row] *= inv;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == row || a(r, col) == 0) continue;
      const Scalar f = a(r, col);
      for (std::size_t c = col; c < a.cols(); ++c) a(r, c) -= f * a(row, c);
      if (rhs) (*rhs)[r] -= f * (*rhs)[row];
    }
    e.pivot_cols.push_back(col);
    ++row;
  }
  return e;
}

}  // namespace

std::size_t rank(RationalMatrix a) { return reduce(a, nullptr).pivot_cols.size(); }

std::optional<std::vector<Scalar>> solve_particular(RationalMatrix a, std::vector<Scalar> b) {
  if (b.size() != a.rows()) throw MalformedInstance("right-hand side size mismatch");
  const Echelon e = reduce(a, &b);
  for (std::size_t r = e.pivot_cols.size(); r < a.rows(); ++r) {
    if (b[r] != 0) return std::nullopt;
  }
  std::vector<Scalar> x(a.cols());
  for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) x[e.pivot_cols[r]] = b[r];
  return x;
}

namespace detail {

LpStats& lp_stats() {
  thread_local LpStats stats;
  return stats;
}

namespace {

template <class T>
struct Arith;

template <>
struct Arith<double> {
  static constexpr double eps = 1e-9;
  static bool negative(double x) { return x < -eps; }
  static bool positive(double x) { return x > eps; }
  static double from(const Scalar& s) { return to_double(s); }
};

template <>
struct Arith<Scalar> {
  static bool negative(const Scalar& x) { return x < 0; }
  static bool positive(const Scalar& x) { return x > 0; }
  static Scalar from(const Scalar& s) { return s; }
};

// Two-phase tableau simplex. On success returns the basis (one column per
// surviving row) and the row indices that survived phase 1.
template <class T>
struct Simplex {
  using A = Arith<T>;
  std::size_t m, n;  // rows, structural columns
  std::vector<std::vector<T>> tab;  // m rows x (n + m + 1)
  std::vector<std::size_t> basis;
  std::vector<std::size_t> row_origin;
  bool bland;

  Simplex(const RationalMatrix& a, const std::vector<Scalar>& b, bool use_bland)
      : m(a.rows()), n(a.cols()), bland(use_bland) {
    tab.assign(m, std::vector<T>(n + m + 1));
    basis.resize(m);
    row_origin.resize(m);
    for (std::size_t r = 0; r < m; ++r) {
      const bool flip = b[r] < 0;
      for (std::size_t c = 0; c < n; ++c) {
        T v = A::from(a(r, c));
        tab[r][c] = flip ? T(-v) : v;
      }
      tab[r][n + r] = 1;
      T rhs = A::from(b[r]);
      tab[r][n + m] = flip ? T(-rhs) : rhs;
      basis[r] = n + r;
      row_origin[r] = r;
    }
  }

  std::size_t width() const { return n + m; }

  void pivot(std::size_t row, std::size_t col) {
    const T inv = T(1) / tab[row][col];
    for (auto& v : tab[row]) v *= inv;
    tab[row][col] = 1;
    for (std::size_t r = 0; r < tab.size(); ++r) {
      if (r == row || tab[r][col] == 0) continue;
      const T f = tab[r][col];
      for (std::size_t c = 0; c <= width(); ++c) tab[r][c] -= f * tab[row][c];
      tab[r][col] = 0;
    }
    basis[row] = col;
  }

  // Minimises cost over columns allowed[c]; returns false when unbounded.
  bool optimize(const std::vector<T>& cost, const std::vector<bool>& allowed) {
    const std::size_t max_iter = 50 * (width() + 10);
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
      std::vector<T> dual_basis(tab.size());
      for (std::size_t r = 0; r < tab.size(); ++r) dual_basis[r] = cost[basis[r]];
      std::size_t enter = width();
      T best = 0;
      for (std::size_t c = 0; c < width(); ++c) {
        if (!allowed[c]) continue;
        T reduced = cost[c];
        for (std::size_t r = 0; r < tab.size(); ++r) {
          if (tab[r][c] != 0) reduced -= dual_basis[r] * tab[r][c];
        }
        if (!A::negative(reduced)) continue;
        if (bland) {
          enter = c;
          break;
        }
        if (enter == width() || reduced < best) {
          best = reduced;
          enter = c;
        }
      }
      if (enter == width()) return true;
      std::size_t leave = tab.size();
      T best_ratio = 0;
      for (std::size_t r = 0; r < tab.size(); ++r) {
        if (!A::positive(tab[r][enter])) continue;
        T ratio = tab[r][width()] / tab[r][enter];
        if (leave == tab.size() || ratio < best_ratio ||
            (ratio == best_ratio && basis[r] < basis[leave])) {
          best_ratio = ratio;
          leave = r;
        }
      }
      if (leave == tab.size()) return false;
      pivot(leave, enter);
    }
    throw Error("simplex iteration limit reached");
  }

  // Phase 1 plus removal of artificial columns from the basis. False when
  // the system is infeasible.
  bool phase_one() {
    std::vector<T> cost(width(), T(0));
    for (std::size_t r = 0; r < m; ++r) cost[n + r] = 1;
    std::vector<bool> allowed(width(), true);
    optimize(cost, allowed);
    T infeasibility = 0;
    for (std::size_t r = 0; r < tab.size(); ++r) {
      if (basis[r] >= n) infeasibility += tab[r][width()];
    }
    if (A::positive(infeasibility)) return false;
    for (std::size_t r = 0; r < tab.size();) {
      if (basis[r] < n) {
        ++r;
        continue;
      }
      std::size_t col = n;
      for (std::size_t c = 0; c < n; ++c) {
        if (A::positive(tab[r][c]) || A::negative(tab[r][c])) {
          col = c;
          break;
        }
      }
      if (col < n) {
        pivot(r, col);
        ++r;
      } else {
        tab.erase(tab.begin() + static_cast<std::ptrdiff_t>(r));
        basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(r));
        row_origin.erase(row_origin.begin() + static_cast<std::ptrdiff_t>(r));
      }
    }
    return true;
  }

  bool phase_two(const std::vector<Scalar>& c) {
    std::vector<T> cost(width(), T(0));
    for (std::size_t j = 0; j < n; ++j) cost[j] = A::from(c[j]);
    std::vector<bool> allowed(width(), false);
    for (std::size_t j = 0; j < n; ++j) allowed[j] = true;
    return optimize(cost, allowed);
  }

  std::vector<T> solution() const {
    std::vector<T> x(n, T(0));
    for (std::size_t r = 0; r < tab.size(); ++r) {
      if (basis[r] < n) x[basis[r]] = tab[r][width()];
    }
    return x;
  }
};

// Re-solves the basis exactly and checks primal and dual feasibility.
std::optional<std::vector<Scalar>> certify_basis(const RationalMatrix& a, const std::vector<Scalar>& b,
                                                 const std::vector<Scalar>& c,
                                                 const std::vector<std::size_t>& basis) {
  for (std::size_t col : basis) {
    if (col >= a.cols()) return std::nullopt;
  }
  // Any x_B >= 0 with A_B x_B = b and any y with A_B^T y = c_B, A^T y <= c
  // give equal primal and dual objectives, so x is optimal.
  const RationalMatrix ab = a.select_columns(basis);
  auto xb = solve_particular(ab, b);
  if (!xb) return std::nullopt;
  for (const auto& v : *xb) {
    if (v < 0) return std::nullopt;
  }
  std::vector<Scalar> cb;
  for (std::size_t col : basis) cb.push_back(c[col]);
  auto y = solve_particular(ab.transpose(), cb);
  if (!y) return std::nullopt;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    Scalar reduced = c[j];
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (a(r, j) != 0) reduced -= (*y)[r] * a(r, j);
    }
    if (reduced < 0) return std::nullopt;
  }
  std::vector<Scalar> x(a.cols());
  for (std::size_t k = 0; k < basis.size(); ++k) x[basis[k]] = (*xb)[k];
  return x;
}

}  // namespace

std::optional<std::vector<Scalar>> solve_standard_lp(const RationalMatrix& a, const std::vector<Scalar>& b,
                                                     const std::vector<Scalar>& c) {
  if (a.rows() == 0) return std::vector<Scalar>(a.cols());
  {
    Simplex<double> fast(a, b, false);
    bool attempted = false;
    try {
      attempted = fast.phase_one() && fast.phase_two(c);
    } catch (const Error&) {
      attempted = false;
    }
    if (attempted) {
      if (auto x = certify_basis(a, b, c, fast.basis)) return x;
    }
  }
  ++lp_stats().exact_fallbacks;
  Simplex<Scalar> exact(a, b, true);
  if (!exact.phase_one()) return std::nullopt;
  if (!exact.phase_two(c)) throw Error("linear program is unbounded");
  return exact.solution();
}

}  // namespace detail

std::optional<std::vector<Scalar>> minimize_l1(const RationalMatrix& a, const std::vector<Scalar>& b) {
  const std::size_t n = a.cols();
  RationalMatrix split(a.rows(), 2 * n);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      split(r, c) = a(r, c);
      split(r, n + c) = -a(r, c);
    }
  }
  std::vector<Scalar> cost(2 * n, Scalar(1));
  auto z = detail::solve_standard_lp(split, b, cost);
  if (!z) return std::nullopt;
  std::vector<Scalar> x(n);
  for (std::size_t c = 0; c < n; ++c) x[c] = (*z)[c] - (*z)[n + c];
  return x;
}

std::optional<std::vector<Scalar>> nonnegative_solution(const RationalMatrix& a, const std::vector<Scalar>& b) {
  std::vector<Scalar> cost(a.cols(), Scalar(0));
  return detail::solve_standard_lp(a, b, cost);
}

}  // namespace gtrans
