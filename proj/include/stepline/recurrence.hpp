#pragma once

#include "stepline/families.hpp"
#include "stepline/gaussborel.hpp"
#include "stepline/report.hpp"
#include "stepline/stepline_index.hpp"

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace stepline {

/// Factorization depth at which both forms of T_1 and T_2 are determined on
/// the leading D x D window.
std::size_t required_depth(std::size_t D, std::size_t q, std::size_t p);

class InsufficientDepthError : public std::runtime_error {
public:
  InsufficientDepthError(std::size_t have, std::size_t need);
  std::size_t have, need;
};

/// Closed index range [first, last].
struct Band {
  std::size_t first = 0;
  std::size_t last = 0;
};

/// Row band of T_k: starts at N^-(n, p, k) and ends with the 1 at n_plus(n, q, k).
Band row_band(std::size_t n, std::size_t q, std::size_t p, Axis k);
/// Column band of T_k: starts at N^-(n, q, k) and ends at n_plus(n, p, k).
Band col_band(std::size_t n, std::size_t q, std::size_t p, Axis k);

/// Truncation of T_k = S Lambda_q S^{-1} computed from a factorization of
/// depth W. Row m is known when n_plus(m, q, k) < W (primal form); column n is
/// known when n_plus(n, p, k) < W (dual form H Sbar^{-T} Lambda_p^T Sbar^T H^{-1}).
/// Entries in neither a known row nor a known column are not available.
class RecurrenceMatrix {
public:
  RecurrenceMatrix(Axis k, std::size_t q, std::size_t p, std::size_t size);

  Axis k() const { return k_; }
  std::size_t q() const { return q_; }
  std::size_t p() const { return p_; }
  std::size_t size() const { return values_.rows(); }
  std::size_t rows_known() const { return rows_known_; }
  std::size_t cols_known() const { return cols_known_; }

  bool known(std::size_t m, std::size_t n) const {
    return m < size() && n < size() && (m < rows_known_ || n < cols_known_);
  }
  /// Throws std::out_of_range if the entry is not determined.
  const Rational& operator()(std::size_t m, std::size_t n) const;

  /// Leading block [0, rows) x [0, cols); every entry must be known.
  Matrix window(std::size_t rows, std::size_t cols) const;

  Band row_band(std::size_t n) const { return stepline::row_band(n, q_, p_, k_); }
  Band col_band(std::size_t n) const { return stepline::col_band(n, q_, p_, k_); }

  /// Overwrites one entry; used to plant violations in tests.
  void set(std::size_t m, std::size_t n, const Rational& v) { values_(m, n) = v; }

private:
  friend RecurrenceMatrix build_recurrence(const Factorization&, Axis, std::size_t);

  Axis k_;
  std::size_t q_, p_;
  std::size_t rows_known_ = 0;
  std::size_t cols_known_ = 0;
  Matrix values_;
};

/// Builds T_k from F. If target > 0, F must have depth >= required_depth(target).
RecurrenceMatrix build_recurrence(const Factorization& F, Axis k, std::size_t target = 0);

/// Primal entry sum_i S(m, i) S^{-1}(n_plus(i, q, k), n); needs n_plus(m, q, k) < depth.
Rational primal_entry(const Factorization& F, Axis k, std::size_t m, std::size_t n);
/// Dual entry (H_m / H_n) sum_j Sbar^{-1}(n_plus(j, p, k), m) Sbar(n, j); needs n_plus(n, p, k) < depth.
Rational dual_entry(const Factorization& F, Axis k, std::size_t m, std::size_t n);

/// Compares the stored values with the dual form wherever both forms are
/// determined (m < rows_known, n < cols_known).
CheckReport check_dual_form(const RecurrenceMatrix& T, const Factorization& F);

/// Row and column band structure, including the H-ratio entries.
CheckReport validate_band(const RecurrenceMatrix& T, const std::vector<Rational>& H);

/// x_k B_n(x) = B_{n_plus(n,q,k)}(x) + sum_{i in row band, i < last} T(n, i) B_i(x) and
/// x_k A_n(x) = T(n_plus(n,p,k), n) A_{n_plus}(x) + sum_{i in col band, i < last} T(i, n) A_i(x)
/// for n <= max_n at every point.
CheckReport check_recurrences(const RecurrenceMatrix& T, const FamilyA& A, const FamilyB& B,
                              const std::vector<Point>& points,
                              std::size_t max_n);

/// The same relations compared as polynomials (coefficient space).
CheckReport check_recurrence_coefficients(const RecurrenceMatrix& T, const FamilyA& A,
                                          const FamilyB& B, std::size_t max_n);

} // namespace stepline
