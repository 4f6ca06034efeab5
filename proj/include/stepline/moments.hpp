#pragma once

#include "stepline/matrix.hpp"
#include "stepline/measures.hpp"
#include "stepline/stepline_index.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace stepline {

/// Leading D x D scalar window of the moment matrix. Entry (m, n) is
/// moment_block(m / q, n / p)(m % q, n % p).
struct MomentTruncation {
  std::size_t q = 1;
  std::size_t p = 1;
  Matrix data;

  std::size_t depth() const { return data.rows(); }
};

/// Highest total degree of any moment used by a depth-D truncation.
std::size_t moment_degree_for_depth(std::size_t depth, std::size_t q, std::size_t p);

MomentTruncation assemble_moments(const MomentCache& moments, std::size_t depth);
MomentTruncation assemble_moments(const MeasureMatrix& mm, std::size_t depth);

/// First `rows` rows of the shift operator with block width r: one 1 per
/// row n, at column n_plus(n, r, k).
struct ShiftTruncation {
  std::size_t r = 1;
  Axis k = Axis::x1;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::pair<std::size_t, std::size_t>> ones;

  Matrix dense() const;
};

ShiftTruncation shift_operator(std::size_t r, Axis k, std::size_t row_count);

/// Rows and columns of the leading window on which both sides of the
/// Hankel-type symmetry are determined by a depth-D truncation.
struct HankelWindow {
  std::size_t rows = 0;
  std::size_t cols = 0;
};

HankelWindow hankel_window(std::size_t depth, std::size_t q, std::size_t p, Axis k);

/// Compares (Lambda_q M)(m, n) = M(n_plus(m,q,k), n) with
/// (M Lambda_p^T)(m, n) = M(m, n_plus(n,p,k)) on the determined window.
/// Throws std::domain_error when the window is empty.
bool check_hankel_symmetry(const MomentTruncation& M, Axis k);

/// (Lambda X(x))_n for the first `count` scalar rows of the monomial vector
/// with block width r; each equals x_k X(x)_n.
std::vector<Rational> apply_shift_to_monomials(std::size_t r, Axis k, const Rational& x1,
                                               const Rational& x2, std::size_t count);

/// Scalar row n of X_[r](x) restricted to its nonzero component: the monomial
/// at graded-lex position n / r.
Rational monomial_row(std::size_t r, std::size_t n, const Rational& x1, const Rational& x2);

} // namespace stepline
