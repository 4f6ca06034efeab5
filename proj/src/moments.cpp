#include "stepline/moments.hpp"

#include <algorithm>
#include <stdexcept>

namespace stepline {

std::size_t moment_degree_for_depth(std::size_t depth, std::size_t q, std::size_t p) {
  if (depth == 0) return 0;
  return pair_of((depth - 1) / q).i + pair_of((depth - 1) / p).i;
}

MomentTruncation assemble_moments(const MomentCache& moments, std::size_t depth) {
  if (depth == 0) throw std::invalid_argument("assemble_moments: depth must be positive");
  const std::size_t q = moments.q();
  const std::size_t p = moments.p();
  MomentTruncation M{q, p, Matrix(depth, depth)};
  for (std::size_t m = 0; m < depth; ++m)
    for (std::size_t n = 0; n < depth; ++n)
      M.data(m, n) = moments.moment_at(m % q, n % p, monomial_product(m / q, n / p));
  return M;
}

MomentTruncation assemble_moments(const MeasureMatrix& mm, std::size_t depth) {
  const MomentCache cache(mm, 0);
  return assemble_moments(cache, depth);
}

Matrix ShiftTruncation::dense() const {
  Matrix out(rows, cols);
  for (const auto& [n, c] : ones) out(n, c) = 1;
  return out;
}

ShiftTruncation shift_operator(std::size_t r, Axis k, std::size_t row_count) {
  ShiftTruncation L{r, k, row_count, 0, {}};
  L.ones.reserve(row_count);
  for (std::size_t n = 0; n < row_count; ++n) {
    const std::size_t c = n_plus(n, r, k);
    L.ones.emplace_back(n, c);
    L.cols = std::max(L.cols, c + 1);
  }
  return L;
}

HankelWindow hankel_window(std::size_t depth, std::size_t q, std::size_t p, Axis k) {
  HankelWindow w;
  // n_plus is increasing in n, so both windows are leading prefixes.
  while (w.rows < depth && n_plus(w.rows, q, k) < depth) ++w.rows;
  while (w.cols < depth && n_plus(w.cols, p, k) < depth) ++w.cols;
  return w;
}

bool check_hankel_symmetry(const MomentTruncation& M, Axis k) {
  const auto w = hankel_window(M.depth(), M.q, M.p, k);
  if (w.rows == 0 || w.cols == 0)
    throw std::domain_error("Hankel check: depth " + std::to_string(M.depth()) +
                            " leaves an empty comparison window");
  for (std::size_t m = 0; m < w.rows; ++m) {
    const std::size_t shifted_row = n_plus(m, M.q, k);
    for (std::size_t n = 0; n < w.cols; ++n)
      if (M.data(shifted_row, n) != M.data(m, n_plus(n, M.p, k))) return false;
  }
  return true;
}

Rational monomial_row(std::size_t r, std::size_t n, const Rational& x1, const Rational& x2) {
  return BiPoly::monomial(n / r).eval(x1, x2);
}

std::vector<Rational> apply_shift_to_monomials(std::size_t r, Axis k, const Rational& x1,
                                               const Rational& x2, std::size_t count) {
  std::vector<Rational> out;
  out.reserve(count);
  for (std::size_t n = 0; n < count; ++n) out.push_back(monomial_row(r, n_plus(n, r, k), x1, x2));
  return out;
}

} // namespace stepline
