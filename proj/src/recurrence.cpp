#include "stepline/recurrence.hpp"

#include <algorithm>
#include <string>

namespace stepline {

std::size_t required_depth(std::size_t D, std::size_t q, std::size_t p) {
  if (D == 0) throw std::invalid_argument("required_depth: D must be positive");
  std::size_t top = 0;
  for (Axis k : {Axis::x1, Axis::x2}) top = std::max({top, n_plus(D - 1, q, k), n_plus(D - 1, p, k)});
  return top + 1;
}

InsufficientDepthError::InsufficientDepthError(std::size_t have_, std::size_t need_)
    : std::runtime_error("factorization depth " + std::to_string(have_) + " is too small; need " +
                         std::to_string(need_)),
      have(have_), need(need_) {}

Band row_band(std::size_t n, std::size_t q, std::size_t p, Axis k) {
  return {n_minus_big(n, p, k), n_plus(n, q, k)};
}

Band col_band(std::size_t n, std::size_t q, std::size_t p, Axis k) {
  return {n_minus_big(n, q, k), n_plus(n, p, k)};
}

RecurrenceMatrix::RecurrenceMatrix(Axis k, std::size_t q, std::size_t p, std::size_t size)
    : k_(k), q_(q), p_(p), values_(size, size) {}

const Rational& RecurrenceMatrix::operator()(std::size_t m, std::size_t n) const {
  if (!known(m, n))
    throw std::out_of_range("T entry (" + std::to_string(m) + "," + std::to_string(n) +
                            ") is not determined by this truncation");
  return values_(m, n);
}

Matrix RecurrenceMatrix::window(std::size_t rows, std::size_t cols) const {
  Matrix out(rows, cols);
  for (std::size_t m = 0; m < rows; ++m)
    for (std::size_t n = 0; n < cols; ++n) out(m, n) = (*this)(m, n);
  return out;
}

Rational primal_entry(const Factorization& F, Axis k, std::size_t m, std::size_t n) {
  Rational sum = 0;
  Rational t;
  for (std::size_t i = 0; i <= m; ++i) {
    const std::size_t c = n_plus(i, F.q, k);
    if (c < n || sgn(F.S(m, i)) == 0) continue;  // S^{-1} is lower triangular
    t = F.S(m, i) * F.S_inv(c, n);
    sum += t;
  }
  return sum;
}

Rational dual_entry(const Factorization& F, Axis k, std::size_t m, std::size_t n) {
  Rational sum = 0;
  Rational t;
  for (std::size_t j = 0; j <= n; ++j) {
    const std::size_t r = n_plus(j, F.p, k);
    if (r < m || sgn(F.Sbar(n, j)) == 0) continue;
    t = F.Sbar_inv(r, m) * F.Sbar(n, j);
    sum += t;
  }
  sum *= F.H[m];
  sum /= F.H[n];
  return sum;
}

RecurrenceMatrix build_recurrence(const Factorization& F, Axis k, std::size_t target) {
  const std::size_t W = F.depth();
  if (target > 0) {
    const std::size_t need = required_depth(target, F.q, F.p);
    if (W < need) throw InsufficientDepthError(W, need);
  }
  RecurrenceMatrix T(k, F.q, F.p, W);
  while (T.rows_known_ < W && n_plus(T.rows_known_, F.q, k) < W) ++T.rows_known_;
  while (T.cols_known_ < W && n_plus(T.cols_known_, F.p, k) < W) ++T.cols_known_;

  for (std::size_t m = 0; m < T.rows_known_; ++m)
    for (std::size_t n = 0; n < W; ++n) T.values_(m, n) = primal_entry(F, k, m, n);
  for (std::size_t m = T.rows_known_; m < W; ++m)
    for (std::size_t n = 0; n < T.cols_known_; ++n) T.values_(m, n) = dual_entry(F, k, m, n);
  return T;
}

CheckReport check_dual_form(const RecurrenceMatrix& T, const Factorization& F) {
  CheckReport report{"dual"};
  for (std::size_t m = 0; m < T.rows_known(); ++m)
    for (std::size_t n = 0; n < T.cols_known(); ++n) {
      const Rational d = dual_entry(F, T.k(), m, n);
      if (d == T(m, n)) report.pass();
      else
        report.fail("T" + std::to_string(axis_index(T.k())) + "(" + std::to_string(m) + "," +
                    std::to_string(n) + "): primal " + to_string(T(m, n)) + ", dual " + to_string(d));
    }
  return report;
}

namespace {

std::string entry_name(const RecurrenceMatrix& T, std::size_t m, std::size_t n) {
  return "T" + std::to_string(axis_index(T.k())) + "(" + std::to_string(m) + "," + std::to_string(n) + ")";
}

void expect_value(CheckReport& report, const RecurrenceMatrix& T, std::size_t m, std::size_t n,
                  const Rational& expected, const char* what) {
  const Rational& v = T(m, n);
  if (v == expected) report.pass();
  else
    report.fail(entry_name(T, m, n) + " = " + to_string(v) + ", expected " + to_string(expected) +
                " (" + what + ")");
}

} // namespace

CheckReport validate_band(const RecurrenceMatrix& T, const std::vector<Rational>& H) {
  CheckReport report{"band"};
  const std::size_t W = T.size();
  const Axis k = T.k();

  for (std::size_t n = 0; n < T.rows_known(); ++n) {
    const Band b = T.row_band(n);
    expect_value(report, T, n, b.last, 1, "trailing 1 of row");
    for (std::size_t c = b.last + 1; c < W; ++c) expect_value(report, T, n, c, 0, "right of row band");
    for (std::size_t c = 0; c < b.first; ++c) expect_value(report, T, n, c, 0, "left of row band");
    if (in_complement_J(n, T.p(), k)) {
      const std::size_t c = n_plus_inverse(n, T.p(), k);
      const Rational ratio = H[n] / H[c];
      expect_value(report, T, n, c, ratio, "row H-ratio");
      report.expect(sgn(T(n, c)) != 0, entry_name(T, n, c) + " should be nonzero");
    }
  }

  for (std::size_t n = 0; n < T.cols_known(); ++n) {
    const Band b = T.col_band(n);
    for (std::size_t r = 0; r < b.first; ++r) expect_value(report, T, r, n, 0, "above column band");
    if (in_complement_J(n, T.q(), k)) expect_value(report, T, b.first, n, 1, "leading 1 of column");
    const Rational ratio = H[b.last] / H[n];
    expect_value(report, T, b.last, n, ratio, "column H-ratio");
    for (std::size_t r = b.last + 1; r < W; ++r) expect_value(report, T, r, n, 0, "below column band");
  }
  return report;
}


CheckReport check_recurrences(const RecurrenceMatrix& T, const FamilyA& A, const FamilyB& B,
                              const std::vector<Point>& points,
                              std::size_t max_n) {
  CheckReport report{"recurrence"};
  const Axis k = T.k();
  for (const auto& x : points) {
    const Rational& xk = x.coord(k);
    const auto bv = evaluate(B, x, B.size());
    const auto av = evaluate(A, x, A.size());

    for (std::size_t n = 0; n <= max_n; ++n) {
      const Band rb = T.row_band(n);
      if (n >= T.rows_known() || rb.last >= B.size()) {
        report.skip();
      } else {
        for (std::size_t b = 0; b < B.q; ++b) {
          Rational rhs = bv[rb.last][b];
          for (std::size_t i = rb.first; i < rb.last; ++i) rhs += T(n, i) * bv[i][b];
          const Rational lhs = xk * bv[n][b];
          if (lhs == rhs) report.pass();
          else
            report.fail("B k=" + std::to_string(axis_index(k)) + " n=" + std::to_string(n) + " b=" +
                        std::to_string(b + 1) + " at (" + to_string(x) + ") residual " +
                        to_string(lhs - rhs));
        }
      }

      const Band cb = T.col_band(n);
      if (n >= T.cols_known() || cb.last >= A.size()) {
        report.skip();
      } else {
        for (std::size_t a = 0; a < A.p; ++a) {
          Rational rhs = T(cb.last, n) * av[cb.last][a];
          for (std::size_t i = cb.first; i < cb.last; ++i) rhs += T(i, n) * av[i][a];
          const Rational lhs = xk * av[n][a];
          if (lhs == rhs) report.pass();
          else
            report.fail("A k=" + std::to_string(axis_index(k)) + " n=" + std::to_string(n) + " a=" +
                        std::to_string(a + 1) + " at (" + to_string(x) + ") residual " +
                        to_string(lhs - rhs));
        }
      }
    }
  }
  return report;
}

CheckReport check_recurrence_coefficients(const RecurrenceMatrix& T, const FamilyA& A,
                                          const FamilyB& B, std::size_t max_n) {
  CheckReport report{"recurrence_coefficients"};
  const Axis k = T.k();
  for (std::size_t n = 0; n <= max_n; ++n) {
    const Band rb = T.row_band(n);
    if (n >= T.rows_known() || rb.last >= B.size()) {
      report.skip();
    } else {
      for (std::size_t b = 0; b < B.q; ++b) {
        BiPoly rhs;
        for (std::size_t i = rb.first; i <= rb.last; ++i) rhs += T(n, i) * B(i, b);
        report.expect(B(n, b).mul_by_variable(k) == rhs,
                      "B k=" + std::to_string(axis_index(k)) + " n=" + std::to_string(n) + " b=" +
                          std::to_string(b + 1) + " differs in coefficient space");
      }
    }

    const Band cb = T.col_band(n);
    if (n >= T.cols_known() || cb.last >= A.size()) {
      report.skip();
    } else {
      for (std::size_t a = 0; a < A.p; ++a) {
        BiPoly rhs;
        for (std::size_t i = cb.first; i <= cb.last; ++i) rhs += T(i, n) * A(i, a);
        report.expect(A(n, a).mul_by_variable(k) == rhs,
                      "A k=" + std::to_string(axis_index(k)) + " n=" + std::to_string(n) + " a=" +
                          std::to_string(a + 1) + " differs in coefficient space");
      }
    }
  }
  return report;
}

} // namespace stepline
