#include "stepline/gaussborel.hpp"

#include <string>

namespace stepline {

BreakdownError::BreakdownError(std::size_t index_)
    : std::runtime_error("factorization breakdown at index " + std::to_string(index_)), index(index_) {}

Matrix Factorization::reconstruct() const {
  // Sbar^{-T} = (Sbar^{-1})^T
  return scale_columns(S_inv, H) * Sbar_inv.transpose();
}

Factorization Factorization::leading(std::size_t d) const {
  if (d > depth()) throw std::out_of_range("leading: requested corner exceeds factorization depth");
  return {q, p, S.leading(d), Sbar.leading(d), std::vector<Rational>(H.begin(), H.begin() + d),
          S_inv.leading(d), Sbar_inv.leading(d)};
}

Matrix invert_unitriangular(const Matrix& T) {
  const std::size_t n = T.rows();
  if (T.cols() != n) throw std::invalid_argument("invert_unitriangular: matrix is not square");
  for (std::size_t i = 0; i < n; ++i)
    if (T(i, i) != 1) throw std::invalid_argument("invert_unitriangular: diagonal entry is not 1");
  Matrix X = Matrix::identity(n);
  Rational t;
  // Column c of X solves T x = e_c; entries above the diagonal stay zero.
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t i = c + 1; i < n; ++i) {
      Rational s = 0;
      for (std::size_t j = c; j < i; ++j) {
        if (sgn(T(i, j)) == 0) continue;
        t = T(i, j) * X(j, c);
        s += t;
      }
      X(i, c) = -s;
    }
  return X;
}

Factorization factorize(const Matrix& M, std::size_t q, std::size_t p) {
  const std::size_t n = M.rows();
  if (M.cols() != n) throw std::invalid_argument("factorize: moment truncation is not square");
  Matrix L = Matrix::identity(n);
  Matrix U = M;
  Rational f, t;
  for (std::size_t c = 0; c < n; ++c) {
    if (sgn(U(c, c)) == 0) throw BreakdownError(c);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (sgn(U(r, c)) == 0) continue;
      f = U(r, c) / U(c, c);
      L(r, c) = f;
      U(r, c) = 0;
      for (std::size_t j = c + 1; j < n; ++j) {
        if (sgn(U(c, j)) == 0) continue;
        t = f * U(c, j);
        U(r, j) -= t;
      }
    }
  }

  Factorization F;
  F.q = q;
  F.p = p;
  F.H.resize(n);
  for (std::size_t i = 0; i < n; ++i) F.H[i] = U(i, i);

  // Sbar^{-1} = (H^{-1} U)^T
  Matrix Sbar_inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      if (sgn(U(i, j)) != 0) Sbar_inv(j, i) = U(i, j) / F.H[i];

  F.S = invert_unitriangular(L);
  F.Sbar = invert_unitriangular(Sbar_inv);
  F.S_inv = std::move(L);
  F.Sbar_inv = std::move(Sbar_inv);
  return F;
}

Factorization factorize(const MomentTruncation& M) { return factorize(M.data, M.q, M.p); }

} // namespace stepline
