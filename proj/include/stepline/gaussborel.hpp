#pragma once

#include "stepline/matrix.hpp"
#include "stepline/moments.hpp"

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace stepline {

/// A leading principal minor of the moment matrix vanishes; the pivot at
/// `index` is exactly zero and no factorization exists.
class BreakdownError : public std::runtime_error {
public:
  explicit BreakdownError(std::size_t index);
  std::size_t index;
};

/// M = S^{-1} diag(H) Sbar^{-T} with S and Sbar lower unitriangular.
struct Factorization {
  std::size_t q = 1;
  std::size_t p = 1;
  Matrix S;
  Matrix Sbar;
  std::vector<Rational> H;
  Matrix S_inv;
  Matrix Sbar_inv;

  std::size_t depth() const { return H.size(); }

  /// S^{-1} diag(H) Sbar^{-T}.
  Matrix reconstruct() const;

  /// Restriction of every factor to the leading d x d corner.
  Factorization leading(std::size_t d) const;
};

/// Doolittle elimination without pivoting. Throws BreakdownError on a zero pivot.
Factorization factorize(const MomentTruncation& M);
Factorization factorize(const Matrix& M, std::size_t q = 1, std::size_t p = 1);

/// Exact inverse of a lower unitriangular matrix by forward substitution.
/// Throws std::invalid_argument if T is not square with unit diagonal.
Matrix invert_unitriangular(const Matrix& T);

} // namespace stepline
