#pragma once

#include "stepline/bipoly.hpp"
#include "stepline/families.hpp"
#include "stepline/matrix.hpp"
#include "stepline/measures.hpp"
#include "stepline/recurrence.hpp"
#include "stepline/report.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace stepline {

/// K^[n](x, y)(a, b) = sum_{i <= n} A_i^{(a)}(x) B_i^{(b)}(y); a p x q matrix.
Matrix kernel_eval(const FamilyA& A, const FamilyB& B, std::size_t n, const Point& x, const Point& y);

/// Middle identity (H^{-1}S)^[n] M^[n] (Sbar^T)^[n] = I, read off the family
/// coefficients, followed by the full expansion of
/// int K^[n](x,t) dmu(t) K^[n](t,y) = K^[n](x,y) at each point pair.
CheckReport check_reproduction(const FamilyA& A, const FamilyB& B, const MomentCache& moments,
                               std::size_t n, const std::vector<std::pair<Point, Point>>& pairs);

enum class ProjectionStatus { holds, fails, below_threshold, unchecked };

std::string to_string(ProjectionStatus s);

struct ProjectionResult {
  ProjectionStatus status = ProjectionStatus::unchecked;
  std::string detail;
};

/// p x p matrix polynomial x^I Id + (terms at positions < I) with
/// coefficients drawn from `next`.
template <class Gen>
PolyMatrix random_monic(std::size_t size, std::size_t I, Gen&& next) {
  PolyMatrix P(size, size);
  for (std::size_t r = 0; r < size; ++r)
    for (std::size_t c = 0; c < size; ++c) {
      if (r == c) P(r, c).add_term(I, 1);
      for (std::size_t K = 0; K < I; ++K) P(r, c).add_term(K, next());
    }
  return P;
}

/// int K^[n](x, y) dmu(y) P(y) = P(x) for a monic p x p P of grlex position I,
/// compared as polynomials. Below n = Ip + p - 1 the result is below_threshold.
ProjectionResult check_projection(const FamilyA& A, const FamilyB& B, const MomentCache& moments,
                                  std::size_t n, const PolyMatrix& P, std::size_t I);

/// int P(x) dmu(x) K^[n](x, y) = P(y) for a monic q x q P; threshold n >= Iq + q - 1.
ProjectionResult check_projection_dual(const FamilyA& A, const FamilyB& B, const MomentCache& moments,
                                       std::size_t n, const PolyMatrix& P, std::size_t I);

/// Blocks of the Christoffel-Darboux formula at index n for T_k.
struct CDBlocks {
  Axis k = Axis::x1;
  std::size_t n = 0;
  Band tgt_rows;  // [n + 1, n_plus(n, p, k)]
  Band tgt_cols;  // [N^-(n + 1, p, k), n]
  Band src_rows;  // [N^-(n + 1, q, k), n]
  Band src_cols;  // [n + 1, n_plus(n, q, k)]
  Matrix T_tgt;   // T restricted to tgt_rows x tgt_cols
  Matrix T_src;   // T restricted to src_rows x src_cols
  PolyMatrix A_tgt;  // p x |tgt_rows|: A_i, i in tgt_rows
  PolyMatrix B_tgt;  // |tgt_cols| x q: B_i, i in tgt_cols
  PolyMatrix A_src;  // p x |src_rows|
  PolyMatrix B_src;  // |src_cols| x q
};

std::size_t band_size(const Band& b);

/// Throws InsufficientDepthError if T or the families are too short.
CDBlocks cd_blocks(const RecurrenceMatrix& T, const FamilyA& A, const FamilyB& B, std::size_t n);

/// (x_k - y_k) K^[n](x,y) - [A_tgt(x) T_tgt B_tgt(y) - A_src(x) T_src B_src(y)].
Matrix cd_residual(const CDBlocks& blocks, const FamilyA& A, const FamilyB& B, const Point& x,
                   const Point& y);

bool check_cd_formula(const CDBlocks& blocks, const FamilyA& A, const FamilyB& B, const Point& x,
                      const Point& y);

/// Residual on the tensor grid {0..d}^2 x {0..d}^2, with d one above the
/// largest total degree on each side, so a zero residual is a polynomial identity.
CheckReport check_cd_grid(const CDBlocks& blocks, const FamilyA& A, const FamilyB& B);

/// X_p(x)^T restricted to the first n+1 scalar rows (p x (n+1)), and
/// X_q(y) likewise ((n+1) x q).
Matrix monomial_row_block(std::size_t width, std::size_t n, const Point& x);

/// K^[n](x, y) = X_p^T(x)^[n] (M^[n])^{-1} X_q(y)^[n], with the inverse
/// computed by pivoted Gauss-Jordan independently of the factorization.
CheckReport check_abc(const MomentCache& moments, const FamilyA& A, const FamilyB& B, std::size_t n,
                      const std::vector<std::pair<Point, Point>>& pairs);

} // namespace stepline
