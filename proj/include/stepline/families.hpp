#pragma once

#include "stepline/bipoly.hpp"
#include "stepline/gaussborel.hpp"
#include "stepline/measures.hpp"
#include "stepline/report.hpp"

#include <cstddef>
#include <cstdint>
#include <json.hpp>
#include <utility>
#include <vector>

namespace stepline {

/// A_n^{(a)}, zero-based components: cols[n][a], a < p.
struct FamilyA {
  std::size_t p = 1;
  std::vector<std::vector<BiPoly>> cols;

  std::size_t size() const { return cols.size(); }
  const BiPoly& operator()(std::size_t n, std::size_t a) const { return cols[n][a]; }
};

/// B_n^{(b)}, zero-based components: rows[n][b], b < q.
struct FamilyB {
  std::size_t q = 1;
  std::vector<std::vector<BiPoly>> rows;

  std::size_t size() const { return rows.size(); }
  const BiPoly& operator()(std::size_t n, std::size_t b) const { return rows[n][b]; }
};

/// B_n^{(b)} has coefficient (H^{-1} S)(n, Kq + b) at position K and
/// A_n^{(a)} has coefficient Sbar(n, Kp + a). `count` limits the number of
/// indices extracted (default: all).
std::pair<FamilyA, FamilyB> extract_families(const Factorization& F, std::size_t count = 0);

/// The pair (A_n / H_n, H_n B_n), i.e. A = X_p^T Sbar^T H^{-1} and B = S X_q.
/// T_k = S Lambda_q S^{-1} has its trailing 1s and H-ratio entries with
/// respect to this normalization; kernels sum_i A_i B_i are unchanged.
std::pair<FamilyA, FamilyB> rescale_by_H(const FamilyA& A, const FamilyB& B, const std::vector<Rational>& H);

/// ceil(num / den) for den > 0 and any sign of num.
std::int64_t ceil_div(std::int64_t num, std::int64_t den);

/// Largest graded-lex position allowed for component c of index n of a
/// family with block width r; -1 means the component must vanish.
std::int64_t degree_bound(std::size_t n, std::size_t c, std::size_t r);

/// Entry-wise grlex-position bounds with equality at n = Mr + c, and
/// monic diagonal entries of A.
CheckReport validate_degree_structure(const FamilyA& A, const FamilyB& B);

/// sum_a int x^K dmu_{b,a} A_n^{(a)} = 0 for K <= ceil((n - b)/q) - 1 and
/// sum_b int B_n^{(b)} dmu_{b,a} x^K = 0 for K <= ceil((n - a)/p) - 1,
/// for n < count, through the moment oracle.
CheckReport check_orthogonality(const FamilyA& A, const FamilyB& B, const MomentCache& moments,
                                std::size_t count);

/// sum_{a,b} int B_m^{(b)} dmu_{b,a} A_n^{(a)} = delta(m, n) for m, n < count.
CheckReport check_biorthogonality(const FamilyA& A, const FamilyB& B, const MomentCache& moments,
                                  std::size_t count);

/// values[n][c]: component c of index n at x, for n < count.
std::vector<std::vector<Rational>> evaluate(const FamilyA& A, const Point& x, std::size_t count);
std::vector<std::vector<Rational>> evaluate(const FamilyB& B, const Point& x, std::size_t count);

/// Per n, per component: coefficient map and grlex degree.
nlohmann::ordered_json to_json(const FamilyA& A);
nlohmann::ordered_json to_json(const FamilyB& B);

} // namespace stepline
