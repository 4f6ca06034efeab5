#pragma once

// Integer bookkeeping for the graded-lexicographic step-line: the bijection
// between monomials x1^(i-j) x2^j and scalar positions, the floor-type
// function F and its shifted variants, and the maps locating the 1s of the
// shift operators and the band edges of the recurrence matrices.

#include <cstddef>
#include <cstdint>

namespace stepline {

/// Direction of a shift: multiplication by x1 or by x2.
enum class Axis : unsigned { x1 = 1, x2 = 2 };

constexpr std::size_t axis_index(Axis k) { return static_cast<std::size_t>(k); }

/// Throws std::invalid_argument unless k is 1 or 2.
Axis axis_from_int(long k);

/// A monomial x1^(i-j) x2^j, 0 <= j <= i, with its graded-lex position.
struct GradedIndex {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t position = 0;

  friend bool operator==(const GradedIndex&, const GradedIndex&) = default;
};

/// Largest i with i(i+1)/2 <= num/den. Exact integer arithmetic only.
/// Throws std::domain_error for negative input or den <= 0.
std::size_t floor_f(std::int64_t num, std::int64_t den = 1);

enum class FVariant { plus1, plus2, minus1, minus2 };

/// F1+ = F+1, F2+ = F+2, F1- = F, F2-(x) = F(x-1)+1.
/// minus2 requires x >= 1 (std::domain_error otherwise).
std::int64_t f_variant(std::int64_t num, std::int64_t den, FVariant which);

/// F_k^-(num/den) for a shift direction.
std::int64_t f_minus(std::int64_t num, std::int64_t den, Axis k);

/// i(i+1)/2 + j. Throws std::invalid_argument if j > i.
std::size_t pos_of(std::size_t i, std::size_t j);

GradedIndex pair_of(std::size_t position);

/// Column of the single 1 in row n of the shift operator of block width r:
/// n + r F(n/r) + k r.
std::size_t n_plus(std::size_t n, std::size_t r, Axis k);

/// True iff n lies in the image of n_plus(., r, k), i.e. outside J_{r;k}.
bool in_complement_J(std::size_t n, std::size_t r, Axis k);

/// Left inverse of n_plus on its image: n - r F_k^-(n/r).
/// Throws std::domain_error if n is not in the image.
std::size_t n_plus_inverse(std::size_t n, std::size_t r, Axis k);

/// N^-_{r;k}: the preimage of the first element >= n outside J_{r;k}.
std::size_t n_minus_big(std::size_t n, std::size_t r, Axis k);

} // namespace stepline
