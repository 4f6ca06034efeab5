#include "stepline/stepline_index.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>

namespace stepline {

namespace {

std::uint64_t isqrt(std::uint64_t v) {
  if (v < 2) return v;
  // Newton iteration from above; converges to floor(sqrt(v)).
  std::uint64_t x = v;
  std::uint64_t y = (x + 1) / 2;
  while (y < x) {
    x = y;
    y = (x + v / x) / 2;
  }
  return x;
}

std::size_t floor_f_int(std::uint64_t n) {
  // Start near sqrt(2n) and correct with 128-bit products, so 8n + 1 never overflows.
  using wide = unsigned __int128;
  std::uint64_t i = n > (UINT64_MAX >> 1) ? isqrt(UINT64_MAX) : isqrt(2 * n);
  while (i > 0 && wide(i) * (i + 1) / 2 > n) --i;
  while (wide(i + 1) * (i + 2) / 2 <= n) ++i;
  return static_cast<std::size_t>(i);
}

std::int64_t floor_div(std::int64_t num, std::int64_t den) {
  std::int64_t q = num / den;
  if ((num % den != 0) && ((num < 0) != (den < 0))) --q;
  return q;
}

} // namespace

Axis axis_from_int(long k) {
  if (k == 1) return Axis::x1;
  if (k == 2) return Axis::x2;
  throw std::invalid_argument("shift direction must be 1 or 2, got " + std::to_string(k));
}

std::size_t floor_f(std::int64_t num, std::int64_t den) {
  if (den <= 0) throw std::domain_error("floor_f: denominator must be positive");
  if (num < 0) throw std::domain_error("floor_f: argument must be nonnegative");
  // Triangular numbers are integers, so F(x) = F(floor(x)).
  return floor_f_int(static_cast<std::uint64_t>(num / den));
}

std::int64_t f_variant(std::int64_t num, std::int64_t den, FVariant which) {
  if (den <= 0) throw std::domain_error("f_variant: denominator must be positive");
  switch (which) {
  case FVariant::plus1: return static_cast<std::int64_t>(floor_f(num, den)) + 1;
  case FVariant::plus2: return static_cast<std::int64_t>(floor_f(num, den)) + 2;
  case FVariant::minus1: return static_cast<std::int64_t>(floor_f(num, den));
  case FVariant::minus2: {
    if (num < den) throw std::domain_error("f_variant: minus2 requires x >= 1");
    return static_cast<std::int64_t>(floor_f(floor_div(num, den) - 1)) + 1;
  }
  }
  throw std::invalid_argument("f_variant: unknown variant");
}

std::int64_t f_minus(std::int64_t num, std::int64_t den, Axis k) {
  return f_variant(num, den, k == Axis::x1 ? FVariant::minus1 : FVariant::minus2);
}

std::size_t pos_of(std::size_t i, std::size_t j) {
  if (j > i)
    throw std::invalid_argument("pos_of: need j <= i, got (" + std::to_string(i) + "," +
                                std::to_string(j) + ")");
  return i * (i + 1) / 2 + j;
}

GradedIndex pair_of(std::size_t position) {
  const std::size_t i = floor_f_int(position);
  return {i, position - i * (i + 1) / 2, position};
}

std::size_t n_plus(std::size_t n, std::size_t r, Axis k) {
  if (r == 0) throw std::invalid_argument("n_plus: block width must be positive");
  return n + r * floor_f_int(n / r) + axis_index(k) * r;
}

bool in_complement_J(std::size_t n, std::size_t r, Axis k) {
  if (r == 0) throw std::invalid_argument("in_complement_J: block width must be positive");
  if (n < axis_index(k) * r) return false;
  const auto f = static_cast<std::size_t>(
      f_minus(static_cast<std::int64_t>(n), static_cast<std::int64_t>(r), k));
  if (r * f > n) return false;
  return n_plus(n - r * f, r, k) == n;
}

std::size_t n_plus_inverse(std::size_t n, std::size_t r, Axis k) {
  if (!in_complement_J(n, r, k))
    throw std::domain_error("n_plus_inverse: " + std::to_string(n) + " is not an image point");
  const auto f = static_cast<std::size_t>(
      f_minus(static_cast<std::int64_t>(n), static_cast<std::int64_t>(r), k));
  return n - r * f;
}

std::size_t n_minus_big(std::size_t n, std::size_t r, Axis k) {
  std::size_t m = n;
  while (!in_complement_J(m, r, k)) ++m;
  return n_plus_inverse(m, r, k);
}

} // namespace stepline
