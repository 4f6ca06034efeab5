#pragma once

#include "stepline/rational.hpp"
#include "stepline/stepline_index.hpp"

#include <json.hpp>

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace stepline {

/// A point of the plane with exact coordinates.
struct Point {
  Rational x1;
  Rational x2;

  const Rational& coord(Axis k) const { return k == Axis::x1 ? x1 : x2; }
};

std::string to_string(const Point& x);

/// Parses "x1,x2" with rational coordinates.
Point parse_point(std::string_view text);

/// Position of x_k * m for the monomial m at position K.
std::size_t shift_monomial(std::size_t K, Axis k);

/// Position of the product of the monomials at positions K and L.
std::size_t monomial_product(std::size_t K, std::size_t L);

/// Bivariate polynomial over the graded-lex monomial basis with exact
/// coefficients. Keys are scalar positions; zero coefficients are never stored.
class BiPoly {
public:
  using Terms = std::map<std::size_t, Rational>;

  BiPoly() = default;

  static BiPoly constant(const Rational& c);
  static BiPoly monomial(std::size_t position, const Rational& c = 1);

  const Terms& terms() const { return terms_; }
  Rational coefficient(std::size_t position) const;
  bool is_zero() const { return terms_.empty(); }

  /// Adds c to the coefficient at `position`, dropping the key if it cancels.
  void add_term(std::size_t position, const Rational& c);

  /// Largest stored position; nullopt for the zero polynomial.
  std::optional<std::size_t> grlex_pos() const;
  std::optional<GradedIndex> grlex_deg() const;
  std::optional<std::size_t> total_deg() const;

  Rational eval(const Rational& x1, const Rational& x2) const;
  Rational eval(const Point& x) const { return eval(x.x1, x.x2); }

  BiPoly mul_by_variable(Axis k) const;

  BiPoly& operator+=(const BiPoly& other);
  BiPoly& operator-=(const BiPoly& other);
  BiPoly& operator*=(const Rational& s);

  friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
  friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
  friend BiPoly operator*(BiPoly a, const Rational& s) { return a *= s; }
  friend BiPoly operator*(const Rational& s, BiPoly a) { return a *= s; }
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
  friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.terms_ == b.terms_; }

private:
  Terms terms_;
};

/// Dense grid of polynomials (matrix polynomials, family slices).
class PolyMatrix {
public:
  PolyMatrix() = default;
  PolyMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  BiPoly& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const BiPoly& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BiPoly> entries_;
};

/// {"K": "num/den", ...}
nlohmann::ordered_json to_json(const BiPoly& p);
BiPoly bipoly_from_json(const nlohmann::ordered_json& j);

} // namespace stepline
