#include "stepline/bipoly.hpp"

#include <stdexcept>
#include <string>

namespace stepline {

std::string to_string(const Point& x) { return to_string(x.x1) + "," + to_string(x.x2); }

Point parse_point(std::string_view text) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos || text.find(',', comma + 1) != std::string_view::npos)
    throw std::invalid_argument("point '" + std::string(text) + "' must be \"x1,x2\"");
  return {parse_rational(text.substr(0, comma)), parse_rational(text.substr(comma + 1))};
}

std::size_t shift_monomial(std::size_t K, Axis k) {
  const auto m = pair_of(K);
  return pos_of(m.i + 1, k == Axis::x1 ? m.j : m.j + 1);
}

std::size_t monomial_product(std::size_t K, std::size_t L) {
  const auto a = pair_of(K);
  const auto b = pair_of(L);
  return pos_of(a.i + b.i, a.j + b.j);
}

BiPoly BiPoly::constant(const Rational& c) { return monomial(0, c); }

BiPoly BiPoly::monomial(std::size_t position, const Rational& c) {
  BiPoly p;
  p.add_term(position, c);
  return p;
}

Rational BiPoly::coefficient(std::size_t position) const {
  auto it = terms_.find(position);
  return it == terms_.end() ? Rational(0) : it->second;
}

void BiPoly::add_term(std::size_t position, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(position, c);
  if (inserted) return;
  it->second += c;
  if (sgn(it->second) == 0) terms_.erase(it);
}

std::optional<std::size_t> BiPoly::grlex_pos() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.rbegin()->first;
}

std::optional<GradedIndex> BiPoly::grlex_deg() const {
  auto pos = grlex_pos();
  if (!pos) return std::nullopt;
  return pair_of(*pos);
}

std::optional<std::size_t> BiPoly::total_deg() const {
  auto deg = grlex_deg();
  if (!deg) return std::nullopt;
  return deg->i;
}

Rational BiPoly::eval(const Rational& x1, const Rational& x2) const {
  if (terms_.empty()) return 0;
  const std::size_t top = pair_of(terms_.rbegin()->first).i;
  std::vector<Rational> p1(top + 1), p2(top + 1);
  p1[0] = 1;
  p2[0] = 1;
  for (std::size_t e = 1; e <= top; ++e) {
    p1[e] = p1[e - 1] * x1;
    p2[e] = p2[e - 1] * x2;
  }
  Rational sum = 0;
  Rational t;
  for (const auto& [K, c] : terms_) {
    const auto m = pair_of(K);
    t = p1[m.i - m.j] * p2[m.j];
    t *= c;
    sum += t;
  }
  return sum;
}

BiPoly BiPoly::mul_by_variable(Axis k) const {
  BiPoly out;
  // shift_monomial is strictly increasing in K, so keys stay sorted.
  for (const auto& [K, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), shift_monomial(K, k), c);
  return out;
}

BiPoly& BiPoly::operator+=(const BiPoly& other) {
  for (const auto& [K, c] : other.terms_) add_term(K, c);
  return *this;
}

BiPoly& BiPoly::operator-=(const BiPoly& other) {
  for (const auto& [K, c] : other.terms_) add_term(K, -c);
  return *this;
}

BiPoly& BiPoly::operator*=(const Rational& s) {
  if (sgn(s) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [K, c] : terms_) c *= s;
  return *this;
}

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
  BiPoly out;
  for (const auto& [K, c] : a.terms_)
    for (const auto& [L, d] : b.terms_) out.add_term(monomial_product(K, L), c * d);
  return out;
}

nlohmann::ordered_json to_json(const BiPoly& p) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [K, c] : p.terms()) j[std::to_string(K)] = to_string(c);
  return j;
}

BiPoly bipoly_from_json(const nlohmann::ordered_json& j) {
  if (!j.is_object()) throw std::invalid_argument("polynomial must be a JSON object");
  BiPoly p;
  for (auto it = j.begin(); it != j.end(); ++it) {
    std::size_t used = 0;
    unsigned long K = 0;
    try {
      K = std::stoul(it.key(), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != it.key().size())
      throw std::invalid_argument("polynomial key '" + it.key() + "' is not a monomial position");
    if (!it.value().is_string())
      throw std::invalid_argument("polynomial coefficient at '" + it.key() + "' must be a string");
    p.add_term(K, parse_rational(it.value().get<std::string>()));
  }
  return p;
}

} // namespace stepline
