#include "stepline/rational.hpp"

#include <cctype>
#include <cstdio>
#include <stdexcept>

namespace stepline {

namespace {

bool is_integer_text(std::string_view s) {
  if (s.empty()) return false;
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) return false;
  for (std::size_t i = start; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

mpz_class parse_integer(std::string_view s) {
  if (!s.empty() && s[0] == '+') s.remove_prefix(1);
  return mpz_class(std::string(s), 10);
}

} // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const auto num_text = text.substr(0, slash);
  if (!is_integer_text(num_text))
    throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
  Rational r;
  if (slash == std::string_view::npos) {
    r = Rational(parse_integer(num_text));
    return r;
  }
  const auto den_text = text.substr(slash + 1);
  if (!is_integer_text(den_text) || den_text[0] == '-' || den_text[0] == '+')
    throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
  mpz_class den = parse_integer(den_text);
  if (den == 0)
    throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
  r = Rational(parse_integer(num_text), den);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& value) { return value.get_str(10); }

std::string to_decimal(const Rational& value, int digits) {
  mpf_class f(value, 256);
  // gmp_snprintf understands %Fg with mpf_t
  char buf[128];
  gmp_snprintf(buf, sizeof buf, "%.*Fg", digits, f.get_mpf_t());
  return buf;
}

} // namespace stepline
