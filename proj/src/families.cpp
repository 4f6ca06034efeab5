#include "stepline/families.hpp"

#include <algorithm>
#include <string>

namespace stepline {

std::pair<FamilyA, FamilyB> extract_families(const Factorization& F, std::size_t count) {
  const std::size_t D = F.depth();
  if (count == 0 || count > D) count = D;
  const std::size_t q = F.q;
  const std::size_t p = F.p;

  FamilyA A{p, std::vector<std::vector<BiPoly>>(count, std::vector<BiPoly>(p))};
  FamilyB B{q, std::vector<std::vector<BiPoly>>(count, std::vector<BiPoly>(q))};
  for (std::size_t n = 0; n < count; ++n) {
    const Rational inv_h = 1 / F.H[n];
    // Both factors are lower triangular, so column m <= n.
    for (std::size_t m = 0; m <= n; ++m) {
      if (sgn(F.S(n, m)) != 0) B.rows[n][m % q].add_term(m / q, inv_h * F.S(n, m));
      if (sgn(F.Sbar(n, m)) != 0) A.cols[n][m % p].add_term(m / p, F.Sbar(n, m));
    }
  }
  return {std::move(A), std::move(B)};
}

std::pair<FamilyA, FamilyB> rescale_by_H(const FamilyA& A, const FamilyB& B, const std::vector<Rational>& H) {
  FamilyA Ah = A;
  FamilyB Bh = B;
  for (std::size_t n = 0; n < Ah.size(); ++n) {
    const Rational inv = 1 / H[n];
    for (auto& f : Ah.cols[n]) f *= inv;
  }
  for (std::size_t n = 0; n < Bh.size(); ++n)
    for (auto& f : Bh.rows[n]) f *= H[n];
  return {std::move(Ah), std::move(Bh)};
}

std::int64_t ceil_div(std::int64_t num, std::int64_t den) {
  const std::int64_t q = num / den;
  return (num % den != 0 && num > 0) ? q + 1 : q;
}

std::int64_t degree_bound(std::size_t n, std::size_t c, std::size_t r) {
  return ceil_div(static_cast<std::int64_t>(n) + 1 - static_cast<std::int64_t>(c),
                  static_cast<std::int64_t>(r)) - 1;
}

namespace {

std::int64_t position_or_minus_one(const BiPoly& f) {
  auto pos = f.grlex_pos();
  return pos ? static_cast<std::int64_t>(*pos) : -1;
}

void check_family_degrees(CheckReport& report, const char* label, std::size_t width,
                          const std::vector<std::vector<BiPoly>>& polys) {
  for (std::size_t n = 0; n < polys.size(); ++n)
    for (std::size_t c = 0; c < width; ++c) {
      const auto found = position_or_minus_one(polys[n][c]);
      const auto bound = degree_bound(n, c, width);
      const bool diagonal = n % width == c;
      const bool good = diagonal ? found == bound : found <= bound;
      if (!good)
        report.fail(std::string(label) + "_" + std::to_string(n) + "^(" + std::to_string(c + 1) +
                    "): grlex position " + std::to_string(found) + (diagonal ? ", expected " : ", bound ") +
                    std::to_string(bound));
      else
        report.pass();
    }
}

} // namespace

CheckReport validate_degree_structure(const FamilyA& A, const FamilyB& B) {
  CheckReport report{"degree"};
  check_family_degrees(report, "B", B.q, B.rows);
  check_family_degrees(report, "A", A.p, A.cols);
  for (std::size_t n = 0; n < A.size(); ++n) {
    const std::size_t a = n % A.p;
    const Rational lead = A.cols[n][a].coefficient(n / A.p);
    report.expect(lead == 1, "A_" + std::to_string(n) + "^(" + std::to_string(a + 1) +
                                 ") leading coefficient " + to_string(lead) + ", expected 1");
  }
  return report;
}

CheckReport check_orthogonality(const FamilyA& A, const FamilyB& B, const MomentCache& moments,
                                std::size_t count) {
  CheckReport report{"orthogonality"};
  const std::size_t q = moments.q();
  const std::size_t p = moments.p();
  const std::size_t nA = std::min(count, A.size());
  const std::size_t nB = std::min(count, B.size());

  for (std::size_t n = 0; n < nA; ++n)
    for (std::size_t b = 0; b < q; ++b) {
      const auto kmax = ceil_div(static_cast<std::int64_t>(n) - static_cast<std::int64_t>(b),
                                 static_cast<std::int64_t>(q)) - 1;
      for (std::int64_t K = 0; K <= kmax; ++K) {
        const BiPoly mono = BiPoly::monomial(static_cast<std::size_t>(K));
        bool available = true;
        for (std::size_t a = 0; a < p && available; ++a)
          available = moments.can_integrate(b, a, mono, A(n, a));
        if (!available) {
          report.skip();
          continue;
        }
        Rational r = 0;
        for (std::size_t a = 0; a < p; ++a) r += moments.integrate(b, a, mono, A(n, a));
        if (sgn(r) == 0) report.pass();
        else
          report.fail("A: n=" + std::to_string(n) + " b=" + std::to_string(b + 1) + " K=" +
                      std::to_string(K) + " residual " + to_string(r));
      }
    }

  for (std::size_t n = 0; n < nB; ++n)
    for (std::size_t a = 0; a < p; ++a) {
      const auto kmax = ceil_div(static_cast<std::int64_t>(n) - static_cast<std::int64_t>(a),
                                 static_cast<std::int64_t>(p)) - 1;
      for (std::int64_t K = 0; K <= kmax; ++K) {
        const BiPoly mono = BiPoly::monomial(static_cast<std::size_t>(K));
        bool available = true;
        for (std::size_t b = 0; b < q && available; ++b)
          available = moments.can_integrate(b, a, B(n, b), mono);
        if (!available) {
          report.skip();
          continue;
        }
        Rational r = 0;
        for (std::size_t b = 0; b < q; ++b) r += moments.integrate(b, a, B(n, b), mono);
        if (sgn(r) == 0) report.pass();
        else
          report.fail("B: n=" + std::to_string(n) + " a=" + std::to_string(a + 1) + " K=" +
                      std::to_string(K) + " residual " + to_string(r));
      }
    }
  return report;
}

CheckReport check_biorthogonality(const FamilyA& A, const FamilyB& B, const MomentCache& moments,
                                  std::size_t count) {
  CheckReport report{"biorthogonality"};
  const std::size_t q = moments.q();
  const std::size_t p = moments.p();
  count = std::min({count, A.size(), B.size()});
  for (std::size_t m = 0; m < count; ++m)
    for (std::size_t n = 0; n < count; ++n) {
      bool available = true;
      for (std::size_t b = 0; b < q && available; ++b)
        for (std::size_t a = 0; a < p && available; ++a)
          available = moments.can_integrate(b, a, B(m, b), A(n, a));
      if (!available) {
        report.skip();
        continue;
      }
      Rational r = 0;
      for (std::size_t b = 0; b < q; ++b)
        for (std::size_t a = 0; a < p; ++a) r += moments.integrate(b, a, B(m, b), A(n, a));
      const Rational expected = m == n ? 1 : 0;
      if (r == expected) report.pass();
      else
        report.fail("(" + std::to_string(m) + "," + std::to_string(n) + ") = " + to_string(r) +
                    ", expected " + to_string(expected));
    }
  return report;
}

namespace {

nlohmann::ordered_json component_json(const BiPoly& f) {
  nlohmann::ordered_json j;
  j["coefficients"] = to_json(f);
  if (auto d = f.grlex_deg()) {
    j["grlex_position"] = d->position;
    j["grlex_degree"] = {d->i, d->j};
  } else {
    j["grlex_position"] = nullptr;
    j["grlex_degree"] = nullptr;
  }
  return j;
}

nlohmann::ordered_json family_json(const std::vector<std::vector<BiPoly>>& polys) {
  auto out = nlohmann::ordered_json::array();
  for (std::size_t n = 0; n < polys.size(); ++n) {
    nlohmann::ordered_json entry;
    entry["n"] = n;
    entry["components"] = nlohmann::ordered_json::array();
    for (const auto& f : polys[n]) entry["components"].push_back(component_json(f));
    out.push_back(std::move(entry));
  }
  return out;
}


std::vector<std::vector<Rational>> evaluate_all(const std::vector<std::vector<BiPoly>>& polys,
                                                const Point& x, std::size_t count) {
  count = std::min(count, polys.size());
  std::vector<std::vector<Rational>> out(count);
  for (std::size_t n = 0; n < count; ++n) {
    out[n].reserve(polys[n].size());
    for (const auto& f : polys[n]) out[n].push_back(f.eval(x));
  }
  return out;
}

} // namespace

std::vector<std::vector<Rational>> evaluate(const FamilyA& A, const Point& x, std::size_t count) {
  return evaluate_all(A.cols, x, count);
}

std::vector<std::vector<Rational>> evaluate(const FamilyB& B, const Point& x, std::size_t count) {
  return evaluate_all(B.rows, x, count);
}

nlohmann::ordered_json to_json(const FamilyA& A) { return family_json(A.cols); }
nlohmann::ordered_json to_json(const FamilyB& B) { return family_json(B.rows); }

} // namespace stepline
