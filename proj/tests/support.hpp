#pragma once

// Test-only generators and oracles. The oracles deliberately avoid the
// library's own code paths: moments are integrated by binomial expansion,
// families come from dense linear solves of the orthogonality conditions,
// and T is formed as an explicit triple product.

#include "stepline/gaussborel.hpp"
#include "stepline/measures.hpp"
#include "stepline/moments.hpp"
#include "stepline/sampling.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace testsupport {

using stepline::Atom;
using stepline::BiPoly;
using stepline::DiscreteMeasure;
using stepline::Matrix;
using stepline::MeasureMatrix;
using stepline::MeasureSpec;
using stepline::Rational;
using stepline::RationalSampler;
using stepline::RectDensity;

inline Rational rat(long n, unsigned long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

inline Rational ipow(const Rational& b, std::size_t e) {
  Rational r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= b;
  return r;
}

inline Rational binom(std::size_t n, std::size_t k) {
  Rational r = 1;
  for (std::size_t i = 0; i < k; ++i) {
    r *= static_cast<unsigned long>(n - i);
    r /= static_cast<unsigned long>(i + 1);
  }
  return r;
}

// Integral of t^e over [lo, hi] through t = lo + h u, u in [0, 1].
inline Rational oracle_power_integral(const Rational& lo, const Rational& hi, std::size_t e) {
  const Rational h = hi - lo;
  Rational sum = 0;
  for (std::size_t j = 0; j <= e; ++j)
    sum += binom(e, j) * ipow(lo, e - j) * ipow(h, j) / static_cast<unsigned long>(j + 1);
  return sum * h;
}

inline Rational oracle_moment(const MeasureSpec& spec, std::size_t s, std::size_t t) {
  if (auto* d = std::get_if<DiscreteMeasure>(&spec)) {
    Rational sum = 0;
    for (const auto& a : d->atoms) sum += a.weight * ipow(a.x1, s) * ipow(a.x2, t);
    return sum;
  }
  if (auto* r = std::get_if<RectDensity>(&spec)) {
    Rational sum = 0;
    for (const auto& [K, c] : r->density.terms()) {
      // Position K of the step-line: walk it instead of using pair_of.
      std::size_t i = 0, j = 0;
      for (std::size_t n = 0; n < K; ++n) {
        if (j == i) {
          ++i;
          j = 0;
        } else {
          ++j;
        }
      }
      sum += c * oracle_power_integral(r->x1_lo, r->x1_hi, s + i - j) *
             oracle_power_integral(r->x2_lo, r->x2_hi, t + j);
    }
    return sum;
  }
  const auto& tab = std::get<stepline::MomentTable>(spec);
  auto it = tab.moments.find({s, t});
  return it == tab.moments.end() ? Rational(0) : it->second;
}

// Exponents of the monomial at step-line position K, by walking the line.
inline std::pair<std::size_t, std::size_t> exponents(std::size_t K) {
  std::size_t i = 0, j = 0;
  for (std::size_t n = 0; n < K; ++n) {
    if (j == i) {
      ++i;
      j = 0;
    } else {
      ++j;
    }
  }
  return {i - j, j};
}

inline Matrix oracle_moment_matrix(const MeasureMatrix& mm, std::size_t D) {
  Matrix M(D, D);
  for (std::size_t m = 0; m < D; ++m)
    for (std::size_t n = 0; n < D; ++n) {
      const auto [s1, t1] = exponents(m / mm.q());
      const auto [s2, t2] = exponents(n / mm.p());
      M(m, n) = oracle_moment(mm.at(m % mm.q(), n % mm.p()), s1 + s2, t1 + t2);
    }
  return M;
}

// Solves A x = b by Gaussian elimination with partial (first nonzero) pivoting.
inline std::vector<Rational> solve(Matrix A, std::vector<Rational> b) {
  const std::size_t n = A.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && A(piv, c) == 0) ++piv;
    if (piv == n) throw std::domain_error("oracle solve: singular system");
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(A(c, j), A(piv, j));
      std::swap(b[c], b[piv]);
    }
    for (std::size_t r = c + 1; r < n; ++r) {
      if (A(r, c) == 0) continue;
      const Rational f = A(r, c) / A(c, c);
      for (std::size_t j = c; j < n; ++j) A(r, j) -= f * A(c, j);
      b[r] -= f * b[c];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t r = n; r-- > 0;) {
    Rational s = b[r];
    for (std::size_t j = r + 1; j < n; ++j) s -= A(r, j) * x[j];
    x[r] = s / A(r, r);
  }
  return x;
}

// Row n of Sbar: c_n = 1, and the first n rows of M times c vanish.
inline std::vector<Rational> oracle_A_coefficients(const Matrix& M, std::size_t n) {
  std::vector<Rational> c(n + 1);
  c[n] = 1;
  if (n == 0) return c;
  Matrix sub(n, n);
  std::vector<Rational> rhs(n);
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t j = 0; j < n; ++j) sub(m, j) = M(m, j);
    rhs[m] = -M(m, n);
  }
  const auto x = solve(sub, rhs);
  for (std::size_t j = 0; j < n; ++j) c[j] = x[j];
  return c;
}

// Row n of H^{-1} S: d^T M^[n] = e_n^T.
inline std::vector<Rational> oracle_B_coefficients(const Matrix& M, std::size_t n) {
  Matrix Mt(n + 1, n + 1);
  for (std::size_t r = 0; r <= n; ++r)
    for (std::size_t c = 0; c <= n; ++c) Mt(r, c) = M(c, r);
  std::vector<Rational> e(n + 1);
  e[n] = 1;
  return solve(Mt, e);
}

// --- random measure matrices ----------------------------------------------

inline Rational small(RationalSampler& rng, std::int64_t bound, std::int64_t max_den) {
  return rng.next(bound, max_den);
}

inline RectDensity random_rect(RationalSampler& rng) {
  const Rational x_lo = rat(static_cast<long>(rng.between(-2, 0)), 1 + rng.below(2));
  const Rational y_lo = rat(static_cast<long>(rng.between(-2, 0)), 1 + rng.below(2));
  const Rational x_hi = x_lo + rat(static_cast<long>(rng.between(1, 4)), 2);
  const Rational y_hi = y_lo + rat(static_cast<long>(rng.between(1, 4)), 2);
  BiPoly density = BiPoly::constant(rat(static_cast<long>(rng.between(1, 4)), 1 + rng.below(2)));
  const std::size_t extra = rng.below(3);
  for (std::size_t i = 0; i < extra; ++i) density.add_term(1 + rng.below(5), small(rng, 1, 4));
  if (density.is_zero()) density = BiPoly::constant(1);
  return {x_lo, x_hi, y_lo, y_hi, density};
}

inline DiscreteMeasure random_discrete(RationalSampler& rng, std::size_t atoms) {
  DiscreteMeasure d;
  for (std::size_t i = 0; i < atoms; ++i)
    d.atoms.push_back({small(rng, 3, 4), small(rng, 3, 4), rat(static_cast<long>(rng.between(1, 4)), 1 + rng.below(3))});
  return d;
}

inline MeasureSpec random_entry(RationalSampler& rng, std::size_t atoms) {
  if (rng.below(3) == 0) return random_discrete(rng, atoms);
  return random_rect(rng);
}

// q x p grid; a symmetric grid (q == p) mirrors entries across the diagonal.
inline MeasureMatrix random_measure_matrix(RationalSampler& rng, std::size_t q, std::size_t p,
                                           std::size_t atoms, bool symmetric = false) {
  std::vector<MeasureSpec> e(q * p);
  for (std::size_t b = 0; b < q; ++b)
    for (std::size_t a = 0; a < p; ++a) {
      if (symmetric && a < b) e[b * p + a] = e[a * p + b];
      else e[b * p + a] = random_entry(rng, atoms);
    }
  return MeasureMatrix(q, p, std::move(e));
}

// Draws until the depth-D truncation factorizes (regeneration is seeded, so
// deterministic).
inline MeasureMatrix factorizable_system(RationalSampler& rng, std::size_t q, std::size_t p, std::size_t D,
                                         bool symmetric = false) {
  for (int attempt = 0; attempt < 50; ++attempt) {
    MeasureMatrix mm = random_measure_matrix(rng, q, p, D + 4, symmetric);
    try {
      stepline::factorize(stepline::assemble_moments(mm, D));
      return mm;
    } catch (const stepline::BreakdownError&) {
    }
  }
  throw std::runtime_error("no factorizable system after 50 draws");
}

inline MeasureMatrix lebesgue_square() {
  return MeasureMatrix(1, 1, {RectDensity{rat(-1), rat(1), rat(-1), rat(1), BiPoly::constant(1)}});
}

// Generic q = 1, p = 2 system used for the worked-example comparisons.
inline MeasureMatrix generic_q1p2() {
  RectDensity r1{rat(-1), rat(1), rat(0), rat(2), BiPoly::constant(1)};
  r1.density.add_term(1, rat(1, 2));
  RectDensity r2{rat(-1, 2), rat(3, 2), rat(-1), rat(1), BiPoly::constant(2)};
  r2.density.add_term(2, rat(-1, 3));
  r2.density.add_term(4, rat(1, 5));
  return MeasureMatrix(1, 2, {r1, r2});
}

} // namespace testsupport
