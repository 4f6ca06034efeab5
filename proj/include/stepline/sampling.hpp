#pragma once

#include "stepline/bipoly.hpp"
#include "stepline/rational.hpp"

#include <cstdint>
#include <random>

namespace stepline {

/// Seeded source of small rationals. Uses plain modulo reduction on the
/// 64-bit engine output so sequences are identical across standard libraries.
class RationalSampler {
public:
  explicit RationalSampler(std::uint64_t seed) : rng_(seed) {}

  /// Uniform-ish integer in [0, n); n > 0.
  std::uint64_t below(std::uint64_t n) { return rng_() % n; }
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  /// num/den with den in [1, max_den] and |num/den| <= bound.
  Rational next(std::int64_t bound = 2, std::int64_t max_den = 16) {
    const std::int64_t den = between(1, max_den);
    Rational r(static_cast<long>(between(-bound * den, bound * den)), static_cast<unsigned long>(den));
    r.canonicalize();
    return r;
  }

  Point point(std::int64_t bound = 2, std::int64_t max_den = 16) {
    Rational a = next(bound, max_den);
    return {a, next(bound, max_den)};
  }

private:
  std::mt19937_64 rng_;
};

} // namespace stepline
