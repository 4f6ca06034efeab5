#pragma once

#include "stepline/bipoly.hpp"
#include "stepline/matrix.hpp"
#include "stepline/rational.hpp"

#include <json.hpp>

#include <cstddef>
#include <map>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

namespace stepline {

struct Atom {
  Rational x1;
  Rational x2;
  Rational weight;

  friend bool operator==(const Atom&, const Atom&) = default;
};

/// Finite signed combination of point masses.
struct DiscreteMeasure {
  std::vector<Atom> atoms;
};

/// Polynomial density on the box [x1_lo, x1_hi] x [x2_lo, x2_hi].
struct RectDensity {
  Rational x1_lo, x1_hi, x2_lo, x2_hi;
  BiPoly density;
};

/// Moments given directly. Entries with s + t <= max_total_deg that are
/// absent from the map are zero.
struct MomentTable {
  std::size_t max_total_deg = 0;
  std::map<std::pair<std::size_t, std::size_t>, Rational> moments;
};

using MeasureSpec = std::variant<DiscreteMeasure, RectDensity, MomentTable>;

/// Raised when a moment outside a table's declared range is requested.
class MomentRangeError : public std::out_of_range {
public:
  MomentRangeError(std::size_t s, std::size_t t, std::size_t bound);
  std::size_t s, t, bound;
};

/// Throws std::invalid_argument if the spec violates its invariants
/// (empty box, malformed table).
void validate(const MeasureSpec& spec);

/// Exact value of the integral of x1^s x2^t against the measure.
Rational moment(const MeasureSpec& spec, std::size_t s, std::size_t t);

/// Whether moment(spec, s, t) is defined (always, except beyond a table bound).
bool has_moment(const MeasureSpec& spec, std::size_t s, std::size_t t);

/// q x p grid of measures; entry (b, a) is zero-based.
class MeasureMatrix {
public:
  MeasureMatrix(std::size_t q, std::size_t p, std::vector<MeasureSpec> entries);

  std::size_t q() const { return q_; }
  std::size_t p() const { return p_; }
  const MeasureSpec& at(std::size_t b, std::size_t a) const { return entries_.at(b * p_ + a); }

  /// True when q == p and the grid is symmetric as specs (structurally equal).
  bool is_symmetric() const;

private:
  std::size_t q_;
  std::size_t p_;
  std::vector<MeasureSpec> entries_;
};

/// q x p block of moments between monomial positions I and K.
Matrix moment_block(const MeasureMatrix& mm, std::size_t I, std::size_t K);

/// Memoizing view of a MeasureMatrix. Moments with s + t <= max_total_deg are
/// computed eagerly at construction; the object is immutable afterwards.
class MomentCache {
public:
  MomentCache(const MeasureMatrix& mm, std::size_t max_total_deg);

  const MeasureMatrix& measures() const { return mm_; }
  std::size_t q() const { return mm_.q(); }
  std::size_t p() const { return mm_.p(); }

  /// Moment of x1^s x2^t against entry (b, a).
  Rational moment(std::size_t b, std::size_t a, std::size_t s, std::size_t t) const;
  bool has_moment(std::size_t b, std::size_t a, std::size_t s, std::size_t t) const;

  /// Moment of the monomial at graded-lex position K against entry (b, a).
  Rational moment_at(std::size_t b, std::size_t a, std::size_t K) const;
  bool has_moment_at(std::size_t b, std::size_t a, std::size_t K) const;

  /// Integral of f * g against entry (b, a) expanded through moments.
  Rational integrate(std::size_t b, std::size_t a, const BiPoly& f, const BiPoly& g) const;
  bool can_integrate(std::size_t b, std::size_t a, const BiPoly& f, const BiPoly& g) const;

private:
  MeasureMatrix mm_;
  std::size_t max_deg_;
  // [entry][position]
  std::vector<std::vector<Rational>> table_;
  std::vector<std::vector<bool>> available_;
};

// JSON config fragments:
//   {"type":"discrete","atoms":[{"x":"1/2","y":"-1/3","w":"2/5"}]}
//   {"type":"rect","box":["-1","1","-1","1"],"density":{"0":"1"}}
//   {"type":"table","max_total_deg":N,"moments":{"s,t":"num/den"}}
MeasureSpec measure_from_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json to_json(const MeasureSpec& spec);

} // namespace stepline
