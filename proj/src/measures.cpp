#include "stepline/measures.hpp"

#include <string>

namespace stepline {

namespace {

Rational power(const Rational& base, std::size_t e) {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Integral of t^e over [lo, hi].
Rational power_integral(const Rational& lo, const Rational& hi, std::size_t e) {
  Rational r = power(hi, e + 1) - power(lo, e + 1);
  r /= static_cast<unsigned long>(e + 1);
  return r;
}

bool same_spec(const MeasureSpec& a, const MeasureSpec& b) {
  if (a.index() != b.index()) return false;
  if (auto* d = std::get_if<DiscreteMeasure>(&a)) return d->atoms == std::get<DiscreteMeasure>(b).atoms;
  if (auto* r = std::get_if<RectDensity>(&a)) {
    const auto& o = std::get<RectDensity>(b);
    return r->x1_lo == o.x1_lo && r->x1_hi == o.x1_hi && r->x2_lo == o.x2_lo &&
           r->x2_hi == o.x2_hi && r->density == o.density;
  }
  const auto& t = std::get<MomentTable>(a);
  const auto& o = std::get<MomentTable>(b);
  return t.max_total_deg == o.max_total_deg && t.moments == o.moments;
}

} // namespace

MomentRangeError::MomentRangeError(std::size_t s_, std::size_t t_, std::size_t bound_)
    : std::out_of_range("moment (" + std::to_string(s_) + "," + std::to_string(t_) +
                        ") exceeds declared total degree " + std::to_string(bound_)),
      s(s_), t(t_), bound(bound_) {}

void validate(const MeasureSpec& spec) {
  if (auto* r = std::get_if<RectDensity>(&spec)) {
    if (!(r->x1_lo < r->x1_hi) || !(r->x2_lo < r->x2_hi))
      throw std::invalid_argument("rectangle density needs lo < hi on both axes");
  } else if (auto* t = std::get_if<MomentTable>(&spec)) {
    for (const auto& [st, v] : t->moments)
      if (st.first + st.second > t->max_total_deg)
        throw std::invalid_argument("moment table entry (" + std::to_string(st.first) + "," +
                                    std::to_string(st.second) + ") exceeds max_total_deg");
  }
}

bool has_moment(const MeasureSpec& spec, std::size_t s, std::size_t t) {
  if (auto* tab = std::get_if<MomentTable>(&spec)) return s + t <= tab->max_total_deg;
  return true;
}

Rational moment(const MeasureSpec& spec, std::size_t s, std::size_t t) {
  if (auto* d = std::get_if<DiscreteMeasure>(&spec)) {
    Rational sum = 0;
    for (const auto& atom : d->atoms) sum += atom.weight * power(atom.x1, s) * power(atom.x2, t);
    return sum;
  }
  if (auto* r = std::get_if<RectDensity>(&spec)) {
    Rational sum = 0;
    for (const auto& [K, c] : r->density.terms()) {
      const auto m = pair_of(K);
      sum += c * power_integral(r->x1_lo, r->x1_hi, s + m.i - m.j) *
             power_integral(r->x2_lo, r->x2_hi, t + m.j);
    }
    return sum;
  }
  const auto& tab = std::get<MomentTable>(spec);
  if (s + t > tab.max_total_deg) throw MomentRangeError(s, t, tab.max_total_deg);
  auto it = tab.moments.find({s, t});
  return it == tab.moments.end() ? Rational(0) : it->second;
}

MeasureMatrix::MeasureMatrix(std::size_t q, std::size_t p, std::vector<MeasureSpec> entries)
    : q_(q), p_(p), entries_(std::move(entries)) {
  if (q == 0 || p == 0) throw std::invalid_argument("measure matrix needs q, p >= 1");
  if (entries_.size() != q * p)
    throw std::invalid_argument("measure matrix has " + std::to_string(entries_.size()) +
                                " entries, expected q*p = " + std::to_string(q * p));
  for (const auto& e : entries_) validate(e);
}

bool MeasureMatrix::is_symmetric() const {
  if (q_ != p_) return false;
  for (std::size_t b = 0; b < q_; ++b)
    for (std::size_t a = b + 1; a < p_; ++a)
      if (!same_spec(at(b, a), at(a, b))) return false;
  return true;
}

Matrix moment_block(const MeasureMatrix& mm, std::size_t I, std::size_t K) {
  const auto m = pair_of(I);
  const auto n = pair_of(K);
  Matrix block(mm.q(), mm.p());
  for (std::size_t b = 0; b < mm.q(); ++b)
    for (std::size_t a = 0; a < mm.p(); ++a)
      block(b, a) = moment(mm.at(b, a), (m.i - m.j) + (n.i - n.j), m.j + n.j);
  return block;
}

MomentCache::MomentCache(const MeasureMatrix& mm, std::size_t max_total_deg)
    : mm_(mm), max_deg_(max_total_deg) {
  const std::size_t count = pos_of(max_total_deg, max_total_deg) + 1;
  table_.resize(mm.q() * mm.p());
  available_.resize(mm.q() * mm.p());
  for (std::size_t e = 0; e < table_.size(); ++e) {
    const auto& spec = mm.at(e / mm.p(), e % mm.p());
    table_[e].resize(count);
    available_[e].resize(count);
    for (std::size_t K = 0; K < count; ++K) {
      const auto m = pair_of(K);
      if (!stepline::has_moment(spec, m.i - m.j, m.j)) continue;
      table_[e][K] = stepline::moment(spec, m.i - m.j, m.j);
      available_[e][K] = true;
    }
  }
}

Rational MomentCache::moment(std::size_t b, std::size_t a, std::size_t s, std::size_t t) const {
  return moment_at(b, a, pos_of(s + t, t));
}

bool MomentCache::has_moment(std::size_t b, std::size_t a, std::size_t s, std::size_t t) const {
  return has_moment_at(b, a, pos_of(s + t, t));
}

Rational MomentCache::moment_at(std::size_t b, std::size_t a, std::size_t K) const {
  const std::size_t e = b * mm_.p() + a;
  if (K < table_[e].size() && available_[e][K]) return table_[e][K];
  const auto m = pair_of(K);
  return stepline::moment(mm_.at(b, a), m.i - m.j, m.j);
}

bool MomentCache::has_moment_at(std::size_t b, std::size_t a, std::size_t K) const {
  const auto m = pair_of(K);
  return stepline::has_moment(mm_.at(b, a), m.i - m.j, m.j);
}

Rational MomentCache::integrate(std::size_t b, std::size_t a, const BiPoly& f, const BiPoly& g) const {
  Rational sum = 0;
  Rational t;
  for (const auto& [K, c] : f.terms())
    for (const auto& [L, d] : g.terms()) {
      t = c * d;
      t *= moment_at(b, a, monomial_product(K, L));
      sum += t;
    }
  return sum;
}

bool MomentCache::can_integrate(std::size_t b, std::size_t a, const BiPoly& f, const BiPoly& g) const {
  if (f.is_zero() || g.is_zero()) return true;
  // The highest total degree of the product bounds every needed moment.
  const std::size_t top = *f.total_deg() + *g.total_deg();
  return has_moment_at(b, a, pos_of(top, 0));
}

namespace {

const nlohmann::ordered_json& require(const nlohmann::ordered_json& j, const char* key,
                                      const char* context) {
  if (!j.contains(key))
    throw std::invalid_argument(std::string(context) + ": missing field '" + key + "'");
  return j.at(key);
}

Rational rational_field(const nlohmann::ordered_json& j, const std::string& where) {
  if (!j.is_string()) throw std::invalid_argument(where + ": rational must be a \"num/den\" string");
  return parse_rational(j.get<std::string>());
}

} // namespace

MeasureSpec measure_from_json(const nlohmann::ordered_json& j) {
  if (!j.is_object()) throw std::invalid_argument("measure: expected an object");
  const auto type = require(j, "type", "measure").get<std::string>();
  MeasureSpec spec;
  if (type == "discrete") {
    DiscreteMeasure d;
    for (const auto& atom : require(j, "atoms", "discrete measure")) {
      d.atoms.push_back({rational_field(require(atom, "x", "atom"), "atom.x"),
                         rational_field(require(atom, "y", "atom"), "atom.y"),
                         rational_field(require(atom, "w", "atom"), "atom.w")});
    }
    spec = std::move(d);
  } else if (type == "rect") {
    const auto& box = require(j, "box", "rect measure");
    if (!box.is_array() || box.size() != 4)
      throw std::invalid_argument("rect measure: 'box' must be [x_lo, x_hi, y_lo, y_hi]");
    RectDensity r{rational_field(box[0], "box[0]"), rational_field(box[1], "box[1]"),
                  rational_field(box[2], "box[2]"), rational_field(box[3], "box[3]"),
                  j.contains("density") ? bipoly_from_json(j.at("density")) : BiPoly::constant(1)};
    spec = std::move(r);
  } else if (type == "table") {
    MomentTable t;
    t.max_total_deg = require(j, "max_total_deg", "moment table").get<std::size_t>();
    for (const auto& [key, value] : require(j, "moments", "moment table").items()) {
      const auto comma = key.find(',');
      if (comma == std::string::npos)
        throw std::invalid_argument("moment table key '" + key + "' must be \"s,t\"");
      const auto s = std::stoul(key.substr(0, comma));
      const auto u = std::stoul(key.substr(comma + 1));
      t.moments[{s, u}] = rational_field(value, "moments[" + key + "]");
    }
    spec = std::move(t);
  } else {
    throw std::invalid_argument("measure: unknown type '" + type + "'");
  }
  validate(spec);
  return spec;
}

nlohmann::ordered_json to_json(const MeasureSpec& spec) {
  nlohmann::ordered_json j;
  if (auto* d = std::get_if<DiscreteMeasure>(&spec)) {
    j["type"] = "discrete";
    j["atoms"] = nlohmann::ordered_json::array();
    for (const auto& a : d->atoms)
      j["atoms"].push_back({{"x", to_string(a.x1)}, {"y", to_string(a.x2)}, {"w", to_string(a.weight)}});
  } else if (auto* r = std::get_if<RectDensity>(&spec)) {
    j["type"] = "rect";
    j["box"] = {to_string(r->x1_lo), to_string(r->x1_hi), to_string(r->x2_lo), to_string(r->x2_hi)};
    j["density"] = to_json(r->density);
  } else {
    const auto& t = std::get<MomentTable>(spec);
    j["type"] = "table";
    j["max_total_deg"] = t.max_total_deg;
    j["moments"] = nlohmann::ordered_json::object();
    for (const auto& [st, v] : t.moments)
      j["moments"][std::to_string(st.first) + "," + std::to_string(st.second)] = to_string(v);
  }
  return j;
}

} // namespace stepline
