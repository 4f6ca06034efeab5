#include "stepline/pipeline.hpp"

#include "stepline/sampling.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>

namespace stepline {

const std::vector<std::string>& all_checks() {
  static const std::vector<std::string> names{"hankel",       "degree",     "orthogonality", "biorthogonality",
                                              "dual",         "band",       "recurrence",    "reproduction",
                                              "projection",   "cd",         "abc"};
  return names;
}

namespace {

template <class T>
T field(const nlohmann::ordered_json& j, const char* key, const std::string& what) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config field '" + std::string(key) + "': expected " + what);
  }
}

Point point_from_json(const nlohmann::ordered_json& j) {
  if (j.is_string()) return parse_point(j.get<std::string>());
  if (j.is_array() && j.size() == 2 && j[0].is_string() && j[1].is_string())
    return {parse_rational(j[0].get<std::string>()), parse_rational(j[1].get<std::string>())};
  throw std::invalid_argument("point must be \"x1,x2\" or [\"x1\",\"x2\"]");
}

} // namespace

RunConfig parse_config(const nlohmann::ordered_json& j) {
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  RunConfig c;
  c.q = field<std::size_t>(j, "q", "a positive integer");
  c.p = field<std::size_t>(j, "p", "a positive integer");
  if (c.q == 0 || c.p == 0) throw ConfigError("config fields 'q', 'p': must be positive");
  c.depth = j.contains("depth") ? field<std::size_t>(j, "depth", "a positive integer") : 1;
  if (c.depth == 0) throw ConfigError("config field 'depth': must be positive");

  if (!j.contains("measures") || !j["measures"].is_array())
    throw ConfigError("config field 'measures': expected a q x p array of arrays");
  const auto& rows = j["measures"];
  if (rows.size() != c.q)
    throw ConfigError("config field 'measures': has " + std::to_string(rows.size()) + " rows, q = " +
                      std::to_string(c.q));
  for (std::size_t b = 0; b < c.q; ++b) {
    if (!rows[b].is_array() || rows[b].size() != c.p)
      throw ConfigError("config field 'measures[" + std::to_string(b) + "]': expected " + std::to_string(c.p) +
                        " entries");
    for (std::size_t a = 0; a < c.p; ++a) {
      try {
        c.measures.push_back(measure_from_json(rows[b][a]));
      } catch (const std::exception& e) {
        throw ConfigError("config field 'measures[" + std::to_string(b) + "][" + std::to_string(a) +
                          "]': " + e.what());
      }
    }
  }

  if (j.contains("checks")) {
    const auto& checks = j["checks"];
    if (!checks.is_array()) throw ConfigError("config field 'checks': expected an array of names");
    for (const auto& name : checks) {
      if (!name.is_string()) throw ConfigError("config field 'checks': names must be strings");
      const auto s = name.get<std::string>();
      if (std::find(all_checks().begin(), all_checks().end(), s) == all_checks().end())
        throw ConfigError("config field 'checks': unknown check '" + s + "'");
      if (std::find(c.checks.begin(), c.checks.end(), s) == c.checks.end()) c.checks.push_back(s);
    }
  }
  if (j.contains("eval_points")) {
    const auto& pts = j["eval_points"];
    if (!pts.is_array()) throw ConfigError("config field 'eval_points': expected an array");
    for (std::size_t i = 0; i < pts.size(); ++i) {
      try {
        c.eval_points.push_back(point_from_json(pts[i]));
      } catch (const std::exception& e) {
        throw ConfigError("config field 'eval_points[" + std::to_string(i) + "]': " + e.what());
      }
    }
  }
  if (j.contains("seed")) c.seed = field<std::uint64_t>(j, "seed", "a non-negative integer");
  if (j.contains("output")) c.output = field<std::string>(j, "output", "a path string");
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config '" + path + "': " + e.what());
  }
  return parse_config(j);
}

Workspace build_workspace(const MeasureMatrix& mm, std::size_t depth) {
  const std::size_t W = required_depth(depth, mm.q(), mm.p());
  MomentCache moments(mm, moment_degree_for_depth(W, mm.q(), mm.p()));
  MomentTruncation M = assemble_moments(moments, W);
  Factorization F = factorize(M);
  auto [A, B] = extract_families(F);
  auto [A_rec, B_rec] = rescale_by_H(A, B, F.H);
  RecurrenceMatrix T1 = build_recurrence(F, Axis::x1, depth);
  RecurrenceMatrix T2 = build_recurrence(F, Axis::x2, depth);
  return {depth,        W,           std::move(moments), std::move(M),     std::move(F),
          std::move(A), std::move(B), std::move(A_rec),   std::move(B_rec), std::move(T1),
          std::move(T2)};
}

namespace {

std::vector<std::pair<Point, Point>> point_pairs(RationalSampler& rng, std::size_t count) {
  std::vector<std::pair<Point, Point>> out;
  for (std::size_t i = 0; i < count; ++i) {
    Point x = rng.point();
    out.emplace_back(x, rng.point());
  }
  return out;
}

void projection_case(CheckReport& report, const ProjectionResult& r, const std::string& label) {
  switch (r.status) {
    case ProjectionStatus::holds: report.pass(); break;
    case ProjectionStatus::fails: report.fail(label + ": " + r.detail); break;
    default: report.skip(); break;
  }
}

} // namespace

CheckReport run_check(const Workspace& ws, const std::string& name, const std::vector<Point>& points,
                      std::uint64_t seed) {
  const std::size_t D = ws.depth;
  const std::size_t q = ws.F.q;
  const std::size_t p = ws.F.p;
  RationalSampler rng(seed);

  if (name == "hankel") {
    CheckReport r{name};
    for (Axis k : {Axis::x1, Axis::x2})
      r.expect(check_hankel_symmetry(ws.M, k), "Hankel symmetry fails for k=" + std::to_string(axis_index(k)));
    return r;
  }
  if (name == "degree") {
    auto [A, B] = extract_families(ws.F, D);
    auto r = validate_degree_structure(A, B);
    r.name = name;
    return r;
  }
  if (name == "orthogonality") return check_orthogonality(ws.A, ws.B, ws.moments, D);
  if (name == "biorthogonality") return check_biorthogonality(ws.A, ws.B, ws.moments, D);
  if (name == "dual" || name == "band") {
    CheckReport r{name};
    for (Axis k : {Axis::x1, Axis::x2})
      r.merge(name == "dual" ? check_dual_form(ws.T(k), ws.F) : validate_band(ws.T(k), ws.F.H));
    return r;
  }
  if (name == "recurrence") {
    std::vector<Point> pts = points;
    if (pts.empty())
      for (int i = 0; i < 3; ++i) pts.push_back(rng.point());
    CheckReport r{name};
    for (Axis k : {Axis::x1, Axis::x2}) {
      r.merge(check_recurrences(ws.T(k), ws.A_rec, ws.B_rec, pts, D - 1));
      r.merge(check_recurrence_coefficients(ws.T(k), ws.A_rec, ws.B_rec, D - 1));
    }
    return r;
  }
  if (name == "reproduction") {
    CheckReport r{name};
    for (std::size_t n = 0; n < D; ++n) r.merge(check_reproduction(ws.A, ws.B, ws.moments, n, point_pairs(rng, 3)));
    return r;
  }
  if (name == "projection") {
    CheckReport r{name};
    auto next = [&] { return rng.next(); };
    for (std::size_t I = 0; I * p + p - 1 < D; ++I) {
      const std::size_t n = I * p + p - 1;
      projection_case(r, check_projection(ws.A, ws.B, ws.moments, n, random_monic(p, I, next), I),
                      "I=" + std::to_string(I));
    }
    for (std::size_t I = 0; I * q + q - 1 < D; ++I) {
      const std::size_t n = I * q + q - 1;
      projection_case(r, check_projection_dual(ws.A, ws.B, ws.moments, n, random_monic(q, I, next), I),
                      "dual I=" + std::to_string(I));
    }
    return r;
  }
  if (name == "cd") {
    CheckReport r{name};
    for (Axis k : {Axis::x1, Axis::x2})
      for (std::size_t n = 0; n < D; ++n) {
        const auto blocks = cd_blocks(ws.T(k), ws.A_rec, ws.B_rec, n);
        CheckReport grid = check_cd_grid(blocks, ws.A_rec, ws.B_rec);
        // One condition per (k, n): the grid establishes a polynomial identity.
        if (grid.ok()) r.pass();
        else r.fail(grid.violations.front());
      }
    return r;
  }
  if (name == "abc") {
    CheckReport r{name};
    for (std::size_t n = 0; n < D; ++n) r.merge(check_abc(ws.moments, ws.A, ws.B, n, point_pairs(rng, 3)));
    return r;
  }
  throw ConfigError("unknown check '" + name + "'");
}

namespace {

nlohmann::ordered_json check_entry(const CheckReport& r) {
  nlohmann::ordered_json e;
  if (r.checked == 0) {
    e["status"] = "skipped";
    e["reason"] = r.unchecked ? "no condition could be evaluated" : "no conditions at this depth";
  } else {
    e["status"] = r.ok() ? "pass" : "fail";
  }
  e["checked"] = r.checked;
  e["unchecked"] = r.unchecked;
  if (!r.ok()) {
    e["violations"] = r.violation_count;
    e["details"] = r.violations;
  }
  return e;
}

std::uint64_t check_seed(std::uint64_t seed, const std::string& name) {
  const auto& names = all_checks();
  const auto idx = static_cast<std::uint64_t>(std::find(names.begin(), names.end(), name) - names.begin());
  return seed * 1000003ULL + idx;
}

} // namespace

RunResult run(const RunConfig& config, std::optional<Workspace>* keep) {
  RunResult out;
  auto& rep = out.report;
  rep["schema_version"] = 1;
  rep["q"] = config.q;
  rep["p"] = config.p;
  rep["depth"] = config.depth;
  rep["extended_depth"] = required_depth(config.depth, config.q, config.p);
  rep["seed"] = config.seed;

  const MeasureMatrix mm(config.q, config.p, config.measures);
  const auto t0 = std::chrono::steady_clock::now();
  std::optional<Workspace> ws;
  try {
    ws.emplace(build_workspace(mm, config.depth));
  } catch (const BreakdownError& e) {
    rep["status"] = "breakdown";
    rep["breakdown_index"] = e.index;
    rep["message"] = e.what();
    rep["checks"] = nlohmann::ordered_json::object();
    for (const auto& name : config.checks)
      rep["checks"][name] = {{"status", "skipped"}, {"reason", e.what()}};
    out.exit_code = 2;
    return out;
  }

  rep["H"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < config.depth; ++i) rep["H"].push_back(to_string(ws->F.H[i]));

  bool all_ok = true;
  rep["checks"] = nlohmann::ordered_json::object();
  for (const auto& name : config.checks) {
    const auto t1 = std::chrono::steady_clock::now();
    const CheckReport r = run_check(*ws, name, config.eval_points, check_seed(config.seed, name));
    all_ok = all_ok && r.ok();
    rep["checks"][name] = check_entry(r);
    if (config.timing)
      std::clog << "[timing] " << name << ": "
                << std::chrono::duration<double>(std::chrono::steady_clock::now() - t1).count() << " s\n";
  }
  if (config.timing)
    std::clog << "[timing] total: " << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()
              << " s\n";
  rep["status"] = all_ok ? "pass" : "fail";
  out.exit_code = all_ok ? 0 : 1;
  if (keep) *keep = std::move(ws);
  return out;
}

} // namespace stepline
