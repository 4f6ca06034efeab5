#pragma once

#include "stepline/cdkernel.hpp"
#include "stepline/families.hpp"
#include "stepline/gaussborel.hpp"
#include "stepline/measures.hpp"
#include "stepline/moments.hpp"
#include "stepline/recurrence.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace stepline {

/// Malformed or inconsistent configuration; the message names the field.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

const std::vector<std::string>& all_checks();

struct RunConfig {
  std::size_t q = 1;
  std::size_t p = 1;
  std::vector<MeasureSpec> measures;  // row-major q x p
  std::size_t depth = 1;
  std::vector<std::string> checks;
  std::vector<Point> eval_points;
  std::uint64_t seed = 0;
  std::string output;
  bool timing = false;  // per-check wall time on stderr, never in the report
};

/// Config layout:
///   {"q":1,"p":2,"depth":8,"measures":[[{...},{...}]],
///    "checks":["band",...],"eval_points":["1/2,1/3"],"seed":7,"output":"out"}
/// Throws ConfigError with the offending field.
RunConfig parse_config(const nlohmann::ordered_json& j);
RunConfig load_config(const std::string& path);

/// Everything derived from a measure matrix at target depth D: moments and
/// factorization at the extended depth required_depth(D), families, T1, T2.
/// The recurrences and the CD formula are checked on (A_rec, B_rec).
struct Workspace {
  std::size_t depth = 0;
  std::size_t extended = 0;
  MomentCache moments;
  MomentTruncation M;
  Factorization F;
  FamilyA A;
  FamilyB B;
  FamilyA A_rec;  // A_n / H_n
  FamilyB B_rec;  // H_n B_n
  RecurrenceMatrix T1;
  RecurrenceMatrix T2;

  const RecurrenceMatrix& T(Axis k) const { return k == Axis::x1 ? T1 : T2; }
};

/// Throws BreakdownError when a leading minor vanishes.
Workspace build_workspace(const MeasureMatrix& mm, std::size_t depth);

/// Runs one named check on the workspace. `seed` drives any random points.
CheckReport run_check(const Workspace& ws, const std::string& name, const std::vector<Point>& points,
                      std::uint64_t seed);

/// Full report: schema_version, shape, depths, H, and one entry per requested check.
/// Returns the exit code alongside (0 pass, 1 check failure, 2 breakdown).
struct RunResult {
  nlohmann::ordered_json report;
  int exit_code = 0;
};

/// If `keep` is non-null the built workspace is moved into it.
RunResult run(const RunConfig& config, std::optional<Workspace>* keep = nullptr);

} // namespace stepline
