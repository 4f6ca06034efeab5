#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace stepline {

/// Outcome of one verification pass. Conditions that could not be evaluated
/// (missing moments, indices past the truncation) are counted as unchecked
/// and never as passed.
struct CheckReport {
  static constexpr std::size_t kKeptViolations = 20;

  CheckReport() = default;
  explicit CheckReport(std::string name_) : name(std::move(name_)) {}

  std::string name;
  std::size_t checked = 0;
  std::size_t unchecked = 0;
  std::size_t violation_count = 0;
  std::vector<std::string> violations;  // first kKeptViolations only

  bool ok() const { return violation_count == 0; }

  void pass() { ++checked; }
  void skip() { ++unchecked; }
  void fail(std::string what) {
    ++checked;
    ++violation_count;
    if (violations.size() < kKeptViolations) violations.push_back(std::move(what));
  }
  void expect(bool condition, const std::string& what) {
    if (condition) pass();
    else fail(what);
  }
  void merge(const CheckReport& other) {
    checked += other.checked;
    unchecked += other.unchecked;
    violation_count += other.violation_count;
    for (const auto& v : other.violations)
      if (violations.size() < kKeptViolations) violations.push_back(v);
  }
};

} // namespace stepline
