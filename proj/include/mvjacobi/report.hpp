#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace mvjacobi {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Ordered list of named pass/fail checks produced by a verification routine.
struct Report {
  std::string suite;
  std::vector<CheckResult> checks;

  void add(std::string name, bool pass, std::string detail = {}) {
    checks.push_back({std::move(name), pass, std::move(detail)});
  }
  void append(const Report& other) { checks.insert(checks.end(), other.checks.begin(), other.checks.end()); }
  bool all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
  }
  std::size_t failures() const {
    return static_cast<std::size_t>(
        std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return !c.pass; }));
  }
};

}  // namespace mvjacobi
