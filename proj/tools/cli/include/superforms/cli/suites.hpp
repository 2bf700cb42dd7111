#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace superforms::cli {

struct CaseResult {
  std::string name;
  bool passed = false;
  std::string detail;  // why it failed; empty on success
};

struct SuiteResult {
  std::string name;
  std::vector<CaseResult> cases;

  size_t failures() const;
  // Cases whose name starts with `prefix`, and how many of those passed.
  size_t count(const std::string& prefix) const;
  size_t passed(const std::string& prefix) const;
  nlohmann::json to_json() const;
};

// Randomized invariant suites over the engine. Each suite draws its inputs
// from a generator seeded with `seed`, so a run is reproducible.
std::vector<std::string> suite_names();
// Throws std::invalid_argument for an unknown name.
SuiteResult run_suite(const std::string& name, uint64_t seed);

}  // namespace superforms::cli
