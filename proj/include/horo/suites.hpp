#pragma once

// Verification suites shared by `horo verify` and the acceptance runner.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "horo/io.hpp"

namespace horo {

struct CheckResult {
  std::string name;
  bool passed = false;
  Json detail;
};

struct SuiteResult {
  std::string suite;
  bool passed = false;
  double seconds = 0;
  std::vector<CheckResult> checks;
};

struct SuiteOptions {
  /// Overrides the suite's main radius where it has one.
  std::optional<std::int64_t> radius;
  std::uint64_t seed = 20240601;
};

/// metric-oracle, lemma41, tree-lemmas, boundary-functions, isomorphism, fset,
/// closure, walk-drift, pointwise-limits.
const std::vector<std::string>& suite_names();

/// Throws std::invalid_argument for an unknown name.
SuiteResult run_suite(const std::string& name, const SuiteOptions& options = {});

Json to_json(const SuiteResult& result);

/// The boundary-function catalog used by the boundary-functions suite.
std::vector<BoundaryFunction> boundary_catalog();

/// The randomized family list of the isomorphism suite. redrawn counts interleaves
/// rejected because their part limits agree on the radius-4 ball.
std::vector<FamilyCase> random_family_cases(std::uint64_t seed, std::size_t count, std::size_t* redrawn = nullptr);

}  // namespace horo
