#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "adsgeom/serialize.hpp"

namespace adsgeom {

struct PropertyResult {
  explicit PropertyResult(std::string property) : name(std::move(property)) {}

  std::string name;
  long cases = 0;
  long failures = 0;
  Json details = Json::object();
  std::optional<Json> counterexample;  // first failing case

  bool pass() const { return cases > 0 && failures == 0; }
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<PropertyResult> properties;
  double seconds = 0.0;

  bool pass() const;
};

// isometry-oracle, taxonomy-roundtrip, ccc-sweep, warped-product,
// btz-duality, interaction-classifier, polyhedra-bihyperbolic,
// surgery-roundtrip, causal-speed.
const std::vector<std::string>& suite_names();
// Throws InputError for an unknown suite.
SuiteReport run_suite(std::string_view name, std::uint64_t seed);

Json to_json(const SuiteReport& r, bool with_timing = false);

}  // namespace adsgeom
