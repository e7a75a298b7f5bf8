// Runs every acceptance criterion once and prints one PASS/FAIL line each.
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <string>

#include "adsgeom/suites.hpp"

namespace {

struct Criterion {
  const char* suite;
  const char* title;
  double budget_seconds;
};

constexpr Criterion kCriteria[] = {
    {"isometry-oracle", "trace classification agrees with fixed-point pattern", 5},
    {"taxonomy-roundtrip", "model singularities classify back to their type", 10},
    {"ccc-sweep", "closed causal curves under parabolic surgeries", 5},
    {"warped-product", "warped product curvature and cone holonomy", 30},
    {"btz-duality", "BTZ quotient geodesics are dual", 5},
    {"interaction-classifier", "interaction classes of standard spheres", 2},
    {"polyhedra-bihyperbolic", "bi-hyperbolic polyhedra induce positive structures", 60},
    {"surgery-roundtrip", "collision surgery followed by excision", 2},
    {"causal-speed", "null curves saturate the speed bound; time function", 30},
};

}  // namespace

int main(int argc, char** argv) {
  const std::uint64_t seed = argc > 1 ? std::stoull(argv[1]) : 42;
  int failed = 0;
  int index = 0;
  for (const auto& c : kCriteria) {
    ++index;
    std::string why;
    const auto start = std::chrono::steady_clock::now();
    try {
      const adsgeom::SuiteReport r = adsgeom::run_suite(c.suite, seed);
      for (const auto& p : r.properties) {
        if (!p.pass()) why += (why.empty() ? "" : ", ") + p.name + " (" + std::to_string(p.failures) + "/" + std::to_string(p.cases) + ")";
      }
    } catch (const std::exception& e) {
      why = e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (why.empty() && seconds >= c.budget_seconds) why = "over the " + std::to_string(static_cast<int>(c.budget_seconds)) + " s budget";
    const bool ok = why.empty();
    failed += !ok;
    std::printf("%s %d %-24s %7.3f s  %s%s%s\n", ok ? "PASS" : "FAIL", index, c.suite, seconds, c.title, ok ? "" : ": ", why.c_str());
  }
  return failed == 0 ? 0 : 1;
}
