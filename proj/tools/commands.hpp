#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "adsgeom/serialize.hpp"

namespace adsgeom::cli {

struct Options {
  std::optional<std::string> out;
  std::optional<std::string> svg;
  std::uint64_t seed = 42;
  double tolerance = 1e-6;
  std::string format = "json";
  bool timing = false;
};

struct Context {
  const Options& options;
  std::vector<std::string> diagnostics;
  std::optional<std::string> svg;
};

std::string sha256_hex(std::string_view data);
std::string read_file(const std::string& path);
// InputError on malformed JSON.
Json parse_json(const std::string& text);

// Accepts det within the tolerance and rescales to det 1, noting it.
ProjMatrix matrix_from_text(const std::string& text, Context& ctx);

Json cmd_classify_isometry(const std::string& text, Context& ctx);
Json cmd_classify_link(const Json& input, Context& ctx);
Json cmd_surface(const std::string& action, const Json& input, Context& ctx);
Json cmd_spacetime(const Json& input, const std::vector<std::string>& checks, Context& ctx);
Json cmd_polyhedron(const Json& input, Context& ctx);
// Returns the suite report; sets `passed`.
Json cmd_check(const std::string& suite, Context& ctx, bool& passed);
std::string cmd_plot(const Json& input);

}  // namespace adsgeom::cli
