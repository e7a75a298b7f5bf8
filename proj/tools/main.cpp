#include <CLI11.hpp>

#include <chrono>
#include <functional>
#include <fstream>
#include <iostream>
#include <sstream>

#include "adsgeom/errors.hpp"
#include "adsgeom/suites.hpp"
#include "adsgeom/version.hpp"
#include "commands.hpp"

namespace {

using adsgeom::Json;
using namespace adsgeom::cli;

struct Invocation {
  std::string operation;
  std::string input;  // raw bytes that fed the digest
  std::function<Json(Context&, bool&)> run;
};

void write_text(const std::optional<std::string>& path, const std::string& text) {
  if (!path) {
    std::cout << text;
    return;
  }
  std::ofstream out(*path, std::ios::binary);
  if (!out) throw adsgeom::InputError("cannot write '" + *path + "'");
  out << text;
}

std::string format_seed_tol(const Options& o) {
  std::ostringstream os;
  os << o.seed << '|' << o.tolerance;
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geometry of singular anti-de Sitter spacetimes and HS surfaces", "adsgeom"};
  app.set_version_flag("--version", std::string(adsgeom::kVersion));
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  app.add_option("--out", opt.out, "Write the report to a file instead of stdout");
  app.add_option("--seed", opt.seed, "Seed for randomized checks")->capture_default_str();
  app.add_option("--tolerance", opt.tolerance, "Numerical tolerance")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--format", opt.format, "Report format")->check(CLI::IsMember({"json"}))->capture_default_str();
  app.add_option("--svg", opt.svg, "Also write an SVG picture (surface commands)");
  app.add_flag("--timing", opt.timing, "Include wall-clock timings in the report");

  Invocation inv;
  std::string matrix_text;
  std::string path;
  std::string action;
  std::string suite;
  std::vector<std::string> checks;

  auto* iso = app.add_subcommand("classify-isometry", "Classify an element of PSL(2,R) given as a,b,c,d");
  iso->add_option("matrix", matrix_text)->required();

  auto* link = app.add_subcommand("classify-link", "Classify a singular line from its link JSON");
  link->add_option("path", path)->required();

  auto* surf = app.add_subcommand("surface", "Build, classify or check an HS surface");
  surf->add_option("action", action)->required()->check(CLI::IsMember({"build", "classify", "check-ccc"}));
  surf->add_option("path", path)->required();

  auto* st = app.add_subcommand("spacetime", "Build a singular spacetime from a recipe and run checks");
  st->add_option("path", path)->required();
  st->add_option("--check", checks, "curvature, holonomy, time-function, duality, speed-bound, surgery-roundtrip")
      ->check(CLI::IsMember({"curvature", "holonomy", "time-function", "duality", "speed-bound", "surgery-roundtrip"}));

  auto* chk = app.add_subcommand("check", "Run a property suite");
  chk->add_option("suite", suite)->required();

  auto* poly = app.add_subcommand("polyhedron", "Induced structure on the boundary of an HS3 polyhedron");
  poly->add_option("path", path)->required();

  auto* plot = app.add_subcommand("plot", "Render a surface or first-return map as SVG");
  plot->add_option("path", path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  Json report{{"schema", adsgeom::kReportSchema}, {"tool", "adsgeom"}, {"version", adsgeom::kVersion}};
  Context ctx{opt, {}, {}};
  int code = 0;
  const auto start = std::chrono::steady_clock::now();
  try {
    if (*iso) {
      inv = {"classify-isometry", matrix_text, [&](Context& c, bool&) { return cmd_classify_isometry(matrix_text, c); }};
    } else if (*link) {
      const std::string text = read_file(path);
      inv = {"classify-link", text, [text](Context& c, bool&) { return cmd_classify_link(parse_json(text), c); }};
    } else if (*surf) {
      const std::string text = read_file(path);
      inv = {"surface " + action, text, [&, text](Context& c, bool&) { return cmd_surface(action, parse_json(text), c); }};
    } else if (*st) {
      const std::string text = read_file(path);
      std::string joined;
      for (const auto& c : checks) joined += c + ",";
      inv = {"spacetime", text + "\n" + joined,
             [&, text](Context& c, bool&) { return cmd_spacetime(parse_json(text), checks, c); }};
    } else if (*chk) {
      inv = {"check", suite, [&](Context& c, bool& passed) { return cmd_check(suite, c, passed); }};
    } else if (*poly) {
      const std::string text = read_file(path);
      inv = {"polyhedron", text, [text](Context& c, bool&) { return cmd_polyhedron(parse_json(text), c); }};
    } else if (*plot) {
      // Plot writes the picture itself, not a report.
      const std::string svg = cmd_plot(parse_json(read_file(path)));
      write_text(opt.out ? opt.out : opt.svg, svg);
      return 0;
    }
    report["operation"] = inv.operation;
    report["input_digest"] = "sha256:" + sha256_hex(inv.operation + '\0' + inv.input + '\0' + format_seed_tol(opt));
    report["seed"] = opt.seed;
    report["tolerance"] = opt.tolerance;
    bool passed = true;
    report["result"] = inv.run(ctx, passed);
    report["status"] = "ok";
    report["error"] = nullptr;
    if (!passed) {
      report["status"] = "check_failed";
      code = 2;
    }
    if (ctx.svg && opt.svg) write_text(opt.svg, *ctx.svg);
  } catch (const adsgeom::UndecidableError& e) {
    report["status"] = "undecidable";
    report["result"] = nullptr;
    report["error"] = e.what();
    code = 2;
  } catch (const adsgeom::PreconditionError& e) {
    report["status"] = "precondition_failed";
    report["result"] = nullptr;
    report["error"] = e.what();
    code = 2;
  } catch (const adsgeom::InputError& e) {
    report["status"] = "input_error";
    report["result"] = nullptr;
    report["error"] = e.what();
    code = 1;
  } catch (const std::exception& e) {
    report["status"] = "input_error";
    report["result"] = nullptr;
    report["error"] = e.what();
    code = 1;
  }
  if (!report.contains("operation")) report["operation"] = inv.operation.empty() ? app.get_subcommands().front()->get_name() : inv.operation;
  report["diagnostics"] = ctx.diagnostics;
  if (opt.timing) {
    report["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  try {
    write_text(opt.out, report.dump(2) + "\n");
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  if (code != 0) {
    std::cerr << "adsgeom: " << report["status"].get<std::string>();
    if (report["error"].is_string()) std::cerr << ": " << report["error"].get<std::string>();
    std::cerr << "\n";
  }
  return code;
}
