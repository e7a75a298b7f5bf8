#include "commands.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "adsgeom/errors.hpp"
#include "adsgeom/suites.hpp"
#include "adsgeom/svg.hpp"

namespace adsgeom::cli {

namespace {

std::string fixed(double x) {
  std::ostringstream os;
  os.precision(6);
  os << std::scientific << x;
  return os.str();
}

bool is_first_return(const Json& j) { return j.is_object() && j.value("kind", "") == "first_return"; }

Json fixed_points_json(const ProjMatrix& g) {
  Json rays = Json::array();
  for (const auto& r : fixed_points_hs2(g)) rays.push_back({{"region", region_name(r.region)}, {"ray", to_json(r.ray)}});
  return rays;
}

const WarpedProductRecipe& warped_of(const Spacetime& st, const std::string& check) {
  const auto* w = std::get_if<WarpedProductRecipe>(&st.recipe->payload);
  if (!w) throw PreconditionError("check '" + check + "' needs a warped product recipe");
  return *w;
}

Json curvature_check(const WarpedProductRecipe& w, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0;
  for (int i = 0; i < 100; ++i) {
    const double theta = w.cone_angles[static_cast<size_t>(i) % w.cone_angles.size()];
    const Eigen::Vector3d x(w.t_min + (w.t_max - w.t_min) * (0.05 + 0.9 * u(rng)), 0.2 + 1.8 * u(rng), kTwoPi * u(rng));
    for (auto [a, b] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
      worst = std::max(worst, std::abs(sectional_curvature(theta, x, a, b) + 1));
    }
  }
  return {{"points", 100}, {"max_deviation", worst}, {"pass", worst <= 1e-4}};
}

Json holonomy_check(const WarpedProductRecipe& w) {
  Json out = Json::array();
  const double t = 0.5 * (w.t_min + w.t_max);
  for (double theta : w.cone_angles) {
    const double a = peripheral_holonomy_angle(theta, t, 0.5);
    const double expected = std::fmod(theta, kTwoPi);
    out.push_back({{"cone_angle", theta}, {"rotation", a}, {"pass", std::abs(a - expected) <= 1e-6}});
  }
  return out;
}

Json duality_check(const BTZQuotientRecipe& q, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const AdSIsometry g(q.gamma1, q.gamma2);
  const double len = std::get<Hyperbolic>(classify_isometry(q.gamma1)).translation_length;
  double worst_inner = 0;
  double worst_fixed = 0;
  double worst_trans = 0;
  for (int i = 0; i < 100; ++i) {
    const FormVector x = geodesic_point(q.l1, u(rng));
    const FormVector y = geodesic_point(q.l2, u(rng));
    worst_inner = std::max(worst_inner, std::abs(inner(x, y)));
    worst_fixed = std::max(worst_fixed, (g.apply(x) - x).max_abs());
    worst_trans = std::max(worst_trans, std::abs(ads_distance(y, g.apply(y)) - len));
  }
  return {{"samples", 100},
          {"max_abs_inner", worst_inner},
          {"max_fixed_displacement", worst_fixed},
          {"max_translation_error", worst_trans},
          {"translation_length", len},
          {"pass", worst_inner <= 1e-9 && worst_fixed <= 1e-9 && worst_trans <= 1e-9}};
}

Json speed_bound_check(const Spacetime& st, double tol) {
  Json out = Json::array();
  for (const auto& l : st.graph.lines) {
    const auto m = particle_mass(l.type);
    if (!m || !(*m > 0 && *m < 1)) continue;
    const SpeedBoundResult r = singular_chart_speed_bound(*m, null_curve(*m, 0.1, 0.2, 20000), tol);
    out.push_back({{"line", l.id},
                   {"mass", *m},
                   {"within", r.within},
                   {"marginal", r.marginal},
                   {"max_gap", std::max(std::abs(r.max_excess), std::abs(r.min_excess))}});
  }
  if (out.empty()) throw PreconditionError("check 'speed-bound' needs a massive particle line with mass in (0, 1)");
  return out;
}

Json time_function_json(const WarpedProductRecipe& w, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<WarpedCurve> curves;
  for (int i = 0; i < 1000; ++i) curves.push_back(random_causal_curve(w, rng()));
  return {{"curves", 1000}, {"increasing", time_function_check(w, curves)}};
}

}  // namespace

std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

ProjMatrix matrix_from_text(const std::string& text, Context& ctx) {
  const ProjMatrix probe = [&] {
    // Parse without the determinant check by scaling the entries first.
    std::array<double, 4> v{};
    std::istringstream in(text);
    std::string field;
    int n = 0;
    while (std::getline(in, field, ',')) {
      if (n == 4) throw InputError("expected 4 comma-separated entries");
      size_t used = 0;
      try {
        v[static_cast<size_t>(n)] = std::stod(field, &used);
      } catch (const std::exception&) {
        throw InputError("cannot parse matrix entry '" + field + "'");
      }
      if (field.find_first_not_of(" \t", used) != std::string::npos) throw InputError("cannot parse matrix entry '" + field + "'");
      ++n;
    }
    if (n != 4) throw InputError("expected 4 comma-separated entries");
    const double det = v[0] * v[3] - v[1] * v[2];
    if (!std::isfinite(det) || std::abs(det - 1) > std::max(1e-9, ctx.options.tolerance)) {
      throw InputError("determinant " + fixed(det) + " is not 1 within tolerance");
    }
    if (std::abs(det - 1) > 1e-9) {
      ctx.diagnostics.push_back("determinant " + fixed(det) + " differs from 1 by more than 1e-9; entries rescaled");
    }
    const double s = 1 / std::sqrt(det);
    return ProjMatrix(v[0] * s, v[1] * s, v[2] * s, v[3] * s);
  }();
  return probe;
}

Json cmd_classify_isometry(const std::string& text, Context& ctx) {
  const ProjMatrix g = matrix_from_text(text, ctx);
  const IsomClass c = classify_isometry(g);
  Json r{{"matrix", to_json(g)}, {"trace", g.trace()}, {"class", to_json(c)}};
  if (in_parabolic_band(g) && std::abs(std::abs(g.trace()) - 2) > 0) {
    ctx.diagnostics.push_back("trace " + fixed(g.trace()) + " lies in the parabolic tolerance band");
  }
  if (g.is_identity()) {
    r["fixed_points_hs2"] = nullptr;
    return r;
  }
  r["fixed_points_hs2"] = fixed_points_json(g);
  Json rp1 = Json::array();
  for (const auto& p : fixed_points_rp1(g).points) rp1.push_back(p.angle());
  r["fixed_points_rp1"] = rp1;
  r["translation_number"] = translation_number(lift_canonical(g));
  return r;
}

Json cmd_classify_link(const Json& input, Context& ctx) {
  const LinkCircle l = link_from_json(input);
  const SingularityType t = classify_singularity(l);
  const CausalVerdict v = is_causal_line(t);
  Json r{{"link", to_json(l)},
         {"type", to_json(t)},
         {"description", describe(t)},
         {"positive", is_positive(t)},
         {"causality", to_json(v)},
         {"antipodal_type", to_json(antipodal_type(t))}};
  const auto [fut, past] = local_future_components(t);
  r["local_future_components"] = fut;
  r["local_past_components"] = past;
  const auto m = particle_mass(t);
  r["mass"] = m ? Json(*m) : Json(nullptr);
  if (!is_elliptic(l.holonomy.base()) && l.holonomy.base().is_identity() == false && in_parabolic_band(l.holonomy.base()) &&
      std::abs(std::abs(l.holonomy.base().trace()) - 2) > 0) {
    ctx.diagnostics.push_back("holonomy trace lies in the parabolic tolerance band");
  }
  return r;
}

Json cmd_surface(const std::string& action, const Json& input, Context& ctx) {
  if (action != "build" && action != "classify" && action != "check-ccc") {
    throw InputError("surface action must be build, classify or check-ccc");
  }
  if (is_first_return(input)) {
    if (action != "check-ccc") throw InputError("first-return input only supports check-ccc");
    const FirstReturnSystem sys = first_return_from_json(input);
    if (ctx.options.svg) ctx.svg = cobweb_svg(sys);
    return {{"system", to_json(sys)}, {"ccc", to_json(detect_ccc(sys))}};
  }
  const HSSurface s = surface_from_json(input);
  if (ctx.options.svg) ctx.svg = surface_svg(s);
  Json r{{"census", to_json(region_decomposition(s))},
         {"euler_characteristic", s.euler_characteristic()},
         {"connected", s.is_connected()},
         {"sphere", s.is_sphere()}};
  if (action == "build") {
    r["surface"] = surface_to_json(s);
    r["de_sitter_topology_ok"] = de_sitter_topology_check(s);
    r["hyperbolic_degree_zero_ok"] = hyperbolic_degree_zero_check(s);
    return r;
  }
  if (action == "check-ccc") {
    Json regions = Json::array();
    for (size_t i = 0; i < s.regions().size(); ++i) {
      if (s.regions()[i].kind != RegionKind::DeSitter) continue;
      regions.push_back({{"region", i}, {"label", s.regions()[i].label}, {"has_ccc", region_has_ccc(s, static_cast<int>(i))}});
    }
    r["de_sitter_regions"] = regions;
    return r;
  }
  const CausalVerdict v = surface_causal(s);
  r["causality"] = to_json(v);
  Json types = Json::array();
  for (size_t i = 0; i < s.singularities().size(); ++i) {
    types.push_back({{"label", s.singularities()[i].label}, {"type", to_json(s.singularity_types()[i])}});
  }
  r["singularities"] = types;
  r["interaction"] = interaction_name(classify_interaction(s));
  return r;
}

Json cmd_spacetime(const Json& input, const std::vector<std::string>& checks, Context& ctx) {
  const Spacetime st = spacetime_from_json(input);
  Json r{{"kind", recipe_kind(*st.recipe)}, {"recipe", recipe_to_json(*st.recipe)}, {"singular_graph", graph_to_json(st.graph)}};
  if (const auto* s = std::get_if<SurgeryRecipe>(&st.recipe->payload); s && s->site.spacelike_slice_asserted) {
    ctx.diagnostics.push_back("surgery relies on the caller's assertion of a spacelike slice through the site");
  }
  Json results = Json::object();
  for (const auto& c : checks) {
    if (c == "curvature") {
      results[c] = curvature_check(warped_of(st, c), ctx.options.seed);
    } else if (c == "holonomy") {
      results[c] = holonomy_check(warped_of(st, c));
    } else if (c == "time-function") {
      results[c] = time_function_json(warped_of(st, c), ctx.options.seed);
    } else if (c == "duality") {
      const auto* q = std::get_if<BTZQuotientRecipe>(&st.recipe->payload);
      if (!q) throw PreconditionError("check 'duality' needs a BTZ quotient recipe");
      results[c] = duality_check(*q, ctx.options.seed);
    } else if (c == "speed-bound") {
      results[c] = speed_bound_check(st, ctx.options.tolerance);
    } else if (c == "surgery-roundtrip") {
      if (!std::holds_alternative<SurgeryRecipe>(st.recipe->payload) || input.value("kind", "") != "surgery") {
        throw PreconditionError("check 'surgery-roundtrip' needs a collision surgery recipe");
      }
      const Spacetime base = spacetime_from_json(input.at("base"));
      results[c] = {{"restored", same_graph(excise(st).graph, base.graph)}};
    } else {
      throw InputError("unknown check '" + c + "'");
    }
  }
  r["checks"] = results;
  return r;
}

Json cmd_polyhedron(const Json& input, Context& ctx) {
  const HS3Polyhedron p = polyhedron_from_json(input);
  Json faces = Json::array();
  for (size_t f = 0; f < p.faces().size(); ++f) {
    faces.push_back({{"face", p.faces()[f]}, {"causal", causal_name(face_causal_type(p, static_cast<int>(f)))}});
  }
  Json verts = Json::array();
  for (const auto& v : p.vertices()) verts.push_back(to_json(v));
  const InducedReport rep = induced_structure(p);
  for (const auto& d : rep.diagnostics) ctx.diagnostics.push_back(d);
  const PolyhedronType type = classify_polyhedron(p);
  // Only the bi-hyperbolic case has a known causality verdict; the others are
  // reported from face types alone.
  Json causal = nullptr;
  if (rep.is_hs_structure && type == PolyhedronType::BiHyperbolic) {
    causal = true;
  } else if (rep.is_hs_structure) {
    causal = "undecidable";
    ctx.diagnostics.push_back("causality of the induced structure is undecidable for " +
                              std::string(polyhedron_type_name(type)) + " polyhedra");
  }
  return {{"type", polyhedron_type_name(type)},
          {"vertices", verts},
          {"faces", faces},
          {"causal", causal},
          {"induced", to_json(rep)}};
}

Json cmd_check(const std::string& suite, Context& ctx, bool& passed) {
  const SuiteReport r = run_suite(suite, ctx.options.seed);
  passed = r.pass();
  return to_json(r, ctx.options.timing);
}

std::string cmd_plot(const Json& input) {
  if (is_first_return(input)) return cobweb_svg(first_return_from_json(input));
  return surface_svg(surface_from_json(input));
}

}  // namespace adsgeom::cli
