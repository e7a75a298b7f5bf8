#include "adsgeom/suites.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <random>

#include "adsgeom/errors.hpp"

namespace adsgeom {

namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

ProjMatrix random_sl2(Rng& rng) {
  for (;;) {
    const double a = uniform(rng, -2, 2);
    const double b = uniform(rng, -2, 2);
    const double c = uniform(rng, -2, 2);
    const double d = uniform(rng, -2, 2);
    const double det = a * d - b * c;
    if (std::abs(det) < 0.2) continue;
    const double s = 1.0 / std::sqrt(std::abs(det));
    // A negative determinant is fixed by swapping the columns.
    return det > 0 ? ProjMatrix(a * s, b * s, c * s, d * s) : ProjMatrix(b * s, a * s, d * s, c * s);
  }
}

ProjMatrix conjugate(const ProjMatrix& g, const ProjMatrix& a) { return a * g * a.inverse(); }

// Records one case; the callback returns an empty optional on success and a
// description of the failure otherwise.
void check(PropertyResult& p, const std::function<std::optional<Json>()>& body) {
  ++p.cases;
  std::optional<Json> failure;
  try {
    failure = body();
  } catch (const std::exception& e) {
    failure = Json{{"exception", e.what()}};
  }
  if (failure) {
    ++p.failures;
    if (!p.counterexample) p.counterexample = *failure;
  }
}

std::vector<PropertyResult> isometry_oracle(std::uint64_t seed) {
  Rng rng(seed);
  PropertyResult p{"trace_class_matches_fixed_points"};
  Json counts{{"elliptic", 0}, {"parabolic", 0}, {"hyperbolic", 0}};
  for (int i = 0; i < 10000; ++i) {
    const int family = static_cast<int>(rng() % 4);
    const ProjMatrix a = random_sl2(rng);
    ProjMatrix g = ProjMatrix::identity();
    if (family == 0) g = conjugate(rotation(uniform(rng, 0.05, kPi / 2 - 0.05)), a);
    else if (family == 1) g = conjugate(unipotent((rng() % 2 ? 1 : -1) * uniform(rng, 0.1, 5)), a);
    else if (family == 2) g = conjugate(diagonal_boost(uniform(rng, 0.05, 5)), a);
    else g = random_sl2(rng);
    check(p, [&]() -> std::optional<Json> {
      const IsomClass c = classify_isometry(g);
      const auto rays = fixed_points_hs2(g);
      bool hyp_plus = false;
      bool ds = false;
      for (const auto& r : rays) {
        hyp_plus |= r.region == HS2Region::HypPlus;
        ds |= r.region == HS2Region::DeSitter;
      }
      std::string pattern = hyp_plus ? "elliptic" : ds ? "hyperbolic" : "parabolic";
      std::string trace_kind = std::string(isom_kind(c));
      if (trace_kind.rfind("parabolic", 0) == 0) trace_kind = "parabolic";
      counts[trace_kind] = counts[trace_kind].get<int>() + 1;
      if (pattern == trace_kind) return std::nullopt;
      return Json{{"matrix", to_json(g)}, {"trace_class", trace_kind}, {"fixed_point_class", pattern}};
    });
  }
  p.details = {{"counts", counts}};
  return {p};
}

std::vector<PropertyResult> taxonomy_roundtrip(std::uint64_t seed) {
  Rng rng(seed);
  PropertyResult p{"construct_then_classify"};
  auto side = [&] { return rng() % 2 ? TimeSide::Future : TimeSide::Past; };
  auto sign = [&] { return rng() % 2 ? 1 : -1; };
  for (int variant = 0; variant < 8; ++variant) {
    for (int n = 0; n < 20; ++n) {
      ModelParams params{uniform(rng, 0.1, 6), uniform(rng, 0.1, 5)};
      SingularityType t = Misner{};
      switch (variant) {
        case 0: t = MassiveParticle{uniform(rng, 0.05, 4 * kPi), side()}; break;
        case 1: t = Photon{sign(), side()}; break;
        case 2: t = Tachyon{sign()}; break;
        case 3: t = BTZ{side()}; break;
        case 4: t = ExtremeBTZ{side()}; break;
        case 5: t = Cuspidal{side()}; break;
        case 6: t = Misner{}; break;
        default:
          t = HighDegree{4 + 2 * static_cast<int>(rng() % 3),
                         rng() % 2 ? NonTimelikeKind::Spacelike : NonTimelikeKind::Lightlike, sign()};
      }
      check(p, [&]() -> std::optional<Json> {
        const ModelSingularity m = construct_model_singularity(t, params);
        const SingularityType back = classify_singularity(m.link);
        bool ok = same_type(back, t, 1e-6);
        double recovered = 0;
        if (is_hyperbolic(m.link.holonomy.base())) {
          recovered = std::get<Hyperbolic>(classify_isometry(m.link.holonomy.base())).translation_length;
          ok = ok && std::abs(recovered - params.length) <= 1e-6;
        }
        if (ok) return std::nullopt;
        return Json{{"requested", to_json(t)}, {"classified", to_json(back)}, {"length", params.length}, {"recovered", recovered}};
      });
    }
  }
  return {p};
}

std::vector<PropertyResult> ccc_sweep(std::uint64_t) {
  const ProjMatrix base = diagonal_boost(2.0);
  const double site = std::exp(1.0);
  PropertyResult two{"two_closed_leaves"};
  check(two, [&]() -> std::optional<Json> {
    const CCCResult r = detect_ccc(FirstReturnSystem{base, {}, 0});
    two.details = to_json(r);
    if (r.has_ccc && r.closed_leaves.size() == 2) return std::nullopt;
    return to_json(r);
  });
  PropertyResult pos{"positive_surgery_keeps_ccc"};
  for (double t : {0.25, 1.0, 4.0}) {
    check(pos, [&]() -> std::optional<Json> {
      const CCCResult r = detect_ccc(FirstReturnSystem{base, {LeafSurgery::parabolic(site, t, +1)}, 0});
      if (r.has_ccc) return std::nullopt;
      return Json{{"t", t}, {"result", to_json(r)}};
    });
  }
  PropertyResult neg{"negative_threshold"};
  check(neg, [&]() -> std::optional<Json> {
    const double thr = negative_surgery_threshold(base, site);
    const bool below = detect_ccc(FirstReturnSystem{base, {LeafSurgery::parabolic(site, 0.99 * thr, -1)}, 0}).has_ccc;
    const bool above = detect_ccc(FirstReturnSystem{base, {LeafSurgery::parabolic(site, 1.01 * thr, -1)}, 0}).has_ccc;
    neg.details = {{"site", site}, {"threshold", thr}};
    if (std::isfinite(thr) && below && !above) return std::nullopt;
    return Json{{"threshold", thr}, {"ccc_below", below}, {"ccc_above", above}};
  });
  return {two, pos, neg};
}

std::vector<PropertyResult> warped_product_suite(std::uint64_t seed) {
  Rng rng(seed);
  const double angles[] = {kPi / 2, kPi, 3 * kPi / 2};
  PropertyResult curv{"sectional_curvature_minus_one"};
  double worst = 0;
  for (int i = 0; i < 100; ++i) {
    const double theta = angles[i % 3];
    const Eigen::Vector3d x(uniform(rng, -1.2, 1.2), uniform(rng, 0.2, 2.0), uniform(rng, 0, kTwoPi));
    check(curv, [&]() -> std::optional<Json> {
      Json bad = Json::array();
      for (auto [a, b] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
        const double k = sectional_curvature(theta, x, a, b);
        worst = std::max(worst, std::abs(k + 1));
        if (std::abs(k + 1) > 1e-4) bad.push_back({{"plane", {a, b}}, {"curvature", k}});
      }
      if (bad.empty()) return std::nullopt;
      return Json{{"cone_angle", theta}, {"point", {x[0], x[1], x[2]}}, {"planes", bad}};
    });
  }
  curv.details = {{"max_deviation", worst}};
  PropertyResult hol{"peripheral_holonomy_elliptic"};
  Json measured = Json::array();
  for (double theta : angles) {
    for (auto [t, r] : {std::pair{0.3, 0.5}, std::pair{-0.7, 1.1}}) {
      check(hol, [&, theta = theta, t = t, r = r]() -> std::optional<Json> {
        const double a = peripheral_holonomy_angle(theta, t, r);
        measured.push_back({{"cone_angle", theta}, {"t", t}, {"r", r}, {"rotation", a}});
        if (std::abs(a - theta) <= 1e-6) return std::nullopt;
        return Json{{"cone_angle", theta}, {"rotation", a}};
      });
    }
  }
  hol.details = {{"measured", measured}};
  return {curv, hol};
}

std::vector<PropertyResult> btz_duality(std::uint64_t seed) {
  Rng rng(seed);
  PropertyResult dual{"l1_orthogonal_to_l2"};
  PropertyResult fixed{"l1_fixed_pointwise"};
  PropertyResult trans{"l2_translated_by_length"};
  for (int i = 0; i < 100; ++i) {
    const double len = uniform(rng, 0.5, 3.0);
    const ProjMatrix g1 = conjugate(diagonal_boost(len), random_sl2(rng));
    const ProjMatrix g2 = conjugate(diagonal_boost(len), random_sl2(rng));
    std::optional<BTZQuotient> q;
    try {
      q = btz_quotient(g1, g2);
    } catch (const std::exception& e) {
      for (auto* p : {&dual, &fixed, &trans}) {
        check(*p, [&]() -> std::optional<Json> { return Json{{"exception", e.what()}}; });
      }
      continue;
    }
    const AdSIsometry g(g1, g2);
    std::vector<double> params;
    for (int k = 0; k < 10; ++k) params.push_back(uniform(rng, -1, 1));
    check(dual, [&]() -> std::optional<Json> {
      for (double s : params) {
        for (double u : params) {
          const double ip = inner(geodesic_point(q->l1, s), geodesic_point(q->l2, u));
          if (std::abs(ip) > 1e-9) return Json{{"pair", i}, {"inner", ip}};
        }
      }
      return std::nullopt;
    });
    check(fixed, [&]() -> std::optional<Json> {
      for (double s : params) {
        const FormVector x = geodesic_point(q->l1, s);
        const double err = (g.apply(x) - x).max_abs();
        if (err > 1e-9 * std::max(1.0, x.euclid_sq())) return Json{{"pair", i}, {"displacement", err}};
      }
      return std::nullopt;
    });
    check(trans, [&]() -> std::optional<Json> {
      for (double s : params) {
        const FormVector y = geodesic_point(q->l2, s);
        const double d = ads_distance(y, g.apply(y));
        if (std::abs(d - len) > 1e-9) return Json{{"pair", i}, {"distance", d}, {"length", len}};
      }
      return std::nullopt;
    });
  }
  PropertyResult mismatch{"mismatched_lengths_rejected"};
  check(mismatch, [&]() -> std::optional<Json> {
    try {
      btz_quotient(ProjMatrix(1.5 + std::sqrt(1.25), 0, 0, 1 / (1.5 + std::sqrt(1.25))),
                   ProjMatrix(2 + std::sqrt(3.0), 0, 0, 2 - std::sqrt(3.0)));
    } catch (const PreconditionError&) {
      return std::nullopt;
    }
    return Json{{"error", "traces 3 and 4 accepted"}};
  });
  return {dual, fixed, trans, mismatch};
}

HS2Triangle sheet_triangle(Rng& rng, double sheet) {
  std::array<FormVector, 3> v{FormVector::zero(Form::Q12), FormVector::zero(Form::Q12), FormVector::zero(Form::Q12)};
  for (int i = 0; i < 3; ++i) {
    const double r = uniform(rng, 0.2, 2.0);
    const double psi = kTwoPi * i / 3 + uniform(rng, -0.5, 0.5);
    v[static_cast<size_t>(i)] = FormVector(Form::Q12, {sheet * std::cosh(r), std::sinh(r) * std::cos(psi), std::sinh(r) * std::sin(psi)});
  }
  return HS2Triangle(v[0], v[1], v[2]);
}

std::vector<PropertyResult> interaction_classifier(std::uint64_t seed) {
  Rng rng(seed);
  auto family = [&](const char* name, InteractionClass expected, const std::function<HSSurface()>& make) {
    PropertyResult p{name};
    for (int i = 0; i < 10; ++i) {
      check(p, [&]() -> std::optional<Json> {
        const HSSurface s = make();
        const InteractionClass c = classify_interaction(s);
        if (c == expected) return std::nullopt;
        return Json{{"surface", surface_to_json(s)}, {"class", interaction_name(c)}};
      });
    }
    p.details = {{"expected", interaction_name(expected)}};
    return p;
  };
  return {
      family("one_up_two_down", InteractionClass::CausallyRegular,
             [&] { return double_triangle(collision_triangle(uniform(rng, 0.2, 2.8))); }),
      family("three_up", InteractionClass::BigBang, [&] { return double_triangle(sheet_triangle(rng, 1)); }),
      family("three_down", InteractionClass::BigCrunch, [&] { return double_triangle(sheet_triangle(rng, -1)); }),
      family("btz_pair_sphere", InteractionClass::BlackWhiteInteraction,
             [&] { return btz_pair_sphere(uniform(rng, 0.2, 5)); }),
  };
}

std::vector<PropertyResult> polyhedra_suite(std::uint64_t seed) {
  Rng rng(seed);
  PropertyResult faces{"faces_timelike"};
  PropertyResult cones{"cone_angles_below_two_pi"};
  PropertyResult pos{"positivity"};
  PropertyResult mass{"positive_mass"};
  long tachyons = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t s = rng();
    std::optional<InducedReport> rep;
    std::string error;
    try {
      rep = induced_structure(random_bihyperbolic(s));
    } catch (const std::exception& e) {
      error = e.what();
    }
    auto fail = [&](const char* what) { return Json{{"seed", s}, {"reason", error.empty() ? what : error}}; };
    check(faces, [&]() -> std::optional<Json> {
      if (rep && rep->is_hs_structure) return std::nullopt;
      return fail("non-timelike face");
    });
    check(cones, [&]() -> std::optional<Json> {
      if (!rep) return fail("no report");
      for (const auto& v : rep->vertex_links) {
        if (v.cone_angle && !(*v.cone_angle < kTwoPi)) return fail("cone angle at least 2 pi");
      }
      return std::nullopt;
    });
    check(pos, [&]() -> std::optional<Json> {
      if (rep && rep->positivity && *rep->positivity) return std::nullopt;
      return fail("positivity false or missing");
    });
    check(mass, [&]() -> std::optional<Json> {
      if (rep && rep->positive_mass && *rep->positive_mass) return std::nullopt;
      return fail("positive mass false or missing");
    });
    if (rep) {
      for (const auto& [v, t] : rep->particle_dictionary) tachyons += std::holds_alternative<Tachyon>(t);
    }
  }
  faces.details = {{"tachyon_vertices", tachyons}};
  return {faces, cones, pos, mass};
}

std::vector<PropertyResult> surgery_roundtrip(std::uint64_t seed) {
  Rng rng(seed);
  PropertyResult round{"excision_restores_base"};
  PropertyResult local{"graph_unchanged_off_site"};
  PropertyResult reject{"mismatched_angle_rejected"};
  for (int i = 0; i < 10; ++i) {
    const double apex = uniform(rng, 0.3, 1.4);
    const WarpedProductRecipe w{{2 * apex, uniform(rng, 0.5, 3.0)}, 1, -1.4, 1.4};
    const Spacetime base = warped_product(w);
    const HSSurface patch = double_triangle(collision_triangle(apex));
    SurgerySite site;
    site.line_id = "line:0";
    site.time = uniform(rng, -1, 1);
    std::optional<Spacetime> cut;
    check(round, [&]() -> std::optional<Json> {
      cut = surgery_collision(base, site, patch);
      if (same_graph(excise(*cut).graph, base.graph)) return std::nullopt;
      return Json{{"apex", apex}, {"graph", graph_to_json(excise(*cut).graph)}};
    });
    check(local, [&]() -> std::optional<Json> {
      if (!cut) return Json{{"apex", apex}, {"reason", "surgery failed"}};
      const SingularLine* other = cut->graph.find_line("line:1");
      if (other && *other == base.graph.lines[1] && cut->graph.interactions.size() == 1) return std::nullopt;
      return Json{{"apex", apex}, {"graph", graph_to_json(cut->graph)}};
    });
    check(reject, [&]() -> std::optional<Json> {
      const WarpedProductRecipe off{{2 * apex + 0.05}, 1, -1.4, 1.4};
      try {
        surgery_collision(warped_product(off), site, patch);
      } catch (const PreconditionError&) {
        return std::nullopt;
      }
      return Json{{"apex", apex}, {"reason", "mismatched angle accepted"}};
    });
  }
  return {round, local, reject};
}

std::vector<PropertyResult> causal_speed(std::uint64_t seed) {
  PropertyResult null{"null_curve_saturates_bound"};
  Json found = Json::array();
  for (double m : {0.25, 0.5, 0.75}) {
    check(null, [&]() -> std::optional<Json> {
      const SpeedBoundResult r = singular_chart_speed_bound(m, null_curve(m, 0.1, 0.2, 20000));
      const double gap = std::max(std::abs(r.max_excess), std::abs(r.min_excess));
      found.push_back({{"mass", m}, {"max_gap", gap}, {"marginal", r.marginal}});
      if (r.within && r.marginal && gap <= 1e-6) return std::nullopt;
      return Json{{"mass", m}, {"max_gap", gap}, {"within", r.within}, {"marginal", r.marginal}};
    });
  }
  null.details = {{"curves", found}};
  PropertyResult violation{"fast_curve_rejected"};
  for (double m : {0.25, 0.5, 0.75}) {
    check(violation, [&]() -> std::optional<Json> {
      std::vector<CurveSample> c;
      double rho = 0.1;
      const double h = 1e-4;
      for (int n = 0; n <= 1000; ++n) {
        c.push_back({n * h, rho});
        rho += h * 1.1 * std::pow(rho, m) / (1 - m);
      }
      if (!singular_chart_speed_bound(m, c).within) return std::nullopt;
      return Json{{"mass", m}, {"reason", "10% faster curve accepted"}};
    });
  }
  PropertyResult tf{"time_function_increasing"};
  const WarpedProductRecipe w{{kPi}, 1, -1.4, 1.4};
  Rng rng(seed);
  std::vector<WarpedCurve> curves;
  for (int i = 0; i < 1000; ++i) curves.push_back(random_causal_curve(w, rng()));
  check(tf, [&]() -> std::optional<Json> {
    if (time_function_check(w, curves)) return std::nullopt;
    return Json{{"reason", "t not increasing"}};
  });
  tf.details = {{"curves", curves.size()}};
  PropertyResult slice{"spacelike_slice_rejected"};
  check(slice, [&]() -> std::optional<Json> {
    WarpedCurve c;
    for (int k = 0; k <= 20; ++k) c.emplace_back(0.2, 0.5 + 0.05 * k, 1.0);
    try {
      time_function_check(w, {c});
    } catch (const InputError&) {
      return std::nullopt;
    }
    return Json{{"reason", "spacelike slice accepted"}};
  });
  return {null, violation, tf, slice};
}

using SuiteFn = std::vector<PropertyResult> (*)(std::uint64_t);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r{
      {"isometry-oracle", isometry_oracle},       {"taxonomy-roundtrip", taxonomy_roundtrip},
      {"ccc-sweep", ccc_sweep},                   {"warped-product", warped_product_suite},
      {"btz-duality", btz_duality},               {"interaction-classifier", interaction_classifier},
      {"polyhedra-bihyperbolic", polyhedra_suite}, {"surgery-roundtrip", surgery_roundtrip},
      {"causal-speed", causal_speed},
  };
  return r;
}

}  // namespace

bool SuiteReport::pass() const {
  return !properties.empty() && std::all_of(properties.begin(), properties.end(), [](const auto& p) { return p.pass(); });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, fn] : registry()) n.push_back(name);
    return n;
  }();
  return names;
}

SuiteReport run_suite(std::string_view name, std::uint64_t seed) {
  for (const auto& [n, fn] : registry()) {
    if (n != name) continue;
    const auto start = std::chrono::steady_clock::now();
    SuiteReport r{n, seed, fn(seed), 0.0};
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
  }
  throw InputError("unknown suite '" + std::string(name) + "'");
}

Json to_json(const SuiteReport& r, bool with_timing) {
  Json props = Json::array();
  for (const auto& p : r.properties) {
    Json pj{{"name", p.name}, {"cases", p.cases}, {"failures", p.failures}, {"pass", p.pass()}, {"details", p.details}};
    if (p.counterexample) pj["counterexample"] = *p.counterexample;
    props.push_back(pj);
  }
  Json j{{"suite", r.suite}, {"seed", r.seed}, {"pass", r.pass()}, {"properties", props}};
  if (with_timing) j["seconds"] = r.seconds;
  return j;
}

}  // namespace adsgeom
