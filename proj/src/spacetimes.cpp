#include "adsgeom/spacetimes.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "adsgeom/errors.hpp"

namespace adsgeom {

namespace {

constexpr const char* kPastEnd = "past_end";
constexpr const char* kFutureEnd = "future_end";

RecipePtr make_recipe(auto payload) {
  return std::make_shared<const SpacetimeRecipe>(SpacetimeRecipe{std::move(payload)});
}

// Whether a singular point of an interaction link belongs to a line that
// reaches the interaction from its past.
bool incoming(const SurfaceSingularity& s, const SingularityType& t) {
  if (s.link.base_class == HS2Region::HypMinus || s.link.base_class == HS2Region::BoundaryMinus) return true;
  if (const auto* b = std::get_if<BTZ>(&t)) return b->side == TimeSide::Past;
  if (const auto* e = std::get_if<ExtremeBTZ>(&t)) return e->side == TimeSide::Past;
  if (const auto* c = std::get_if<Cuspidal>(&t)) return c->side == TimeSide::Past;
  return false;
}

double translation_length_of(const ProjMatrix& g) {
  const IsomClass c = classify_isometry(g);
  const auto* h = std::get_if<Hyperbolic>(&c);
  if (!h) throw PreconditionError("expected a hyperbolic element");
  return h->translation_length;
}

std::string format_time(double t) {
  std::ostringstream os;
  os.precision(12);
  os << t;
  return os.str();
}

}  // namespace

bool SingularLine::operator==(const SingularLine& o) const {
  return id == o.id && type == o.type && locus == o.locus && start == o.start && end == o.end;
}

const SingularLine* SingularGraph::find_line(const std::string& id) const {
  const auto it = std::find_if(lines.begin(), lines.end(), [&](const SingularLine& l) { return l.id == id; });
  return it == lines.end() ? nullptr : &*it;
}

bool same_graph(const SingularGraph& a, const SingularGraph& b) {
  if (a.lines != b.lines || a.interactions.size() != b.interactions.size()) return false;
  for (size_t i = 0; i < a.interactions.size(); ++i) {
    if (a.interactions[i].id != b.interactions[i].id || a.interactions[i].point != b.interactions[i].point) return false;
  }
  return true;
}

std::string_view recipe_kind(const SpacetimeRecipe& r) {
  static constexpr std::string_view names[] = {"suspension", "warped_product", "model_wedge", "btz_quotient", "surgery"};
  return names[r.payload.index()];
}

Spacetime suspend(const HSSurface& s) {
  if (!s.is_sphere()) throw PreconditionError("only spheres can be suspended");
  Spacetime out{make_recipe(SuspensionRecipe{s}), {}};
  const auto& sing = s.singularities();
  const auto& types = s.singularity_types();
  if (s.suspended_link()) {
    for (size_t i = 0; i < sing.size(); ++i) {
      out.graph.lines.push_back({"line:" + std::to_string(i), types[i], "ray:" + sing[i].label, "vertex", "boundary"});
    }
    return out;
  }
  if (sing.empty()) return out;
  const std::string vertex = "interaction:0";
  for (size_t i = 0; i < sing.size(); ++i) {
    const bool in = incoming(sing[i], types[i]);
    out.graph.lines.push_back({"line:" + std::to_string(i), types[i], "ray:" + sing[i].label, in ? kPastEnd : vertex,
                               in ? vertex : kFutureEnd});
  }
  out.graph.interactions.push_back({vertex, "vertex", s});
  return out;
}

ModelSingularity construct_model_singularity(const SingularityType& t, const ModelParams& params) {
  if (const auto* m = std::get_if<MassiveParticle>(&t); m && !(m->angle > 0 && std::isfinite(m->angle))) {
    throw InputError("cone angle must be positive");
  }
  if (!std::isfinite(params.length) || !std::isfinite(params.shear)) throw InputError("holonomy parameters must be finite");
  LinkCircle link = model_link(t, params);
  Spacetime st{make_recipe(ModelWedgeRecipe{t, params}), {}};
  st.graph.lines.push_back({"line:0", t, "model_axis", kPastEnd, kFutureEnd});
  return {std::move(st), std::move(link)};
}

Spacetime warped_product(const WarpedProductRecipe& r) {
  if (r.cone_angles.empty()) throw InputError("warped product needs at least one cone point");
  if (r.genus < 0) throw InputError("genus must be nonnegative");
  if (!(r.t_min < r.t_max) || r.t_min <= -kPi / 2 || r.t_max >= kPi / 2) {
    throw InputError("time range must be an interval inside (-pi/2, pi/2)");
  }
  double chi = 2.0 - 2.0 * r.genus;
  for (double a : r.cone_angles) {
    if (!(a > 0 && std::isfinite(a))) throw InputError("cone angles must be positive");
    chi += a / kTwoPi - 1.0;
  }
  if (chi >= 0) throw PreconditionError("cone data admits no hyperbolic cone metric (Euler characteristic is not negative)");
  Spacetime st{make_recipe(r), {}};
  for (size_t i = 0; i < r.cone_angles.size(); ++i) {
    st.graph.lines.push_back({"line:" + std::to_string(i), MassiveParticle{r.cone_angles[i], TimeSide::Future},
                              "cone_point:" + std::to_string(i), kPastEnd, kFutureEnd});
  }
  return st;
}

FormVector geodesic_point(const GeodesicSpan& line, double s) {
  const double pq = inner(line.first(), line.second());
  if (std::abs(pq) < 1e-12) throw PreconditionError("geodesic endpoints are orthogonal");
  const double a = std::exp(s);
  return line.first() * a + line.second() * (-1.0 / (2 * pq * a));
}

double ads_distance(const FormVector& x, const FormVector& y) { return std::acosh(std::max(1.0, -inner(x, y))); }

BTZQuotient btz_quotient(const ProjMatrix& gamma1, const ProjMatrix& gamma2) {
  if (!is_hyperbolic(gamma1) || !is_hyperbolic(gamma2)) throw PreconditionError("BTZ quotient needs hyperbolic elements");
  const double l1 = translation_length_of(gamma1);
  const double l2 = translation_length_of(gamma2);
  if (std::abs(l1 - l2) > 1e-9) throw PreconditionError("translation lengths differ");
  const RP1Point a1 = attracting_point(gamma1);
  const RP1Point r1 = repelling_point(gamma1);
  const RP1Point a2 = attracting_point(gamma2);
  const RP1Point r2 = repelling_point(gamma2);
  GeodesicSpan fixed(ads_boundary_point(a1, r2), ads_boundary_point(r1, a2));
  GeodesicSpan translated(ads_boundary_point(a1, a2), ads_boundary_point(r1, r2));
  Spacetime st{make_recipe(BTZQuotientRecipe{gamma1, gamma2, fixed, translated}), {}};
  st.graph.lines.push_back({"btz:l1", BTZ{TimeSide::Future}, "l1", kPastEnd, kFutureEnd});
  st.graph.lines.push_back({"btz:l2", BTZ{TimeSide::Past}, "l2", kPastEnd, kFutureEnd});
  return {std::move(st), fixed, translated};
}

Spacetime surgery_collision(const Spacetime& base, const SurgerySite& site, const HSSurface& patch) {
  if (!(site.radius > 0) || !(site.collar > 0) || site.collar >= site.radius) {
    throw InputError("surgery site needs 0 < collar < radius");
  }
  const SingularLine* line = base.graph.find_line(site.line_id);
  if (!line) throw InputError("no singular line '" + site.line_id + "' in the base");
  const auto* massive = std::get_if<MassiveParticle>(&line->type);
  if (!massive) throw PreconditionError("surgery site must lie on a massive particle line");
  const bool warped = std::holds_alternative<WarpedProductRecipe>(base.recipe->payload);
  if (const auto* w = std::get_if<WarpedProductRecipe>(&base.recipe->payload)) {
    if (!(site.time > w->t_min && site.time < w->t_max)) throw InputError("surgery time outside the warped product");
  }
  if (!warped && !site.spacelike_slice_asserted) {
    throw PreconditionError("surgery on this base needs an asserted spacelike slice through the site");
  }

  if (classify_interaction(patch) != InteractionClass::CausallyRegular) {
    throw PreconditionError("patch is not causally regular");
  }
  for (const auto& t : patch.singularity_types()) {
    if (!std::holds_alternative<MassiveParticle>(t)) throw PreconditionError("patch has a non-elliptic singularity");
  }
  const Census census = region_decomposition(patch);
  const int future_region = census.future_regions.front();
  int circle = -1;
  for (size_t c = 0; c < patch.photon_circles().size(); ++c) {
    if (patch.photon_circles()[c].hyperbolic_region == future_region) circle = static_cast<int>(c);
  }
  if (circle < 0) throw PreconditionError("patch has no future photon circle");
  const RP1Invariants inv = classify_rp1_circle(photon_circle_structures(patch, circle).first);
  const auto* ell = std::get_if<EllipticCircle>(&inv);
  if (!ell) throw PreconditionError("patch future photon circle structure is not elliptic");
  if (std::abs(ell->angle - massive->angle) > 1e-9 * std::max(1.0, massive->angle)) {
    throw PreconditionError("angle mismatch: patch carries " + format_time(ell->angle) + ", line carries " +
                            format_time(massive->angle));
  }
  if (patch.singularities_in_region(future_region).size() != 1) {
    throw PreconditionError("patch must have a single outgoing particle");
  }

  SurgerySite recorded = site;
  recorded.original_start = line->start;
  const std::string vertex = "interaction:" + std::to_string(base.graph.interactions.size());
  Spacetime out{make_recipe(SurgeryRecipe{base.recipe, recorded, patch, vertex}), base.graph};
  for (auto& l : out.graph.lines) {
    if (l.id == site.line_id) l.start = vertex;
  }
  const auto& sing = patch.singularities();
  int k = 0;
  for (size_t i = 0; i < sing.size(); ++i) {
    if (sing[i].region == future_region) continue;
    out.graph.lines.push_back({site.line_id + "/in" + std::to_string(k++), patch.singularity_types()[i],
                               "patch:" + sing[i].label, recorded.original_start, vertex});
  }
  out.graph.interactions.push_back({vertex, site.line_id + "@t=" + format_time(site.time), patch});
  return out;
}

Spacetime excise(const Spacetime& surgered) {
  const auto* s = std::get_if<SurgeryRecipe>(&surgered.recipe->payload);
  if (!s) throw PreconditionError("spacetime was not produced by a surgery");
  if (!std::get_if<WarpedProductRecipe>(&s->base->payload) && !s->site.spacelike_slice_asserted) {
    throw PreconditionError("excision needs the recorded spacelike slice");
  }
  Spacetime out{s->base, {}};
  for (const auto& l : surgered.graph.lines) {
    if (l.id == s->site.line_id) {
      SingularLine restored = l;
      restored.start = s->site.original_start;
      out.graph.lines.push_back(restored);
    } else if (l.end != s->interaction) {
      out.graph.lines.push_back(l);
    }
  }
  for (const auto& ip : surgered.graph.interactions) {
    if (ip.id != s->interaction) out.graph.interactions.push_back(ip);
  }
  return out;
}

Spacetime btz_surgery(const Spacetime& base, const HSSurface& patch) {
  const auto* q = std::get_if<BTZQuotientRecipe>(&base.recipe->payload);
  if (!q) throw PreconditionError("BTZ surgery needs a BTZ quotient base");
  if (!patch.is_sphere()) throw PreconditionError("patch must be a sphere");
  const auto& types = patch.singularity_types();
  int btz = -1;
  std::vector<int> massive;
  for (size_t i = 0; i < types.size(); ++i) {
    if (const auto* b = std::get_if<BTZ>(&types[i]); b && b->side == TimeSide::Future && btz < 0) {
      btz = static_cast<int>(i);
    } else if (const auto* m = std::get_if<MassiveParticle>(&types[i]); m && m->side == TimeSide::Past) {
      massive.push_back(static_cast<int>(i));
    } else {
      throw PreconditionError("wrong patch combinatorics: expected one future BTZ point and two past particles");
    }
  }
  if (btz < 0 || massive.size() != 2) {
    throw PreconditionError("wrong patch combinatorics: expected one future BTZ point and two past particles");
  }
  const double base_mass = translation_length_of(q->gamma1);
  const double patch_mass = translation_length_of(patch.singularities()[static_cast<size_t>(btz)].link.holonomy.base());
  if (std::abs(base_mass - patch_mass) > 1e-9) {
    throw PreconditionError("mass mismatch: patch BTZ mass " + format_time(patch_mass) + ", base mass " +
                            format_time(base_mass));
  }
  if (classify_interaction(patch) != InteractionClass::BlackHoleInteraction) {
    throw PreconditionError("patch is not a black hole interaction");
  }
  const std::string vertex = "interaction:0";
  SurgerySite site;
  site.line_id = "btz:l1";
  site.original_start = kPastEnd;
  site.spacelike_slice_asserted = true;
  Spacetime out{make_recipe(SurgeryRecipe{base.recipe, site, patch, vertex}), {}};
  out.graph.lines.push_back({"btz:l1", types[static_cast<size_t>(btz)], "l1", vertex, kFutureEnd});
  for (size_t k = 0; k < massive.size(); ++k) {
    const auto& s = patch.singularities()[static_cast<size_t>(massive[k])];
    out.graph.lines.push_back({"particle:" + std::to_string(k), types[static_cast<size_t>(massive[k])], "patch:" + s.label,
                               kPastEnd, vertex});
  }
  out.graph.interactions.push_back({vertex, "l1", patch});
  return out;
}

}  // namespace adsgeom
