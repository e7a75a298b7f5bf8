#include "adsgeom/hs_surfaces.hpp"

#include <algorithm>
#include <numeric>

#include "adsgeom/errors.hpp"

namespace adsgeom {

namespace {

bool hyperbolic_kind(RegionKind k) { return k != RegionKind::DeSitter; }

bool elliptic_holonomy(const LiftedIsometry& h) {
  return is_elliptic(h.base()) || (h.base().is_identity() && h.degree() >= 1);
}

}  // namespace

std::string_view region_kind_name(RegionKind k) {
  switch (k) {
    case RegionKind::FutureHyperbolic: return "future_hyperbolic";
    case RegionKind::PastHyperbolic: return "past_hyperbolic";
    case RegionKind::DeSitter: return "de_sitter";
  }
  return "?";
}

RegionKind region_kind_from_name(std::string_view s) {
  for (auto k : {RegionKind::FutureHyperbolic, RegionKind::PastHyperbolic, RegionKind::DeSitter}) {
    if (region_kind_name(k) == s) return k;
  }
  throw InputError("unknown region kind '" + std::string(s) + "'");
}

std::string_view topology_name(Topology t) {
  switch (t) {
    case Topology::Sphere: return "sphere";
    case Topology::Disk: return "disk";
    case Topology::Annulus: return "annulus";
    case Topology::Other: return "other";
  }
  return "?";
}

Topology Region::topology() const {
  if (genus != 0) return Topology::Other;
  switch (boundary_circles) {
    case 0: return Topology::Sphere;
    case 1: return Topology::Disk;
    case 2: return Topology::Annulus;
    default: return Topology::Other;
  }
}

HSSurface::HSSurface(std::vector<Region> regions, std::vector<PhotonCircle> circles,
                     std::vector<SurfaceSingularity> singularities, std::optional<LinkCircle> suspended_link)
    : regions_(std::move(regions)),
      circles_(std::move(circles)),
      singularities_(std::move(singularities)),
      suspended_link_(std::move(suspended_link)) {
  const int nr = static_cast<int>(regions_.size());
  const int nc = static_cast<int>(circles_.size());
  if (nr == 0) throw InputError("surface needs at least one region");
  std::vector<int> incident(static_cast<size_t>(nr), 0);
  for (const auto& c : circles_) {
    if (c.hyperbolic_region < 0 || c.hyperbolic_region >= nr || c.de_sitter_region < 0 || c.de_sitter_region >= nr) {
      throw InputError("photon circle refers to a missing region");
    }
    if (!hyperbolic_kind(regions_[static_cast<size_t>(c.hyperbolic_region)].kind) ||
        regions_[static_cast<size_t>(c.de_sitter_region)].kind != RegionKind::DeSitter) {
      throw InputError("inconsistent region tags: a photon circle must separate hyperbolic from de Sitter");
    }
    for (const auto& g : c.lightlike_corrections) {
      if (!is_parabolic(g)) throw InputError("lightlike correction factors must be parabolic");
    }
    ++incident[static_cast<size_t>(c.hyperbolic_region)];
    ++incident[static_cast<size_t>(c.de_sitter_region)];
  }
  for (int r = 0; r < nr; ++r) {
    const auto& reg = regions_[static_cast<size_t>(r)];
    if (reg.genus < 0 || reg.boundary_circles < 0) throw InputError("negative topology counts");
    if (reg.boundary_circles != incident[static_cast<size_t>(r)]) {
      throw InputError("inconsistent region tags: region " + std::to_string(r) + " lists " +
                       std::to_string(reg.boundary_circles) + " boundary circles but " +
                       std::to_string(incident[static_cast<size_t>(r)]) + " photon circles touch it");
    }
    if (reg.reduction && reg.kind != RegionKind::DeSitter) {
      throw InputError("first-return reductions only apply to de Sitter regions");
    }
  }
  for (const auto& s : singularities_) {
    const bool on_region = s.region >= 0 && s.region < nr;
    const bool on_circle = s.photon_circle >= 0 && s.photon_circle < nc;
    if (on_region == on_circle) throw InputError("singularity '" + s.label + "' needs exactly one anchor");
    if (on_region) {
      const RegionKind k = regions_[static_cast<size_t>(s.region)].kind;
      const HS2Region b = s.link.base_class;
      const bool ok = (b == HS2Region::HypPlus && k == RegionKind::FutureHyperbolic) ||
                      (b == HS2Region::HypMinus && k == RegionKind::PastHyperbolic) ||
                      (b == HS2Region::DeSitter && k == RegionKind::DeSitter) ||
                      b == HS2Region::BoundaryPlus || b == HS2Region::BoundaryMinus;
      if (!ok) throw InputError("singularity '" + s.label + "' sits in a region of the wrong kind");
    }
    types_.push_back(classify_singularity(s.link));
  }
}

int HSSurface::euler_characteristic() const {
  return std::accumulate(regions_.begin(), regions_.end(), 0,
                         [](int acc, const Region& r) { return acc + r.euler_characteristic(); });
}

bool HSSurface::is_connected() const {
  const size_t n = regions_.size();
  std::vector<size_t> parent(n);
  std::iota(parent.begin(), parent.end(), size_t{0});
  auto find = [&parent](size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& c : circles_) {
    parent[find(static_cast<size_t>(c.hyperbolic_region))] = find(static_cast<size_t>(c.de_sitter_region));
  }
  for (size_t i = 1; i < n; ++i) {
    if (find(i) != find(0)) return false;
  }
  return true;
}

std::vector<int> HSSurface::singularities_in_region(int region) const {
  std::vector<int> out;
  for (size_t i = 0; i < singularities_.size(); ++i) {
    if (singularities_[i].region == region) out.push_back(static_cast<int>(i));
  }
  return out;
}

Census region_decomposition(const HSSurface& s) {
  Census c;
  for (size_t i = 0; i < s.regions().size(); ++i) {
    switch (s.regions()[i].kind) {
      case RegionKind::FutureHyperbolic: c.future_regions.push_back(static_cast<int>(i)); break;
      case RegionKind::PastHyperbolic: c.past_regions.push_back(static_cast<int>(i)); break;
      case RegionKind::DeSitter: c.de_sitter_regions.push_back(static_cast<int>(i)); break;
    }
  }
  c.photon_circles = static_cast<int>(s.photon_circles().size());
  for (const auto& pc : s.photon_circles()) c.adjacency.emplace_back(pc.hyperbolic_region, pc.de_sitter_region);
  for (const auto& t : s.singularity_types()) {
    if (std::holds_alternative<Cuspidal>(t)) ++c.cusps;
    if (std::holds_alternative<ExtremeBTZ>(t)) ++c.extreme_btz;
  }
  return c;
}

bool de_sitter_topology_check(const HSSurface& s) {
  for (size_t r = 0; r < s.regions().size(); ++r) {
    const Region& reg = s.regions()[r];
    if (reg.kind != RegionKind::DeSitter) continue;
    int btz = 0;
    for (int i : s.singularities_in_region(static_cast<int>(r))) {
      if (is_btz_like(s.singularity_types()[static_cast<size_t>(i)])) ++btz;
    }
    switch (reg.topology()) {
      case Topology::Sphere:
        if (btz != 2) return false;
        break;
      case Topology::Disk:
        if (btz != 1) return false;
        break;
      case Topology::Annulus:
        if (btz != 0) return false;
        break;
      case Topology::Other: return false;
    }
  }
  return true;
}

std::pair<RP1Circle, RP1Circle> photon_circle_structures(const HSSurface& s, int circle) {
  if (circle < 0 || circle >= static_cast<int>(s.photon_circles().size())) throw InputError("no such photon circle");
  const PhotonCircle& pc = s.photon_circles()[static_cast<size_t>(circle)];
  if (!pc.hyperbolic_holonomy) throw PreconditionError("photon circle has no holonomy data");
  auto interval_for = [](const LiftedIsometry& h) -> std::optional<int> {
    if (h.degree() == 0 && !elliptic_holonomy(h)) return 0;
    return std::nullopt;
  };
  LiftedIsometry ds = *pc.hyperbolic_holonomy;
  for (const auto& g : pc.lightlike_corrections) ds = compose_lifted(ds, lift_canonical(g));
  return {RP1Circle{*pc.hyperbolic_holonomy, interval_for(*pc.hyperbolic_holonomy)}, RP1Circle{ds, interval_for(ds)}};
}

bool hyperbolic_degree_zero_check(const HSSurface& s) {
  for (const auto& pc : s.photon_circles()) {
    const Region& h = s.regions()[static_cast<size_t>(pc.hyperbolic_region)];
    if (h.topology() == Topology::Disk) continue;
    if (!pc.hyperbolic_holonomy) return false;
    if (pc.hyperbolic_holonomy->degree() != 0 || !is_hyperbolic(pc.hyperbolic_holonomy->base())) return false;
  }
  return true;
}

bool region_has_ccc(const HSSurface& s, int region) {
  const Region& reg = s.regions().at(static_cast<size_t>(region));
  if (reg.kind != RegionKind::DeSitter) throw PreconditionError("CCC analysis applies to de Sitter regions");
  if (reg.reduction) return detect_ccc(*reg.reduction).has_ccc;

  std::vector<const PhotonCircle*> rim;
  bool lightlike_on_rim = false;
  for (size_t c = 0; c < s.photon_circles().size(); ++c) {
    const auto& pc = s.photon_circles()[c];
    if (pc.de_sitter_region != region) continue;
    rim.push_back(&pc);
    if (!pc.lightlike_corrections.empty()) lightlike_on_rim = true;
    for (const auto& sg : s.singularities()) {
      if (sg.photon_circle == static_cast<int>(c)) lightlike_on_rim = true;
    }
  }
  const auto inside = s.singularities_in_region(region);
  const bool known_rim = std::all_of(rim.begin(), rim.end(), [](const PhotonCircle* p) { return p->hyperbolic_holonomy.has_value(); });

  if (inside.empty() && !lightlike_on_rim && known_rim) {
    // Quotient of a rotation-invariant piece of dS^2: the height is a time function.
    if (std::all_of(rim.begin(), rim.end(), [](const PhotonCircle* p) { return elliptic_holonomy(*p->hyperbolic_holonomy); })) {
      return false;
    }
    if (reg.topology() == Topology::Annulus &&
        std::all_of(rim.begin(), rim.end(), [](const PhotonCircle* p) {
          return p->hyperbolic_holonomy->degree() == 0 && is_hyperbolic(p->hyperbolic_holonomy->base());
        })) {
      return detect_ccc(FirstReturnSystem{rim.front()->hyperbolic_holonomy->base(), {}, 0}).has_ccc;
    }
  }
  int future_btz = 0;
  int past_btz = 0;
  for (int i : inside) {
    const auto& t = s.singularity_types()[static_cast<size_t>(i)];
    if (const auto* b = std::get_if<BTZ>(&t)) (b->side == TimeSide::Future ? future_btz : past_btz)++;
    else if (const auto* e = std::get_if<ExtremeBTZ>(&t)) (e->side == TimeSide::Future ? future_btz : past_btz)++;
    else throw UndecidableError("de Sitter region '" + reg.label + "' contains a singularity outside the analyzed shapes");
  }
  if (!lightlike_on_rim) {
    if (reg.topology() == Topology::Disk && future_btz + past_btz == 1) return false;
    if (reg.topology() == Topology::Sphere && future_btz == 1 && past_btz == 1) return false;
  }
  throw UndecidableError("undecidable with current reduction: de Sitter region '" + reg.label +
                         "' has no first-return data");
}

CausalVerdict surface_causal(const HSSurface& s) {
  CausalVerdict v;
  for (const auto& t : s.singularity_types()) {
    for (auto r : is_causal_line(t).reasons) {
      if (std::find(v.reasons.begin(), v.reasons.end(), r) == v.reasons.end()) v.reasons.push_back(r);
    }
  }
  if (!v.reasons.empty()) {
    v.causal = false;  // region analysis may be undecidable and cannot change the verdict
    return v;
  }
  for (size_t r = 0; r < s.regions().size(); ++r) {
    if (s.regions()[r].kind != RegionKind::DeSitter) continue;
    if (region_has_ccc(s, static_cast<int>(r))) {
      if (std::find(v.reasons.begin(), v.reasons.end(), Violation::ClosedCausalCurve) == v.reasons.end()) {
        v.reasons.push_back(Violation::ClosedCausalCurve);
      }
    }
  }
  v.causal = v.reasons.empty();
  return v;
}

std::string_view interaction_name(InteractionClass c) {
  switch (c) {
    case InteractionClass::CausallyRegular: return "causally_regular";
    case InteractionClass::BlackHoleInteraction: return "black_hole_interaction";
    case InteractionClass::WhiteHoleInteraction: return "white_hole_interaction";
    case InteractionClass::BigBang: return "big_bang";
    case InteractionClass::BigCrunch: return "big_crunch";
    case InteractionClass::BlackWhiteInteraction: return "black_white_interaction";
  }
  return "?";
}

InteractionClass classify_interaction(const HSSurface& s) {
  if (!s.is_sphere()) throw PreconditionError("interaction links must be spheres");
  for (size_t i = 0; i < s.singularity_types().size(); ++i) {
    if (!is_positive(s.singularity_types()[i])) {
      throw PreconditionError("singularity '" + s.singularities()[i].label + "' is not positive");
    }
  }
  if (!surface_causal(s).causal) throw PreconditionError("surface is not causal");
  const Census c = region_decomposition(s);
  if (c.future_regions.size() > 1 || c.past_regions.size() > 1) {
    throw PreconditionError("a positive causal sphere has at most one future and one past hyperbolic region");
  }
  const bool fut = !c.future_regions.empty();
  const bool past = !c.past_regions.empty();
  const bool ds = !c.de_sitter_regions.empty();
  if (fut && past) {
    if (c.de_sitter_regions.size() != 1 ||
        s.regions()[static_cast<size_t>(c.de_sitter_regions.front())].topology() != Topology::Annulus) {
      throw PreconditionError("census inconsistent: expected a single de Sitter annulus");
    }
    return InteractionClass::CausallyRegular;
  }
  if (!fut && !past) return InteractionClass::BlackWhiteInteraction;
  if (!ds) return fut ? InteractionClass::BigBang : InteractionClass::BigCrunch;
  return fut ? InteractionClass::WhiteHoleInteraction : InteractionClass::BlackHoleInteraction;
}

HSSurface regular_hs2() {
  std::vector<Region> regions{{RegionKind::FutureHyperbolic, 0, 1, std::nullopt, "future"},
                              {RegionKind::PastHyperbolic, 0, 1, std::nullopt, "past"},
                              {RegionKind::DeSitter, 0, 2, std::nullopt, "de_sitter"}};
  const LiftedIsometry full(1, ProjMatrix::identity());
  std::vector<PhotonCircle> circles{{0, 2, full, {}}, {1, 2, full, {}}};
  return HSSurface(std::move(regions), std::move(circles), {});
}

HSSurface btz_pair_sphere(double length) {
  std::vector<Region> regions{{RegionKind::DeSitter, 0, 0, std::nullopt, "de_sitter"}};
  ModelParams p;
  p.length = length;
  std::vector<SurfaceSingularity> sing{{"btz_past", 0, -1, model_link(BTZ{TimeSide::Past}, p)},
                                       {"btz_future", 0, -1, model_link(BTZ{TimeSide::Future}, p)}};
  return HSSurface(std::move(regions), {}, std::move(sing));
}

HSSurface link_suspension_surface(const LinkCircle& l) {
  const SingularityType t = classify_singularity(l);
  LinkCircle anti = l;
  anti.base_class = antipodal(l.base_class);
  if (const auto* m = std::get_if<MassiveParticle>(&t)) {
    std::vector<Region> regions{{RegionKind::FutureHyperbolic, 0, 1, std::nullopt, "future"},
                                {RegionKind::PastHyperbolic, 0, 1, std::nullopt, "past"},
                                {RegionKind::DeSitter, 0, 2, std::nullopt, "de_sitter"}};
    std::vector<PhotonCircle> circles{{0, 2, l.holonomy, {}}, {1, 2, l.holonomy, {}}};
    const int here = m->side == TimeSide::Future ? 0 : 1;
    std::vector<SurfaceSingularity> sing{{"p", here, -1, l}, {"antipode", 1 - here, -1, anti}};
    return HSSurface(std::move(regions), std::move(circles), std::move(sing), l);
  }
  if (std::holds_alternative<Tachyon>(t) || std::holds_alternative<Photon>(t)) {
    std::vector<Region> regions{{RegionKind::FutureHyperbolic, 0, 1, std::nullopt, "future"},
                                {RegionKind::PastHyperbolic, 0, 1, std::nullopt, "past"},
                                {RegionKind::DeSitter, 0, 2, std::nullopt, "de_sitter"}};
    std::vector<PhotonCircle> circles{{0, 2, std::nullopt, {}}, {1, 2, std::nullopt, {}}};
    std::vector<SurfaceSingularity> sing;
    if (std::holds_alternative<Tachyon>(t)) {
      sing = {{"p", 2, -1, l}, {"antipode", 2, -1, anti}};
    } else {
      const bool fut = l.base_class == HS2Region::BoundaryPlus;
      sing = {{"p", -1, fut ? 0 : 1, l}, {"antipode", -1, fut ? 1 : 0, anti}};
    }
    return HSSurface(std::move(regions), std::move(circles), std::move(sing), l);
  }
  if (const auto* b = std::get_if<BTZ>(&t)) {
    const RegionKind hyp = b->side == TimeSide::Future ? RegionKind::PastHyperbolic : RegionKind::FutureHyperbolic;
    std::vector<Region> regions{{hyp, 0, 2, std::nullopt, "hyperbolic"},
                                {RegionKind::DeSitter, 0, 1, std::nullopt, "de_sitter_p"},
                                {RegionKind::DeSitter, 0, 1, std::nullopt, "de_sitter_antipode"}};
    std::vector<PhotonCircle> circles{{0, 1, l.holonomy, {}}, {0, 2, l.holonomy, {}}};
    std::vector<SurfaceSingularity> sing{{"p", 1, -1, l}, {"antipode", 2, -1, anti}};
    return HSSurface(std::move(regions), std::move(circles), std::move(sing), l);
  }
  if (std::holds_alternative<Misner>(t)) {
    std::vector<Region> regions{{RegionKind::DeSitter, 0, 0, std::nullopt, "de_sitter"}};
    std::vector<SurfaceSingularity> sing{{"p", 0, -1, l}, {"antipode", 0, -1, anti}};
    return HSSurface(std::move(regions), {}, std::move(sing), l);
  }
  if (std::holds_alternative<Cuspidal>(t) || std::holds_alternative<ExtremeBTZ>(t)) {
    const bool cusp_future = l.base_class == HS2Region::BoundaryPlus
                                 ? std::holds_alternative<Cuspidal>(t)
                                 : std::holds_alternative<ExtremeBTZ>(t);
    const RegionKind hyp = cusp_future ? RegionKind::FutureHyperbolic : RegionKind::PastHyperbolic;
    std::vector<Region> regions{{hyp, 0, 1, std::nullopt, "hyperbolic"},
                                {RegionKind::DeSitter, 0, 1, std::nullopt, "de_sitter"}};
    std::vector<PhotonCircle> circles{{0, 1, l.holonomy, {}}};
    const bool p_is_cusp = std::holds_alternative<Cuspidal>(t);
    std::vector<SurfaceSingularity> sing{{"p", p_is_cusp ? -1 : 1, p_is_cusp ? 0 : -1, l},
                                         {"antipode", p_is_cusp ? 1 : -1, p_is_cusp ? -1 : 0, anti}};
    return HSSurface(std::move(regions), std::move(circles), std::move(sing), l);
  }
  throw PreconditionError("no suspension surface for " + describe(t));
}

}  // namespace adsgeom
