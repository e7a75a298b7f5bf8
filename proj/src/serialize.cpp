#include "adsgeom/serialize.hpp"

#include <cmath>

#include "adsgeom/errors.hpp"

namespace adsgeom {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw InputError(std::string("expected an object holding '") + key + "'");
  const auto it = j.find(key);
  if (it == j.end()) throw InputError(std::string("missing field '") + key + "'");
  return *it;
}

bool has(const Json& j, const char* key) { return j.is_object() && j.contains(key) && !j.at(key).is_null(); }

double number(const Json& v, const std::string& what) {
  if (!v.is_number()) throw InputError("field '" + what + "' must be a number");
  return v.get<double>();
}

double num(const Json& j, const char* key) { return number(field(j, key), key); }
double num_or(const Json& j, const char* key, double def) { return has(j, key) ? num(j, key) : def; }

int integer(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) throw InputError(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}
int int_or(const Json& j, const char* key, int def) { return has(j, key) ? integer(j, key) : def; }

std::string str(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_string()) throw InputError(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

const Json& array(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_array()) throw InputError(std::string("field '") + key + "' must be an array");
  return v;
}

TimeSide side_from(const Json& j) {
  const std::string s = str(j, "side");
  if (s == "future") return TimeSide::Future;
  if (s == "past") return TimeSide::Past;
  throw InputError("side must be 'future' or 'past'");
}

FormVector vector_from(const Json& v, Form form) {
  if (!v.is_array() || static_cast<int>(v.size()) != form_dimension(form)) {
    throw InputError("expected a vector of " + std::to_string(form_dimension(form)) + " numbers");
  }
  std::array<double, 4> c{};
  for (size_t i = 0; i < v.size(); ++i) c[i] = number(v[i], "coordinate");
  return FormVector(form, std::span<const double>(c.data(), v.size()));
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

Json to_json(const ProjMatrix& g) { return Json::array({g.a(), g.b(), g.c(), g.d()}); }

ProjMatrix matrix_from_json(const Json& j) {
  if (j.is_string()) return parse_matrix(j.get<std::string>());
  if (!j.is_array() || j.size() != 4) throw InputError("a matrix is [a, b, c, d] or \"a,b,c,d\"");
  return {number(j[0], "a"), number(j[1], "b"), number(j[2], "c"), number(j[3], "d")};
}

Json to_json(const LiftedIsometry& h) { return {{"degree", h.degree()}, {"matrix", to_json(h.base())}}; }

LiftedIsometry lifted_from_json(const Json& j) { return {integer(j, "degree"), matrix_from_json(field(j, "matrix"))}; }

Json to_json(const IsomClass& c) {
  Json j{{"kind", isom_kind(c)}};
  if (const auto* e = std::get_if<Elliptic>(&c)) j["angle"] = e->angle;
  if (const auto* h = std::get_if<Hyperbolic>(&c)) j["translation_length"] = h->translation_length;
  return j;
}

Json to_json(const FormVector& v) {
  Json j = Json::array();
  for (double x : v.coords()) j.push_back(x);
  return j;
}

Json to_json(const SingularityType& t) {
  Json j{{"kind", type_kind(t)}};
  std::visit(overloaded{
                 [&](const MassiveParticle& m) {
                   j["angle"] = m.angle;
                   j["side"] = side_name(m.side);
                 },
                 [&](const Photon& p) {
                   j["sign"] = p.sign;
                   j["side"] = side_name(p.side);
                 },
                 [&](const Tachyon& p) { j["sign"] = p.sign; },
                 [&](const BTZ& p) { j["side"] = side_name(p.side); },
                 [&](const ExtremeBTZ& p) { j["side"] = side_name(p.side); },
                 [&](const Cuspidal& p) { j["side"] = side_name(p.side); },
                 [&](const Misner&) {},
                 [&](const HighDegree& h) {
                   j["degree"] = h.degree;
                   j["causal"] = h.kind == NonTimelikeKind::Spacelike ? "spacelike" : "lightlike";
                   j["sign"] = h.sign;
                 },
             },
             t);
  return j;
}

SingularityType singularity_type_from_json(const Json& j) {
  const std::string kind = str(j, "kind");
  if (kind == "massive_particle") {
    return MassiveParticle{num(j, "angle"), has(j, "side") ? side_from(j) : TimeSide::Future};
  }
  if (kind == "photon") return Photon{integer(j, "sign"), side_from(j)};
  if (kind == "tachyon") return Tachyon{integer(j, "sign")};
  if (kind == "btz") return BTZ{side_from(j)};
  if (kind == "extreme_btz") return ExtremeBTZ{side_from(j)};
  if (kind == "cuspidal") return Cuspidal{side_from(j)};
  if (kind == "misner") return Misner{};
  if (kind == "high_degree") {
    const std::string c = str(j, "causal");
    if (c != "spacelike" && c != "lightlike") throw InputError("causal must be 'spacelike' or 'lightlike'");
    return HighDegree{integer(j, "degree"), c == "spacelike" ? NonTimelikeKind::Spacelike : NonTimelikeKind::Lightlike,
                      integer(j, "sign")};
  }
  throw InputError("unknown singularity kind '" + kind + "'");
}

Json to_json(const LinkCircle& l) {
  Json j{{"base_class", region_name(l.base_class)},
         {"degree", l.holonomy.degree()},
         {"matrix", to_json(l.holonomy.base())},
         {"future_arc", l.future_arc}};
  if (l.interval) j["interval"] = arc_name(*l.interval);
  if (l.sign) j["sign"] = *l.sign;
  return j;
}

LinkCircle link_from_json(const Json& j) {
  if (has(j, "model")) {
    ModelParams p;
    if (has(j, "params")) {
      const Json& pj = j.at("params");
      p.length = num_or(pj, "length", p.length);
      p.shear = num_or(pj, "shear", p.shear);
    }
    return model_link(singularity_type_from_json(j.at("model")), p);
  }
  LinkCircle l{region_from_name(str(j, "base_class")), lifted_from_json(j), std::nullopt, std::nullopt,
               int_or(j, "future_arc", 0)};
  if (has(j, "interval")) l.interval = arc_from_name(str(j, "interval"));
  if (has(j, "sign")) l.sign = integer(j, "sign");
  return l;
}

Json to_json(const RP1Invariants& inv) {
  return std::visit(overloaded{
                        [](const EllipticCircle& e) { return Json{{"kind", "elliptic"}, {"angle", e.angle}}; },
                        [](const ParabolicCircle& p) {
                          return Json{{"kind", "parabolic"}, {"degree", p.degree}, {"sign", p.sign}};
                        },
                        [](const HyperbolicCircle& h) {
                          return Json{{"kind", "hyperbolic"}, {"degree", h.degree}, {"length", h.length}};
                        },
                    },
                    inv);
}

Json to_json(const Census& c) {
  Json adj = Json::array();
  for (const auto& [h, d] : c.adjacency) adj.push_back({h, d});
  return {{"future_regions", c.future_regions},
          {"past_regions", c.past_regions},
          {"de_sitter_regions", c.de_sitter_regions},
          {"photon_circles", c.photon_circles},
          {"adjacency", adj},
          {"cusps", c.cusps},
          {"extreme_btz", c.extreme_btz}};
}

Json to_json(const CausalVerdict& v) {
  Json reasons = Json::array();
  for (auto r : v.reasons) reasons.push_back(violation_name(r));
  return {{"causal", v.causal}, {"reasons", reasons}};
}

FirstReturnSystem first_return_from_json(const Json& j) {
  FirstReturnSystem sys{matrix_from_json(field(j, "base")), {}, int_or(j, "interval", 0)};
  if (has(j, "surgeries")) {
    for (const Json& s : array(j, "surgeries")) {
      const double site = num(s, "site");
      const int sign = integer(s, "sign");
      if (has(s, "t")) {
        sys.surgeries.push_back(LeafSurgery::parabolic(site, num(s, "t"), sign));
      } else {
        LeafSurgery ls{site, matrix_from_json(field(s, "correction")), sign, std::nullopt};
        if (has(s, "half_leaf_start")) ls.half_leaf_start = num(s, "half_leaf_start");
        sys.surgeries.push_back(ls);
      }
    }
  }
  validate(sys);
  return sys;
}

Json to_json(const FirstReturnSystem& sys) {
  Json surgeries = Json::array();
  for (const auto& s : sys.surgeries) {
    Json sj{{"site", s.site}, {"sign", s.sign}, {"correction", to_json(s.correction)}};
    if (s.half_leaf_start) sj["half_leaf_start"] = *s.half_leaf_start;
    surgeries.push_back(sj);
  }
  return {{"kind", "first_return"}, {"base", to_json(sys.base_holonomy)}, {"interval", sys.interval}, {"surgeries", surgeries}};
}

Json to_json(const CCCResult& r) {
  Json leaves = Json::array();
  for (const auto& l : r.closed_leaves) leaves.push_back({{"y", l.y}, {"degenerate", l.degenerate}});
  return {{"has_ccc", r.has_ccc}, {"closed_leaves", leaves}};
}

HSSurface surface_from_json(const Json& j) {
  const std::string kind = str(j, "kind");
  if (kind == "regular") return regular_hs2();
  if (kind == "btz_pair") return btz_pair_sphere(num(j, "length"));
  if (kind == "doubled_triangle") {
    const Json& v = array(j, "vertices");
    if (v.size() != 3) throw InputError("a triangle has 3 vertices");
    return double_triangle(HS2Triangle(vector_from(v[0], Form::Q12), vector_from(v[1], Form::Q12), vector_from(v[2], Form::Q12)));
  }
  if (kind == "collision_triangle") return double_triangle(collision_triangle(num(j, "angle"), num_or(j, "depth", 2.8)));
  if (kind == "btz_collision_triangle") {
    return double_triangle(btz_collision_triangle(num(j, "rapidity"), num_or(j, "depth", 1.2)));
  }
  if (kind == "link_suspension") return link_suspension_surface(link_from_json(field(j, "link")));
  if (kind != "regions") throw InputError("unknown surface kind '" + kind + "'");

  std::vector<Region> regions;
  for (const Json& r : array(j, "regions")) {
    Region reg{region_kind_from_name(str(r, "kind")), int_or(r, "genus", 0), integer(r, "boundary_circles"), std::nullopt,
               has(r, "label") ? str(r, "label") : std::string()};
    if (has(r, "reduction")) reg.reduction = first_return_from_json(r.at("reduction"));
    regions.push_back(std::move(reg));
  }
  std::vector<PhotonCircle> circles;
  if (has(j, "photon_circles")) {
    for (const Json& c : array(j, "photon_circles")) {
      PhotonCircle pc{integer(c, "hyperbolic_region"), integer(c, "de_sitter_region"), std::nullopt, {}};
      if (has(c, "holonomy")) pc.hyperbolic_holonomy = lifted_from_json(c.at("holonomy"));
      if (has(c, "lightlike_corrections")) {
        for (const Json& m : array(c, "lightlike_corrections")) pc.lightlike_corrections.push_back(matrix_from_json(m));
      }
      circles.push_back(std::move(pc));
    }
  }
  std::vector<SurfaceSingularity> sing;
  if (has(j, "singularities")) {
    for (const Json& s : array(j, "singularities")) {
      sing.push_back({has(s, "label") ? str(s, "label") : std::string(), int_or(s, "region", -1), int_or(s, "photon_circle", -1),
                      link_from_json(field(s, "link"))});
    }
  }
  std::optional<LinkCircle> suspended;
  if (has(j, "suspended_link")) suspended = link_from_json(j.at("suspended_link"));
  return HSSurface(std::move(regions), std::move(circles), std::move(sing), std::move(suspended));
}

Json surface_to_json(const HSSurface& s) {
  Json regions = Json::array();
  for (const auto& r : s.regions()) {
    Json rj{{"kind", region_kind_name(r.kind)}, {"genus", r.genus}, {"boundary_circles", r.boundary_circles}, {"label", r.label}};
    if (r.reduction) rj["reduction"] = to_json(*r.reduction);
    regions.push_back(rj);
  }
  Json circles = Json::array();
  for (const auto& c : s.photon_circles()) {
    Json cj{{"hyperbolic_region", c.hyperbolic_region}, {"de_sitter_region", c.de_sitter_region}};
    if (c.hyperbolic_holonomy) cj["holonomy"] = to_json(*c.hyperbolic_holonomy);
    Json corr = Json::array();
    for (const auto& g : c.lightlike_corrections) corr.push_back(to_json(g));
    cj["lightlike_corrections"] = corr;
    circles.push_back(cj);
  }
  Json sing = Json::array();
  for (size_t i = 0; i < s.singularities().size(); ++i) {
    const auto& sg = s.singularities()[i];
    Json sj{{"label", sg.label}, {"link", to_json(sg.link)}, {"type", to_json(s.singularity_types()[i])}};
    if (sg.region >= 0) sj["region"] = sg.region;
    else sj["photon_circle"] = sg.photon_circle;
    sing.push_back(sj);
  }
  Json j{{"kind", "regions"}, {"regions", regions}, {"photon_circles", circles}, {"singularities", sing}};
  if (s.suspended_link()) j["suspended_link"] = to_json(*s.suspended_link());
  return j;
}

HS3Polyhedron polyhedron_from_json(const Json& j) {
  const std::string kind = has(j, "kind") ? str(j, "kind") : std::string("explicit");
  if (kind == "random_bihyperbolic") {
    const Json& seed = field(j, "seed");
    if (!seed.is_number_unsigned()) throw InputError("seed must be a nonnegative integer");
    return random_bihyperbolic(seed.get<std::uint64_t>());
  }
  if (kind == "hull") {
    std::vector<Eigen::Vector3d> pts;
    for (const Json& p : array(j, "points")) {
      if (!p.is_array() || p.size() != 3) throw InputError("hull points are (x0, x2, x3) triples");
      pts.emplace_back(number(p[0], "x0"), number(p[1], "x2"), number(p[2], "x3"));
    }
    return hull_in_chart(pts);
  }
  if (kind != "explicit") throw InputError("unknown polyhedron kind '" + kind + "'");
  std::vector<FormVector> verts;
  for (const Json& v : array(j, "vertices")) verts.push_back(vector_from(v, Form::Q13));
  std::vector<std::vector<int>> faces;
  for (const Json& f : array(j, "faces")) {
    if (!f.is_array()) throw InputError("faces are lists of vertex indices");
    std::vector<int> face;
    for (const Json& i : f) {
      if (!i.is_number_integer()) throw InputError("faces are lists of vertex indices");
      face.push_back(i.get<int>());
    }
    faces.push_back(std::move(face));
  }
  return HS3Polyhedron(std::move(verts), std::move(faces));
}

Json to_json(const InducedReport& r) {
  Json links = Json::array();
  for (const auto& v : r.vertex_links) {
    Json vj{{"vertex", v.vertex}, {"region", region_name(v.region)}};
    vj["cone_angle"] = optional_number(v.cone_angle);
    vj["type"] = v.type ? to_json(*v.type) : Json(nullptr);
    if (v.link) vj["link"] = to_json(*v.link);
    links.push_back(vj);
  }
  Json dict = Json::array();
  for (const auto& [v, t] : r.particle_dictionary) dict.push_back({{"vertex", v}, {"type", to_json(t)}});
  Json j{{"is_hs_structure", r.is_hs_structure},
         {"offending_faces", r.offending_faces},
         {"vertex_links", links},
         {"particle_dictionary", dict},
         {"diagnostics", r.diagnostics}};
  j["positivity"] = r.positivity ? Json(*r.positivity) : Json(nullptr);
  j["positive_mass"] = r.positive_mass ? Json(*r.positive_mass) : Json(nullptr);
  j["annulus_geodesic_length"] = optional_number(r.annulus_geodesic_length);
  return j;
}

WarpedProductRecipe warped_from_json(const Json& j) {
  WarpedProductRecipe r;
  for (const Json& a : array(j, "cone_angles")) r.cone_angles.push_back(number(a, "cone_angles"));
  r.genus = int_or(j, "genus", 0);
  if (has(j, "t_range")) {
    const Json& t = array(j, "t_range");
    if (t.size() != 2) throw InputError("t_range is [t_min, t_max]");
    r.t_min = number(t[0], "t_min");
    r.t_max = number(t[1], "t_max");
  }
  return r;
}

Spacetime spacetime_from_json(const Json& j) {
  const std::string kind = str(j, "kind");
  if (kind == "suspension") return suspend(surface_from_json(field(j, "surface")));
  if (kind == "warped_product") return warped_product(warped_from_json(j));
  if (kind == "model_wedge") {
    ModelParams p;
    if (has(j, "params")) {
      p.length = num_or(j.at("params"), "length", p.length);
      p.shear = num_or(j.at("params"), "shear", p.shear);
    }
    return construct_model_singularity(singularity_type_from_json(field(j, "type")), p).spacetime;
  }
  if (kind == "btz_quotient") {
    return btz_quotient(matrix_from_json(field(j, "gamma1")), matrix_from_json(field(j, "gamma2"))).spacetime;
  }
  if (kind == "surgery") {
    const Json& sj = field(j, "site");
    SurgerySite site;
    site.line_id = str(sj, "line");
    site.time = num_or(sj, "time", site.time);
    site.radius = num_or(sj, "radius", site.radius);
    site.collar = num_or(sj, "collar", site.collar);
    if (has(sj, "spacelike_slice_asserted")) {
      const Json& a = sj.at("spacelike_slice_asserted");
      if (!a.is_boolean()) throw InputError("spacelike_slice_asserted must be a boolean");
      site.spacelike_slice_asserted = a.get<bool>();
    }
    return surgery_collision(spacetime_from_json(field(j, "base")), site, surface_from_json(field(j, "patch")));
  }
  if (kind == "btz_surgery") {
    return btz_surgery(spacetime_from_json(field(j, "base")), surface_from_json(field(j, "patch")));
  }
  throw InputError("unknown spacetime kind '" + kind + "'");
}

Json recipe_to_json(const SpacetimeRecipe& r) {
  return std::visit(
      overloaded{
          [](const SuspensionRecipe& s) { return Json{{"kind", "suspension"}, {"surface", surface_to_json(s.surface)}}; },
          [](const WarpedProductRecipe& w) {
            return Json{{"kind", "warped_product"},
                        {"cone_angles", w.cone_angles},
                        {"genus", w.genus},
                        {"t_range", {w.t_min, w.t_max}}};
          },
          [](const ModelWedgeRecipe& m) {
            return Json{{"kind", "model_wedge"},
                        {"type", to_json(m.type)},
                        {"params", {{"length", m.params.length}, {"shear", m.params.shear}}}};
          },
          [](const BTZQuotientRecipe& b) {
            return Json{{"kind", "btz_quotient"}, {"gamma1", to_json(b.gamma1)}, {"gamma2", to_json(b.gamma2)}};
          },
          [](const SurgeryRecipe& s) {
            if (std::holds_alternative<BTZQuotientRecipe>(s.base->payload)) {
              return Json{{"kind", "btz_surgery"}, {"base", recipe_to_json(*s.base)}, {"patch", surface_to_json(s.patch)}};
            }
            return Json{{"kind", "surgery"},
                        {"base", recipe_to_json(*s.base)},
                        {"site",
                         {{"line", s.site.line_id},
                          {"time", s.site.time},
                          {"radius", s.site.radius},
                          {"collar", s.site.collar},
                          {"spacelike_slice_asserted", s.site.spacelike_slice_asserted}}},
                        {"patch", surface_to_json(s.patch)}};
          },
      },
      r.payload);
}

Json graph_to_json(const SingularGraph& g) {
  Json nodes = Json::array();
  Json edges = Json::array();
  std::vector<std::string> ends;
  for (const auto& ip : g.interactions) {
    Json link{{"census", to_json(region_decomposition(ip.link))}};
    try {
      link["class"] = interaction_name(classify_interaction(ip.link));
    } catch (const PreconditionError& e) {
      link["class"] = nullptr;
      link["notice"] = e.what();
    }
    nodes.push_back({{"id", ip.id}, {"kind", "interaction"}, {"point", ip.point}, {"link", link}});
  }
  auto add_end = [&](const std::string& id) {
    if (id.rfind("interaction:", 0) == 0) return;
    if (std::find(ends.begin(), ends.end(), id) == ends.end()) ends.push_back(id);
  };
  for (const auto& l : g.lines) {
    add_end(l.start);
    add_end(l.end);
    edges.push_back({{"id", l.id}, {"type", to_json(l.type)}, {"locus", l.locus}, {"from", l.start}, {"to", l.end}});
  }
  std::sort(ends.begin(), ends.end());
  for (const auto& e : ends) nodes.push_back({{"id", e}, {"kind", "open_end"}});
  return {{"nodes", nodes}, {"edges", edges}};
}

}  // namespace adsgeom
