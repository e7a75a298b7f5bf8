#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <set>

#include "adsgeom/errors.hpp"
#include "adsgeom/polyhedra.hpp"
#include "support.hpp"

using namespace adsgeom;
using testing::Rng;

namespace {

FormVector v4(double a, double b, double c, double d) { return FormVector(Form::Q13, {a, b, c, d}); }

FormVector from_eigen(const Eigen::Vector4d& x) { return FormVector(Form::Q13, std::span<const double>(x.data(), 4)); }

Eigen::Vector4d to_eigen(const FormVector& v) { return {v[0], v[1], v[2], v[3]}; }

const std::vector<std::vector<int>> kTetraFaces{{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};

HS3Polyhedron one_up_three_down() {
  return HS3Polyhedron({v4(2, 1, 0, 0), v4(-2, 1, 0.5, 0), v4(-2, 1, -0.25, 0.43), v4(-2, 1, -0.25, -0.43)}, kTetraFaces);
}

HS3Polyhedron all_up(const FormVector& a, const FormVector& b, const FormVector& c, const FormVector& d) {
  return HS3Polyhedron({a, b, c, d}, kTetraFaces);
}

// Triangular bipyramid around a de Sitter point, steep enough that every face is timelike.
HS3Polyhedron de_sitter_bipyramid() {
  const double r = 0.2;
  return hull_in_chart({{0.3, 0, 0}, {-0.3, 0, 0}, {0, r, 0}, {0, -r / 2, r * std::sqrt(3.0) / 2}, {0, -r / 2, -r * std::sqrt(3.0) / 2}});
}

int face_with(const HS3Polyhedron& p, std::set<int> verts) {
  for (size_t f = 0; f < p.faces().size(); ++f) {
    if (std::set<int>(p.faces()[f].begin(), p.faces()[f].end()) == verts) return static_cast<int>(f);
  }
  FAIL("no such face");
  return -1;
}

// Unit tangent at a normalized vertex pointing along the segment toward u.
Eigen::Vector4d tangent_toward(const Eigen::Vector4d& v, const Eigen::Vector4d& u) {
  const Eigen::Vector4d eta(-1, 1, 1, 1);
  const double vv = v.dot(eta.asDiagonal() * v);
  const Eigen::Vector4d t = u - (v.dot(eta.asDiagonal() * u) / vv) * v;
  return t / std::sqrt(std::abs(t.dot(eta.asDiagonal() * t)));
}

double lorentz_dot(const Eigen::Vector4d& a, const Eigen::Vector4d& b) { return -a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]; }

// Cone angle at a timelike vertex as the sum of Euclidean angles in its tangent space.
double tangent_cone_angle(const HS3Polyhedron& p, int v) {
  const Eigen::Vector4d x = to_eigen(p.vertices()[static_cast<size_t>(v)]);
  double sum = 0;
  for (const auto& c : p.corners(v)) {
    const Eigen::Vector4d a = tangent_toward(x, to_eigen(p.vertices()[static_cast<size_t>(c.from)]));
    const Eigen::Vector4d b = tangent_toward(x, to_eigen(p.vertices()[static_cast<size_t>(c.to)]));
    sum += std::acos(std::clamp(lorentz_dot(a, b), -1.0, 1.0));
  }
  return sum;
}

// Face angle at u of a triangle inside one hyperbolic sheet, from side lengths.
double hyperbolic_corner(const FormVector& u, const FormVector& v, const FormVector& w) {
  auto dist = [](const FormVector& x, const FormVector& y) {
    return std::acosh(std::max(1.0, std::abs(inner(x, y)) / std::sqrt(evaluate_form(x) * evaluate_form(y))));
  };
  const double a = dist(v, w);
  const double b = dist(u, w);
  const double c = dist(u, v);
  return std::acos((std::cosh(b) * std::cosh(c) - std::cosh(a)) / (std::sinh(b) * std::sinh(c)));
}

FormVector random_future(Rng& rng) {
  const double r = testing::uniform(rng, 0.1, 1.5);
  const double th = testing::uniform(rng, 0, kPi);
  const double ph = testing::uniform(rng, 0, kTwoPi);
  return v4(std::cosh(r), std::sinh(r) * std::sin(th) * std::cos(ph), std::sinh(r) * std::sin(th) * std::sin(ph),
            std::sinh(r) * std::cos(th));
}

Eigen::Matrix4d random_lorentz(Rng& rng) {
  Eigen::Matrix3d a;
  for (int i = 0; i < 9; ++i) a(i / 3, i % 3) = testing::uniform(rng, -1, 1);
  Eigen::Matrix3d q = Eigen::HouseholderQR<Eigen::Matrix3d>(a).householderQ();
  if (q.determinant() < 0) q.col(0) *= -1;
  Eigen::Matrix4d rot = Eigen::Matrix4d::Identity();
  rot.block<3, 3>(1, 1) = q;
  const double phi = testing::uniform(rng, -1.5, 1.5);
  Eigen::Matrix4d boost = Eigen::Matrix4d::Identity();
  boost(0, 0) = boost(1, 1) = std::cosh(phi);
  boost(0, 1) = boost(1, 0) = std::sinh(phi);
  return rot * boost;
}

HS3Polyhedron transformed(const HS3Polyhedron& p, const Eigen::Matrix4d& m) {
  std::vector<FormVector> vs;
  for (const auto& v : p.vertices()) vs.push_back(from_eigen(m * to_eigen(v)));
  return HS3Polyhedron(vs, p.faces());
}

// Monte Carlo stand-in for the hull-membership test: random nonnegative
// combinations of the vertex rays, reporting which time cones they reach.
std::pair<bool, bool> sampled_hull_hits(const HS3Polyhedron& p, Rng& rng, int samples) {
  bool future = false;
  bool past = false;
  std::exponential_distribution<double> gamma1(1.0);
  for (int s = 0; s < samples; ++s) {
    Eigen::Vector4d x = Eigen::Vector4d::Zero();
    for (const auto& v : p.vertices()) {
      const Eigen::Vector4d e = to_eigen(v);
      x += gamma1(rng) * e / e.norm();
    }
    if (lorentz_dot(x, x) < 0) (x[0] > 0 ? future : past) = true;
  }
  return {future, past};
}

}  // namespace

TEST_CASE("type classification examples") {
  CHECK(classify_polyhedron(one_up_three_down()) == PolyhedronType::BiHyperbolic);
  Rng rng(5);
  CHECK(classify_polyhedron(all_up(random_future(rng), random_future(rng), random_future(rng), random_future(rng))) ==
        PolyhedronType::Hyperbolic);
  const HS3Polyhedron compact = hull_in_chart({{0.6, 0, 0}, {-0.6, 0, 0}, {0, 1.5, 0}, {0, 0, 1.5}});
  CHECK(classify_polyhedron(compact) == PolyhedronType::Compact);
  CHECK(classify_polyhedron(de_sitter_bipyramid()) == PolyhedronType::Compact);

  for (const HS3Polyhedron& p : {compact, de_sitter_bipyramid()}) {
    const auto [f, q] = sampled_hull_hits(p, rng, 20000);
    CHECK_FALSE(f);
    CHECK_FALSE(q);
  }
  const auto [f, q] = sampled_hull_hits(one_up_three_down(), rng, 20000);
  CHECK(f);
  CHECK(q);
}

TEST_CASE("face causal types") {
  const HS3Polyhedron cone({v4(1, 0, 0, 0), v4(0, 1, 0, 0), v4(0, 0, 1, 0), v4(0, 0, 0, 1)}, kTetraFaces);
  CHECK(face_causal_type(cone, face_with(cone, {1, 2, 3})) == CausalClass::Spacelike);
  CHECK(face_causal_type(cone, face_with(cone, {0, 1, 2})) == CausalClass::Timelike);
  const InducedReport r = induced_structure(cone);
  CHECK_FALSE(r.is_hs_structure);
  CHECK(r.offending_faces == std::vector<int>{face_with(cone, {1, 2, 3})});
  CHECK_FALSE(r.positivity.has_value());
  CHECK_FALSE(r.positive_mass.has_value());

  // Three vertices on the degenerate hyperplane x0 = x1.
  const HS3Polyhedron tangent({v4(1, 1, 1, 0), v4(1, 1, 0, 1), v4(1, 1, -1, -1), v4(1, 0, 0, 0)}, kTetraFaces);
  CHECK(face_causal_type(tangent, face_with(tangent, {0, 1, 2})) == CausalClass::Lightlike);
}

TEST_CASE("invalid polyhedra") {
  CHECK_THROWS_AS(HS3Polyhedron({v4(1, 1, 0, 0), v4(0, 1, 0, 0), v4(0, 0, 1, 0), v4(0, 0, 0, 1)}, kTetraFaces), PreconditionError);
  CHECK_THROWS_AS(HS3Polyhedron({v4(2, 1, 0, 0), v4(-2, -1, 0, 0), v4(0, 0, 1, 0), v4(0, 0, 0, 1)}, kTetraFaces), InputError);
  CHECK_THROWS_AS(HS3Polyhedron({v4(2, 1, 0, 0), v4(0, 1, 0, 0), v4(0, 0, 1, 0), v4(0, 0, 0, 1)}, {{0, 1, 2}, {0, 1, 3}}), InputError);
  // A tetrahedron whose base is pushed in to a vertex lying inside it.
  const std::vector<FormVector> dented{v4(0, 1, 0.5, 0), v4(0, 1, -0.25, 0.43), v4(0, 1, -0.25, -0.43), v4(0.5, 1, 0, 0),
                                       v4(0.1, 1, 0, 0)};
  CHECK_THROWS_AS(HS3Polyhedron(dented, {{0, 1, 3}, {1, 2, 3}, {2, 0, 3}, {0, 1, 4}, {1, 2, 4}, {2, 0, 4}}), InputError);
}

TEST_CASE("bi-hyperbolic tetrahedron") {
  const HS3Polyhedron p = one_up_three_down();
  const InducedReport r = induced_structure(p);
  CHECK(r.is_hs_structure);
  CHECK(r.positivity == true);
  CHECK(r.positive_mass == true);
  REQUIRE(r.annulus_geodesic_length.has_value());
  CHECK(*r.annulus_geodesic_length < kTwoPi);
  REQUIRE(r.particle_dictionary.size() == 4);
  for (const auto& [v, t] : r.particle_dictionary) {
    REQUIRE(std::holds_alternative<MassiveParticle>(t));
    CHECK(std::get<MassiveParticle>(t).side == (v == 0 ? TimeSide::Future : TimeSide::Past));
  }
  for (int v = 0; v < 4; ++v) CHECK(std::abs(vertex_cone_angle(p, v) - tangent_cone_angle(p, v)) < 1e-9);
}

TEST_CASE("compact bipyramid: BTZ pair and three tachyons") {
  const HS3Polyhedron p = de_sitter_bipyramid();
  const InducedReport r = induced_structure(p);
  CHECK(r.is_hs_structure);
  CHECK(r.positivity == true);
  CHECK_FALSE(r.positive_mass.has_value());
  int btz = 0;
  int tachyons = 0;
  for (const auto& [v, t] : r.particle_dictionary) {
    if (std::holds_alternative<BTZ>(t)) ++btz;
    if (std::holds_alternative<Tachyon>(t)) ++tachyons;
  }
  CHECK(btz == 2);
  CHECK(tachyons == 3);

  // A degree 0 de Sitter vertex: the link holonomy translates by the sum of
  // the hyperbolic angles between the timelike edges around it.
  for (const auto& vl : r.vertex_links) {
    if (!vl.type || !std::holds_alternative<BTZ>(*vl.type)) continue;
    const Eigen::Vector4d x = to_eigen(p.vertices()[static_cast<size_t>(vl.vertex)]);
    double sum = 0;
    for (const auto& c : p.corners(vl.vertex)) {
      const Eigen::Vector4d a = tangent_toward(x, to_eigen(p.vertices()[static_cast<size_t>(c.from)]));
      const Eigen::Vector4d b = tangent_toward(x, to_eigen(p.vertices()[static_cast<size_t>(c.to)]));
      sum += std::acosh(std::abs(lorentz_dot(a, b)));
    }
    REQUIRE(vl.link.has_value());
    const double translation = 2 * std::acosh(std::abs(vl.link->holonomy.base().trace()) / 2);
    CHECK(translation == doctest::Approx(sum).epsilon(1e-9));
  }
}

TEST_CASE("positive mass on suspended massive particle links") {
  CHECK(positive_mass(link_suspension_surface(model_link(MassiveParticle{kPi, TimeSide::Future}))) == true);
  CHECK(positive_mass(link_suspension_surface(model_link(MassiveParticle{3 * kPi, TimeSide::Future}))) == false);
  // A regular point has zero mass, which is not positive.
  CHECK(positive_mass(regular_hs2()) == false);
}

TEST_CASE("property: cone angles of hyperbolic tetrahedra") {
  Rng rng(17);
  for (int i = 0; i < 300; ++i) {
    const FormVector a = random_future(rng), b = random_future(rng), c = random_future(rng), d = random_future(rng);
    std::optional<HS3Polyhedron> p;
    try {
      p = all_up(a, b, c, d);
    } catch (const InputError&) {
      continue;  // nearly flat
    }
    for (int v = 0; v < 4; ++v) {
      double expected = 0;
      for (const auto& corner : p->corners(v)) {
        expected += hyperbolic_corner(p->vertices()[static_cast<size_t>(v)], p->vertices()[static_cast<size_t>(corner.from)],
                                      p->vertices()[static_cast<size_t>(corner.to)]);
      }
      REQUIRE(vertex_cone_angle(*p, v) == doctest::Approx(expected).epsilon(1e-9));
      REQUIRE(vertex_cone_angle(*p, v) < kTwoPi);
    }
  }
}

TEST_CASE("property: random bi-hyperbolic polyhedra induce positive causal structures") {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const HS3Polyhedron p = random_bihyperbolic(seed);
    REQUIRE(classify_polyhedron(p) == PolyhedronType::BiHyperbolic);
    for (size_t f = 0; f < p.faces().size(); ++f) REQUIRE(face_causal_type(p, static_cast<int>(f)) == CausalClass::Timelike);
    const InducedReport r = induced_structure(p);
    REQUIRE(r.is_hs_structure);
    REQUIRE(r.positivity == true);
    REQUIRE(r.positive_mass == true);
    for (size_t v = 0; v < p.vertices().size(); ++v) {
      const HS2Region reg = p.vertex_region(static_cast<int>(v));
      if (reg != HS2Region::HypPlus && reg != HS2Region::HypMinus) continue;
      REQUIRE(vertex_cone_angle(p, static_cast<int>(v)) < kTwoPi);
      REQUIRE(std::abs(vertex_cone_angle(p, static_cast<int>(v)) - tangent_cone_angle(p, static_cast<int>(v))) < 1e-9);
    }
  }
}

TEST_CASE("property: type and face types are Lorentz invariant") {
  Rng rng(23);
  std::vector<HS3Polyhedron> shapes{one_up_three_down(), de_sitter_bipyramid(),
                                    all_up(random_future(rng), random_future(rng), random_future(rng), random_future(rng))};
  for (std::uint64_t s = 0; s < 20; ++s) shapes.push_back(random_bihyperbolic(100 + s));
  for (const auto& p : shapes) {
    for (int k = 0; k < 10; ++k) {
      const HS3Polyhedron q = transformed(p, random_lorentz(rng));
      REQUIRE(classify_polyhedron(q) == classify_polyhedron(p));
      for (size_t f = 0; f < p.faces().size(); ++f) {
        REQUIRE(face_causal_type(q, static_cast<int>(f)) == face_causal_type(p, static_cast<int>(f)));
      }
    }
  }
}
