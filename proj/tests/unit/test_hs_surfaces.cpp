#include <doctest.h>

#include <algorithm>

#include "adsgeom/errors.hpp"
#include "adsgeom/hs_surfaces.hpp"
#include "support.hpp"

using namespace adsgeom;
using testing::Rng;

namespace {

FormVector hyp_point(double r, double a, int sheet) {
  return FormVector(Form::Q12, {sheet * std::cosh(r), std::sinh(r) * std::cos(a), std::sinh(r) * std::sin(a)});
}

FormVector ds_point(double r, double a) {
  return FormVector(Form::Q12, {std::sinh(r), std::cosh(r) * std::cos(a), std::cosh(r) * std::sin(a)});
}

FormVector random_point(Rng& rng, HS2Region r) {
  const double a = testing::uniform(rng, 0, kTwoPi);
  switch (r) {
    case HS2Region::HypPlus: return hyp_point(testing::uniform(rng, 0.1, 2), a, 1);
    case HS2Region::HypMinus: return hyp_point(testing::uniform(rng, 0.1, 2), a, -1);
    default: return ds_point(testing::uniform(rng, -1.5, 1.5), a);
  }
}

// Angle at u of the hyperbolic triangle uvw, from side lengths alone.
double law_of_cosines_angle(const FormVector& u, const FormVector& v, const FormVector& w) {
  auto dist = [](const FormVector& x, const FormVector& y) { return std::acosh(std::max(1.0, -inner(x, y))); };
  const double a = dist(v, w);
  const double b = dist(u, w);
  const double c = dist(u, v);
  return std::acos((std::cosh(b) * std::cosh(c) - std::cosh(a)) / (std::sinh(b) * std::sinh(c)));
}

double cone_angle_of(const HSSurface& s, const std::string& label) {
  for (size_t i = 0; i < s.singularities().size(); ++i) {
    if (s.singularities()[i].label == label) return std::get<MassiveParticle>(s.singularity_types()[i]).angle;
  }
  FAIL("no singularity " << label);
  return 0;
}

int count_kind(const HSSurface& s, RegionKind k) {
  return static_cast<int>(std::count_if(s.regions().begin(), s.regions().end(), [k](const Region& r) { return r.kind == k; }));
}

HSSurface up_down_down() {
  return double_triangle(HS2Triangle(hyp_point(0, 0, 1), hyp_point(1.0, 0.3, -1), hyp_point(1.2, 2.5, -1)));
}

}  // namespace

TEST_CASE("doubling a triangle with one future and two past vertices") {
  const HSSurface s = up_down_down();
  CHECK(s.is_sphere());
  const Census c = region_decomposition(s);
  CHECK(c.future_regions.size() == 1);
  CHECK(c.past_regions.size() == 1);
  REQUIRE(c.de_sitter_regions.size() == 1);
  CHECK(s.regions()[static_cast<size_t>(c.de_sitter_regions[0])].topology() == Topology::Annulus);
  CHECK(c.photon_circles == 2);
  CHECK(s.singularities_in_region(c.future_regions[0]).size() == 1);
  CHECK(s.singularities_in_region(c.past_regions[0]).size() == 2);
  for (const auto& t : s.singularity_types()) CHECK(std::holds_alternative<MassiveParticle>(t));
  CHECK(surface_causal(s).causal);
  CHECK(classify_interaction(s) == InteractionClass::CausallyRegular);
}

TEST_CASE("doubling triangles inside one sheet") {
  const HSSurface up = double_triangle(HS2Triangle(hyp_point(0, 0, 1), hyp_point(1, 0, 1), hyp_point(1, 1.5, 1)));
  CHECK(up.regions().size() == 1);
  CHECK(up.regions()[0].kind == RegionKind::FutureHyperbolic);
  CHECK(up.regions()[0].topology() == Topology::Sphere);
  CHECK(classify_interaction(up) == InteractionClass::BigBang);

  const HSSurface down = double_triangle(HS2Triangle(hyp_point(0, 0, -1), hyp_point(1, 0, -1), hyp_point(1, 1.5, -1)));
  CHECK(count_kind(down, RegionKind::PastHyperbolic) == 1);
  CHECK(count_kind(down, RegionKind::DeSitter) == 0);
  CHECK(classify_interaction(down) == InteractionClass::BigCrunch);
}

TEST_CASE("equilateral triangle with angle pi/6") {
  const double alpha = kPi / 6;
  // Side length of the equilateral triangle from the hyperbolic law of cosines.
  const double side = std::acosh(std::cos(alpha) / (1 - std::cos(alpha)));
  const HS2Triangle t(hyp_point(0, 0, 1), hyp_point(side, 0, 1), hyp_point(side, alpha, 1));
  const HSSurface s = double_triangle(t);
  for (const char* v : {"v0", "v1", "v2"}) CHECK(std::abs(cone_angle_of(s, v) - kPi / 3) < 1e-9);
}

TEST_CASE("regular HS2") {
  const HSSurface s = regular_hs2();
  const Census c = region_decomposition(s);
  CHECK(c.future_regions.size() == 1);
  CHECK(c.past_regions.size() == 1);
  CHECK(c.de_sitter_regions.size() == 1);
  CHECK(c.photon_circles == 2);
  CHECK(s.singularities().empty());
  CHECK(surface_causal(s).causal);
  for (int circle = 0; circle < 2; ++circle) {
    const auto [hyp, ds] = photon_circle_structures(s, circle);
    for (const RP1Circle& side : {hyp, ds}) {
      const auto inv = classify_rp1_circle(side);
      REQUIRE(std::holds_alternative<EllipticCircle>(inv));
      CHECK(std::get<EllipticCircle>(inv).angle == doctest::Approx(kTwoPi));
    }
  }
}

TEST_CASE("de Sitter topology") {
  CHECK(de_sitter_topology_check(regular_hs2()));
  CHECK(de_sitter_topology_check(btz_pair_sphere(2.0)));

  const HSSurface disk({{RegionKind::FutureHyperbolic, 0, 1, std::nullopt, "f"}, {RegionKind::DeSitter, 0, 1, std::nullopt, "d"}},
                       {{0, 1, LiftedIsometry(1, ProjMatrix::identity()), {}}}, {});
  CHECK_FALSE(de_sitter_topology_check(disk));
}

TEST_CASE("photon circles around a non-disk hyperbolic region") {
  const LiftedIsometry hol(0, diagonal_boost(2.0));
  ModelParams p;
  p.length = 2.0;
  const HSSurface s({{RegionKind::FutureHyperbolic, 0, 2, std::nullopt, "f"},
                     {RegionKind::DeSitter, 0, 1, std::nullopt, "d1"},
                     {RegionKind::DeSitter, 0, 1, std::nullopt, "d2"}},
                    {{0, 1, hol, {}}, {0, 2, hol, {}}},
                    {{"b1", 1, -1, model_link(BTZ{TimeSide::Past}, p)}, {"b2", 2, -1, model_link(BTZ{TimeSide::Past}, p)}});
  CHECK(hyperbolic_degree_zero_check(s));
  CHECK(de_sitter_topology_check(s));
  const auto [hyp, ds] = photon_circle_structures(s, 0);
  const auto inv = classify_rp1_circle(hyp);
  REQUIRE(std::holds_alternative<HyperbolicCircle>(inv));
  CHECK(std::get<HyperbolicCircle>(inv).degree == 0);
  CHECK(std::get<HyperbolicCircle>(classify_rp1_circle(ds)).length == doctest::Approx(2.0));

  const HSSurface bad({{RegionKind::FutureHyperbolic, 0, 2, std::nullopt, "f"},
                       {RegionKind::DeSitter, 0, 1, std::nullopt, "d1"},
                       {RegionKind::DeSitter, 0, 1, std::nullopt, "d2"}},
                      {{0, 1, elliptic_lift(1.0), {}}, {0, 2, hol, {}}}, {});
  CHECK_FALSE(hyperbolic_degree_zero_check(bad));
}

TEST_CASE("causality and interactions of special surfaces") {
  const LinkCircle misner = model_link(Misner{});
  const HSSurface m({{RegionKind::DeSitter, 0, 0, std::nullopt, "d"}}, {}, {{"m", 0, -1, misner}, {"b", 0, -1, model_link(BTZ{TimeSide::Past})}});
  const CausalVerdict v = surface_causal(m);
  CHECK_FALSE(v.causal);
  CHECK(std::find(v.reasons.begin(), v.reasons.end(), Violation::MisnerCTC) != v.reasons.end());

  CHECK(classify_interaction(btz_pair_sphere(1.5)) == InteractionClass::BlackWhiteInteraction);
  CHECK(classify_interaction(double_triangle(btz_collision_triangle(1.0))) == InteractionClass::BlackHoleInteraction);
  CHECK_THROWS_AS(classify_interaction(HSSurface({{RegionKind::DeSitter, 0, 0, std::nullopt, "d"}}, {},
                                                 {{"p", 0, -1, model_link(Photon{-1, TimeSide::Future})}})),
                  PreconditionError);
}

TEST_CASE("first-return maps") {
  const ProjMatrix base(std::exp(1.0), 0, 0, std::exp(-1.0));
  const CCCResult plain = detect_ccc(FirstReturnSystem{base, {}, 0});
  CHECK(plain.has_ccc);
  REQUIRE(plain.closed_leaves.size() == 2);
  CHECK(plain.closed_leaves[0].y < plain.closed_leaves[1].y);

  CHECK(detect_ccc(FirstReturnSystem{base, {LeafSurgery::parabolic(std::exp(1.0), 1.0, +1)}, 0}).has_ccc);
  const double thr = negative_surgery_threshold(base, std::exp(1.0));
  CHECK(std::isfinite(thr));
  CHECK_FALSE(detect_ccc(FirstReturnSystem{base, {LeafSurgery::parabolic(std::exp(1.0), 2 * thr, -1)}, 0}).has_ccc);
  CHECK(detect_ccc(FirstReturnSystem{base, {LeafSurgery::parabolic(std::exp(1.0), 0.5 * thr, -1)}, 0}).has_ccc);

  CHECK_THROWS_AS(validate(FirstReturnSystem{base, {LeafSurgery::parabolic(0.5, 1.0, +1)}, 0}), PreconditionError);
  CHECK_THROWS_AS(detect_ccc(FirstReturnSystem{rotation(0.3), {}, 0}), PreconditionError);
}

TEST_CASE("property: doubled cone angles are twice the interior angles") {
  Rng rng(41);
  for (int i = 0; i < 500; ++i) {
    const FormVector a = random_point(rng, HS2Region::HypPlus);
    const FormVector b = random_point(rng, HS2Region::HypPlus);
    const FormVector c = random_point(rng, HS2Region::HypPlus);
    const HSSurface s = double_triangle(HS2Triangle(a, b, c));
    REQUIRE(std::abs(cone_angle_of(s, "v0") - 2 * law_of_cosines_angle(a, b, c)) < 1e-9);
    REQUIRE(std::abs(cone_angle_of(s, "v1") - 2 * law_of_cosines_angle(b, c, a)) < 1e-9);
    REQUIRE(std::abs(cone_angle_of(s, "v2") - 2 * law_of_cosines_angle(c, a, b)) < 1e-9);
  }
}

TEST_CASE("property: census and de Sitter topology on generated surfaces") {
  Rng rng(42);
  const HS2Region kinds[] = {HS2Region::HypPlus, HS2Region::HypMinus, HS2Region::DeSitter};
  int built = 0;
  int classified = 0;
  for (int i = 0; i < 600; ++i) {
    const HS2Region r0 = kinds[rng() % 3];
    const HS2Region r1 = kinds[rng() % 3];
    const HS2Region r2 = kinds[rng() % 3];
    std::optional<HSSurface> s;
    try {
      s = double_triangle(HS2Triangle(random_point(rng, r0), random_point(rng, r1), random_point(rng, r2)));
    } catch (const PreconditionError&) {
      continue;  // degenerate configurations are rejected up front
    }
    ++built;
    REQUIRE(s->is_sphere());
    REQUIRE(de_sitter_topology_check(*s));
    const Census c = region_decomposition(*s);
    try {
      const InteractionClass k = classify_interaction(*s);
      ++classified;
      if (k == InteractionClass::CausallyRegular) {
        REQUIRE(c.future_regions.size() == 1);
        REQUIRE(c.past_regions.size() == 1);
        REQUIRE(c.de_sitter_regions.size() == 1);
      }
    } catch (const PreconditionError&) {
    }
  }
  CHECK(built > 200);
  CHECK(classified > 100);
}

TEST_CASE("property: two future regions are rejected") {
  const LiftedIsometry full(1, ProjMatrix::identity());
  const HSSurface s({{RegionKind::FutureHyperbolic, 0, 1, std::nullopt, "f1"},
                     {RegionKind::FutureHyperbolic, 0, 1, std::nullopt, "f2"},
                     {RegionKind::DeSitter, 0, 2, std::nullopt, "d"}},
                    {{0, 2, full, {}}, {1, 2, full, {}}}, {});
  CHECK_THROWS_AS(classify_interaction(s), PreconditionError);
}

TEST_CASE("property: positive surgeries keep closed leaves, large negative ones remove them") {
  Rng rng(43);
  for (int i = 0; i < 200; ++i) {
    const double len = testing::uniform(rng, 0.5, 4);
    const ProjMatrix base = diagonal_boost(len);
    const double site = std::exp(testing::uniform(rng, 0.05, 0.95) * len);
    const double t = testing::uniform(rng, 0.01, 20);
    REQUIRE(detect_ccc(FirstReturnSystem{base, {LeafSurgery::parabolic(site, t, +1)}, 0}).has_ccc);
    bool lost = false;
    for (double s = 0.01; s < 1e3 && !lost; s *= 2) {
      lost = !detect_ccc(FirstReturnSystem{base, {LeafSurgery::parabolic(site, s, -1)}, 0}).has_ccc;
    }
    REQUIRE(lost);
  }
}
