#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>

#include "adsgeom/errors.hpp"
#include "adsgeom/isometries.hpp"
#include "support.hpp"

using namespace adsgeom;
using testing::Rng;

namespace {

// Boundary action written out from scratch: angle t is the line through
// (cos t/2, -sin t/2).
double act(const ProjMatrix& g, double t) {
  const double v0 = std::cos(0.5 * t);
  const double v1 = -std::sin(0.5 * t);
  const double w0 = g.a() * v0 + g.b() * v1;
  const double w1 = g.c() * v0 + g.d() * v1;
  double out = std::fmod(-2.0 * std::atan2(w1, w0), kTwoPi);
  return out < 0 ? out + kTwoPi : out;
}

// Displacement in [0, 2pi); continuous for elliptic elements.
double displacement(const ProjMatrix& g, double t) {
  double d = std::fmod(act(g, t) - t, kTwoPi);
  return d < 0 ? d + kTwoPi : d;
}

// Rotation number of the lift x -> x + displacement(x), by iteration.
double rotation_number_oracle(const ProjMatrix& g, int steps) {
  double x = 0.3;
  for (int i = 0; i < steps; ++i) x += displacement(g, std::fmod(x, kTwoPi));
  return (x - 0.3) / steps;
}

std::string pattern(const ProjMatrix& g) {
  bool hyp = false;
  bool ds = false;
  for (const auto& r : fixed_points_hs2(g)) {
    hyp |= r.region == HS2Region::HypPlus;
    ds |= r.region == HS2Region::DeSitter;
  }
  return hyp ? "elliptic" : ds ? "hyperbolic" : "parabolic";
}

Eigen::Matrix3d q12_gram() { return Eigen::Vector3d(-1, 1, 1).asDiagonal(); }

}  // namespace

TEST_CASE("matrix construction and parsing") {
  CHECK_THROWS_AS(ProjMatrix(1, 2, 3, 4), InputError);
  CHECK_THROWS_AS(parse_matrix("1,0,0"), InputError);
  CHECK_THROWS_AS(parse_matrix("1,x,0,1"), InputError);
  const ProjMatrix g = parse_matrix("2,1,1,1");
  CHECK(g.trace() == 3);
  CHECK(approx_equal(parse_matrix(format_matrix(g)), g, 0));
  // Projective: g and -g are the same element.
  CHECK(approx_equal(ProjMatrix(-2, -1, -1, -1), g));
}

TEST_CASE("classification examples") {
  const auto e = classify_isometry(ProjMatrix(std::cos(kPi / 4), -std::sin(kPi / 4), std::sin(kPi / 4), std::cos(kPi / 4)));
  REQUIRE(std::holds_alternative<Elliptic>(e));
  // Boundary angles increase in the direction a positive parabolic moves
  // points, so the rotation block by phi displaces by 2pi - 2phi.
  CHECK(std::get<Elliptic>(e).angle == doctest::Approx(3 * kPi / 2).epsilon(1e-12));
  CHECK(std::get<Elliptic>(e).angle == doctest::Approx(rotation_number_oracle(rotation(kPi / 4), 20000)).epsilon(1e-3));
  CHECK(std::get<Elliptic>(classify_isometry(ProjMatrix(0, -1, 1, 0))).angle == doctest::Approx(kPi));
  CHECK(std::holds_alternative<ParabolicPositive>(classify_isometry(unipotent(1))));
  CHECK(std::holds_alternative<ParabolicNegative>(classify_isometry(unipotent(-1))));
  const auto h = classify_isometry(ProjMatrix(std::exp(1.0), 0, 0, std::exp(-1.0)));
  REQUIRE(std::holds_alternative<Hyperbolic>(h));
  CHECK(std::get<Hyperbolic>(h).translation_length == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::holds_alternative<Identity>(classify_isometry(ProjMatrix::identity())));
  CHECK(std::holds_alternative<Identity>(classify_isometry(ProjMatrix(-1, 0, 0, -1))));
}

TEST_CASE("positive parabolic moves boundary points forward") {
  const LiftedIsometry l = lift_canonical(unipotent(1));
  for (int i = 0; i < 64; ++i) {
    const double x = kTwoPi * i / 64.0;
    CHECK(l(x) >= x - 1e-12);
  }
}

TEST_CASE("fixed points on the projective line") {
  const auto two = fixed_points_rp1(ProjMatrix(2, 1, 1, 1));
  REQUIRE(two.points.size() == 2);
  std::vector<double> got;
  for (const auto& p : two.points) got.push_back(*p.affine());
  std::sort(got.begin(), got.end());
  // Bisection on (2x + 1)/(x + 1) - x over brackets around each root.
  auto f = [](double x) { return (2 * x + 1) / (x + 1) - x; };
  auto bisect = [&](double lo, double hi) {
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      (f(lo) * f(mid) <= 0 ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
  };
  CHECK(got[0] == doctest::Approx((1 - std::sqrt(5.0)) / 2).epsilon(1e-12));
  CHECK(got[1] == doctest::Approx((1 + std::sqrt(5.0)) / 2).epsilon(1e-12));
  CHECK(got[0] == doctest::Approx(bisect(-0.9, 0.0)).epsilon(1e-12));
  CHECK(got[1] == doctest::Approx(bisect(1.0, 2.0)).epsilon(1e-12));

  const auto one = fixed_points_rp1(unipotent(1));
  REQUIRE(one.points.size() == 1);
  CHECK_FALSE(one.points[0].affine().has_value());
  CHECK(fixed_points_rp1(rotation(kPi / 4)).points.empty());
  CHECK(fixed_points_rp1(ProjMatrix::identity()).all);
}

TEST_CASE("fixed rays in HS2") {
  auto regions = [](const ProjMatrix& g) {
    std::vector<HS2Region> r;
    for (const auto& f : fixed_points_hs2(g)) r.push_back(f.region);
    std::sort(r.begin(), r.end());
    return r;
  };
  CHECK(regions(rotation(0.7)) == std::vector<HS2Region>{HS2Region::HypPlus, HS2Region::HypMinus});
  CHECK(regions(diagonal_boost(2)) ==
        std::vector<HS2Region>{HS2Region::DeSitter, HS2Region::DeSitter, HS2Region::BoundaryPlus,
                               HS2Region::BoundaryPlus, HS2Region::BoundaryMinus, HS2Region::BoundaryMinus});
  CHECK(regions(unipotent(1)) == std::vector<HS2Region>{HS2Region::BoundaryPlus, HS2Region::BoundaryMinus});
  CHECK_THROWS_AS(fixed_points_hs2(ProjMatrix::identity()), PreconditionError);
}

TEST_CASE("adjoint representation") {
  CHECK(adjoint_so12(ProjMatrix::identity()).isApprox(Eigen::Matrix3d::Identity(), 1e-15));
  CHECK(adjoint_so12(ProjMatrix(-1, 0, 0, -1)).isApprox(Eigen::Matrix3d::Identity(), 1e-15));
  Eigen::Vector3d ev = Eigen::EigenSolver<Eigen::Matrix3d>(adjoint_so12(diagonal_boost(2))).eigenvalues().real();
  std::sort(ev.data(), ev.data() + 3);
  CHECK(ev(0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
  CHECK(ev(1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ev(2) == doctest::Approx(std::exp(2.0)).epsilon(1e-12));
}

TEST_CASE("lifts") {
  CHECK(lift_canonical(ProjMatrix::identity()) == LiftedIsometry::identity());
  // The canonical lift of a parabolic fixes the lifts of its fixed point.
  const double x0 = fixed_points_rp1(unipotent(1)).points[0].angle();
  CHECK(lift_canonical(unipotent(1))(x0) == doctest::Approx(x0).epsilon(1e-12));
  for (double th : {0.4, 2.0, 3.5, 6.0}) {
    CHECK(translation_number(elliptic_lift(th)) == doctest::Approx(th).epsilon(1e-12));
    CHECK(translation_number(elliptic_lift(th)) == doctest::Approx(rotation_number_oracle(elliptic_lift(th).base(), 10000)).epsilon(1e-3));
  }
  CHECK(compose_lifted(LiftedIsometry(2, ProjMatrix::identity()), LiftedIsometry(-5, ProjMatrix::identity())) ==
        LiftedIsometry(-3, ProjMatrix::identity()));
  const LiftedIsometry sum = compose_lifted(elliptic_lift(4.0), elliptic_lift(3.5));
  CHECK(sum.degree() == 1);
  CHECK(approx_equal(sum.base(), elliptic_lift(7.5 - kTwoPi).base(), 1e-12));
  const LiftedIsometry a(3, diagonal_boost(1.3));
  CHECK(compose_lifted(a, a.inverse()) == LiftedIsometry::identity());
  CHECK(translation_number(LiftedIsometry(4, ProjMatrix::identity())) == doctest::Approx(4 * kTwoPi));
  CHECK(translation_number(lift_canonical(diagonal_boost(1))) == 0);
  CHECK(translation_number(lift_canonical(unipotent(-2))) == 0);
}

TEST_CASE("property: class is conjugation invariant") {
  Rng rng(21);
  for (int i = 0; i < 10000; ++i) {
    const ProjMatrix g = testing::random_sl2(rng);
    const ProjMatrix h = testing::random_sl2(rng, 1.5);
    const IsomClass a = classify_isometry(g);
    const IsomClass b = classify_isometry(testing::conjugate(g, h));
    REQUIRE(a.index() == b.index());
    if (auto* e = std::get_if<Elliptic>(&a)) REQUIRE(std::abs(e->angle - std::get<Elliptic>(b).angle) < 1e-9);
    if (auto* y = std::get_if<Hyperbolic>(&a)) {
      REQUIRE(std::abs(y->translation_length - std::get<Hyperbolic>(b).translation_length) < 1e-9);
    }
  }
}

TEST_CASE("property: parabolic conjugates keep their sign") {
  Rng rng(22);
  for (int i = 0; i < 2000; ++i) {
    const double t = testing::uniform(rng, 0.1, 4) * (i % 2 ? 1 : -1);
    const IsomClass c = classify_isometry(testing::conjugate(unipotent(t), testing::random_sl2(rng)));
    REQUIRE(std::holds_alternative<ParabolicPositive>(c) == (t > 0));
    REQUIRE(std::holds_alternative<ParabolicNegative>(c) == (t < 0));
  }
}

TEST_CASE("property: trace class matches fixed-ray pattern") {
  Rng rng(23);
  for (int i = 0; i < 10000; ++i) {
    ProjMatrix g = testing::random_sl2(rng);
    if (i % 4 == 1) g = testing::conjugate(unipotent(testing::uniform(rng, -3, 3)), testing::random_sl2(rng));
    if (g.is_identity()) continue;
    std::string kind(isom_kind(classify_isometry(g)));
    if (kind.rfind("parabolic", 0) == 0) kind = "parabolic";
    REQUIRE(pattern(g) == kind);
  }
}

TEST_CASE("property: adjoint is a homomorphism into SO(1,2)") {
  Rng rng(24);
  for (int i = 0; i < 2000; ++i) {
    const ProjMatrix g = testing::random_sl2(rng);
    const ProjMatrix h = testing::random_sl2(rng);
    const Eigen::Matrix3d ag = adjoint_so12(g);
    REQUIRE((adjoint_so12(g * h) - ag * adjoint_so12(h)).cwiseAbs().maxCoeff() < 1e-9 * std::max(1.0, ag.norm()));
    REQUIRE((ag.transpose() * q12_gram() * ag - q12_gram()).cwiseAbs().maxCoeff() < 1e-9 * std::max(1.0, ag.squaredNorm()));
  }
}

TEST_CASE("property: lifted composition is associative") {
  Rng rng(25);
  for (int i = 0; i < 2000; ++i) {
    const LiftedIsometry a(static_cast<int>(rng() % 5) - 2, testing::random_sl2(rng));
    const LiftedIsometry b(static_cast<int>(rng() % 5) - 2, testing::random_sl2(rng));
    const LiftedIsometry c(static_cast<int>(rng() % 5) - 2, testing::random_sl2(rng));
    const LiftedIsometry left = compose_lifted(compose_lifted(a, b), c);
    const LiftedIsometry right = compose_lifted(a, compose_lifted(b, c));
    REQUIRE(left.degree() == right.degree());
    REQUIRE(approx_equal(left.base(), right.base(), 1e-9));
  }
}

TEST_CASE("property: translation number is additive on a common center") {
  Rng rng(26);
  for (int i = 0; i < 2000; ++i) {
    const FormVector center(Form::Q12, {std::cosh(0.5), std::sinh(0.5) * std::cos(i * 0.1), std::sinh(0.5) * std::sin(i * 0.1)});
    const double s = testing::uniform(rng, 0.1, 9);
    const double t = testing::uniform(rng, 0.1, 9);
    const LiftedIsometry a = elliptic_lift(s, center);
    const LiftedIsometry b = elliptic_lift(t, center);
    REQUIRE(std::abs(translation_number(compose_lifted(a, b)) - (s + t)) < 1e-6);
  }
}
