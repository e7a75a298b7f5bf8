#include <doctest.h>

#include <Eigen/Dense>

#include "adsgeom/errors.hpp"
#include "adsgeom/forms.hpp"
#include "support.hpp"

using namespace adsgeom;
using testing::Rng;

namespace {

// Signature of the Gram matrix of a 2-plane, read from its eigenvalues.
std::optional<CausalClass> gram_oracle(const FormVector& a, const FormVector& b) {
  Eigen::Matrix2d g;
  g << inner(a, a), inner(a, b), inner(a, b), inner(b, b);
  const Eigen::Vector2d ev = Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(g).eigenvalues();
  const double scale = a.euclid_sq() + b.euclid_sq();
  const double small = std::min(std::abs(ev(0)), std::abs(ev(1)));
  if (small < 1e-6 * scale) return std::nullopt;  // too close to degenerate to call
  if (ev(0) > 0 && ev(1) > 0) return CausalClass::Spacelike;
  return CausalClass::Timelike;
}

}  // namespace

TEST_CASE("form values") {
  CHECK(evaluate_form(FormVector(Form::Q22, {1, 0, 0, 0})) == -1);
  CHECK(evaluate_form(FormVector(Form::Q22, {1, 0, 1, 0})) == 0);
  CHECK(evaluate_form(FormVector(Form::Q12, {0, 1, 0})) == 1);
  CHECK(evaluate_form(FormVector(Form::Q13, {2, 1, 1, 1})) == -1);
  CHECK_THROWS_AS(inner(FormVector(Form::Q12, {1, 0, 0}), FormVector(Form::Q13, {1, 0, 0, 0})), InputError);
}

TEST_CASE("vector classes") {
  CHECK(classify_vector(FormVector(Form::Q12, {1, 0, 0})) == CausalClass::Timelike);
  CHECK(classify_vector(FormVector(Form::Q12, {1, 1, 0})) == CausalClass::Lightlike);
  CHECK(classify_vector(FormVector::zero(Form::Q12)) == CausalClass::Zero);
  CHECK(classify_vector(FormVector(Form::Q22, {0, 0, 1, 0})) == CausalClass::Spacelike);
}

TEST_CASE("plane classes") {
  CHECK(classify_plane(FormVector(Form::Q22, {0, 0, 1, 0}), FormVector(Form::Q22, {0, 0, 0, 1})) ==
        CausalClass::Spacelike);
  CHECK(classify_plane(FormVector(Form::Q22, {1, 0, 0, 0}), FormVector(Form::Q22, {0, 0, 1, 0})) ==
        CausalClass::Timelike);
  // Gram matrix [[0, 0], [0, 1]]: rank one, so the plane is degenerate.
  CHECK(classify_plane(FormVector(Form::Q22, {1, 0, 1, 0}), FormVector(Form::Q22, {0, 0, 0, 1})) ==
        CausalClass::Lightlike);
}

TEST_CASE("ray regions") {
  CHECK(hs_classify_ray(FormVector(Form::Q12, {1, 0, 0})) == HS2Region::HypPlus);
  CHECK(hs_classify_ray(FormVector(Form::Q12, {-1, 0, 0})) == HS2Region::HypMinus);
  CHECK(hs_classify_ray(FormVector(Form::Q12, {0, 1, 0})) == HS2Region::DeSitter);
  CHECK(hs_classify_ray(FormVector(Form::Q12, {-1, 1, 0})) == HS2Region::BoundaryMinus);
  CHECK(hs_classify_ray(FormVector(Form::Q12, {1, 0, 1})) == HS2Region::BoundaryPlus);
  CHECK_THROWS(hs_classify_ray(FormVector::zero(Form::Q12)));
}

TEST_CASE("dual planes and conjugate points") {
  CHECK(dual_plane(FormVector(Form::Q22, {1, 0, 0, 0})).contains(FormVector(Form::Q22, {0, 1, 2, 3})));
  CHECK_FALSE(dual_plane(FormVector(Form::Q22, {1, 0, 0, 0})).contains(FormVector(Form::Q22, {1, 0, 0, 0})));
  CHECK(dual_plane(FormVector(Form::Q22, {0, 1, 0, 0})).contains(FormVector(Form::Q22, {5, 0, 1, 1})));
  const auto c = conjugate_points(FormVector(Form::Q22, {1, 0, 0, 0}));
  CHECK(c.future[0] == -1);
  CHECK(c.past[0] == -1);
  CHECK(conjugate_points(FormVector(Form::Q22, {0, 1, 0, 0})).future[1] == -1);
  CHECK_THROWS_AS(dual_plane(FormVector(Form::Q22, {0, 0, 1, 0})), PreconditionError);
}

TEST_CASE("property: classification is scale invariant") {
  Rng rng(11);
  for (int i = 0; i < 10000; ++i) {
    const Form f = i % 3 == 0 ? Form::Q22 : i % 3 == 1 ? Form::Q12 : Form::Q13;
    const FormVector v = testing::random_vector(rng, f);
    double lam = testing::uniform(rng, 0.01, 100);
    if (rng() % 2) lam = -lam;
    REQUIRE(classify_vector(v * lam) == classify_vector(v));
  }
}

TEST_CASE("property: plane classes match the Gram signature") {
  Rng rng(12);
  int compared = 0;
  for (int i = 0; i < 10000; ++i) {
    const Form f = i % 2 ? Form::Q22 : Form::Q13;
    const FormVector a = testing::random_vector(rng, f);
    const FormVector b = testing::random_vector(rng, f);
    const auto expected = gram_oracle(a, b);
    if (!expected) continue;
    ++compared;
    REQUIRE(classify_plane(a, b) == *expected);
  }
  CHECK(compared > 9900);
}

TEST_CASE("property: dual plane is orthogonal and symmetric") {
  Rng rng(13);
  for (int i = 0; i < 200; ++i) {
    const FormVector p = testing::random_ads_point(rng);
    const Hyperplane h = dual_plane(p);
    const auto basis = h.basis();
    REQUIRE(basis.size() == 3);
    for (int k = 0; k < 100; ++k) {
      FormVector y = FormVector::zero(Form::Q22);
      for (const auto& e : basis) y = y + e * testing::uniform(rng, -1, 1);
      REQUIRE(std::abs(inner(p, y)) < 1e-9 * std::max(1.0, y.euclid_sq()));
      if (evaluate_form(y) < -1e-3) {
        const FormVector q = y * (1.0 / std::sqrt(-evaluate_form(y)));
        REQUIRE(dual_plane(q).contains(p, 1e-9));
      }
    }
  }
}

TEST_CASE("property: antipode lies on every plane through the point") {
  Rng rng(14);
  for (int i = 0; i < 500; ++i) {
    const FormVector p = testing::random_ads_point(rng);
    const FormVector v = testing::random_vector(rng, Form::Q22);
    Eigen::Matrix<double, 4, 2> span;
    for (int k = 0; k < 4; ++k) span.row(k) << p[k], v[k];
    const FormVector anti = conjugate_points(p).future;
    Eigen::Vector4d target(anti[0], anti[1], anti[2], anti[3]);
    const Eigen::Vector2d coeff = span.colPivHouseholderQr().solve(target);
    REQUIRE((span * coeff - target).norm() < 1e-9);
  }
}

TEST_CASE("property: regions partition rays and antipody swaps sheets") {
  Rng rng(15);
  for (int i = 0; i < 10000; ++i) {
    const FormVector v = testing::random_vector(rng, Form::Q12);
    const HS2Region r = hs_classify_ray(v);
    const HS2Region s = hs_classify_ray(-v);
    REQUIRE(s == antipodal(r));
    REQUIRE(antipodal(antipodal(r)) == r);
    if (r == HS2Region::DeSitter) REQUIRE(s == HS2Region::DeSitter);
    if (r == HS2Region::HypPlus) REQUIRE(s == HS2Region::HypMinus);
  }
  CHECK(antipodal(HS2Region::BoundaryPlus) == HS2Region::BoundaryMinus);
}
