#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "adsgeom/forms.hpp"
#include "adsgeom/hs_surfaces.hpp"
#include "adsgeom/isometries.hpp"
#include "adsgeom/links.hpp"

namespace adsgeom {

// ---------------------------------------------------------------------------
// Singular graphs.

// A singular line. Lines meeting an interaction carry the type seen on the
// interaction link; free lines carry their future-side type.
struct SingularLine {
  std::string id;
  SingularityType type;
  std::string locus;
  std::string start;  // "interaction:k" or an open end such as "past_boundary"
  std::string end;
  bool operator==(const SingularLine& o) const;
};

struct InteractionPoint {
  std::string id;
  std::string point;
  HSSurface link;
};

struct SingularGraph {
  std::vector<SingularLine> lines;
  std::vector<InteractionPoint> interactions;
  const SingularLine* find_line(const std::string& id) const;
};

// Exact comparison of lines and interaction identifiers.
bool same_graph(const SingularGraph& a, const SingularGraph& b);

// ---------------------------------------------------------------------------
// Recipes.

struct SpacetimeRecipe;
using RecipePtr = std::shared_ptr<const SpacetimeRecipe>;

struct SuspensionRecipe {
  HSSurface surface;
};

struct WarpedProductRecipe {
  std::vector<double> cone_angles;
  int genus = 0;
  double t_min = -1.5;
  double t_max = 1.5;
};

struct ModelWedgeRecipe {
  SingularityType type;
  ModelParams params;
};

struct BTZQuotientRecipe {
  ProjMatrix gamma1;
  ProjMatrix gamma2;
  GeodesicSpan l1;  // fixed pointwise
  GeodesicSpan l2;  // translated
};

struct SurgerySite {
  std::string line_id;
  double time = 0.0;
  double radius = 0.1;
  double collar = 0.05;
  std::string original_start;
  bool spacelike_slice_asserted = false;
};

struct SurgeryRecipe {
  RecipePtr base;
  SurgerySite site;
  HSSurface patch;
  std::string interaction;
};

struct SpacetimeRecipe {
  std::variant<SuspensionRecipe, WarpedProductRecipe, ModelWedgeRecipe, BTZQuotientRecipe, SurgeryRecipe> payload;
};

std::string_view recipe_kind(const SpacetimeRecipe& r);

struct Spacetime {
  RecipePtr recipe;
  SingularGraph graph;
};

// ---------------------------------------------------------------------------
// Constructions.

Spacetime suspend(const HSSurface& s);

struct ModelSingularity {
  Spacetime spacetime;
  LinkCircle link;
};
ModelSingularity construct_model_singularity(const SingularityType& t, const ModelParams& params = {});

Spacetime warped_product(const WarpedProductRecipe& r);

struct BTZQuotient {
  Spacetime spacetime;
  GeodesicSpan l1;
  GeodesicSpan l2;
};
BTZQuotient btz_quotient(const ProjMatrix& gamma1, const ProjMatrix& gamma2);

// Point of a spacelike geodesic through two null vectors, at parameter s.
FormVector geodesic_point(const GeodesicSpan& line, double s);
double ads_distance(const FormVector& x, const FormVector& y);

Spacetime surgery_collision(const Spacetime& base, const SurgerySite& site, const HSSurface& patch);
// Undo a collision surgery.
Spacetime excise(const Spacetime& surgered);
Spacetime btz_surgery(const Spacetime& base, const HSSurface& patch);

// ---------------------------------------------------------------------------
// Warped product charts: h = -dt^2 + cos^2(t) mu, with mu the hyperbolic cone
// metric dr^2 + (theta/2pi)^2 sinh^2(r) dphi^2 around one cone point.
// Coordinates are (t, r, phi).

struct ChartMetric {
  Eigen::Matrix3d g;
};

ChartMetric warped_metric(double cone_angle, const Eigen::Vector3d& point);
ChartMetric warped_metric(const WarpedProductRecipe& r, int cone_point, const Eigen::Vector3d& point);

// Christoffel symbols by central differences; gamma[a](b, c) = Gamma^a_{bc}.
std::array<Eigen::Matrix3d, 3> christoffel(double cone_angle, const Eigen::Vector3d& x, double step = 1e-4);
// Sectional curvature of the coordinate plane (i, j) from finite differences.
double sectional_curvature(double cone_angle, const Eigen::Vector3d& x, int i, int j, double outer = 1e-3,
                           double inner = 1e-4);

// Development into R^{2,2} of the loop phi in [0, 2pi] at fixed (t, r);
// returns the rotation angle of the holonomy in [0, 2pi).
double peripheral_holonomy_angle(double cone_angle, double t, double r, int steps = 2000);
// Full holonomy matrix of the same loop (columns: images of the standard basis).
Eigen::Matrix4d peripheral_holonomy(double cone_angle, double t, double r, int steps = 2000);

// Causal-speed bound near a massive particle of mass m.
struct CurveSample {
  double t;
  std::complex<double> zeta;
};
struct SpeedBoundResult {
  bool within = false;
  bool marginal = false;  // some segment is within tol of the bound
  double max_ratio = 0.0;
  double max_excess = 0.0;  // max of speed - bound over segments
  double min_excess = 0.0;
};
SpeedBoundResult singular_chart_speed_bound(double mass, const std::vector<CurveSample>& samples, double tol = 1e-6);
// Radial null curve from rho0, integrated by RK4.
std::vector<CurveSample> null_curve(double mass, double rho0, double duration, int steps);

// A sampled curve in the warped chart of one cone point.
using WarpedCurve = std::vector<Eigen::Vector3d>;
// Throws InputError when a segment is not causal at its midpoint.
bool time_function_check(const WarpedProductRecipe& r, const std::vector<WarpedCurve>& curves, double tol = 1e-9);
// Future causal curve obtained by integrating a random timelike field.
WarpedCurve random_causal_curve(const WarpedProductRecipe& r, std::uint64_t seed, int steps = 200);

}  // namespace adsgeom
