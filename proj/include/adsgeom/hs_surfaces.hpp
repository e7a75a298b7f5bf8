#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "adsgeom/forms.hpp"
#include "adsgeom/isometries.hpp"
#include "adsgeom/links.hpp"

namespace adsgeom {

// ---------------------------------------------------------------------------
// First-return maps on a de Sitter annulus.
//
// Charts are normalized so that the base holonomy is diag(e^{L/2}, e^{-L/2}),
// acting on boundary coordinates by b -> e^L b with invariant interval
// (0, inf). A point of the universal cover is a pair (a, b) of boundary
// coordinates; the leaves of one null foliation are the lines b = const.
// The base leaf is a = 1 and a leaf returns after a has run up to e^L.

struct LeafSurgery {
  double site;             // a-coordinate of the modified leaf, in (1, e^L)
  ProjMatrix correction;   // acts on b; must fix the site
  int sign;                // +1 positive, -1 negative
  std::optional<double> half_leaf_start;  // only b > start is affected

  static LeafSurgery parabolic(double site, double t, int sign);
};

struct FirstReturnSystem {
  ProjMatrix base_holonomy;
  std::vector<LeafSurgery> surgeries;
  int interval = 0;

  double length() const;
};

// Validates the system; throws PreconditionError on bad input.
void validate(const FirstReturnSystem& sys);

// Return map in the leaf coordinate y = (b + 1)/(b - 1) of the base leaf.
// Empty when the leaf runs into a photon circle before returning.
std::optional<double> first_return(const FirstReturnSystem& sys, double y);

struct ClosedLeaf {
  double y;
  bool degenerate;
};

struct CCCResult {
  bool has_ccc = false;
  std::vector<ClosedLeaf> closed_leaves;
};

CCCResult detect_ccc(const FirstReturnSystem& sys);

// Smallest parameter of a negative parabolic surgery at `site` past which no
// closed leaf survives. Bisection over [0, t_max].
double negative_surgery_threshold(const ProjMatrix& base, double site, double t_max = 1e3, double tol = 1e-9);

// ---------------------------------------------------------------------------
// Combinatorial singular HS-surfaces.

enum class RegionKind { FutureHyperbolic, PastHyperbolic, DeSitter };
std::string_view region_kind_name(RegionKind k);
RegionKind region_kind_from_name(std::string_view s);

enum class Topology { Sphere, Disk, Annulus, Other };
std::string_view topology_name(Topology t);

struct Region {
  RegionKind kind;
  int genus = 0;
  int boundary_circles = 0;
  std::optional<FirstReturnSystem> reduction;
  std::string label;

  Topology topology() const;
  int euler_characteristic() const { return 2 - 2 * genus - boundary_circles; }
};

struct PhotonCircle {
  int hyperbolic_region;
  int de_sitter_region;
  std::optional<LiftedIsometry> hyperbolic_holonomy;
  std::vector<ProjMatrix> lightlike_corrections;
};

struct SurfaceSingularity {
  std::string label;
  int region = -1;         // anchor region, or
  int photon_circle = -1;  // anchor photon circle
  LinkCircle link;
};

class HSSurface {
 public:
  HSSurface(std::vector<Region> regions, std::vector<PhotonCircle> circles,
            std::vector<SurfaceSingularity> singularities, std::optional<LinkCircle> suspended_link = std::nullopt);

  const std::vector<Region>& regions() const { return regions_; }
  const std::vector<PhotonCircle>& photon_circles() const { return circles_; }
  const std::vector<SurfaceSingularity>& singularities() const { return singularities_; }
  // Classified types, parallel to singularities().
  const std::vector<SingularityType>& singularity_types() const { return types_; }
  // Set when the surface is the link-suspension surface of one circle.
  const std::optional<LinkCircle>& suspended_link() const { return suspended_link_; }

  int euler_characteristic() const;
  bool is_connected() const;
  bool is_sphere() const { return is_connected() && euler_characteristic() == 2; }
  std::vector<int> singularities_in_region(int region) const;

 private:
  std::vector<Region> regions_;
  std::vector<PhotonCircle> circles_;
  std::vector<SurfaceSingularity> singularities_;
  std::vector<SingularityType> types_;
  std::optional<LinkCircle> suspended_link_;
};

struct Census {
  std::vector<int> future_regions;
  std::vector<int> past_regions;
  std::vector<int> de_sitter_regions;
  int photon_circles = 0;
  std::vector<std::pair<int, int>> adjacency;  // (hyperbolic region, de Sitter region) per circle
  int cusps = 0;
  int extreme_btz = 0;
};

Census region_decomposition(const HSSurface& s);
bool de_sitter_topology_check(const HSSurface& s);

std::pair<RP1Circle, RP1Circle> photon_circle_structures(const HSSurface& s, int circle);
// Circles bounding a non-disk hyperbolic region carry hyperbolic degree 0
// holonomy on the hyperbolic side.
bool hyperbolic_degree_zero_check(const HSSurface& s);

// CCC verdict for one de Sitter region; throws UndecidableError when no
// reduction applies.
bool region_has_ccc(const HSSurface& s, int region);
CausalVerdict surface_causal(const HSSurface& s);

enum class InteractionClass {
  CausallyRegular,
  BlackHoleInteraction,
  WhiteHoleInteraction,
  BigBang,
  BigCrunch,
  BlackWhiteInteraction
};
std::string_view interaction_name(InteractionClass c);

InteractionClass classify_interaction(const HSSurface& s);

// Factories.
HSSurface regular_hs2();
// de Sitter sphere with one past and one future BTZ-like point.
HSSurface btz_pair_sphere(double length);
// Surface around a point whose link is the given circle.
HSSurface link_suspension_surface(const LinkCircle& l);

// ---------------------------------------------------------------------------
// Triangles in HS^2 and their doubles.

class HS2Triangle {
 public:
  HS2Triangle(FormVector a, FormVector b, FormVector c);

  const FormVector& vertex(int i) const { return v_[static_cast<size_t>(i)]; }
  HS2Region vertex_region(int i) const { return regions_[static_cast<size_t>(i)]; }
  GeodesicSpan edge(int i) const;
  // Interior angle at a timelike vertex.
  double interior_angle(int i) const;

 private:
  std::array<FormVector, 3> v_;
  std::array<HS2Region, 3> regions_;
};

// Sector of the triangle at a de Sitter vertex.
struct DeSitterCorner {
  ArcKind sector;  // timelike future, timelike past or spacelike
  double rapidity;
};
DeSitterCorner de_sitter_corner(const HS2Triangle& t, int i);

HSSurface double_triangle(const HS2Triangle& t);

// Vertex at (1,0,0) with interior angle `angle`; the other two vertices
// sit symmetrically in the past sheet.
HS2Triangle collision_triangle(double angle, double depth = 2.8);
// de Sitter vertex at (0,1,0) whose past-timelike corner has the given
// rapidity; the other two vertices sit in the past sheet.
HS2Triangle btz_collision_triangle(double rapidity, double depth = 1.2);

}  // namespace adsgeom
