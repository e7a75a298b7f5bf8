#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "adsgeom/forms.hpp"
#include "adsgeom/hs_surfaces.hpp"
#include "adsgeom/links.hpp"

namespace adsgeom {

// Convex polyhedron of HS^3 given by vertex rays of R^{1,3} and face cycles.
// Faces are reoriented on construction so that every cycle runs the same way
// as seen from outside.
class HS3Polyhedron {
 public:
  HS3Polyhedron(std::vector<FormVector> vertices, std::vector<std::vector<int>> faces);

  const std::vector<FormVector>& vertices() const { return vertices_; }
  const std::vector<std::vector<int>>& faces() const { return faces_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  HS2Region vertex_region(int i) const { return regions_[static_cast<size_t>(i)]; }
  // Euclidean normal of a face, nonnegative on every vertex.
  const Eigen::Vector4d& face_normal(int f) const { return normals_[static_cast<size_t>(f)]; }

  // Faces around a vertex in cyclic order, with the neighbor where each one
  // starts and ends.
  struct Corner {
    int face;
    int from;
    int to;
  };
  std::vector<Corner> corners(int v) const;

  // The two faces on either side of an edge.
  std::pair<int, int> edge_faces(int a, int b) const;

 private:
  std::vector<FormVector> vertices_;
  std::vector<std::vector<int>> faces_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<HS2Region> regions_;
  std::vector<Eigen::Vector4d> normals_;
};

enum class PolyhedronType { Hyperbolic, BiHyperbolic, Compact };
std::string_view polyhedron_type_name(PolyhedronType t);

// Whether the cone spanned by the rays meets the future (+1) or past (-1)
// timelike cone.
bool hull_meets_timelike(const std::vector<FormVector>& rays, int time_sign);

PolyhedronType classify_polyhedron(const HS3Polyhedron& p);
CausalClass face_causal_type(const HS3Polyhedron& p, int face);

struct VertexLink {
  int vertex;
  HS2Region region;
  std::optional<double> cone_angle;     // timelike vertices
  std::optional<LinkCircle> link;       // de Sitter vertices
  std::optional<SingularityType> type;  // empty for a regular vertex
};

struct InducedReport {
  bool is_hs_structure = false;
  std::vector<int> offending_faces;
  std::vector<VertexLink> vertex_links;
  std::optional<bool> positivity;
  std::optional<bool> positive_mass;
  std::optional<double> annulus_geodesic_length;
  std::vector<std::pair<int, SingularityType>> particle_dictionary;
  std::vector<std::string> diagnostics;
};

// Sum of the face angles at a timelike vertex.
double vertex_cone_angle(const HS3Polyhedron& p, int v);
VertexLink vertex_link(const HS3Polyhedron& p, int v);

InducedReport induced_structure(const HS3Polyhedron& p);

// Length of the closed spacelike geodesic of the de Sitter annulus, measured
// by developing the future photon circle. Requires a bi-hyperbolic polyhedron.
double annulus_geodesic_length(const HS3Polyhedron& p);
// Fills positive_mass on the report; empty when not evaluated.
std::optional<bool> positive_mass_check(InducedReport& r, const HS3Polyhedron& p);
// Same notion for a surface with one de Sitter annulus between two disks.
std::optional<bool> positive_mass(const HSSurface& s);

// Seeded random convex polyhedron meeting both hyperbolic components.
HS3Polyhedron random_bihyperbolic(std::uint64_t seed);
// Convex hull of points in the affine chart x1 = 1, given as (x0, x2, x3).
// Throws PreconditionError when the hull is degenerate.
HS3Polyhedron hull_in_chart(const std::vector<Eigen::Vector3d>& points);

}  // namespace adsgeom
