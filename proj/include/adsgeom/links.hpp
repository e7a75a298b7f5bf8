#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "adsgeom/forms.hpp"
#include "adsgeom/isometries.hpp"

namespace adsgeom {

enum class TimeSide { Future, Past };
std::string_view side_name(TimeSide s);
TimeSide opposite(TimeSide s);

// Which arc of a degree-0 circle is quotiented.
enum class ArcKind { Future, Past, Spacelike };
std::string_view arc_name(ArcKind a);
ArcKind arc_from_name(std::string_view s);

// Circle modeled on RP1. The interval is an index into the arcs cut out by
// the fixed points of the base, sorted by angle.
struct RP1Circle {
  LiftedIsometry holonomy;
  std::optional<int> interval;
};

struct EllipticCircle {
  double angle;
};
struct ParabolicCircle {
  int degree;
  int sign;
};
struct HyperbolicCircle {
  int degree;
  double length;
};
using RP1Invariants = std::variant<EllipticCircle, ParabolicCircle, HyperbolicCircle>;

RP1Invariants classify_rp1_circle(const RP1Circle& c);

// Link of a singular point: the class of the base point, the lifted holonomy
// and the markers of the timelike arcs.
struct LinkCircle {
  HS2Region base_class;
  LiftedIsometry holonomy;
  // Degree 0, non-elliptic: the arc that is quotiented.
  std::optional<ArcKind> interval;
  // Degree >= 2: stored positivity, checked against the holonomy.
  std::optional<int> sign;
  // Degree >= 2: index of the lifted arc developing into the future cone.
  int future_arc = 0;
};

enum class NonTimelikeKind { Spacelike, Lightlike };

struct MassiveParticle {
  double angle;
  TimeSide side = TimeSide::Future;
  bool operator==(const MassiveParticle&) const = default;
};
struct Photon {
  int sign;
  TimeSide side;
  bool operator==(const Photon&) const = default;
};
struct Tachyon {
  int sign;
  bool operator==(const Tachyon&) const = default;
};
struct BTZ {
  TimeSide side;
  bool operator==(const BTZ&) const = default;
};
struct ExtremeBTZ {
  TimeSide side;
  bool operator==(const ExtremeBTZ&) const = default;
};
struct Cuspidal {
  TimeSide side;
  bool operator==(const Cuspidal&) const = default;
};
struct Misner {
  bool operator==(const Misner&) const = default;
};
struct HighDegree {
  int degree;
  NonTimelikeKind kind;
  int sign;
  bool operator==(const HighDegree&) const = default;
};

using SingularityType =
    std::variant<MassiveParticle, Photon, Tachyon, BTZ, ExtremeBTZ, Cuspidal, Misner, HighDegree>;

std::string_view type_kind(const SingularityType& t);
std::string describe(const SingularityType& t);
// Equality with a tolerance on the massive angle.
bool same_type(const SingularityType& a, const SingularityType& b, double tol = 1e-6);
bool is_btz_like(const SingularityType& t);

enum class Violation { DegreeAtLeastFour, MisnerCTC, ClosedCausalCurve };
std::string_view violation_name(Violation v);

struct CausalVerdict {
  bool causal = true;
  std::vector<Violation> reasons;
};

// Lifted fixed points of the canonical lift of the base, one turn per unit
// of max(degree, 1), starting at the first fixed point in [0, 2pi).
std::vector<double> lifted_fixed_points(const LinkCircle& l);
// Canonical-lift displacement sign on the arc that develops into the future.
int positivity_from_holonomy(const LinkCircle& l);
// Conjugate the holonomy by h and carry the arc markers along.
LinkCircle conjugate_link(const LinkCircle& l, const ProjMatrix& h);

SingularityType classify_singularity(const LinkCircle& l);
bool is_positive(const SingularityType& t);
CausalVerdict is_causal_line(const SingularityType& t);
SingularityType antipodal_type(const SingularityType& t);
std::pair<int, int> local_future_components(const SingularityType& t);

// 1 - angle/2pi for massive particles.
std::optional<double> particle_mass(const SingularityType& t);

struct ModelParams {
  double length = 2.0;  // hyperbolic holonomy translation length
  double shear = 1.0;   // parabolic holonomy parameter
};

// Link circle of the model singular line of a given type.
LinkCircle model_link(const SingularityType& t, const ModelParams& params = {});

}  // namespace adsgeom
