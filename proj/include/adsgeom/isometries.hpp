#pragma once

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "adsgeom/forms.hpp"

namespace adsgeom {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;
inline constexpr double kPi = 3.141592653589793238462643383279;

// Element of PSL(2,R). Stored with det 1 and the first nonzero entry positive.
class ProjMatrix {
 public:
  // Rejects |det - 1| > 1e-9, then rescales to det 1 exactly.
  ProjMatrix(double a, double b, double c, double d);
  static ProjMatrix identity() { return {1, 0, 0, 1}; }

  double a() const { return m_[0]; }
  double b() const { return m_[1]; }
  double c() const { return m_[2]; }
  double d() const { return m_[3]; }
  double trace() const { return m_[0] + m_[3]; }
  const std::array<double, 4>& entries() const { return m_; }

  ProjMatrix operator*(const ProjMatrix& o) const;
  ProjMatrix inverse() const;
  bool is_identity(double tol = 1e-9) const;
  // Representative of {g, -g} with nonnegative trace.
  std::array<double, 4> nonneg_trace_rep() const;
  Eigen::Matrix2d matrix() const;

 private:
  std::array<double, 4> m_;
};

bool approx_equal(const ProjMatrix& x, const ProjMatrix& y, double tol = 1e-9);

// Row-major "a,b,c,d".
ProjMatrix parse_matrix(std::string_view text);
std::string format_matrix(const ProjMatrix& g);

// (cos p, -sin p; sin p, cos p).
ProjMatrix rotation(double p);
// Elliptic element whose canonical lift has translation number `angle`
// (taken mod 2pi) and fixes the origin of the disk.
ProjMatrix boundary_rotation(double angle);
// diag(e^{L/2}, e^{-L/2}).
ProjMatrix diagonal_boost(double length);
// (1, t; 0, 1).
ProjMatrix unipotent(double t);

struct Identity {
  bool operator==(const Identity&) const = default;
};
struct Elliptic {
  double angle;
  bool operator==(const Elliptic&) const = default;
};
struct ParabolicPositive {
  bool operator==(const ParabolicPositive&) const = default;
};
struct ParabolicNegative {
  bool operator==(const ParabolicNegative&) const = default;
};
struct Hyperbolic {
  double translation_length;
  bool operator==(const Hyperbolic&) const = default;
};
using IsomClass = std::variant<Identity, Elliptic, ParabolicPositive, ParabolicNegative, Hyperbolic>;

std::string_view isom_kind(const IsomClass& c);
bool is_elliptic(const ProjMatrix& g);
bool is_parabolic(const ProjMatrix& g);
bool is_hyperbolic(const ProjMatrix& g);

IsomClass classify_isometry(const ProjMatrix& g);
// True when |tr| is within the parabolic band but g is not +-I.
bool in_parabolic_band(const ProjMatrix& g);

// Projective point [u : v] of the boundary circle.
struct RP1Point {
  double u;
  double v;

  static RP1Point from_affine(double x) { return {x, 1.0}; }
  static RP1Point infinity() { return {1.0, 0.0}; }
  // Angle chart on the boundary circle, values in [0, 2pi).
  static RP1Point from_angle(double theta);
  double angle() const;
  std::optional<double> affine() const;
  RP1Point apply(const ProjMatrix& g) const;
  bool same_as(const RP1Point& o, double tol = 1e-9) const;
};

struct RP1FixedSet {
  bool all = false;
  std::vector<RP1Point> points;  // sorted by angle
};

RP1FixedSet fixed_points_rp1(const ProjMatrix& g);

// Attracting / repelling fixed points of a hyperbolic element.
RP1Point attracting_point(const ProjMatrix& g);
RP1Point repelling_point(const ProjMatrix& g);

// Trace-free 2x2 matrix of a q12 vector, with -det equal to q12.
Eigen::Matrix2d trace_free_of(const FormVector& x);
FormVector q12_of(const Eigen::Matrix2d& m);
Eigen::Matrix3d adjoint_so12(const ProjMatrix& g);

// Point of the boundary conic bdry H^2_+ matching an RP1 point.
FormVector boundary_ray(const RP1Point& p);

struct FixedRay {
  HS2Region region;
  FormVector ray;
};

std::vector<FixedRay> fixed_points_hs2(const ProjMatrix& g);

// Rotation about a timelike point of HS^2 by `angle` (counted on the side
// of the disk that contains the point).
ProjMatrix rotation_about(const FormVector& center, double angle);
// Translation of length 2*eta along the geodesic dual to a de Sitter point.
ProjMatrix translation_dual_to(const FormVector& ds_point, double eta);

// Value of the canonical lift at a lifted angle.
double canonical_lift_value(const ProjMatrix& g, double theta);

// delta^k times the canonical lift of g.
class LiftedIsometry {
 public:
  LiftedIsometry(int degree, ProjMatrix base) : k_(degree), g_(base) {}
  static LiftedIsometry identity() { return {0, ProjMatrix::identity()}; }

  int degree() const { return k_; }
  const ProjMatrix& base() const { return g_; }
  double operator()(double theta) const;
  LiftedIsometry inverse() const;
  bool operator==(const LiftedIsometry& o) const;

 private:
  int k_;
  ProjMatrix g_;
};

LiftedIsometry lift_canonical(const ProjMatrix& g);
// a after b.
LiftedIsometry compose_lifted(const LiftedIsometry& a, const LiftedIsometry& b);
double translation_number(const LiftedIsometry& a);
// Lift with translation number `angle` > 0 rotating about `center`.
LiftedIsometry elliptic_lift(double angle, const FormVector& center);
LiftedIsometry elliptic_lift(double angle);

// 2x2 model of AdS: X = [[x0+x3, x1+x2], [x2-x1, x0-x3]], q22 = -det X.
Eigen::Matrix2d sl2_of(const FormVector& x);
FormVector q22_of(const Eigen::Matrix2d& m);

// Acts by X -> left * X * right^{-1}.
class AdSIsometry {
 public:
  AdSIsometry(ProjMatrix left, ProjMatrix right) : left_(left), right_(right) {}
  const ProjMatrix& left() const { return left_; }
  const ProjMatrix& right() const { return right_; }
  FormVector apply(const FormVector& x) const;
  std::pair<RP1Point, RP1Point> apply_boundary(const RP1Point& l, const RP1Point& r) const;

 private:
  ProjMatrix left_;
  ProjMatrix right_;
};

// Null vector of R^{2,2} for a point of the boundary RP1 x RP1.
FormVector ads_boundary_point(const RP1Point& l, const RP1Point& r);

}  // namespace adsgeom
