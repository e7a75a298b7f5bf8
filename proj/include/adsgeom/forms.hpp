#pragma once

#include <array>
#include <initializer_list>
#include <span>
#include <string_view>
#include <vector>

namespace adsgeom {

// Relative tolerance of the null band.
inline constexpr double kClassifyTol = 1e-9;

enum class Form { Q22, Q12, Q13 };

int form_dimension(Form f);
std::string_view form_name(Form f);

// Coordinates tagged with the quadratic form they live under.
//   q22 = -x0^2 - x1^2 + x2^2 + x3^2
//   q12 = -x0^2 + x1^2 + x2^2
//   q13 = -x0^2 + x1^2 + x2^2 + x3^2
class FormVector {
 public:
  FormVector(Form form, std::initializer_list<double> coords);
  FormVector(Form form, std::span<const double> coords);

  static FormVector zero(Form form);

  Form form() const { return form_; }
  int size() const { return form_dimension(form_); }
  double operator[](int i) const { return c_[static_cast<size_t>(i)]; }
  std::span<const double> coords() const { return {c_.data(), static_cast<size_t>(size())}; }

  // Squared Euclidean norm of the coordinates.
  double euclid_sq() const;
  double max_abs() const;
  bool is_zero() const { return max_abs() == 0.0; }

  FormVector operator+(const FormVector& o) const;
  FormVector operator-(const FormVector& o) const;
  FormVector operator-() const;
  FormVector operator*(double s) const;
  friend FormVector operator*(double s, const FormVector& v) { return v * s; }

 private:
  Form form_;
  std::array<double, 4> c_{};
};

double evaluate_form(const FormVector& v);
// Polarization of the form. Throws InputError on form mismatch.
double inner(const FormVector& a, const FormVector& b);

enum class CausalClass { Timelike, Spacelike, Lightlike, Zero };
std::string_view causal_name(CausalClass c);

CausalClass classify_vector(const FormVector& v, double tol = kClassifyTol);

enum class HS2Region { HypPlus, HypMinus, DeSitter, BoundaryPlus, BoundaryMinus };
std::string_view region_name(HS2Region r);
HS2Region region_from_name(std::string_view s);

// Region of a ray of R^{1,2} (or R^{1,3}); throws on zero or q22 input.
HS2Region hs_classify_ray(const FormVector& v, double tol = kClassifyTol);
HS2Region antipodal(HS2Region r);

// Representative with max |x_i| = 1.
FormVector normalize_ray(const FormVector& v);

// Type of a 2-plane: positive definite -> Spacelike, degenerate ->
// Lightlike, otherwise Timelike (the plane contains a timelike direction).
CausalClass classify_plane(const FormVector& a, const FormVector& b, double tol = kClassifyTol);

class GeodesicSpan {
 public:
  GeodesicSpan(FormVector a, FormVector b);

  const FormVector& first() const { return a_; }
  const FormVector& second() const { return b_; }
  CausalClass plane_class() const { return cls_; }
  Form form() const { return a_.form(); }

 private:
  FormVector a_;
  FormVector b_;
  CausalClass cls_;
};

CausalClass classify_plane(const GeodesicSpan& span);

// Orthogonal complement of a normal vector.
class Hyperplane {
 public:
  explicit Hyperplane(FormVector normal);

  const FormVector& normal() const { return normal_; }
  bool contains(const FormVector& v, double tol = kClassifyTol) const;
  // Euclidean-orthonormal basis of the complement, as form vectors.
  std::vector<FormVector> basis() const;

 private:
  FormVector normal_;
};

// p-perp for p on the AdS quadric q22 = -1.
Hyperplane dual_plane(const FormVector& p);

struct ConjugatePair {
  FormVector future;
  FormVector past;
};

// First future and past conjugate points of p along any timelike geodesic.
ConjugatePair conjugate_points(const FormVector& p);

// True when q22(p) = -1 within tolerance.
bool on_ads_quadric(const FormVector& p, double tol = 1e-9);

}  // namespace adsgeom
