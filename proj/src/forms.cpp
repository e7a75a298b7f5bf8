#include "adsgeom/forms.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "adsgeom/errors.hpp"

namespace adsgeom {

namespace {

// Signs of the diagonal form.
std::array<double, 4> signature(Form f) {
  switch (f) {
    case Form::Q22: return {-1, -1, 1, 1};
    case Form::Q12: return {-1, 1, 1, 0};
    case Form::Q13: return {-1, 1, 1, 1};
  }
  return {};
}

void require_same(const FormVector& a, const FormVector& b) {
  if (a.form() != b.form()) throw InputError("form mismatch between vectors");
}

}  // namespace

int form_dimension(Form f) { return f == Form::Q12 ? 3 : 4; }

std::string_view form_name(Form f) {
  switch (f) {
    case Form::Q22: return "q22";
    case Form::Q12: return "q12";
    case Form::Q13: return "q13";
  }
  return "?";
}

FormVector::FormVector(Form form, std::initializer_list<double> coords)
    : FormVector(form, std::span<const double>(coords.begin(), coords.size())) {}

FormVector::FormVector(Form form, std::span<const double> coords) : form_(form) {
  if (static_cast<int>(coords.size()) != form_dimension(form)) {
    throw InputError(std::string(form_name(form)) + " expects " +
                     std::to_string(form_dimension(form)) + " coordinates, got " +
                     std::to_string(coords.size()));
  }
  for (size_t i = 0; i < coords.size(); ++i) {
    if (!std::isfinite(coords[i])) throw InputError("non-finite coordinate");
    c_[i] = coords[i];
  }
}

FormVector FormVector::zero(Form form) {
  std::array<double, 4> z{};
  return FormVector(form, std::span<const double>(z.data(), static_cast<size_t>(form_dimension(form))));
}

double FormVector::euclid_sq() const {
  double s = 0;
  for (int i = 0; i < size(); ++i) s += c_[i] * c_[i];
  return s;
}

double FormVector::max_abs() const {
  double m = 0;
  for (int i = 0; i < size(); ++i) m = std::max(m, std::abs(c_[i]));
  return m;
}

FormVector FormVector::operator+(const FormVector& o) const {
  require_same(*this, o);
  FormVector r = *this;
  for (int i = 0; i < size(); ++i) r.c_[i] += o.c_[i];
  return r;
}

FormVector FormVector::operator-(const FormVector& o) const { return *this + (-o); }

FormVector FormVector::operator-() const { return *this * -1.0; }

FormVector FormVector::operator*(double s) const {
  FormVector r = *this;
  for (int i = 0; i < size(); ++i) r.c_[i] *= s;
  return r;
}

double inner(const FormVector& a, const FormVector& b) {
  require_same(a, b);
  const auto sig = signature(a.form());
  double s = 0;
  for (int i = 0; i < a.size(); ++i) s += sig[i] * a[i] * b[i];
  return s;
}

double evaluate_form(const FormVector& v) { return inner(v, v); }

std::string_view causal_name(CausalClass c) {
  switch (c) {
    case CausalClass::Timelike: return "timelike";
    case CausalClass::Spacelike: return "spacelike";
    case CausalClass::Lightlike: return "lightlike";
    case CausalClass::Zero: return "zero";
  }
  return "?";
}

CausalClass classify_vector(const FormVector& v, double tol) {
  const double n2 = v.euclid_sq();
  if (n2 == 0.0) return CausalClass::Zero;
  const double q = evaluate_form(v);
  if (q < -tol * n2) return CausalClass::Timelike;
  if (q > tol * n2) return CausalClass::Spacelike;
  return CausalClass::Lightlike;
}

std::string_view region_name(HS2Region r) {
  switch (r) {
    case HS2Region::HypPlus: return "hyp_plus";
    case HS2Region::HypMinus: return "hyp_minus";
    case HS2Region::DeSitter: return "de_sitter";
    case HS2Region::BoundaryPlus: return "boundary_plus";
    case HS2Region::BoundaryMinus: return "boundary_minus";
  }
  return "?";
}

HS2Region region_from_name(std::string_view s) {
  for (auto r : {HS2Region::HypPlus, HS2Region::HypMinus, HS2Region::DeSitter,
                 HS2Region::BoundaryPlus, HS2Region::BoundaryMinus}) {
    if (region_name(r) == s) return r;
  }
  throw InputError("unknown region name '" + std::string(s) + "'");
}

HS2Region hs_classify_ray(const FormVector& v, double tol) {
  if (v.form() == Form::Q22) throw InputError("HS rays live in q12 or q13");
  switch (classify_vector(v, tol)) {
    case CausalClass::Zero: throw InputError("zero vector is not a ray");
    case CausalClass::Spacelike: return HS2Region::DeSitter;
    case CausalClass::Timelike: return v[0] > 0 ? HS2Region::HypPlus : HS2Region::HypMinus;
    case CausalClass::Lightlike: return v[0] > 0 ? HS2Region::BoundaryPlus : HS2Region::BoundaryMinus;
  }
  return HS2Region::DeSitter;
}

HS2Region antipodal(HS2Region r) {
  switch (r) {
    case HS2Region::HypPlus: return HS2Region::HypMinus;
    case HS2Region::HypMinus: return HS2Region::HypPlus;
    case HS2Region::BoundaryPlus: return HS2Region::BoundaryMinus;
    case HS2Region::BoundaryMinus: return HS2Region::BoundaryPlus;
    case HS2Region::DeSitter: return HS2Region::DeSitter;
  }
  return r;
}

FormVector normalize_ray(const FormVector& v) {
  const double m = v.max_abs();
  if (m == 0.0) throw InputError("zero vector is not a ray");
  return v * (1.0 / m);
}

CausalClass classify_plane(const FormVector& a, const FormVector& b, double tol) {
  require_same(a, b);
  const double na = a.euclid_sq();
  const double nb = b.euclid_sq();
  double ab = 0;
  for (int i = 0; i < a.size(); ++i) ab += a[i] * b[i];
  const double euclid_det = na * nb - ab * ab;
  if (na == 0.0 || nb == 0.0 || euclid_det <= 1e-12 * na * nb) {
    throw InputError("plane basis is linearly dependent");
  }
  const double g00 = evaluate_form(a);
  const double g11 = evaluate_form(b);
  const double g01 = inner(a, b);
  const double det = g00 * g11 - g01 * g01;
  // The Gram determinant scales like the Euclidean one.
  if (std::abs(det) <= tol * na * nb) return CausalClass::Lightlike;
  if (det > 0 && g00 + g11 > 0) return CausalClass::Spacelike;
  return CausalClass::Timelike;
}

GeodesicSpan::GeodesicSpan(FormVector a, FormVector b)
    : a_(std::move(a)), b_(std::move(b)), cls_(classify_plane(a_, b_)) {}

CausalClass classify_plane(const GeodesicSpan& span) { return span.plane_class(); }

Hyperplane::Hyperplane(FormVector normal) : normal_(std::move(normal)) {
  if (normal_.is_zero()) throw InputError("hyperplane normal is zero");
}

bool Hyperplane::contains(const FormVector& v, double tol) const {
  const double scale = std::sqrt(v.euclid_sq() * normal_.euclid_sq());
  return std::abs(inner(normal_, v)) <= tol * std::max(scale, 1e-300);
}

std::vector<FormVector> Hyperplane::basis() const {
  const int n = normal_.size();
  const auto sig = signature(normal_.form());
  Eigen::RowVectorXd row(n);
  for (int i = 0; i < n; ++i) row(i) = sig[i] * normal_[i];
  const Eigen::MatrixXd row_m = row;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(row_m);
  Eigen::MatrixXd ker = lu.kernel();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(ker);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, ker.cols());
  std::vector<FormVector> out;
  for (int j = 0; j < q.cols(); ++j) {
    std::vector<double> c(q.col(j).data(), q.col(j).data() + n);
    out.emplace_back(normal_.form(), std::span<const double>(c));
  }
  return out;
}

bool on_ads_quadric(const FormVector& p, double tol) {
  return p.form() == Form::Q22 && std::abs(evaluate_form(p) + 1.0) <= tol * std::max(1.0, p.euclid_sq());
}

Hyperplane dual_plane(const FormVector& p) {
  if (!on_ads_quadric(p)) throw PreconditionError("point is not on the AdS quadric q22 = -1");
  return Hyperplane(p);
}

ConjugatePair conjugate_points(const FormVector& p) {
  if (!on_ads_quadric(p)) throw PreconditionError("point is not on the AdS quadric q22 = -1");
  return {-p, -p};
}

}  // namespace adsgeom
