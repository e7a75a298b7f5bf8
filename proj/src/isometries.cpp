#include "adsgeom/isometries.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <iomanip>

#include "adsgeom/errors.hpp"

namespace adsgeom {

namespace {

double frob_sq(const std::array<double, 4>& m) {
  return m[0] * m[0] + m[1] * m[1] + m[2] * m[2] + m[3] * m[3];
}

// Absolute width of the |tr| = 2 band, scaled with the entries.
double band_width(const ProjMatrix& g) { return kClassifyTol * std::max(1.0, 0.5 * frob_sq(g.entries())); }

FormVector from_eigen3(const Eigen::Vector3d& v) { return FormVector(Form::Q12, {v(0), v(1), v(2)}); }

constexpr double kJordanTol = 1e-6;

Eigen::Vector3d null_vector(const Eigen::Matrix3d& m) {
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(m, Eigen::ComputeFullV);
  return svd.matrixV().col(2);
}

}  // namespace

ProjMatrix::ProjMatrix(double a, double b, double c, double d) {
  const double det = a * d - b * c;
  if (!std::isfinite(det)) throw InputError("matrix has non-finite entries");
  if (std::abs(det - 1.0) > 1e-9) {
    std::ostringstream os;
    os << "determinant " << std::setprecision(17) << det << " differs from 1";
    throw InputError(os.str());
  }
  const double s = 1.0 / std::sqrt(det);
  m_ = {a * s, b * s, c * s, d * s};
  for (double x : m_) {
    if (x != 0.0) {
      if (x < 0) {
        for (double& y : m_) y = -y;
      }
      break;
    }
  }
  for (double& y : m_) {
    if (y == 0.0) y = 0.0;  // drop negative zeros
  }
}

ProjMatrix ProjMatrix::operator*(const ProjMatrix& o) const {
  const auto& p = m_;
  const auto& q = o.m_;
  return {p[0] * q[0] + p[1] * q[2], p[0] * q[1] + p[1] * q[3], p[2] * q[0] + p[3] * q[2],
          p[2] * q[1] + p[3] * q[3]};
}

ProjMatrix ProjMatrix::inverse() const { return {m_[3], -m_[1], -m_[2], m_[0]}; }

bool ProjMatrix::is_identity(double tol) const {
  const auto r = nonneg_trace_rep();
  return std::abs(r[0] - 1) <= tol && std::abs(r[1]) <= tol && std::abs(r[2]) <= tol &&
         std::abs(r[3] - 1) <= tol;
}

std::array<double, 4> ProjMatrix::nonneg_trace_rep() const {
  if (trace() >= 0) return m_;
  return {-m_[0], -m_[1], -m_[2], -m_[3]};
}

Eigen::Matrix2d ProjMatrix::matrix() const {
  Eigen::Matrix2d m;
  m << m_[0], m_[1], m_[2], m_[3];
  return m;
}

bool approx_equal(const ProjMatrix& x, const ProjMatrix& y, double tol) {
  double plus = 0;
  double minus = 0;
  for (int i = 0; i < 4; ++i) {
    plus = std::max(plus, std::abs(x.entries()[i] - y.entries()[i]));
    minus = std::max(minus, std::abs(x.entries()[i] + y.entries()[i]));
  }
  return std::min(plus, minus) <= tol;
}

ProjMatrix parse_matrix(std::string_view text) {
  std::array<double, 4> v{};
  size_t pos = 0;
  for (int i = 0; i < 4; ++i) {
    const size_t end = i < 3 ? text.find(',', pos) : text.size();
    if (end == std::string_view::npos) throw InputError("expected 4 comma-separated entries");
    std::string field(text.substr(pos, end - pos));
    field.erase(0, field.find_first_not_of(" \t"));
    field.erase(field.find_last_not_of(" \t") + 1);
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, v[static_cast<size_t>(i)]);
    if (ec != std::errc() || ptr != last || field.empty()) {
      throw InputError("cannot parse matrix entry '" + field + "'");
    }
    pos = end + 1;
  }
  return {v[0], v[1], v[2], v[3]};
}

std::string format_matrix(const ProjMatrix& g) {
  std::ostringstream os;
  os << std::setprecision(17);
  for (int i = 0; i < 4; ++i) os << (i ? "," : "") << g.entries()[i];
  return os.str();
}

ProjMatrix rotation(double p) { return {std::cos(p), -std::sin(p), std::sin(p), std::cos(p)}; }

ProjMatrix boundary_rotation(double angle) { return rotation(-0.5 * angle); }

ProjMatrix diagonal_boost(double length) { return {std::exp(0.5 * length), 0, 0, std::exp(-0.5 * length)}; }

ProjMatrix unipotent(double t) { return {1, t, 0, 1}; }

std::string_view isom_kind(const IsomClass& c) {
  static constexpr std::string_view names[] = {"identity", "elliptic", "parabolic_positive",
                                                "parabolic_negative", "hyperbolic"};
  return names[c.index()];
}

bool in_parabolic_band(const ProjMatrix& g) {
  return !g.is_identity() && std::abs(std::abs(g.trace()) - 2.0) <= band_width(g);
}

bool is_parabolic(const ProjMatrix& g) { return in_parabolic_band(g); }

bool is_elliptic(const ProjMatrix& g) {
  return !g.is_identity() && !in_parabolic_band(g) && std::abs(g.trace()) < 2.0;
}

bool is_hyperbolic(const ProjMatrix& g) {
  return !g.is_identity() && !in_parabolic_band(g) && std::abs(g.trace()) > 2.0;
}

double canonical_lift_value(const ProjMatrix& g, double theta) {
  const auto r = g.nonneg_trace_rep();
  auto principal = [&r](double th) {
    const double al = -0.5 * th;
    const double v0 = std::cos(al);
    const double v1 = std::sin(al);
    const double w0 = r[0] * v0 + r[1] * v1;
    const double w1 = r[2] * v0 + r[3] * v1;
    return th - 2.0 * std::atan2(v0 * w1 - v1 * w0, v0 * w0 + v1 * w1);
  };
  double value = principal(theta);
  if (is_elliptic(g)) value -= kTwoPi * std::floor(principal(0.0) / kTwoPi);
  return value;
}

IsomClass classify_isometry(const ProjMatrix& g) {
  if (g.is_identity()) return Identity{};
  if (in_parabolic_band(g)) {
    double best = 0;
    for (int i = 0; i < 32; ++i) {
      const double th = kTwoPi * i / 32.0;
      const double disp = canonical_lift_value(g, th) - th;
      if (std::abs(disp) > std::abs(best)) best = disp;
    }
    if (best >= 0) return ParabolicPositive{};
    return ParabolicNegative{};
  }
  const double t = std::abs(g.trace());
  if (t < 2.0) return Elliptic{translation_number(lift_canonical(g))};
  return Hyperbolic{2.0 * std::acosh(0.5 * t)};
}

RP1Point RP1Point::from_angle(double theta) { return {std::cos(0.5 * theta), -std::sin(0.5 * theta)}; }

double RP1Point::angle() const {
  double th = -2.0 * std::atan2(v, u);
  th = std::fmod(th, kTwoPi);
  if (th < 0) th += kTwoPi;
  if (th >= kTwoPi) th -= kTwoPi;
  return th;
}

std::optional<double> RP1Point::affine() const {
  if (std::abs(v) <= 1e-15 * std::abs(u)) return std::nullopt;
  return u / v;
}

RP1Point RP1Point::apply(const ProjMatrix& g) const {
  return {g.a() * u + g.b() * v, g.c() * u + g.d() * v};
}

bool RP1Point::same_as(const RP1Point& o, double tol) const {
  const double cross = u * o.v - v * o.u;
  return std::abs(cross) <= tol * std::hypot(u, v) * std::hypot(o.u, o.v);
}

RP1FixedSet fixed_points_rp1(const ProjMatrix& g) {
  RP1FixedSet out;
  if (g.is_identity()) {
    out.all = true;
    return out;
  }
  const double a = g.a(), b = g.b(), c = g.c(), d = g.d();
  const double scale = std::sqrt(frob_sq(g.entries()));
  if (std::abs(c) <= 1e-15 * scale) {
    out.points.push_back(RP1Point::infinity());
    if (std::abs(d - a) > 1e-12 * scale) out.points.push_back(RP1Point::from_affine(b / (d - a)));
  } else if (in_parabolic_band(g)) {
    out.points.push_back(RP1Point::from_affine((a - d) / (2 * c)));
  } else {
    const double disc = g.trace() * g.trace() - 4.0;
    if (disc > 0) {
      // Stable roots of c x^2 + (d - a) x - b = 0.
      const double bq = d - a;
      const double s = std::sqrt(disc);
      const double qq = -0.5 * (bq + std::copysign(s, bq == 0 ? 1.0 : bq));
      out.points.push_back(RP1Point::from_affine(qq / c));
      out.points.push_back(RP1Point::from_affine(-b / qq));
    }
  }
  std::sort(out.points.begin(), out.points.end(),
            [](const RP1Point& x, const RP1Point& y) { return x.angle() < y.angle(); });
  return out;
}

RP1Point attracting_point(const ProjMatrix& g) {
  if (!is_hyperbolic(g)) throw PreconditionError("attracting point needs a hyperbolic element");
  const auto r = g.nonneg_trace_rep();
  const double t = r[0] + r[3];
  const double lam = 0.5 * (t + std::sqrt(t * t - 4.0));
  // Eigenvector of the larger eigenvalue, from the better conditioned row.
  const double e1 = std::hypot(r[1], lam - r[0]);
  const double e2 = std::hypot(lam - r[3], r[2]);
  if (e1 >= e2) return {r[1], lam - r[0]};
  return {lam - r[3], r[2]};
}

RP1Point repelling_point(const ProjMatrix& g) { return attracting_point(g.inverse()); }

Eigen::Matrix2d trace_free_of(const FormVector& x) {
  if (x.form() != Form::Q12) throw InputError("expected a q12 vector");
  Eigen::Matrix2d m;
  m << x[1], x[2] + x[0], x[2] - x[0], -x[1];
  return m;
}

FormVector q12_of(const Eigen::Matrix2d& m) {
  const double x1 = 0.5 * (m(0, 0) - m(1, 1));
  const double x2 = 0.5 * (m(0, 1) + m(1, 0));
  const double x0 = 0.5 * (m(0, 1) - m(1, 0));
  return FormVector(Form::Q12, {x0, x1, x2});
}

Eigen::Matrix3d adjoint_so12(const ProjMatrix& g) {
  const Eigen::Matrix2d gm = g.matrix();
  const Eigen::Matrix2d gi = gm.inverse();
  Eigen::Matrix3d out;
  for (int j = 0; j < 3; ++j) {
    std::array<double, 3> e{};
    e[static_cast<size_t>(j)] = 1.0;
    const FormVector img = q12_of(gm * trace_free_of(FormVector(Form::Q12, {e[0], e[1], e[2]})) * gi);
    for (int i = 0; i < 3; ++i) out(i, j) = img[i];
  }
  return out;
}

FormVector boundary_ray(const RP1Point& p) {
  Eigen::Matrix2d m;
  m << -p.u * p.v, p.u * p.u, -p.v * p.v, p.u * p.v;
  return q12_of(m);
}

std::vector<FixedRay> fixed_points_hs2(const ProjMatrix& g) {
  if (g.is_identity()) throw PreconditionError("the identity fixes every ray");
  const Eigen::Matrix3d adj = adjoint_so12(g);
  std::vector<FixedRay> out;
  auto push_pair = [&out](const Eigen::Vector3d& v) {
    const FormVector ray = normalize_ray(from_eigen3(v));
    out.push_back({hs_classify_ray(ray), ray});
    out.push_back({hs_classify_ray(-ray), -ray});
  };
  Eigen::Vector3d fixed = null_vector(adj - Eigen::Matrix3d::Identity());
  // A parabolic adjoint is a Jordan block, so its fixed vector carries an
  // error of order sqrt(eps). Such near-null vectors are put on the cone.
  const double spatial = std::hypot(fixed(1), fixed(2));
  if (std::abs(spatial * spatial - fixed(0) * fixed(0)) <= kJordanTol) {
    fixed(0) = std::copysign(spatial, fixed(0));
  }
  push_pair(fixed);
  if (hs_classify_ray(out.front().ray) == HS2Region::DeSitter) {
    Eigen::EigenSolver<Eigen::Matrix3d> es(adj, false);
    for (int i = 0; i < 3; ++i) {
      const auto lam = es.eigenvalues()(i);
      if (std::abs(lam.imag()) > 1e-9 || std::abs(lam.real() - 1.0) <= 1e-9) continue;
      push_pair(null_vector(adj - lam.real() * Eigen::Matrix3d::Identity()));
    }
  }
  std::sort(out.begin(), out.end(), [](const FixedRay& x, const FixedRay& y) {
    if (x.region != y.region) return x.region < y.region;
    return std::lexicographical_compare(x.ray.coords().begin(), x.ray.coords().end(),
                                        y.ray.coords().begin(), y.ray.coords().end());
  });
  return out;
}

ProjMatrix rotation_about(const FormVector& center, double angle) {
  const double q = evaluate_form(center);
  if (classify_vector(center) != CausalClass::Timelike) {
    throw PreconditionError("rotation center must be a timelike point");
  }
  const FormVector c = center * (1.0 / std::sqrt(-q));
  const Eigen::Matrix2d m = std::cos(0.5 * angle) * Eigen::Matrix2d::Identity() + std::sin(0.5 * angle) * trace_free_of(c);
  return {m(0, 0), m(0, 1), m(1, 0), m(1, 1)};
}

ProjMatrix translation_dual_to(const FormVector& ds_point, double eta) {
  const double q = evaluate_form(ds_point);
  if (classify_vector(ds_point) != CausalClass::Spacelike) {
    throw PreconditionError("translation axis must be dual to a de Sitter point");
  }
  const FormVector c = ds_point * (1.0 / std::sqrt(q));
  const Eigen::Matrix2d m = std::cosh(eta) * Eigen::Matrix2d::Identity() + std::sinh(eta) * trace_free_of(c);
  return {m(0, 0), m(0, 1), m(1, 0), m(1, 1)};
}

double LiftedIsometry::operator()(double theta) const { return canonical_lift_value(g_, theta) + kTwoPi * k_; }

LiftedIsometry LiftedIsometry::inverse() const {
  const LiftedIsometry probe = compose_lifted(*this, LiftedIsometry(0, g_.inverse()));
  return {-probe.degree(), g_.inverse()};
}

bool LiftedIsometry::operator==(const LiftedIsometry& o) const { return k_ == o.k_ && approx_equal(g_, o.g_); }

LiftedIsometry lift_canonical(const ProjMatrix& g) { return {0, g}; }

LiftedIsometry compose_lifted(const LiftedIsometry& a, const LiftedIsometry& b) {
  const ProjMatrix h = a.base() * b.base();
  const double v = a(b(0.0));
  const double k = std::round((v - canonical_lift_value(h, 0.0)) / kTwoPi);
  return {static_cast<int>(k), h};
}

double translation_number(const LiftedIsometry& a) {
  double base = 0.0;
  if (is_elliptic(a.base())) {
    const auto r = a.base().nonneg_trace_rep();
    const double phi = std::acos(std::clamp(0.5 * (r[0] + r[3]), -1.0, 1.0));
    base = r[2] > 0 ? kTwoPi - 2.0 * phi : 2.0 * phi;
  }
  return kTwoPi * a.degree() + base;
}

LiftedIsometry elliptic_lift(double angle, const FormVector& center) {
  if (!(angle > 0)) throw PreconditionError("elliptic angle must be positive");
  const FormVector up = center[0] >= 0 ? center : -center;
  const ProjMatrix g = rotation_about(up, angle);
  const int k = static_cast<int>(std::floor((angle - translation_number(lift_canonical(g))) / kTwoPi + 0.5));
  return {k, g};
}

LiftedIsometry elliptic_lift(double angle) { return elliptic_lift(angle, FormVector(Form::Q12, {1, 0, 0})); }

Eigen::Matrix2d sl2_of(const FormVector& x) {
  if (x.form() != Form::Q22) throw InputError("expected a q22 vector");
  Eigen::Matrix2d m;
  m << x[0] + x[3], x[1] + x[2], x[2] - x[1], x[0] - x[3];
  return m;
}

FormVector q22_of(const Eigen::Matrix2d& m) {
  return FormVector(Form::Q22, {0.5 * (m(0, 0) + m(1, 1)), 0.5 * (m(0, 1) - m(1, 0)),
                                0.5 * (m(0, 1) + m(1, 0)), 0.5 * (m(0, 0) - m(1, 1))});
}

FormVector AdSIsometry::apply(const FormVector& x) const {
  // Points of the quadric are taken up to sign, so the representatives are
  // fixed as the ones with nonnegative trace.
  auto rep = [](const ProjMatrix& g) {
    const auto r = g.nonneg_trace_rep();
    return (Eigen::Matrix2d() << r[0], r[1], r[2], r[3]).finished();
  };
  return q22_of(rep(left_) * sl2_of(x) * rep(right_).inverse());
}

std::pair<RP1Point, RP1Point> AdSIsometry::apply_boundary(const RP1Point& l, const RP1Point& r) const {
  return {l.apply(left_), r.apply(right_)};
}

FormVector ads_boundary_point(const RP1Point& l, const RP1Point& r) {
  Eigen::Vector2d wl(l.u, l.v);
  Eigen::Vector2d jr(-r.v, r.u);
  return q22_of(wl * jr.transpose());
}

}  // namespace adsgeom
