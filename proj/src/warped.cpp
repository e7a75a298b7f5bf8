#include <cmath>
#include <limits>
#include <random>

#include "adsgeom/errors.hpp"
#include "adsgeom/spacetimes.hpp"

namespace adsgeom {

namespace {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Vec4 = Eigen::Vector4d;
using Christoffel = std::array<Mat3, 3>;

const Eigen::Vector4d kSignature(-1, -1, 1, 1);

double lorentz(const Vec4& a, const Vec4& b) { return a.dot(kSignature.cwiseProduct(b)); }

Mat3 metric_at(double cone_angle, const Vec3& x) {
  const double c = std::cos(x[0]);
  const double a = cone_angle / kTwoPi;
  const double s = a * std::sinh(x[1]);
  Mat3 g = Mat3::Zero();
  g(0, 0) = -1;
  g(1, 1) = c * c;
  g(2, 2) = c * c * s * s;
  return g;
}

// Orthonormal frame field: columns are dt, dr / cos t and dphi / (cos t a sinh r).
Mat3 frame_at(double cone_angle, const Vec3& x) {
  const double c = std::cos(x[0]);
  const double a = cone_angle / kTwoPi;
  Mat3 e = Mat3::Zero();
  e(0, 0) = 1;
  e(1, 1) = 1 / c;
  e(2, 2) = 1 / (c * a * std::sinh(x[1]));
  return e;
}

void check_chart(const Vec3& x) {
  if (!(x[0] > -kPi / 2 && x[0] < kPi / 2)) throw InputError("time coordinate outside (-pi/2, pi/2)");
  if (!(x[1] > 0)) throw InputError("radial coordinate must be positive away from the cone point");
}

struct Development {
  Vec4 p;
  std::array<Vec4, 3> e;

  Development operator+(const Development& o) const {
    return {p + o.p, {e[0] + o.e[0], e[1] + o.e[1], e[2] + o.e[2]}};
  }
  Development operator*(double s) const { return {p * s, {e[0] * s, e[1] * s, e[2] * s}}; }
};

// Derivative of the developed frame along the coordinate velocity v at x.
Development develop_rate(double cone_angle, const Vec3& x, const Vec3& v, const Development& d) {
  const Mat3 frame = frame_at(cone_angle, x);
  const Mat3 inv = frame.inverse();
  const Christoffel gamma = christoffel(cone_angle, x);
  const double h = 1e-5;
  const Mat3 dframe = (frame_at(cone_angle, x + h * v) - frame_at(cone_angle, x - h * v)) / (2 * h);
  const Vec3 c = inv * v;
  const Vec3 eps(-1, 1, 1);
  Development rate;
  rate.p = c[0] * d.e[0] + c[1] * d.e[1] + c[2] * d.e[2];
  for (int i = 0; i < 3; ++i) {
    Vec3 cov = dframe.col(i);
    for (int k = 0; k < 3; ++k) cov[k] += v.dot(gamma[static_cast<size_t>(k)] * frame.col(i));
    const Vec3 w = inv * cov;
    rate.e[static_cast<size_t>(i)] = w[0] * d.e[0] + w[1] * d.e[1] + w[2] * d.e[2] + eps[i] * c[i] * d.p;
  }
  return rate;
}

}  // namespace

ChartMetric warped_metric(double cone_angle, const Eigen::Vector3d& point) {
  if (!(cone_angle > 0)) throw InputError("cone angle must be positive");
  check_chart(point);
  return {metric_at(cone_angle, point)};
}

ChartMetric warped_metric(const WarpedProductRecipe& r, int cone_point, const Eigen::Vector3d& point) {
  if (cone_point < 0 || cone_point >= static_cast<int>(r.cone_angles.size())) throw InputError("no such cone point");
  if (!(point[0] >= r.t_min && point[0] <= r.t_max)) throw InputError("time coordinate outside the recipe range");
  return warped_metric(r.cone_angles[static_cast<size_t>(cone_point)], point);
}

std::array<Eigen::Matrix3d, 3> christoffel(double cone_angle, const Eigen::Vector3d& x, double step) {
  std::array<Mat3, 3> dg;
  for (int k = 0; k < 3; ++k) {
    Vec3 dx = Vec3::Zero();
    dx[k] = step;
    dg[static_cast<size_t>(k)] = (metric_at(cone_angle, x + dx) - metric_at(cone_angle, x - dx)) / (2 * step);
  }
  const Mat3 ginv = metric_at(cone_angle, x).inverse();
  Christoffel out;
  for (int a = 0; a < 3; ++a) {
    Mat3 m = Mat3::Zero();
    for (int b = 0; b < 3; ++b) {
      for (int c = 0; c < 3; ++c) {
        double sum = 0;
        for (int d = 0; d < 3; ++d) {
          sum += ginv(a, d) * (dg[static_cast<size_t>(b)](d, c) + dg[static_cast<size_t>(c)](d, b) -
                               dg[static_cast<size_t>(d)](b, c));
        }
        m(b, c) = 0.5 * sum;
      }
    }
    out[static_cast<size_t>(a)] = m;
  }
  return out;
}

double sectional_curvature(double cone_angle, const Eigen::Vector3d& x, int i, int j, double outer, double inner) {
  if (i == j || i < 0 || j < 0 || i > 2 || j > 2) throw InputError("sectional curvature needs two distinct coordinate axes");
  check_chart(x);
  const Christoffel gamma = christoffel(cone_angle, x, inner);
  std::array<Christoffel, 3> dgamma;
  // Central differences at steps h and h/2, combined by Richardson extrapolation.
  auto central = [&](int k, size_t a, double h) {
    Vec3 dx = Vec3::Zero();
    dx[k] = h;
    return Mat3((christoffel(cone_angle, x + dx, inner)[a] - christoffel(cone_angle, x - dx, inner)[a]) / (2 * h));
  };
  for (int k = 0; k < 3; ++k) {
    for (size_t a = 0; a < 3; ++a) {
      dgamma[static_cast<size_t>(k)][a] = (4 * central(k, a, 0.5 * outer) - central(k, a, outer)) / 3;
    }
  }
  // R^a_{bcd} = d_c G^a_{db} - d_d G^a_{cb} + G^a_{ce} G^e_{db} - G^a_{de} G^e_{cb}
  auto riemann = [&](int a, int b, int c, int d) {
    const auto ua = static_cast<size_t>(a);
    double r = dgamma[static_cast<size_t>(c)][ua](d, b) - dgamma[static_cast<size_t>(d)][ua](c, b);
    for (int e = 0; e < 3; ++e) {
      const auto ue = static_cast<size_t>(e);
      r += gamma[ua](c, e) * gamma[ue](d, b) - gamma[ua](d, e) * gamma[ue](c, b);
    }
    return r;
  };
  const Mat3 g = metric_at(cone_angle, x);
  double num = 0;
  for (int a = 0; a < 3; ++a) num += g(i, a) * riemann(a, j, i, j);
  return num / (g(i, i) * g(j, j) - g(i, j) * g(i, j));
}

Eigen::Matrix4d peripheral_holonomy(double cone_angle, double t, double r, int steps) {
  if (!(cone_angle > 0)) throw InputError("cone angle must be positive");
  if (steps < 1) throw InputError("need at least one integration step");
  check_chart(Vec3(t, r, 0));
  const Vec3 v(0, 0, 1);
  Development d{Vec4::UnitX(), {Vec4::UnitY(), Vec4::UnitZ(), Vec4::UnitW()}};
  const double h = kTwoPi / steps;
  for (int n = 0; n < steps; ++n) {
    const Vec3 x(t, r, n * h);
    const Development k1 = develop_rate(cone_angle, x, v, d);
    const Development k2 = develop_rate(cone_angle, x + 0.5 * h * v, v, d + k1 * (0.5 * h));
    const Development k3 = develop_rate(cone_angle, x + 0.5 * h * v, v, d + k2 * (0.5 * h));
    const Development k4 = develop_rate(cone_angle, x + h * v, v, d + k3 * h);
    d = d + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
  }
  Eigen::Matrix4d a;
  a << d.p, d.e[0], d.e[1], d.e[2];
  return a;
}

double peripheral_holonomy_angle(double cone_angle, double t, double r, int steps) {
  const Eigen::Matrix4d a = peripheral_holonomy(cone_angle, t, r, steps);
  const Eigen::JacobiSVD<Eigen::Matrix4d> svd(a - Eigen::Matrix4d::Identity(), Eigen::ComputeFullV);
  // Fixed plane (the developed cone axis), orthonormalized for the form.
  Vec4 k1 = svd.matrixV().col(2);
  Vec4 k2 = svd.matrixV().col(3);
  if (lorentz(k1, k1) >= 0 || lorentz(k2, k2) >= 0) {
    // Rotate within the plane until both vectors are negative.
    const Vec4 s = k1 + k2;
    const Vec4 dlt = k1 - k2;
    k1 = lorentz(s, s) < lorentz(dlt, dlt) ? s : dlt;
  }
  if (lorentz(k1, k1) >= 0) throw PreconditionError("holonomy does not fix a timelike geodesic");
  k1 /= std::sqrt(-lorentz(k1, k1));
  k2 += lorentz(k2, k1) * k1;
  if (lorentz(k2, k2) >= 0) throw PreconditionError("holonomy does not fix a timelike geodesic");
  k2 /= std::sqrt(-lorentz(k2, k2));
  auto project = [&](const Vec4& x) { return Vec4(x + lorentz(x, k1) * k1 + lorentz(x, k2) * k2); };
  Vec4 u = project(Vec4::UnitZ());
  u /= std::sqrt(lorentz(u, u));
  Vec4 w = project(Vec4::UnitW());
  w -= lorentz(w, u) * u;
  w /= std::sqrt(lorentz(w, w));
  const Vec4 au = a * u;
  const double angle = std::atan2(lorentz(au, w), lorentz(au, u));
  return angle < 0 ? angle + kTwoPi : angle;
}

SpeedBoundResult singular_chart_speed_bound(double mass, const std::vector<CurveSample>& samples, double tol) {
  if (!(mass > 0 && mass < 1)) throw PreconditionError("mass must lie in (0, 1)");
  if (samples.size() < 2) throw InputError("a curve needs at least two samples");
  for (size_t i = 0; i < samples.size(); ++i) {
    if (!(std::abs(samples[i].zeta) < 1.0)) throw InputError("sample outside the unit chart");
    if (i > 0 && !(samples[i].t > samples[i - 1].t)) throw InputError("samples must be ordered by time");
  }
  SpeedBoundResult r;
  r.within = true;
  r.max_excess = -std::numeric_limits<double>::infinity();
  r.min_excess = std::numeric_limits<double>::infinity();
  for (size_t i = 1; i < samples.size(); ++i) {
    const double dt = samples[i].t - samples[i - 1].t;
    const double speed = std::abs(samples[i].zeta - samples[i - 1].zeta) / dt;
    const double bound = std::pow(std::abs(0.5 * (samples[i].zeta + samples[i - 1].zeta)), mass) / (1 - mass);
    const double excess = speed - bound;
    r.max_excess = std::max(r.max_excess, excess);
    r.min_excess = std::min(r.min_excess, excess);
    r.max_ratio = std::max(r.max_ratio, bound > 0 ? speed / bound : (speed > 0 ? INFINITY : 0.0));
    if (excess > tol) r.within = false;
    if (std::abs(excess) <= tol) r.marginal = true;
  }
  r.marginal = r.marginal && r.within;
  return r;
}

std::vector<CurveSample> null_curve(double mass, double rho0, double duration, int steps) {
  if (!(mass > 0 && mass < 1)) throw PreconditionError("mass must lie in (0, 1)");
  if (!(rho0 > 0) || !(duration > 0) || steps < 1) throw InputError("null curve needs rho0 > 0, duration > 0, steps >= 1");
  auto f = [mass](double rho) { return std::pow(rho, mass) / (1 - mass); };
  const double h = duration / steps;
  std::vector<CurveSample> out;
  out.reserve(static_cast<size_t>(steps) + 1);
  double rho = rho0;
  out.push_back({0.0, rho});
  for (int n = 1; n <= steps; ++n) {
    const double k1 = f(rho);
    const double k2 = f(rho + 0.5 * h * k1);
    const double k3 = f(rho + 0.5 * h * k2);
    const double k4 = f(rho + h * k3);
    rho += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    out.push_back({n * h, rho});
  }
  return out;
}

bool time_function_check(const WarpedProductRecipe& r, const std::vector<WarpedCurve>& curves, double tol) {
  if (r.cone_angles.empty()) throw InputError("warped product needs at least one cone point");
  const double angle = r.cone_angles.front();
  bool increasing = true;
  for (size_t c = 0; c < curves.size(); ++c) {
    const WarpedCurve& curve = curves[c];
    if (curve.size() < 2) throw InputError("curve " + std::to_string(c) + " needs at least two samples");
    for (const Vec3& x : curve) {
      check_chart(x);
      if (x[0] < r.t_min || x[0] > r.t_max) throw InputError("curve " + std::to_string(c) + " leaves the time range");
    }
    for (size_t i = 1; i < curve.size(); ++i) {
      const Vec3 dx = curve[i] - curve[i - 1];
      const Mat3 g = metric_at(angle, 0.5 * (curve[i] + curve[i - 1]));
      if (dx.dot(g * dx) > tol * std::max(dx.squaredNorm(), 1e-300) || dx.isZero(0)) {
        throw InputError("curve " + std::to_string(c) + " is not causal at segment " + std::to_string(i - 1));
      }
      if (!(dx[0] > 0)) increasing = false;
    }
  }
  return increasing;
}

WarpedCurve random_causal_curve(const WarpedProductRecipe& r, std::uint64_t seed, int steps) {
  if (r.cone_angles.empty()) throw InputError("warped product needs at least one cone point");
  if (steps < 1) throw InputError("need at least one step");
  const double a = r.cone_angles.front() / kTwoPi;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double span = r.t_max - r.t_min;
  Vec3 x(r.t_min + 0.3 * span * unit(rng), 0.3 + 1.2 * unit(rng), kTwoPi * unit(rng));
  double psi = kTwoPi * unit(rng);
  const double beta_max = 0.95 * unit(rng);
  const double dt = 0.6 * span / steps;
  auto velocity = [&](const Vec3& p, double beta, double dir) {
    const double c = std::cos(p[0]);
    return Vec3(1.0, beta * std::cos(dir) / c, beta * std::sin(dir) / (c * a * std::sinh(p[1])));
  };
  WarpedCurve out{x};
  for (int n = 0; n < steps; ++n) {
    psi += 0.5 * (unit(rng) - 0.5);
    if (x[1] < 0.2) psi = 0.0;  // steer away from the cone point
    const double beta = beta_max * unit(rng);
    const Vec3 mid = x + 0.5 * dt * velocity(x, beta, psi);
    x += dt * velocity(mid, beta, psi);
    out.push_back(x);
  }
  return out;
}

}  // namespace adsgeom
