#include <cmath>
#include <random>

#include "adsgeom/errors.hpp"
#include "adsgeom/polyhedra.hpp"

namespace adsgeom {

HS3Polyhedron hull_in_chart(const std::vector<Eigen::Vector3d>& points) {
  const int n = static_cast<int>(points.size());
  if (n < 4) throw PreconditionError("need at least four points");
  double scale = 0;
  for (const auto& p : points) scale = std::max(scale, p.norm());
  const double tol = 1e-9 * std::max(1.0, scale * scale * scale);
  std::vector<std::vector<int>> faces;
  std::vector<bool> used(static_cast<size_t>(n), false);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        const Eigen::Vector3d normal = (points[j] - points[i]).cross(points[k] - points[i]);
        int above = 0;
        int below = 0;
        for (int l = 0; l < n; ++l) {
          if (l == i || l == j || l == k) continue;
          const double d = normal.dot(points[l] - points[i]);
          if (std::abs(d) <= tol) throw PreconditionError("four points are coplanar");
          (d > 0 ? above : below)++;
        }
        if (above > 0 && below > 0) continue;
        faces.push_back({i, j, k});
        used[static_cast<size_t>(i)] = used[static_cast<size_t>(j)] = used[static_cast<size_t>(k)] = true;
      }
    }
  }
  for (bool u : used) {
    if (!u) throw PreconditionError("a point is not a hull vertex");
  }
  std::vector<FormVector> rays;
  for (const auto& p : points) rays.push_back(FormVector(Form::Q13, {p[0], 1.0, p[1], p[2]}));
  return HS3Polyhedron(std::move(rays), std::move(faces));
}

HS3Polyhedron random_bihyperbolic(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> plus_count(1, 2);
  std::uniform_int_distribution<int> minus_count(1, 3);
  std::uniform_int_distribution<int> ds_count(0, 3);
  auto spatial = [&] { return Eigen::Vector2d(2.4 * unit(rng) - 1.2, 2.4 * unit(rng) - 1.2); };
  auto timelike = [&](double sign) {
    const Eigen::Vector2d s = spatial();
    const double x0 = sign * std::sqrt(1 + s.squaredNorm()) * (1.1 + 0.9 * unit(rng));
    return Eigen::Vector3d(x0, s[0], s[1]);
  };
  auto de_sitter = [&] {
    const Eigen::Vector2d s = spatial();
    const double x0 = std::sqrt(1 + s.squaredNorm()) * (1.7 * unit(rng) - 0.85);
    return Eigen::Vector3d(x0, s[0], s[1]);
  };
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<Eigen::Vector3d> pts;
    const int np = plus_count(rng);
    const int nm = minus_count(rng);
    int nd = ds_count(rng);
    if (np + nm + nd < 4) nd = 4 - np - nm;
    for (int i = 0; i < np; ++i) pts.push_back(timelike(1.0));
    for (int i = 0; i < nm; ++i) pts.push_back(timelike(-1.0));
    for (int i = 0; i < nd; ++i) pts.push_back(de_sitter());
    try {
      return hull_in_chart(pts);
    } catch (const PreconditionError&) {
    } catch (const InputError&) {
    }
  }
  throw PreconditionError("random polyhedron generator exhausted its attempts");
}

}  // namespace adsgeom
