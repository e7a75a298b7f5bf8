#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "adsgeom/forms.hpp"
#include "adsgeom/isometries.hpp"

namespace testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

inline adsgeom::ProjMatrix random_sl2(Rng& rng, double spread = 2.0) {
  for (;;) {
    const double a = uniform(rng, -spread, spread);
    const double b = uniform(rng, -spread, spread);
    const double c = uniform(rng, -spread, spread);
    const double d = uniform(rng, -spread, spread);
    const double det = a * d - b * c;
    if (std::abs(det) < 0.2) continue;
    const double s = 1.0 / std::sqrt(std::abs(det));
    if (det > 0) return {a * s, b * s, c * s, d * s};
    return {b * s, a * s, d * s, c * s};
  }
}

inline adsgeom::FormVector random_vector(Rng& rng, adsgeom::Form f) {
  double c[4];
  for (double& x : c) x = uniform(rng, -3, 3);
  return adsgeom::FormVector(f, std::span<const double>(c, static_cast<size_t>(adsgeom::form_dimension(f))));
}

// Random point of the AdS quadric q22 = -1.
inline adsgeom::FormVector random_ads_point(Rng& rng) {
  const double r = uniform(rng, 0, 2);
  const double a = uniform(rng, 0, 2 * M_PI);
  const double b = uniform(rng, 0, 2 * M_PI);
  return adsgeom::FormVector(adsgeom::Form::Q22, {std::cosh(r) * std::cos(a), std::cosh(r) * std::sin(a),
                                                  std::sinh(r) * std::cos(b), std::sinh(r) * std::sin(b)});
}

inline adsgeom::ProjMatrix conjugate(const adsgeom::ProjMatrix& g, const adsgeom::ProjMatrix& h) {
  return h * g * h.inverse();
}

}  // namespace testing
