#include <algorithm>
#include <cmath>

#include "adsgeom/errors.hpp"
#include "adsgeom/hs_surfaces.hpp"

namespace adsgeom {

namespace {

constexpr int kGrid = 1024;
constexpr double kRootWidth = 1e-12;
constexpr double kTangentTol = 1e-9;

// b strictly inside (lo, hi] as an affine value.
bool between(const RP1Point& b, double lo, double hi) {
  if (b.v == 0.0) return false;
  const double x = b.u / b.v;
  return x > lo && x <= hi;
}

bool applies(const LeafSurgery& s, const RP1Point& b) {
  if (!s.half_leaf_start) return true;
  return b.v != 0.0 && b.u / b.v > *s.half_leaf_start;
}

double leaf_y(double s) { return std::tan(kPi * (s - 0.5)); }

std::vector<LeafSurgery> sorted_surgeries(const FirstReturnSystem& sys) {
  auto out = sys.surgeries;
  std::stable_sort(out.begin(), out.end(), [](const LeafSurgery& x, const LeafSurgery& y) { return x.site < y.site; });
  return out;
}

}  // namespace

LeafSurgery LeafSurgery::parabolic(double site, double t, int sign) {
  const double s = sign >= 0 ? t : -t;
  return {site, ProjMatrix(1 - site * s, site * site * s, -s, 1 + site * s), sign >= 0 ? 1 : -1, std::nullopt};
}

double FirstReturnSystem::length() const {
  const auto cls = classify_isometry(base_holonomy);
  if (!std::holds_alternative<Hyperbolic>(cls)) throw PreconditionError("base holonomy must be hyperbolic");
  return std::get<Hyperbolic>(cls).translation_length;
}

void validate(const FirstReturnSystem& sys) {
  const double top = std::exp(sys.length());
  if (sys.interval != 0) throw PreconditionError("only the normalized interval (0, inf) is supported");
  for (const auto& s : sys.surgeries) {
    if (!(s.site > 1.0 && s.site < top)) throw PreconditionError("surgery site must lie in (1, e^L)");
    const RP1Point site = RP1Point::from_affine(s.site);
    if (!site.apply(s.correction).same_as(site)) throw PreconditionError("surgery correction must fix its site");
    if (s.half_leaf_start) {
      const RP1Point start = RP1Point::from_affine(*s.half_leaf_start);
      if (!start.apply(s.correction).same_as(start)) {
        throw PreconditionError("half-leaf correction must fix the leaf start");
      }
    }
    if (s.sign != 1 && s.sign != -1) throw PreconditionError("surgery sign must be +1 or -1");
    const auto cls = classify_isometry(s.correction);
    if (std::holds_alternative<Elliptic>(cls)) throw PreconditionError("surgery correction cannot be elliptic");
    if (std::holds_alternative<ParabolicPositive>(cls) && s.sign != 1) {
      throw PreconditionError("positive parabolic correction tagged negative");
    }
    if (std::holds_alternative<ParabolicNegative>(cls) && s.sign != -1) {
      throw PreconditionError("negative parabolic correction tagged positive");
    }
  }
}

std::optional<double> first_return(const FirstReturnSystem& sys, double y) {
  const double lam = sys.length();
  const double top = std::exp(lam);
  RP1Point b{y + 1.0, y - 1.0};
  double lo = 1.0;
  for (const auto& s : sorted_surgeries(sys)) {
    if (between(b, lo, s.site)) return std::nullopt;
    if (applies(s, b)) b = b.apply(s.correction);
    lo = s.site;
  }
  if (between(b, lo, top)) return std::nullopt;
  b.u *= std::exp(-lam);
  const double den = b.u - b.v;
  if (den == 0.0) return std::nullopt;
  return (b.u + b.v) / den;
}

CCCResult detect_ccc(const FirstReturnSystem& sys) {
  validate(sys);
  auto gap = [&sys](double s) -> std::optional<double> {
    const double y = leaf_y(s);
    const auto f = first_return(sys, y);
    if (!f) return std::nullopt;
    return *f - y;
  };
  std::vector<double> ss(kGrid + 1);
  std::vector<std::optional<double>> gs(kGrid + 1);
  for (int i = 1; i < kGrid; ++i) {
    ss[static_cast<size_t>(i)] = static_cast<double>(i) / kGrid;
    gs[static_cast<size_t>(i)] = gap(ss[static_cast<size_t>(i)]);
  }
  std::vector<ClosedLeaf> roots;
  auto accept = [&](double s, bool degenerate) {
    const double y = leaf_y(s);
    for (const auto& r : roots) {
      if (std::abs(r.y - y) <= 1e-9 * (1 + std::abs(y))) return;
    }
    roots.push_back({y, degenerate});
  };
  for (int i = 1; i + 1 < kGrid; ++i) {
    const auto& g0 = gs[static_cast<size_t>(i)];
    const auto& g1 = gs[static_cast<size_t>(i + 1)];
    if (!g0 || !g1) continue;
    if (*g0 == 0.0) {
      accept(ss[static_cast<size_t>(i)], false);
      continue;
    }
    if ((*g0 < 0) == (*g1 < 0)) continue;
    double lo = ss[static_cast<size_t>(i)];
    double hi = ss[static_cast<size_t>(i + 1)];
    double glo = *g0;
    bool broken = false;
    while (hi - lo > kRootWidth) {
      const double mid = 0.5 * (lo + hi);
      const auto gm = gap(mid);
      if (!gm) {
        broken = true;
        break;
      }
      if ((*gm < 0) == (glo < 0)) {
        lo = mid;
        glo = *gm;
      } else {
        hi = mid;
      }
    }
    if (broken) continue;
    const double s = 0.5 * (lo + hi);
    const auto gm = gap(s);
    // A sign change across a pole or an exit is not a fixed point.
    if (gm && std::abs(*gm) <= 1e-6 * (1 + std::abs(leaf_y(s)))) accept(s, false);
  }
  for (int i = 2; i + 1 < kGrid; ++i) {
    const auto& gp = gs[static_cast<size_t>(i - 1)];
    const auto& g0 = gs[static_cast<size_t>(i)];
    const auto& gn = gs[static_cast<size_t>(i + 1)];
    if (!gp || !g0 || !gn) continue;
    const double y = leaf_y(ss[static_cast<size_t>(i)]);
    const bool same_sign = (*gp < 0) == (*g0 < 0) && (*g0 < 0) == (*gn < 0);
    if (same_sign && std::abs(*g0) <= std::abs(*gp) && std::abs(*g0) <= std::abs(*gn) &&
        std::abs(*g0) <= kTangentTol * (1 + std::abs(y))) {
      accept(ss[static_cast<size_t>(i)], true);
    }
  }
  std::sort(roots.begin(), roots.end(), [](const ClosedLeaf& a, const ClosedLeaf& b) { return a.y < b.y; });
  return {!roots.empty(), roots};
}

double negative_surgery_threshold(const ProjMatrix& base, double site, double t_max, double tol) {
  auto has = [&](double t) {
    return detect_ccc(FirstReturnSystem{base, {LeafSurgery::parabolic(site, t, -1)}, 0}).has_ccc;
  };
  if (!has(0.0)) throw PreconditionError("base system has no closed leaf");
  if (has(t_max)) throw PreconditionError("closed leaves persist up to the sweep bound");
  double lo = 0.0;
  double hi = t_max;
  while (hi - lo > tol * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    if (has(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

}  // namespace adsgeom
