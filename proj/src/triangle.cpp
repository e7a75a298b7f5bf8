#include <algorithm>
#include <cmath>
#include <map>

#include "adsgeom/errors.hpp"
#include "adsgeom/hs_surfaces.hpp"

namespace adsgeom {

namespace {

Eigen::Vector3d to_eigen(const FormVector& v) { return {v[0], v[1], v[2]}; }

FormVector from_eigen(const Eigen::Vector3d& v) { return FormVector(Form::Q12, {v[0], v[1], v[2]}); }

FormVector unit(const FormVector& v) { return v * (1.0 / std::sqrt(std::abs(evaluate_form(v)))); }

// Tangent at the unit vector `at` pointing toward `toward`.
FormVector tangent_toward(const FormVector& at, const FormVector& toward) {
  const double s = evaluate_form(at) < 0 ? 1.0 : -1.0;
  return toward + at * (s * inner(toward, at));
}

RegionKind kind_of(HS2Region r) {
  switch (r) {
    case HS2Region::HypPlus: return RegionKind::FutureHyperbolic;
    case HS2Region::HypMinus: return RegionKind::PastHyperbolic;
    case HS2Region::DeSitter: return RegionKind::DeSitter;
    default: break;
  }
  throw PreconditionError("point on a photon circle");
}

struct Crossing {
  double pos;  // edge index + parameter along the edge
  int edge;
  int conic;   // +1 or -1, the sign of x0
  FormVector point;
};

class Arrangement {
 public:
  explicit Arrangement(const HS2Triangle& t) : tri_(t) {
    Eigen::Matrix3d m;
    for (int i = 0; i < 3; ++i) m.col(i) = to_eigen(t.vertex(i));
    solver_ = m.fullPivLu();
  }

  bool inside(const FormVector& p) const {
    const Eigen::Vector3d lam = solver_.solve(to_eigen(p));
    return (lam.array() > 0).all();
  }

  FormVector boundary_point(double pos) const {
    const double wrapped = std::fmod(pos, 3.0);
    const int e = std::min(2, static_cast<int>(std::floor(wrapped)));
    const double s = wrapped - e;
    return tri_.vertex(e) * (1 - s) + tri_.vertex((e + 1) % 3) * s;
  }

  std::vector<Crossing> crossings() const {
    std::vector<Crossing> out;
    for (int e = 0; e < 3; ++e) {
      const FormVector& a = tri_.vertex(e);
      const FormVector& b = tri_.vertex((e + 1) % 3);
      const double qa = evaluate_form(a);
      const double qb = evaluate_form(b);
      const double qab = inner(a, b);
      // q((1-s)a + s b) = qa + 2s(qab - qa) + s^2(qa - 2qab + qb)
      const double c2 = qa - 2 * qab + qb;
      const double c1 = 2 * (qab - qa);
      const double c0 = qa;
      const double scale = std::max({std::abs(c0), std::abs(c1), std::abs(c2), 1e-300});
      std::vector<double> roots;
      if (std::abs(c2) <= 1e-14 * scale) {
        if (std::abs(c1) > 1e-14 * scale) roots.push_back(-c0 / c1);
      } else {
        const double disc = c1 * c1 - 4 * c2 * c0;
        if (std::abs(disc) <= 1e-12 * scale * scale) {
          const double s = -c1 / (2 * c2);
          if (s > 0 && s < 1) throw PreconditionError("triangle edge is tangent to a photon circle");
        } else if (disc > 0) {
          const double r = std::sqrt(disc);
          const double q = -0.5 * (c1 + std::copysign(r, c1));
          roots.push_back(q / c2);
          if (q != 0.0) roots.push_back(c0 / q);
        }
      }
      std::sort(roots.begin(), roots.end());
      for (double s : roots) {
        if (s <= 0 || s >= 1) continue;
        const FormVector p = a * (1 - s) + b * s;
        out.push_back({e + s, e, p[0] > 0 ? 1 : -1, p});
      }
    }
    std::sort(out.begin(), out.end(), [](const Crossing& x, const Crossing& y) { return x.pos < y.pos; });
    return out;
  }

  // partner[i] is the crossing joined to i by an arc of its conic inside T.
  std::vector<int> partners(const std::vector<Crossing>& cs) const {
    std::vector<int> partner(cs.size(), -1);
    for (int sigma : {1, -1}) {
      std::vector<std::pair<double, int>> on;
      for (size_t i = 0; i < cs.size(); ++i) {
        if (cs[i].conic == sigma) on.emplace_back(std::atan2(cs[i].point[2], cs[i].point[1]), static_cast<int>(i));
      }
      if (on.empty()) continue;
      if (on.size() % 2 != 0) throw PreconditionError("odd number of photon circle crossings");
      std::sort(on.begin(), on.end());
      for (size_t j = 0; j < on.size(); ++j) {
        const auto& [p0, i0] = on[j];
        const auto& [p1raw, i1] = on[(j + 1) % on.size()];
        const double p1 = j + 1 == on.size() ? p1raw + kTwoPi : p1raw;
        const double pm = 0.5 * (p0 + p1);
        if (!inside(FormVector(Form::Q12, {static_cast<double>(sigma), std::cos(pm), std::sin(pm)}))) continue;
        if (partner[static_cast<size_t>(i0)] != -1 || partner[static_cast<size_t>(i1)] != -1) {
          throw PreconditionError("degenerate photon circle arrangement");
        }
        partner[static_cast<size_t>(i0)] = i1;
        partner[static_cast<size_t>(i1)] = i0;
      }
    }
    if (std::find(partner.begin(), partner.end(), -1) != partner.end()) {
      throw PreconditionError("degenerate photon circle arrangement");
    }
    return partner;
  }

  bool conic_inside(int sigma) const {
    return inside(FormVector(Form::Q12, {static_cast<double>(sigma), 1.0, 0.0}));
  }

 private:
  const HS2Triangle& tri_;
  Eigen::FullPivLU<Eigen::Matrix3d> solver_;
};

struct Cell {
  std::vector<int> segments;
  std::vector<int> vertices;
  HS2Region region;
  int holes = 0;
};

// Vertices strictly between two boundary positions, walking forward.
std::vector<int> vertices_between(double from, double to) {
  if (to <= from) to += 3.0;
  std::vector<int> out;
  for (int k = 0; k < 6; ++k) {
    if (k > from && k < to) out.push_back(k % 3);
  }
  return out;
}

LinkCircle vertex_link(const HS2Triangle& t, int i) {
  const HS2Region r = t.vertex_region(i);
  const FormVector& v = t.vertex(i);
  if (r == HS2Region::HypPlus || r == HS2Region::HypMinus) {
    return {r, elliptic_lift(2 * t.interior_angle(i), v), std::nullopt, std::nullopt, 0};
  }
  const DeSitterCorner c = de_sitter_corner(t, i);
  return {HS2Region::DeSitter, LiftedIsometry(0, translation_dual_to(v, c.rapidity)), c.sector, std::nullopt, 0};
}

}  // namespace

HS2Triangle::HS2Triangle(FormVector a, FormVector b, FormVector c) : v_{a, b, c} {
  for (const auto& v : v_) {
    if (v.form() != Form::Q12) throw InputError("triangle vertices live in R^{1,2}");
  }
  Eigen::Matrix3d m;
  for (int i = 0; i < 3; ++i) m.col(i) = to_eigen(normalize_ray(v_[static_cast<size_t>(i)]));
  if (std::abs(m.determinant()) < 1e-9) throw InputError("triangle vertices are linearly dependent");
  for (size_t i = 0; i < 3; ++i) {
    regions_[i] = hs_classify_ray(v_[i]);
    if (regions_[i] == HS2Region::BoundaryPlus || regions_[i] == HS2Region::BoundaryMinus) {
      throw PreconditionError("triangle vertex on a photon circle");
    }
  }
}

GeodesicSpan HS2Triangle::edge(int i) const { return GeodesicSpan(vertex(i), vertex((i + 1) % 3)); }

double HS2Triangle::interior_angle(int i) const {
  const HS2Region r = vertex_region(i);
  if (r != HS2Region::HypPlus && r != HS2Region::HypMinus) throw PreconditionError("interior angle needs a timelike vertex");
  const FormVector at = unit(vertex(i));
  const FormVector t1 = tangent_toward(at, vertex((i + 1) % 3));
  const FormVector t2 = tangent_toward(at, vertex((i + 2) % 3));
  const double c = inner(t1, t2) / std::sqrt(evaluate_form(t1) * evaluate_form(t2));
  return std::acos(std::clamp(c, -1.0, 1.0));
}

DeSitterCorner de_sitter_corner(const HS2Triangle& t, int i) {
  if (t.vertex_region(i) != HS2Region::DeSitter) throw PreconditionError("corner analysis needs a de Sitter vertex");
  const FormVector at = unit(t.vertex(i));
  const FormVector t1 = tangent_toward(at, t.vertex((i + 1) % 3));
  const FormVector t2 = tangent_toward(at, t.vertex((i + 2) % 3));
  const CausalClass c1 = classify_vector(t1);
  const CausalClass c2 = classify_vector(t2);
  const double q1 = evaluate_form(t1);
  const double q2 = evaluate_form(t2);
  const double p = inner(t1, t2);
  if (c1 == CausalClass::Timelike && c2 == CausalClass::Timelike && p < 0) {
    const ArcKind sector = t1[0] > 0 ? ArcKind::Future : ArcKind::Past;
    return {sector, std::acosh(std::max(1.0, -p / std::sqrt(q1 * q2)))};
  }
  if (c1 == CausalClass::Spacelike && c2 == CausalClass::Spacelike && p > 0 && p * p >= q1 * q2 * (1 - 1e-12)) {
    return {ArcKind::Spacelike, std::acosh(std::max(1.0, p / std::sqrt(q1 * q2)))};
  }
  throw PreconditionError("de Sitter corner spans a lightlike direction; mixed corners are not supported");
}

HSSurface double_triangle(const HS2Triangle& t) {
  const Arrangement arr(t);
  const std::vector<Crossing> cs = arr.crossings();
  const std::vector<int> partner = arr.partners(cs);
  const int n = static_cast<int>(cs.size());

  std::vector<Cell> cells;
  std::vector<int> vertex_cell(3, -1);
  std::map<std::pair<int, int>, std::vector<int>> chord_cells;
  if (n == 0) {
    Cell c{{}, {0, 1, 2}, t.vertex_region(0), 0};
    for (int s : {1, -1}) {
      if (arr.conic_inside(s)) ++c.holes;
    }
    cells.push_back(c);
    vertex_cell = {0, 0, 0};
  } else {
    std::vector<bool> seen(static_cast<size_t>(n), false);
    for (int start = 0; start < n; ++start) {
      if (seen[static_cast<size_t>(start)]) continue;
      Cell c;
      const int id = static_cast<int>(cells.size());
      int seg = start;
      while (!seen[static_cast<size_t>(seg)]) {
        seen[static_cast<size_t>(seg)] = true;
        c.segments.push_back(seg);
        const int end = (seg + 1) % n;
        const double from = cs[static_cast<size_t>(seg)].pos;
        const double to = cs[static_cast<size_t>(end)].pos;
        for (int v : vertices_between(from, n == 1 ? from + 3.0 : to)) {
          c.vertices.push_back(v);
          vertex_cell[static_cast<size_t>(v)] = id;
        }
        const int p = partner[static_cast<size_t>(end)];
        chord_cells[{std::min(end, p), std::max(end, p)}].push_back(id);
        seg = p;
      }
      const Crossing& a = cs[static_cast<size_t>(c.segments.front())];
      const Crossing& b = cs[static_cast<size_t>((c.segments.front() + 1) % n)];
      const double to = b.pos <= a.pos ? b.pos + 3.0 : b.pos;
      c.region = hs_classify_ray(arr.boundary_point(0.5 * (a.pos + to)));
      cells.push_back(c);
    }
  }

  std::vector<Region> regions;
  for (size_t i = 0; i < cells.size(); ++i) {
    const Cell& c = cells[i];
    regions.push_back({kind_of(c.region), 0, static_cast<int>(c.segments.size()) + 2 * c.holes, std::nullopt,
                       std::string(region_name(c.region)) + "_" + std::to_string(i)});
  }

  auto hyperbolic_holonomy = [&](const Cell& c) -> std::optional<LiftedIsometry> {
    if (c.segments.size() != 1 || c.holes != 0) return std::nullopt;
    const int seg = c.segments.front();
    const int ea = cs[static_cast<size_t>(seg)].edge;
    const int eb = cs[static_cast<size_t>((seg + 1) % n)].edge;
    if (ea == eb && c.vertices.empty()) return LiftedIsometry(1, ProjMatrix::identity());
    if (ea == eb) return std::nullopt;
    const int v = eb == (ea + 1) % 3 ? eb : ea;
    const HS2Region r = t.vertex_region(v);
    const bool in_cell = std::find(c.vertices.begin(), c.vertices.end(), v) != c.vertices.end();
    if (in_cell && c.vertices.size() == 1 && r != HS2Region::DeSitter) {
      return elliptic_lift(2 * t.interior_angle(v), t.vertex(v));
    }
    if (!in_cell && r == HS2Region::DeSitter) {
      const DeSitterCorner corner = de_sitter_corner(t, v);
      if (corner.sector != ArcKind::Spacelike) {
        return LiftedIsometry(0, translation_dual_to(t.vertex(v), corner.rapidity));
      }
    }
    return std::nullopt;
  };

  std::vector<PhotonCircle> circles;
  for (const auto& [chord, users] : chord_cells) {
    if (users.size() != 2) throw PreconditionError("degenerate photon circle arrangement");
    int hyp = users[0];
    int ds = users[1];
    if (cells[static_cast<size_t>(hyp)].region == HS2Region::DeSitter) std::swap(hyp, ds);
    if (cells[static_cast<size_t>(hyp)].region == HS2Region::DeSitter ||
        cells[static_cast<size_t>(ds)].region != HS2Region::DeSitter) {
      throw PreconditionError("photon circle does not separate hyperbolic from de Sitter cells");
    }
    circles.push_back({hyp, ds, hyperbolic_holonomy(cells[static_cast<size_t>(hyp)]), {}});
  }
  for (int s : {1, -1}) {
    if (n != 0 || !arr.conic_inside(s)) continue;
    const HS2Region r = s > 0 ? HS2Region::HypPlus : HS2Region::HypMinus;
    for (int copy = 0; copy < 2; ++copy) {
      const int id = static_cast<int>(regions.size());
      regions.push_back({kind_of(r), 0, 1, std::nullopt, std::string(region_name(r)) + "_disk_" + std::to_string(copy)});
      circles.push_back({id, 0, LiftedIsometry(1, ProjMatrix::identity()), {}});
    }
  }

  // A de Sitter annulus without cone points carries the same holonomy on both rims.
  for (size_t i = 0; i < cells.size(); ++i) {
    const Cell& c = cells[i];
    if (c.region != HS2Region::DeSitter || !c.vertices.empty() || c.holes != 0 || c.segments.size() != 2) continue;
    std::vector<PhotonCircle*> rim;
    for (auto& pc : circles) {
      if (pc.de_sitter_region == static_cast<int>(i)) rim.push_back(&pc);
    }
    if (rim.size() != 2) continue;
    if (rim[0]->hyperbolic_holonomy && !rim[1]->hyperbolic_holonomy) rim[1]->hyperbolic_holonomy = rim[0]->hyperbolic_holonomy;
    if (rim[1]->hyperbolic_holonomy && !rim[0]->hyperbolic_holonomy) rim[0]->hyperbolic_holonomy = rim[1]->hyperbolic_holonomy;
  }

  std::vector<SurfaceSingularity> sing;
  for (int v = 0; v < 3; ++v) {
    sing.push_back({"v" + std::to_string(v), vertex_cell[static_cast<size_t>(v)], -1, vertex_link(t, v)});
  }
  return HSSurface(std::move(regions), std::move(circles), std::move(sing));
}

HS2Triangle collision_triangle(double angle, double depth) {
  if (!(angle > 0 && angle < kPi)) throw PreconditionError("apex angle must lie in (0, pi)");
  const Eigen::Vector3d apex(1, 0, 0);
  auto side = [&](double psi) {
    return from_eigen(std::cos(depth) * apex + std::sin(depth) * Eigen::Vector3d(0, std::cos(psi), std::sin(psi)));
  };
  return HS2Triangle(from_eigen(apex), side(angle / 2), side(-angle / 2));
}

HS2Triangle btz_collision_triangle(double rapidity, double depth) {
  if (!(rapidity > 0)) throw PreconditionError("rapidity must be positive");
  const Eigen::Vector3d apex(0, 1, 0);
  auto side = [&](double beta) {
    return from_eigen(std::cos(depth) * apex + std::sin(depth) * Eigen::Vector3d(-std::cosh(beta), 0, std::sinh(beta)));
  };
  return HS2Triangle(from_eigen(apex), side(rapidity / 2), side(-rapidity / 2));
}

}  // namespace adsgeom
