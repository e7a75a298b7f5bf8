#include "adsgeom/polyhedra.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>

#include "adsgeom/errors.hpp"

namespace adsgeom {

namespace {

using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;

const Eigen::DiagonalMatrix<double, 4> kEta(-1.0, 1.0, 1.0, 1.0);

Vec4 to4(const FormVector& v) { return {v[0], v[1], v[2], v[3]}; }
FormVector from4(const Vec4& v) { return FormVector(Form::Q13, {v[0], v[1], v[2], v[3]}); }
double lor(const Vec4& a, const Vec4& b) { return -a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]; }
double lq(const Vec4& a) { return lor(a, a); }

// Projection of a vector to the form-orthogonal complement of a span.
Vec4 project_out(const std::vector<Vec4>& span, const Vec4& x) {
  const int n = static_cast<int>(span.size());
  Eigen::MatrixXd b(4, n);
  for (int i = 0; i < n; ++i) b.col(i) = span[static_cast<size_t>(i)];
  const Eigen::MatrixXd g = b.transpose() * kEta * b;
  const Eigen::VectorXd rhs = b.transpose() * (kEta * x);
  return x - b * g.fullPivLu().solve(rhs);
}

Vec4 unit_form(const Vec4& x) {
  const double q = lq(x);
  if (std::abs(q) <= 1e-14 * x.squaredNorm()) throw PreconditionError("direction is lightlike");
  return x / std::sqrt(std::abs(q));
}

// Isometry fixing a 2-plane pointwise and rotating its complement so that
// `from` lands on `to` (both unit, same causal type).
Mat4 hinge(const Vec4& f1, const Vec4& f2, const Vec4& from, const Vec4& to) {
  if ((lq(from) > 0) != (lq(to) > 0)) throw PreconditionError("hinge directions have different causal types");
  Eigen::Matrix<double, 2, 4> rows;
  rows.row(0) = (kEta * f1).transpose();
  rows.row(1) = (kEta * f2).transpose();
  const Eigen::MatrixXd ker = rows.fullPivLu().kernel();
  if (ker.cols() != 2) throw PreconditionError("degenerate hinge");
  const Eigen::Matrix<double, 4, 2> w = ker;
  const Eigen::Matrix2d gw = w.transpose() * kEta * w;
  auto coords = [&](const Vec4& x) -> Eigen::Vector2d {
    return gw.fullPivLu().solve(w.transpose() * (kEta * project_out({f1, f2}, x)));
  };
  const Eigen::Vector2d a = coords(from);
  const Eigen::Vector2d c = coords(to);
  Eigen::Matrix2d j;
  j << 0, -1, 1, 0;
  Eigen::Matrix2d src;
  Eigen::Matrix2d dst;
  src << a, j * gw * a;
  dst << c, j * gw * c;
  const Eigen::Matrix2d r = dst * src.inverse();
  Mat4 old_basis;
  Mat4 new_basis;
  old_basis << f1, f2, w;
  const Eigen::Matrix<double, 4, 2> wr = w * r;
  new_basis << f1, f2, wr;
  return new_basis * old_basis.inverse();
}

Vec4 tangent(const Vec4& at, const Vec4& toward) { return toward - (lor(toward, at) / lq(at)) * at; }

// Orthogonal frame (timelike future first) of a Lorentzian 3-plane.
struct PlaneFrame {
  Eigen::Matrix<double, 4, 3> basis;  // spanning vectors
  Eigen::Matrix3d gram;
  Vec4 e0, e1, e2;

  explicit PlaneFrame(const Eigen::Matrix<double, 4, 3>& b) : basis(b), gram(b.transpose() * kEta * b) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(gram);
    const auto& lam = es.eigenvalues();
    if (!(lam[0] < 0 && lam[1] > 0)) throw PreconditionError("face plane is not timelike");
    e0 = basis * es.eigenvectors().col(0) / std::sqrt(-lam[0]);
    if (e0[0] < 0) e0 = -e0;
    e1 = basis * es.eigenvectors().col(1) / std::sqrt(lam[1]);
    e2 = basis * es.eigenvectors().col(2) / std::sqrt(lam[2]);
  }

  Eigen::Vector3d coords(const Vec4& x) const { return gram.fullPivLu().solve(basis.transpose() * (kEta * x)); }
  double phase(const Vec4& null_ray) const { return std::atan2(lor(null_ray, e2), lor(null_ray, e1)); }
  Vec4 null_ray(double phi) const { return e0 + std::cos(phi) * e1 + std::sin(phi) * e2; }
};

std::vector<double> segment_null_params(const Vec4& a, const Vec4& b) {
  const double qa = lq(a);
  const double qb = lq(b);
  const double p = lor(a, b);
  const double c2 = qa - 2 * p + qb;
  const double c1 = 2 * (p - qa);
  const double c0 = qa;
  const double scale = std::max({std::abs(c0), std::abs(c1), std::abs(c2)});
  std::vector<double> roots;
  if (std::abs(c2) <= 1e-14 * scale) {
    if (std::abs(c1) > 1e-14 * scale) roots.push_back(-c0 / c1);
  } else {
    const double disc = c1 * c1 - 4 * c2 * c0;
    if (std::abs(disc) <= 1e-12 * scale * scale) {
      const double s = -c1 / (2 * c2);
      if (s > 0 && s < 1) throw PreconditionError("edge tangent to the light cone");
    } else if (disc > 0) {
      const double r = std::sqrt(disc);
      const double q = -0.5 * (c1 + std::copysign(r, c1));
      roots.push_back(q / c2);
      if (q != 0.0) roots.push_back(c0 / q);
    }
  }
  std::vector<double> out;
  for (double s : roots) {
    if (s > 0 && s < 1) out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

constexpr double kRegularTol = 1e-8;

std::pair<int, int> key(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

}  // namespace

HS3Polyhedron::HS3Polyhedron(std::vector<FormVector> vertices, std::vector<std::vector<int>> faces)
    : faces_(std::move(faces)) {
  const int n = static_cast<int>(vertices.size());
  if (n < 4) throw InputError("a polyhedron needs at least four vertices");
  for (const auto& v : vertices) {
    if (v.form() != Form::Q13) throw InputError("polyhedron vertices live in R^{1,3}");
    if (v.is_zero()) throw InputError("zero vertex");
    const HS2Region r = hs_classify_ray(v);
    if (r == HS2Region::BoundaryPlus || r == HS2Region::BoundaryMinus) {
      throw PreconditionError("vertex on the light cone");
    }
    vertices_.push_back(normalize_ray(v));
    regions_.push_back(r);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Vec4 a = to4(vertices_[static_cast<size_t>(i)]).normalized();
      const Vec4 b = to4(vertices_[static_cast<size_t>(j)]).normalized();
      if ((a + b).norm() < 1e-9) throw InputError("antipodal vertices");
      if ((a - b).norm() < 1e-9) throw InputError("repeated vertex");
    }
  }
  Vec4 inner_point = Vec4::Zero();
  for (const auto& v : vertices_) inner_point += to4(v).normalized();

  std::map<std::pair<int, int>, int> edge_count;
  for (auto& f : faces_) {
    if (f.size() < 3) throw InputError("face with fewer than three vertices");
    for (int i : f) {
      if (i < 0 || i >= n) throw InputError("face refers to a missing vertex");
    }
    std::vector<int> sorted = f;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw InputError("face repeats a vertex");
    Eigen::Matrix<double, 3, 4> m;
    for (int r = 0; r < 3; ++r) m.row(r) = to4(vertices_[static_cast<size_t>(f[static_cast<size_t>(r)])]).normalized().transpose();
    const Eigen::MatrixXd ker = m.fullPivLu().kernel();
    if (ker.cols() != 1) throw InputError("face vertices are degenerate");
    Vec4 normal = ker.col(0).normalized();
    if (normal.dot(inner_point) < 0) normal = -normal;
    for (size_t k = 0; k < vertices_.size(); ++k) {
      const double d = normal.dot(to4(vertices_[k]).normalized());
      const bool on_face = std::find(f.begin(), f.end(), static_cast<int>(k)) != f.end();
      if (on_face && std::abs(d) > 1e-9) throw InputError("nonplanar face");
      if (!on_face && d < -1e-9) throw InputError("polyhedron is not convex");
    }
    Mat4 orient;
    orient << m.transpose(), inner_point;
    if (orient.determinant() < 0) std::reverse(f.begin(), f.end());
    normals_.push_back(normal);
    for (size_t i = 0; i < f.size(); ++i) ++edge_count[key(f[i], f[(i + 1) % f.size()])];
  }
  for (const auto& [e, c] : edge_count) {
    if (c != 2) throw InputError("not a closed polyhedral sphere: an edge lies on " + std::to_string(c) + " faces");
    edges_.push_back(e);
  }
  const int euler = n - static_cast<int>(edges_.size()) + static_cast<int>(faces_.size());
  if (euler != 2) throw InputError("not a closed polyhedral sphere: Euler characteristic " + std::to_string(euler));
  std::map<std::pair<int, int>, int> directed;
  for (size_t fi = 0; fi < faces_.size(); ++fi) {
    const auto& f = faces_[fi];
    for (size_t i = 0; i < f.size(); ++i) {
      if (!directed.emplace(std::make_pair(f[i], f[(i + 1) % f.size()]), static_cast<int>(fi)).second) {
        throw InputError("faces are not consistently orientable");
      }
    }
  }
}

std::pair<int, int> HS3Polyhedron::edge_faces(int a, int b) const {
  int fab = -1;
  int fba = -1;
  for (size_t fi = 0; fi < faces_.size(); ++fi) {
    const auto& f = faces_[fi];
    for (size_t i = 0; i < f.size(); ++i) {
      const int x = f[i];
      const int y = f[(i + 1) % f.size()];
      if (x == a && y == b) fab = static_cast<int>(fi);
      if (x == b && y == a) fba = static_cast<int>(fi);
    }
  }
  if (fab < 0 || fba < 0) throw InputError("no such edge");
  return {fab, fba};
}

std::vector<HS3Polyhedron::Corner> HS3Polyhedron::corners(int v) const {
  auto corner_of = [this, v](int fi) {
    const auto& f = faces_[static_cast<size_t>(fi)];
    const auto it = std::find(f.begin(), f.end(), v);
    const size_t i = static_cast<size_t>(it - f.begin());
    return Corner{fi, f[(i + f.size() - 1) % f.size()], f[(i + 1) % f.size()]};
  };
  int count = 0;
  int first = -1;
  for (size_t fi = 0; fi < faces_.size(); ++fi) {
    if (std::find(faces_[fi].begin(), faces_[fi].end(), v) != faces_[fi].end()) {
      ++count;
      if (first < 0) first = static_cast<int>(fi);
    }
  }
  if (first < 0) throw InputError("vertex lies on no face");
  std::vector<Corner> out{corner_of(first)};
  while (true) {
    const int next_face = edge_faces(v, out.back().to).second;
    if (next_face == first) break;
    out.push_back(corner_of(next_face));
    if (static_cast<int>(out.size()) > count) throw InputError("vertex neighborhood is not a disk");
  }
  if (static_cast<int>(out.size()) != count) throw InputError("vertex neighborhood is not a disk");
  return out;
}

std::string_view polyhedron_type_name(PolyhedronType t) {
  switch (t) {
    case PolyhedronType::Hyperbolic: return "hyperbolic";
    case PolyhedronType::BiHyperbolic: return "bi_hyperbolic";
    case PolyhedronType::Compact: return "compact";
  }
  return "?";
}

bool hull_meets_timelike(const std::vector<FormVector>& rays, int time_sign) {
  // Minimize the spatial norm over the cone slice x0 = time_sign; the slice
  // meets the timelike cone iff the minimum is below one. The minimizer is
  // carried by at most four generators.
  const int n = static_cast<int>(rays.size());
  std::vector<Vec4> r;
  for (const auto& v : rays) r.push_back(to4(v).normalized());
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> idx;
  auto solve = [&](const std::vector<int>& s) {
    const int m = static_cast<int>(s.size());
    Eigen::MatrixXd a(3, m);
    Eigen::VectorXd c(m);
    for (int j = 0; j < m; ++j) {
      const Vec4& v = r[static_cast<size_t>(s[static_cast<size_t>(j)])];
      a.col(j) = v.tail<3>();
      c[j] = time_sign * v[0];
    }
    Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(m + 1, m + 1);
    kkt.topLeftCorner(m, m) = 2 * a.transpose() * a;
    kkt.topRightCorner(m, 1) = -c;
    kkt.bottomLeftCorner(1, m) = c.transpose();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m + 1);
    rhs[m] = 1;
    const Eigen::VectorXd sol = kkt.completeOrthogonalDecomposition().solve(rhs);
    const Eigen::VectorXd lam = sol.head(m);
    if ((kkt * sol - rhs).norm() > 1e-9 * (1 + sol.norm())) return;
    if ((lam.array() < -1e-12).any()) return;
    if (std::abs(c.dot(lam) - 1) > 1e-9) return;
    best = std::min(best, (a * lam).squaredNorm());
  };
  std::function<void(int)> rec = [&](int from) {
    if (!idx.empty()) solve(idx);
    if (idx.size() == 4) return;
    for (int i = from; i < n; ++i) {
      idx.push_back(i);
      rec(i + 1);
      idx.pop_back();
    }
  };
  rec(0);
  return best < 1 - 1e-12;
}

PolyhedronType classify_polyhedron(const HS3Polyhedron& p) {
  const bool fut = hull_meets_timelike(p.vertices(), 1);
  const bool past = hull_meets_timelike(p.vertices(), -1);
  if (fut && past) return PolyhedronType::BiHyperbolic;
  if (fut || past) return PolyhedronType::Hyperbolic;
  return PolyhedronType::Compact;
}

CausalClass face_causal_type(const HS3Polyhedron& p, int face) {
  if (face < 0 || face >= static_cast<int>(p.faces().size())) throw InputError("no such face");
  const Vec4& n = p.face_normal(face);
  // The form-normal has the same square as the Euclidean normal.
  switch (classify_vector(from4(n))) {
    case CausalClass::Spacelike: return CausalClass::Timelike;
    case CausalClass::Timelike: return CausalClass::Spacelike;
    default: return CausalClass::Lightlike;
  }
}

double vertex_cone_angle(const HS3Polyhedron& p, int v) {
  const HS2Region r = p.vertex_region(v);
  if (r != HS2Region::HypPlus && r != HS2Region::HypMinus) throw PreconditionError("cone angle needs a timelike vertex");
  const Vec4 at = to4(p.vertices()[static_cast<size_t>(v)]);
  double total = 0;
  for (const auto& c : p.corners(v)) {
    const Vec4 t1 = tangent(at, to4(p.vertices()[static_cast<size_t>(c.from)]));
    const Vec4 t2 = tangent(at, to4(p.vertices()[static_cast<size_t>(c.to)]));
    total += std::acos(std::clamp(lor(t1, t2) / std::sqrt(lq(t1) * lq(t2)), -1.0, 1.0));
  }
  return total;
}

VertexLink vertex_link(const HS3Polyhedron& p, int v) {
  const HS2Region region = p.vertex_region(v);
  VertexLink out{v, region, std::nullopt, std::nullopt, std::nullopt};
  if (region == HS2Region::HypPlus || region == HS2Region::HypMinus) {
    const double angle = vertex_cone_angle(p, v);
    out.cone_angle = angle;
    out.link = LinkCircle{region, elliptic_lift(angle), std::nullopt, std::nullopt, 0};
    out.type = MassiveParticle{angle, region == HS2Region::HypPlus ? TimeSide::Future : TimeSide::Past};
    return out;
  }

  const Vec4 at = to4(p.vertices()[static_cast<size_t>(v)]);
  const auto corners = p.corners(v);
  const int m = static_cast<int>(corners.size());
  std::vector<Vec4> from(static_cast<size_t>(m));
  std::vector<Vec4> to(static_cast<size_t>(m));
  int nulls = 0;
  for (int i = 0; i < m; ++i) {
    const auto& c = corners[static_cast<size_t>(i)];
    from[static_cast<size_t>(i)] = unit_form(tangent(at, to4(p.vertices()[static_cast<size_t>(c.from)])));
    to[static_cast<size_t>(i)] = unit_form(tangent(at, to4(p.vertices()[static_cast<size_t>(c.to)])));
    const double q1 = lq(from[static_cast<size_t>(i)]);
    const double q2 = lq(to[static_cast<size_t>(i)]);
    const double pr = lor(from[static_cast<size_t>(i)], to[static_cast<size_t>(i)]);
    const double disc = pr * pr - q1 * q2;
    if (disc <= 1e-12) throw PreconditionError("face corner at a de Sitter vertex is not Lorentzian");
    for (double sgn : {1.0, -1.0}) {
      if ((-pr + sgn * std::sqrt(disc)) / q2 > 0) ++nulls;
    }
  }
  if (nulls % 2 != 0) throw PreconditionError("odd number of lightlike directions in a vertex link");
  const int degree = nulls / 2;

  // Develop the corners into the plane of the first one.
  Mat4 dev = Mat4::Identity();
  for (int i = 0; i < m; ++i) {
    const int j = (i + 1) % m;
    const Vec4& edge = to[static_cast<size_t>(i)];
    const Vec4 inward_next = unit_form(project_out({at, edge}, to[static_cast<size_t>(j)]));
    const Vec4 inward_here = unit_form(project_out({at, edge}, from[static_cast<size_t>(i)]));
    dev = dev * hinge(at, edge, inward_next, -inward_here);
  }
  Eigen::Matrix<double, 4, 2> plane;
  plane << from[0], to[0];
  const Eigen::Matrix2d g = plane.transpose() * kEta * plane;
  auto plane_coords = [&](const Vec4& x) -> Eigen::Vector2d {
    return g.fullPivLu().solve(plane.transpose() * (kEta * x));
  };
  const FormVector p0(Form::Q12, {0, 1, 0});

  if (degree == 0) {
    const Vec4 s = from[0];
    const Vec4 img = dev * s;
    const double rapidity = std::acosh(std::max(1.0, std::abs(lor(s, img))));
    ArcKind arc = ArcKind::Spacelike;
    if (lq(s) < 0) arc = s[0] > 0 ? ArcKind::Future : ArcKind::Past;
    if (rapidity < 1e-12) throw PreconditionError("degree 0 vertex link without holonomy");
    out.link = LinkCircle{HS2Region::DeSitter, LiftedIsometry(0, translation_dual_to(p0, 0.5 * rapidity)), arc,
                          std::nullopt, 0};
    out.type = classify_singularity(*out.link);
    return out;
  }

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(g);
  if (!(es.eigenvalues()[0] < 0)) throw PreconditionError("first corner plane is not Lorentzian");
  Vec4 r = plane * es.eigenvectors().col(0);
  r /= std::sqrt(-lq(r));
  if (r[0] < 0) r = -r;
  const Vec4 img = dev * r;
  const double c = -lor(r, img);
  if (c < 1 - 1e-9) throw PreconditionError("vertex holonomy does not preserve the future cone");
  // Holonomy indistinguishable from the identity: a regular point.
  if (c - 1 < kRegularTol) return out;
  const double rapidity = std::acosh(c);
  const Eigen::Vector2d a = plane_coords(r);
  const Eigen::Vector2d b = plane_coords(img);
  // The stored holonomy maps the end of the developed link back to its start,
  // so a positive line pulls future directions back along the traversal.
  const int sign = a[0] * b[1] - a[1] * b[0] < 0 ? 1 : -1;
  LinkCircle l{HS2Region::DeSitter, LiftedIsometry(degree, translation_dual_to(p0, 0.5 * rapidity)), std::nullopt,
               std::nullopt, 0};
  if (positivity_from_holonomy(l) != sign) l.future_arc = 1;
  l.sign = sign;
  out.link = l;
  out.type = classify_singularity(l);
  return out;
}

InducedReport induced_structure(const HS3Polyhedron& p) {
  InducedReport r;
  for (int f = 0; f < static_cast<int>(p.faces().size()); ++f) {
    if (face_causal_type(p, f) != CausalClass::Timelike) r.offending_faces.push_back(f);
  }
  r.is_hs_structure = r.offending_faces.empty();
  if (!r.is_hs_structure) {
    r.diagnostics.emplace_back("non-timelike faces; vertex links, positivity and mass not evaluated");
    return r;
  }
  bool positive = true;
  for (int v = 0; v < static_cast<int>(p.vertices().size()); ++v) {
    VertexLink l = vertex_link(p, v);
    if (!l.type) {
      r.diagnostics.push_back("vertex " + std::to_string(v) + ": holonomy within tolerance of the identity, treated as regular");
    } else {
      r.particle_dictionary.emplace_back(v, *l.type);
      if (!is_positive(*l.type)) positive = false;
      for (auto why : is_causal_line(*l.type).reasons) {
        r.diagnostics.push_back("vertex " + std::to_string(v) + ": " + std::string(violation_name(why)));
      }
    }
    r.vertex_links.push_back(std::move(l));
  }
  r.positivity = positive;
  positive_mass_check(r, p);
  return r;
}

double annulus_geodesic_length(const HS3Polyhedron& p) {
  if (classify_polyhedron(p) != PolyhedronType::BiHyperbolic) throw PreconditionError("polyhedron is not bi-hyperbolic");
  for (int f = 0; f < static_cast<int>(p.faces().size()); ++f) {
    if (face_causal_type(p, f) != CausalClass::Timelike) throw PreconditionError("face is not timelike");
  }
  auto vert = [&p](int i) -> Vec4 { return to4(p.vertices()[static_cast<size_t>(i)]).normalized(); };

  struct Crossing {
    int a, b;
    Vec4 point;
  };
  std::vector<Crossing> cs;
  std::map<std::pair<int, int>, std::vector<int>> on_edge;
  for (const auto& [a, b] : p.edges()) {
    for (double s : segment_null_params(vert(a), vert(b))) {
      const Vec4 x = (1 - s) * vert(a) + s * vert(b);
      if (x[0] <= 0) continue;
      on_edge[{a, b}].push_back(static_cast<int>(cs.size()));
      cs.push_back({a, b, x});
    }
  }
  if (cs.empty()) throw PreconditionError("no future photon circle");

  const int nf = static_cast<int>(p.faces().size());
  std::vector<PlaneFrame> frames;
  struct Arc {
    int lo, hi;
    double phi_lo, phi_hi;
  };
  std::vector<std::map<int, int>> partner(static_cast<size_t>(nf));
  std::vector<std::vector<Arc>> arcs(static_cast<size_t>(nf));
  for (int fi = 0; fi < nf; ++fi) {
    const auto& f = p.faces()[static_cast<size_t>(fi)];
    Eigen::Matrix<double, 4, 3> b;
    b << vert(f[0]), vert(f[1]), vert(f[2]);
    frames.emplace_back(b);
    const PlaneFrame& fr = frames.back();
    Vec4 centroid = Vec4::Zero();
    for (int i : f) centroid += vert(i);
    const Eigen::Vector3d cc = fr.coords(centroid);
    auto inside = [&](const Vec4& y) {
      const Eigen::Vector3d yc = fr.coords(y);
      for (size_t i = 0; i < f.size(); ++i) {
        Eigen::Matrix3d m1;
        Eigen::Matrix3d m2;
        const Eigen::Vector3d ca = fr.coords(vert(f[i]));
        const Eigen::Vector3d cb = fr.coords(vert(f[(i + 1) % f.size()]));
        m1 << ca, cb, yc;
        m2 << ca, cb, cc;
        if (m1.determinant() * m2.determinant() <= 0) return false;
      }
      return true;
    };
    std::vector<std::pair<double, int>> here;
    for (size_t i = 0; i < f.size(); ++i) {
      const auto it = on_edge.find(key(f[i], f[(i + 1) % f.size()]));
      if (it == on_edge.end()) continue;
      for (int id : it->second) here.emplace_back(fr.phase(cs[static_cast<size_t>(id)].point), id);
    }
    if (here.empty()) continue;
    if (here.size() % 2 != 0) throw PreconditionError("odd number of photon crossings on a face");
    std::sort(here.begin(), here.end());
    for (size_t j = 0; j < here.size(); ++j) {
      const auto [p0, i0] = here[j];
      const auto [p1raw, i1] = here[(j + 1) % here.size()];
      const double p1 = j + 1 == here.size() ? p1raw + kTwoPi : p1raw;
      if (!inside(fr.null_ray(0.5 * (p0 + p1)))) continue;
      auto& pm = partner[static_cast<size_t>(fi)];
      if (pm.count(i0) || pm.count(i1)) throw PreconditionError("degenerate photon arcs on a face");
      pm[i0] = i1;
      pm[i1] = i0;
      arcs[static_cast<size_t>(fi)].push_back({i0, i1, p0, p1});
    }
  }

  // Walk the future photon circle face by face.
  struct Step {
    int face;
    int from;
    int to;
  };
  std::vector<Step> walk;
  const int start_face = p.edge_faces(cs[0].a, cs[0].b).first;
  int face = start_face;
  int cur = 0;
  const size_t total_arcs = [&] {
    size_t t = 0;
    for (const auto& a : arcs) t += a.size();
    return t;
  }();
  do {
    const auto& pm = partner[static_cast<size_t>(face)];
    const auto it = pm.find(cur);
    if (it == pm.end()) throw PreconditionError("photon circle leaves the face structure");
    walk.push_back({face, cur, it->second});
    cur = it->second;
    const auto [fa, fb] = p.edge_faces(cs[static_cast<size_t>(cur)].a, cs[static_cast<size_t>(cur)].b);
    face = fa == face ? fb : fa;
    if (walk.size() > total_arcs) throw PreconditionError("photon circle walk does not close");
  } while (!(cur == 0 && face == start_face));
  if (walk.size() != total_arcs) throw PreconditionError("future photon circle is not connected");

  auto inward = [&](int fi, int a, int b) {
    const auto& f = p.faces()[static_cast<size_t>(fi)];
    Vec4 rest = Vec4::Zero();
    for (int i : f) {
      if (i != a && i != b) rest += vert(i);
    }
    return unit_form(project_out({vert(a), vert(b)}, rest));
  };
  std::vector<Mat4> dev(walk.size() + 1, Mat4::Identity());
  for (size_t k = 0; k < walk.size(); ++k) {
    const Crossing& x = cs[static_cast<size_t>(walk[k].to)];
    const int next_face = k + 1 < walk.size() ? walk[k + 1].face : start_face;
    const Mat4 h = hinge(vert(x.a), vert(x.b), inward(next_face, x.a, x.b), -inward(walk[k].face, x.a, x.b));
    dev[k + 1] = dev[k] * h;
  }
  const Mat4& holonomy = dev.back();
  const PlaneFrame& home = frames[static_cast<size_t>(start_face)];
  Eigen::Matrix3d restricted;
  for (int j = 0; j < 3; ++j) {
    const Vec4 img = holonomy * home.basis.col(j);
    const Eigen::Vector3d c = home.coords(img);
    if ((home.basis * c - img).norm() > 1e-7 * (1 + img.norm())) throw PreconditionError("development does not close up");
    restricted.col(j) = c;
  }
  Vec4 center;
  if ((restricted - Eigen::Matrix3d::Identity()).norm() < 1e-9) {
    center = Vec4::Zero();
    for (const auto& s : walk) center += cs[static_cast<size_t>(s.from)].point.normalized();
  } else {
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(restricted - Eigen::Matrix3d::Identity(), Eigen::ComputeFullV);
    if (svd.singularValues()[2] > 1e-7) throw PreconditionError("annulus holonomy has no fixed point");
    center = home.basis * svd.matrixV().col(2);
  }
  if (lq(center) >= 0) throw PreconditionError("annulus holonomy is not elliptic");
  center /= std::sqrt(-lq(center));
  if (center[0] < 0) center = -center;

  // Orthonormal frame of the complement of the center inside the home plane.
  Vec4 u1 = project_out({center}, home.e1);
  u1 /= std::sqrt(lq(u1));
  Vec4 u2 = project_out({center, u1}, home.e2);
  u2 /= std::sqrt(lq(u2));

  constexpr int kSamples = 64;
  double total = 0;
  double prev = 0;
  bool first = true;
  for (size_t k = 0; k < walk.size(); ++k) {
    const Step& s = walk[k];
    const PlaneFrame& fr = frames[static_cast<size_t>(s.face)];
    const Arc* arc = nullptr;
    for (const auto& a : arcs[static_cast<size_t>(s.face)]) {
      if ((a.lo == s.from && a.hi == s.to) || (a.lo == s.to && a.hi == s.from)) arc = &a;
    }
    const double ph0 = arc->lo == s.from ? arc->phi_lo : arc->phi_hi;
    const double ph1 = arc->lo == s.from ? arc->phi_hi : arc->phi_lo;
    for (int i = 0; i <= kSamples; ++i) {
      const Vec4 z = dev[k] * fr.null_ray(ph0 + (ph1 - ph0) * i / kSamples);
      const double ang = std::atan2(lor(z, u2), lor(z, u1));
      if (!first) total += std::remainder(ang - prev, kTwoPi);
      prev = ang;
      first = false;
    }
  }
  return std::abs(total);
}

std::optional<bool> positive_mass_check(InducedReport& r, const HS3Polyhedron& p) {
  if (!r.is_hs_structure) return std::nullopt;
  if (classify_polyhedron(p) != PolyhedronType::BiHyperbolic) {
    r.diagnostics.emplace_back("positive mass not evaluated: polyhedron is not bi-hyperbolic");
    return std::nullopt;
  }
  const double length = annulus_geodesic_length(p);
  r.annulus_geodesic_length = length;
  r.positive_mass = length < kTwoPi;
  r.diagnostics.emplace_back("positive mass checked on the geodesic fixed by the annulus holonomy only");
  return r.positive_mass;
}

std::optional<bool> positive_mass(const HSSurface& s) {
  const Census c = region_decomposition(s);
  if (c.de_sitter_regions.size() != 1) return std::nullopt;
  const int ds = c.de_sitter_regions.front();
  if (s.regions()[static_cast<size_t>(ds)].topology() != Topology::Annulus) return std::nullopt;
  for (const auto& pc : s.photon_circles()) {
    if (pc.de_sitter_region != ds) continue;
    if (!pc.hyperbolic_holonomy) return std::nullopt;
    const LiftedIsometry& h = *pc.hyperbolic_holonomy;
    if (!(is_elliptic(h.base()) || (h.base().is_identity() && h.degree() >= 1))) return std::nullopt;
    return translation_number(h) < kTwoPi;
  }
  return std::nullopt;
}

}  // namespace adsgeom
