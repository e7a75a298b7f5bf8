#include "adsgeom/links.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "adsgeom/errors.hpp"

namespace adsgeom {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool timelike_base(HS2Region r) { return r == HS2Region::HypPlus || r == HS2Region::HypMinus; }
bool boundary_base(HS2Region r) { return r == HS2Region::BoundaryPlus || r == HS2Region::BoundaryMinus; }

void require_sign(int s) {
  if (s != 1 && s != -1) throw PreconditionError("sign must be +1 or -1");
}

int turns_of(const LinkCircle& l) { return std::max(l.holonomy.degree(), 1); }

int arc_containing(const std::vector<double>& pts, double period, double x) {
  const double start = pts.front();
  double y = std::fmod(x - start, period);
  if (y < 0) y += period;
  y += start;
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    if (y < pts[i + 1]) return static_cast<int>(i);
  }
  return static_cast<int>(pts.size()) - 1;
}

}  // namespace

std::string_view side_name(TimeSide s) { return s == TimeSide::Future ? "future" : "past"; }

TimeSide opposite(TimeSide s) { return s == TimeSide::Future ? TimeSide::Past : TimeSide::Future; }

std::string_view arc_name(ArcKind a) {
  switch (a) {
    case ArcKind::Future: return "i+";
    case ArcKind::Past: return "i-";
    case ArcKind::Spacelike: return "spacelike";
  }
  return "?";
}

ArcKind arc_from_name(std::string_view s) {
  if (s == "i+" || s == "future") return ArcKind::Future;
  if (s == "i-" || s == "past") return ArcKind::Past;
  if (s == "spacelike") return ArcKind::Spacelike;
  throw InputError("unknown interval marker '" + std::string(s) + "'");
}

RP1Invariants classify_rp1_circle(const RP1Circle& c) {
  const int k = c.holonomy.degree();
  const ProjMatrix& g = c.holonomy.base();
  if (k < 0) throw PreconditionError("circle degree must be nonnegative");
  if (g.is_identity()) {
    if (k == 0) throw PreconditionError("trivial holonomy does not define a circle");
    if (c.interval) throw PreconditionError("elliptic circles take no interval");
    return EllipticCircle{kTwoPi * k};
  }
  if (is_elliptic(g)) {
    if (c.interval) throw PreconditionError("elliptic circles take no interval");
    return EllipticCircle{translation_number(c.holonomy)};
  }
  const int arcs = is_parabolic(g) ? 1 : 2;
  if (k == 0) {
    if (!c.interval || *c.interval < 0 || *c.interval >= arcs) {
      throw PreconditionError("degree 0 circle needs an interval between fixed points");
    }
  }
  if (is_parabolic(g)) {
    if (k == 0) return ParabolicCircle{0, 1};
    return ParabolicCircle{k, std::holds_alternative<ParabolicPositive>(classify_isometry(g)) ? 1 : -1};
  }
  return HyperbolicCircle{k, std::get<Hyperbolic>(classify_isometry(g)).translation_length};
}

std::string_view type_kind(const SingularityType& t) {
  static constexpr std::string_view names[] = {"massive_particle", "photon", "tachyon", "btz",
                                                "extreme_btz", "cuspidal", "misner", "high_degree"};
  return names[t.index()];
}

std::string describe(const SingularityType& t) {
  std::ostringstream os;
  os << type_kind(t);
  std::visit(overloaded{
                 [&](const MassiveParticle& m) { os << "(angle=" << m.angle << "," << side_name(m.side) << ")"; },
                 [&](const Photon& p) { os << "(sign=" << p.sign << "," << side_name(p.side) << ")"; },
                 [&](const Tachyon& p) { os << "(sign=" << p.sign << ")"; },
                 [&](const BTZ& p) { os << "(" << side_name(p.side) << ")"; },
                 [&](const ExtremeBTZ& p) { os << "(" << side_name(p.side) << ")"; },
                 [&](const Cuspidal& p) { os << "(" << side_name(p.side) << ")"; },
                 [&](const Misner&) {},
                 [&](const HighDegree& h) {
                   os << "(k=" << h.degree << "," << (h.kind == NonTimelikeKind::Spacelike ? "spacelike" : "lightlike")
                      << ",sign=" << h.sign << ")";
                 },
             },
             t);
  return os.str();
}

bool same_type(const SingularityType& a, const SingularityType& b, double tol) {
  if (a.index() != b.index()) return false;
  if (const auto* ma = std::get_if<MassiveParticle>(&a)) {
    const auto& mb = std::get<MassiveParticle>(b);
    return ma->side == mb.side && std::abs(ma->angle - mb.angle) <= tol;
  }
  return a == b;
}

bool is_btz_like(const SingularityType& t) {
  return std::holds_alternative<BTZ>(t) || std::holds_alternative<ExtremeBTZ>(t);
}

std::string_view violation_name(Violation v) {
  switch (v) {
    case Violation::DegreeAtLeastFour: return "degree_at_least_four";
    case Violation::MisnerCTC: return "misner_ctc";
    case Violation::ClosedCausalCurve: return "closed_causal_curve";
  }
  return "?";
}

std::vector<double> lifted_fixed_points(const LinkCircle& l) {
  const ProjMatrix& g = l.holonomy.base();
  std::vector<double> angles;
  if (!g.is_identity()) {
    for (const auto& p : fixed_points_rp1(g).points) angles.push_back(p.angle());
  }
  std::sort(angles.begin(), angles.end());
  std::vector<double> out;
  for (int t = 0; t < turns_of(l); ++t) {
    for (double a : angles) out.push_back(a + kTwoPi * t);
  }
  return out;
}

int positivity_from_holonomy(const LinkCircle& l) {
  if (timelike_base(l.base_class)) throw PreconditionError("positivity is not defined for timelike base points");
  if (l.holonomy.degree() < 2) throw PreconditionError("positivity needs degree at least 2");
  const auto pts = lifted_fixed_points(l);
  if (pts.empty()) throw PreconditionError("holonomy has no fixed point");
  const int n = static_cast<int>(pts.size());
  if (l.future_arc < 0 || l.future_arc >= n) throw PreconditionError("future arc index out of range");
  const double lo = pts[static_cast<size_t>(l.future_arc)];
  const double hi = l.future_arc + 1 < n ? pts[static_cast<size_t>(l.future_arc + 1)] : pts.front() + kTwoPi * turns_of(l);
  const double mid = 0.5 * (lo + hi);
  return canonical_lift_value(l.holonomy.base(), mid) - mid > 0 ? 1 : -1;
}

LinkCircle conjugate_link(const LinkCircle& l, const ProjMatrix& h) {
  LinkCircle out = l;
  out.holonomy = LiftedIsometry(l.holonomy.degree(), h * l.holonomy.base() * h.inverse());
  const auto pts = lifted_fixed_points(l);
  if (pts.empty() || l.holonomy.degree() == 0) return out;
  const double period = kTwoPi * turns_of(l);
  const size_t j = static_cast<size_t>(l.future_arc);
  const double hi = j + 1 < pts.size() ? pts[j + 1] : pts.front() + period;
  const double moved = canonical_lift_value(h, 0.5 * (pts[j] + hi));
  out.future_arc = arc_containing(lifted_fixed_points(out), period, moved);
  return out;
}

SingularityType classify_singularity(const LinkCircle& l) {
  const int k = l.holonomy.degree();
  const ProjMatrix& g = l.holonomy.base();
  if (k < 0) throw PreconditionError("link degree must be nonnegative");
  if (timelike_base(l.base_class)) {
    if (!(g.is_identity() ? k >= 1 : is_elliptic(g))) {
      throw PreconditionError("timelike base point needs elliptic holonomy");
    }
    if (l.interval) throw PreconditionError("timelike links carry no interval marker");
    const TimeSide side = l.base_class == HS2Region::HypPlus ? TimeSide::Future : TimeSide::Past;
    return MassiveParticle{translation_number(l.holonomy), side};
  }
  const bool lightlike = boundary_base(l.base_class);
  if (lightlike && !is_parabolic(g)) throw PreconditionError("lightlike base point needs parabolic holonomy");
  if (!lightlike && !is_hyperbolic(g)) throw PreconditionError("de Sitter base point needs hyperbolic holonomy");
  if (k % 2 != 0) throw PreconditionError("degree of a non-timelike link must be even, got " + std::to_string(k));
  if (k == 0) {
    if (!l.interval) throw PreconditionError("degree 0 link needs an interval marker");
    const ArcKind arc = *l.interval;
    if (!lightlike) {
      if (arc == ArcKind::Future) return BTZ{TimeSide::Past};
      if (arc == ArcKind::Past) return BTZ{TimeSide::Future};
      return Misner{};
    }
    if (arc == ArcKind::Spacelike) throw PreconditionError("lightlike degree 0 link needs a timelike interval");
    const bool plus = l.base_class == HS2Region::BoundaryPlus;
    if (arc == ArcKind::Future) {
      if (plus) return Cuspidal{TimeSide::Future};
      return ExtremeBTZ{TimeSide::Past};
    }
    if (plus) return ExtremeBTZ{TimeSide::Future};
    return Cuspidal{TimeSide::Past};
  }
  if (l.interval) throw PreconditionError("interval marker is only meaningful in degree 0");
  const int s = positivity_from_holonomy(l);
  if (l.sign && *l.sign != s) throw PreconditionError("stored sign disagrees with the holonomy");
  if (k == 2) {
    if (lightlike) return Photon{s, l.base_class == HS2Region::BoundaryPlus ? TimeSide::Future : TimeSide::Past};
    return Tachyon{s};
  }
  return HighDegree{k, lightlike ? NonTimelikeKind::Lightlike : NonTimelikeKind::Spacelike, s};
}

bool is_positive(const SingularityType& t) {
  return std::visit(overloaded{
                        [](const MassiveParticle& m) { return m.angle < kTwoPi; },
                        [](const Photon& p) { return p.sign == 1; },
                        [](const Tachyon& p) { return p.sign == 1; },
                        [](const HighDegree& h) { return h.sign == 1; },
                        [](const auto&) { return true; },
                    },
                    t);
}

CausalVerdict is_causal_line(const SingularityType& t) {
  CausalVerdict v;
  if (std::holds_alternative<Misner>(t)) v.reasons.push_back(Violation::MisnerCTC);
  if (std::holds_alternative<HighDegree>(t)) v.reasons.push_back(Violation::DegreeAtLeastFour);
  v.causal = v.reasons.empty();
  return v;
}

SingularityType antipodal_type(const SingularityType& t) {
  return std::visit(overloaded{
                        [](const MassiveParticle& m) -> SingularityType { return MassiveParticle{m.angle, opposite(m.side)}; },
                        [](const Photon& p) -> SingularityType { return Photon{p.sign, opposite(p.side)}; },
                        [](const Cuspidal& c) -> SingularityType { return ExtremeBTZ{opposite(c.side)}; },
                        [](const ExtremeBTZ& e) -> SingularityType { return Cuspidal{opposite(e.side)}; },
                        [](const auto& other) -> SingularityType { return other; },
                    },
                    t);
}

std::pair<int, int> local_future_components(const SingularityType& t) {
  return std::visit(overloaded{
                        [](const BTZ& b) { return b.side == TimeSide::Future ? std::pair{0, 1} : std::pair{1, 0}; },
                        [](const ExtremeBTZ& b) { return b.side == TimeSide::Future ? std::pair{0, 1} : std::pair{1, 0}; },
                        [](const Cuspidal& c) { return c.side == TimeSide::Future ? std::pair{1, 0} : std::pair{0, 1}; },
                        [](const Misner&) { return std::pair{0, 0}; },
                        [](const HighDegree& h) { return std::pair{h.degree / 2, h.degree / 2}; },
                        [](const auto&) { return std::pair{1, 1}; },
                    },
                    t);
}

std::optional<double> particle_mass(const SingularityType& t) {
  if (const auto* m = std::get_if<MassiveParticle>(&t)) return 1.0 - m->angle / kTwoPi;
  return std::nullopt;
}

LinkCircle model_link(const SingularityType& t, const ModelParams& params) {
  if (!(params.length > 0)) throw PreconditionError("holonomy length must be positive");
  if (params.shear == 0.0) throw PreconditionError("parabolic parameter must be nonzero");
  const ProjMatrix boost = diagonal_boost(params.length);
  const ProjMatrix shear = unipotent(std::abs(params.shear));
  // Pick the arc whose displacement sign matches the request.
  auto signed_link = [](HS2Region base, LiftedIsometry hol, int sign) {
    LinkCircle l{base, hol, std::nullopt, std::nullopt, 0};
    if (positivity_from_holonomy(l) != sign) l.future_arc = 1;
    l.sign = sign;
    return l;
  };
  return std::visit(
      overloaded{
          [&](const MassiveParticle& m) {
            if (!(m.angle > 0)) throw PreconditionError("cone angle must be positive");
            const HS2Region base = m.side == TimeSide::Future ? HS2Region::HypPlus : HS2Region::HypMinus;
            return LinkCircle{base, elliptic_lift(m.angle), std::nullopt, std::nullopt, 0};
          },
          [&](const Photon& p) {
            require_sign(p.sign);
            const HS2Region base = p.side == TimeSide::Future ? HS2Region::BoundaryPlus : HS2Region::BoundaryMinus;
            return signed_link(base, LiftedIsometry(2, unipotent(p.sign * std::abs(params.shear))), p.sign);
          },
          [&](const Tachyon& p) {
            require_sign(p.sign);
            return signed_link(HS2Region::DeSitter, LiftedIsometry(2, boost), p.sign);
          },
          [&](const BTZ& b) {
            const ArcKind arc = b.side == TimeSide::Past ? ArcKind::Future : ArcKind::Past;
            return LinkCircle{HS2Region::DeSitter, LiftedIsometry(0, boost), arc, std::nullopt, 0};
          },
          [&](const ExtremeBTZ& e) {
            const bool past = e.side == TimeSide::Past;
            return LinkCircle{past ? HS2Region::BoundaryMinus : HS2Region::BoundaryPlus, LiftedIsometry(0, shear),
                              past ? ArcKind::Future : ArcKind::Past, std::nullopt, 0};
          },
          [&](const Cuspidal& c) {
            const bool future = c.side == TimeSide::Future;
            return LinkCircle{future ? HS2Region::BoundaryPlus : HS2Region::BoundaryMinus, LiftedIsometry(0, shear),
                              future ? ArcKind::Future : ArcKind::Past, std::nullopt, 0};
          },
          [&](const Misner&) {
            return LinkCircle{HS2Region::DeSitter, LiftedIsometry(0, boost), ArcKind::Spacelike, std::nullopt, 0};
          },
          [&](const HighDegree& h) {
            require_sign(h.sign);
            if (h.degree < 4 || h.degree % 2 != 0) throw PreconditionError("high degree must be even and at least 4");
            if (h.kind == NonTimelikeKind::Spacelike) {
              return signed_link(HS2Region::DeSitter, LiftedIsometry(h.degree, boost), h.sign);
            }
            return signed_link(HS2Region::BoundaryPlus,
                               LiftedIsometry(h.degree, unipotent(h.sign * std::abs(params.shear))), h.sign);
          },
      },
      t);
}

}  // namespace adsgeom
