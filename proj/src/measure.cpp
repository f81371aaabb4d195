#include "miquel/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "miquel/error.hpp"
#include "miquel/polynomial.hpp"

namespace miquel {

namespace {

constexpr double kPi = std::numbers::pi;

double quad_a(const MiquelQuartic& q, double s) { return s * s + q.a * s + q.c; }
double quad_b(const MiquelQuartic& q, double s) { return s * s + q.b * s + q.c; }

// The root of the same quadratic that is not `root` (product of roots is c).
double partner_root(const MiquelQuartic& q, EndpointKind kind, double root) {
  const double linear = kind == EndpointKind::YZero ? q.a : q.b;
  // Vieta on the sum is cancellation-prone when the roots differ in size.
  return std::abs(root) >= std::abs(q.c / root) ? q.c / root : -linear - root;
}

// Integrand of |omega| in the angle theta, where s = lo + (hi-lo) sin^2(theta/2).
// The substitution absorbs the square-root endpoint singularities:
//   ds / sqrt((s-lo)(hi-s)) = d theta,
// so what remains is |b-a| / sqrt(R(s)) with R smooth and positive on [lo, hi].
class ThetaIntegrand {
 public:
  ThetaIntegrand(const MiquelQuartic& q, const SInterval& iv) : q_(q), iv_(iv) {
    same_kind_ = iv.lo_kind == iv.hi_kind;
    if (!same_kind_) {
      lo_partner_ = partner_root(q, iv.lo_kind, iv.lo);
      hi_partner_ = partner_root(q, iv.hi_kind, iv.hi);
    }
  }

  double remainder(double s) const {
    if (same_kind_) {
      // lo and hi exhaust one quadratic; the other has no root inside.
      return iv_.lo_kind == EndpointKind::YZero ? quad_b(q_, s) : quad_a(q_, s);
    }
    return (s - lo_partner_) * (s - hi_partner_);
  }

  double operator()(double theta) const {
    const double h = std::sin(0.5 * theta);
    const double s = iv_.lo + (iv_.hi - iv_.lo) * h * h;
    const double r = remainder(s);
    if (!(r > 0.0)) throw Error(ErrorCode::QuadratureFailure, "nonpositive radicand inside an s-interval");
    return std::abs(q_.b - q_.a) / std::sqrt(r);
  }

  /// theta of a frame point on this interval, with the distances to the
  /// endpoints taken from x^2 or y^2 where subtraction would cancel.
  double theta_of(Point2 p) const {
    const double x2 = p.x * p.x, y2 = p.y * p.y;
    const double s = x2 + y2;
    const double half = 0.5 * (iv_.hi - iv_.lo);
    const double ba = q_.b - q_.a;
    auto gap = [&](EndpointKind kind, double root) {
      // s^2 + l s + c = (s - root)(s - partner); x^2 = p_b/(b-a), y^2 = -p_a/(b-a).
      const double partner = partner_root(q_, kind, root);
      const double value = kind == EndpointKind::XZero ? ba * x2 : -ba * y2;
      return value / (s - partner);
    };
    double d_lo = s - iv_.lo;
    double d_hi = iv_.hi - s;
    if (d_lo <= half) d_lo = gap(iv_.lo_kind, iv_.lo);
    if (d_hi <= half) d_hi = -gap(iv_.hi_kind, iv_.hi);
    return 2.0 * std::atan2(std::sqrt(std::max(0.0, d_lo)), std::sqrt(std::max(0.0, d_hi)));
  }

  double integrate(double t0, double t1) const {
    if (t0 == t1) return 0.0;
    using boost::math::quadrature::gauss_kronrod;
    const double lo = std::min(t0, t1), hi = std::max(t0, t1);
    // The library's error output is not scaled to subintervals once it
    // recurses, so two rules of different order serve as the estimate.
    const double fine = gauss_kronrod<double, 61>::integrate(*this, lo, hi, 8, 1e-12);
    const double coarse = gauss_kronrod<double, 31>::integrate(*this, lo, hi, 8, 1e-12);
    if (!std::isfinite(fine) || std::abs(fine - coarse) > 1e-10 * std::max(1.0, std::abs(fine)))
      throw Error(ErrorCode::QuadratureFailure, "quadrature did not converge");
    return fine;
  }

 private:
  const MiquelQuartic& q_;
  SInterval iv_;
  bool same_kind_ = true;
  double lo_partner_ = 0.0;
  double hi_partner_ = 0.0;
};

int sign_of(double v) { return v < 0.0 ? -1 : 1; }

std::size_t interval_of(const std::vector<SInterval>& intervals, double s) {
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    const double slack = 1e-9 * std::max(1.0, intervals[i].hi);
    if (s >= intervals[i].lo - slack && s <= intervals[i].hi + slack) return i;
  }
  throw Error(ErrorCode::BranchTrackingFailure, "point lies outside every admissible s-interval");
}

void require_nondegenerate(const MiquelQuartic& q) {
  if (!is_nondegenerate(q)) throw Error(ErrorCode::NotNondegenerate, "measure on a degenerate quartic");
}

}  // namespace

double omega_integrand(const MiquelQuartic& q, double s) {
  const double radicand = -quad_a(q, s) * quad_b(q, s);
  if (!(radicand > 0.0)) throw Error(ErrorCode::OutOfDomain, "s outside the open admissible set");
  return std::abs(q.b - q.a) / std::sqrt(radicand);
}

BranchId branch_of(const MiquelQuartic& q, Point2 p) {
  require_nondegenerate(q);
  return {interval_of(real_s_intervals(q), norm2(p)), sign_of(p.x), sign_of(p.y)};
}

ArcMeasure arc_measure(const MiquelQuartic& q, GroupPoint p1, GroupPoint p2) {
  const BranchId b1 = branch_of(q, p1.frame());
  const BranchId b2 = branch_of(q, p2.frame());
  if (!(b1 == b2)) throw Error(ErrorCode::DifferentBranches, "arc endpoints on different branches");
  const auto intervals = real_s_intervals(q);
  const ThetaIntegrand f(q, intervals[b1.interval]);
  return {f.integrate(f.theta_of(p1.frame()), f.theta_of(p2.frame())), b1};
}

ComponentAtlas::ComponentAtlas(const MiquelQuartic& q) : q_(q) {
  require_nondegenerate(q_);
  intervals_ = real_s_intervals(q_);
  if (intervals_.empty()) throw Error(ErrorCode::EmptyRealLocus, "the quartic has no real points");

  constexpr int kSigns[4][2] = {{1, 1}, {-1, 1}, {-1, -1}, {1, -1}};
  for (std::size_t idx = 0; idx < intervals_.size(); ++idx) {
    const SInterval& iv = intervals_[idx];
    const double branch = ThetaIntegrand(q_, iv).integrate(0.0, kPi);
    branch_length_.push_back(branch);

    bool used[4] = {false, false, false, false};
    auto slot = [&](int sx, int sy) {
      for (int k = 0; k < 4; ++k)
        if (kSigns[k][0] == sx && kSigns[k][1] == sy) return k;
      return 0;
    };
    for (int start = 0; start < 4; ++start) {
      if (used[start]) continue;
      Component comp{idx, {}, 0.0};
      int sx = kSigns[start][0], sy = kSigns[start][1];
      bool up = true;
      // Walk the sign branches: each endpoint flips the sign of the coordinate
      // that vanishes there, and the direction of travel in s reverses.
      do {
        used[slot(sx, sy)] = true;
        comp.segments.push_back({sx, sy, up, comp.length});
        comp.length += branch;
        const EndpointKind kind = up ? iv.hi_kind : iv.lo_kind;
        if (kind == EndpointKind::XZero) sx = -sx;
        else sy = -sy;
        up = !up;
      } while (!(sx == kSigns[start][0] && sy == kSigns[start][1] && up));
      components_.push_back(std::move(comp));
    }
  }
}

double ComponentAtlas::length(std::size_t component) const { return components_.at(component).length; }

ComponentAtlas::Location ComponentAtlas::locate(Point2 p) const {
  const std::size_t idx = interval_of(intervals_, norm2(p));
  const int sx = sign_of(p.x), sy = sign_of(p.y);
  for (std::size_t c = 0; c < components_.size(); ++c) {
    const Component& comp = components_[c];
    if (comp.interval != idx) continue;
    for (const Segment& seg : comp.segments) {
      if (seg.sign_x != sx || seg.sign_y != sy) continue;
      const ThetaIntegrand f(q_, intervals_[idx]);
      const double theta = f.theta_of(p);
      const double along = seg.ascending ? f.integrate(0.0, theta) : f.integrate(theta, kPi);
      double phase = std::fmod(seg.offset + along, comp.length);
      if (phase < 0.0) phase += comp.length;
      return {c, phase};
    }
  }
  throw Error(ErrorCode::BranchTrackingFailure, "no branch carries this sign pair");
}

std::vector<StepMeasure> orbit_measure_report(const Pattern22& S, int steps, bool reversed, double tol) {
  if (steps < 0) throw Error(ErrorCode::InvalidInput, "steps must be nonnegative");
  std::vector<StepMeasure> out;
  if (steps == 0) return out;

  const MiquelQuartic q = quartic_of_pattern(S, tol);
  const ComponentAtlas atlas(q);
  const Color first = reversed ? Color::Black : Color::White;
  const Color second = reversed ? Color::White : Color::Black;

  std::vector<ComponentAtlas::Location> where;
  MutationOrbit orbit(S, tol);
  where.push_back(atlas.locate(q.frame.to_frame(S.E())));
  for (int k = 0; k < steps; ++k) {
    orbit.apply(first);
    where.push_back(atlas.locate(q.frame.to_frame(orbit.apply(second).E())));
  }

  auto step = [&](int from, int to, bool hop) {
    const auto& l0 = where[static_cast<std::size_t>(from)];
    const auto& l1 = where[static_cast<std::size_t>(to)];
    const double length = atlas.length(l0.component);
    double d = std::fmod(l1.phase - l0.phase, length);
    if (d < 0.0) d += length;
    out.push_back({from, to, l0.component, std::min(d, length - d), hop});
  };
  for (int k = 0; k < steps; ++k) {
    const auto c0 = where[static_cast<std::size_t>(k)].component;
    if (where[static_cast<std::size_t>(k) + 1].component == c0) {
      step(k, k + 1, false);
    } else if (k + 2 <= steps && where[static_cast<std::size_t>(k) + 2].component == c0) {
      step(k, k + 2, true);
    }
  }
  return out;
}

}  // namespace miquel
