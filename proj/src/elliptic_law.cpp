#include "miquel/elliptic_law.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <utility>

#include "miquel/error.hpp"
#include "miquel/polynomial.hpp"

namespace miquel {

namespace {

constexpr double kPi = std::numbers::pi;

// A circle or line in frame coordinates with a rational parameter t and the
// degree-4 polynomial in t whose roots are its intersections with the quartic.
class Carrier {
 public:
  static Carrier circle(const MiquelQuartic& q, Point2 center, double radius) {
    Carrier c;
    c.is_line_ = false;
    c.center_ = center;
    c.radius_ = radius;
    // The parameter misses the point at angle phase + pi; put it where the
    // quartic is far from zero so that the leading coefficient is healthy.
    double best = -1.0;
    for (int k = 0; k < 16; ++k) {
      const double phase = 2.0 * kPi * k / 16.0;
      const Point2 missing = center - radius * Vec2{std::cos(phase), std::sin(phase)};
      const double value = std::abs(q.evaluate_frame(missing));
      if (value > best) {
        best = value;
        c.phase_ = phase;
      }
    }
    c.build_circle(q);
    return c;
  }

  static Carrier line(const MiquelQuartic& q, Point2 anchor, Vec2 direction) {
    Carrier c;
    c.is_line_ = true;
    c.anchor_ = anchor;
    c.direction_ = direction / norm(direction);
    c.build_line(q);
    return c;
  }

  /// Circle (or line, kappa = 0) through `base` with unit tangent `tangent`
  /// and signed curvature `kappa` toward perp(tangent), parametrized by
  ///   base + (2t T + 2 kappa t^2 perp(T)) / (1 + kappa^2 t^2),
  /// which needs no center and stays well conditioned as kappa -> 0. The
  /// point opposite `base` sits at t = infinity.
  static Carrier based(const MiquelQuartic& q, Point2 base, Vec2 tangent, double kappa) {
    Carrier c;
    c.is_based_ = true;
    c.anchor_ = base;
    c.direction_ = tangent;
    c.kappa_ = kappa;
    c.build_based(q);
    return c;
  }

  Point2 at(double t) const {
    if (is_based_) {
      const Vec2 n = perp(direction_);
      if (!std::isfinite(t)) return anchor_ + (2.0 / kappa_) * n;
      const double w = 1.0 + kappa_ * kappa_ * t * t;
      return anchor_ + (2.0 * t / w) * direction_ + (2.0 * kappa_ * t * t / w) * n;
    }
    if (is_line_) return anchor_ + t * direction_;
    const double angle = phase_ + 2.0 * std::atan(t);
    return center_ + radius_ * Vec2{std::cos(angle), std::sin(angle)};
  }

  double param(Point2 p) const {
    if (is_based_) {
      const Vec2 d = p - anchor_;
      if (norm2(d) == 0.0) return 0.0;
      return norm2(d) / (2.0 * dot(d, direction_));
    }
    if (is_line_) return dot(p - anchor_, direction_);
    const Vec2 d = p - center_;
    const double theta = wrap_angle(std::atan2(d.y, d.x) - phase_);
    return std::tan(0.5 * theta);
  }

  const poly::Poly& restricted() const { return poly_; }

  /// The root left over once `known` (with repetition) are removed, from the
  /// sum of the roots.
  double residual_root(std::span<const double> known) const {
    double t = -poly_[3] / poly_[4];
    for (double k : known) t -= k;
    return poly::polish_root(poly_, t);
  }

 private:
  void build_circle(const MiquelQuartic& q) {
    const double cphi = std::cos(phase_), sphi = std::sin(phase_);
    const double cx = center_.x, cy = center_.y, r = radius_;
    // Homogeneous rational parametrization: point = (X(t), Y(t)) / W(t).
    const poly::Poly X = {cx + r * cphi, -2.0 * r * sphi, cx - r * cphi};
    const poly::Poly Y = {cy + r * sphi, 2.0 * r * cphi, cy - r * sphi};
    const poly::Poly W = {1.0, 0.0, 1.0};
    // On the circle x^2 + y^2 = alpha x + beta y + gamma, so the quartic
    // restricts to the conic (alpha x + beta y + gamma)^2 + a x^2 + b y^2 + c.
    const double alpha = 2.0 * cx, beta = 2.0 * cy;
    const double gamma = (r - norm(center_)) * (r + norm(center_));
    const double gxx = alpha * alpha + q.a, gxy = 2.0 * alpha * beta, gyy = beta * beta + q.b;
    const double gx = 2.0 * alpha * gamma, gy = 2.0 * beta * gamma, g0 = gamma * gamma + q.c;
    using poly::multiply, poly::scale;
    poly::Poly acc = scale(multiply(X, X), gxx);
    acc = poly::add(acc, scale(multiply(X, Y), gxy));
    acc = poly::add(acc, scale(multiply(Y, Y), gyy));
    acc = poly::add(acc, scale(multiply(X, W), gx));
    acc = poly::add(acc, scale(multiply(Y, W), gy));
    acc = poly::add(acc, scale(multiply(W, W), g0));
    poly_ = acc;
  }

  void build_line(const MiquelQuartic& q) {
    const Point2 p = anchor_;
    const Vec2 d = direction_;
    const poly::Poly s = {norm2(p), 2.0 * dot(p, d), 1.0};
    const poly::Poly x = {p.x, d.x};
    const poly::Poly y = {p.y, d.y};
    poly::Poly acc = poly::multiply(s, s);
    acc = poly::add(acc, poly::scale(poly::multiply(x, x), q.a));
    acc = poly::add(acc, poly::scale(poly::multiply(y, y), q.b));
    acc[0] += q.c;
    poly_ = acc;
  }

  void build_based(const MiquelQuartic& q) {
    const Point2 m = anchor_;
    const Vec2 T = direction_, n = perp(direction_);
    const double k = kappa_, k2 = kappa_ * kappa_;
    // Numerators over w = 1 + k^2 t^2 of x, y and of s = x^2 + y^2.
    const poly::Poly W = {1.0, 0.0, k2};
    const poly::Poly X = {m.x, 2.0 * T.x, k2 * m.x + 2.0 * k * n.x};
    const poly::Poly Y = {m.y, 2.0 * T.y, k2 * m.y + 2.0 * k * n.y};
    const poly::Poly S = {norm2(m), 4.0 * dot(m, T), k2 * norm2(m) + 4.0 * (k * dot(m, n) + 1.0)};
    // F = (s + alpha/2)^2 + (b - a) y^2 + (c - alpha^2/4) with alpha = a, or
    // the mirror form with alpha = b. Near a doubled circle the expanded
    // form cancels catastrophically while this one does not.
    const bool by_a = std::abs(q.c - 0.25 * q.a * q.a) <= std::abs(q.c - 0.25 * q.b * q.b);
    const double alpha = by_a ? q.a : q.b;
    using poly::multiply, poly::scale;
    const poly::Poly shifted = poly::add(S, scale(W, 0.5 * alpha));
    const poly::Poly& across = by_a ? Y : X;
    poly::Poly acc = multiply(shifted, shifted);
    acc = poly::add(acc, scale(multiply(across, across), by_a ? q.b - q.a : q.a - q.b));
    acc = poly::add(acc, scale(multiply(W, W), q.c - 0.25 * alpha * alpha));
    poly_ = acc;
  }

  bool is_based_ = false;
  double kappa_ = 0.0;
  bool is_line_ = false;
  Point2 center_{}, anchor_{};
  Vec2 direction_{1.0, 0.0};
  double radius_ = 1.0;
  double phase_ = 0.0;
  poly::Poly poly_;
};

// A circle through `origin` with tangent T and curvature kappa there, and
// further points on it. Returns the carrier based at the point whose
// opposite lies in the middle of the widest gap between the given points,
// so that no given point is near the parameter's pole.
Carrier rebased_carrier(const MiquelQuartic& q, Point2 origin, Vec2 T, double kappa,
                        std::span<const Point2> others) {
  const Vec2 n = perp(T);
  std::vector<double> angles = {0.0};
  for (Point2 p : others) {
    const Vec2 d = p - origin;
    if (norm2(d) == 0.0) continue;
    // tan(u/2) = (d . n) / (d . T) for the point at angle u along the circle.
    angles.push_back(2.0 * std::atan((dot(d, n)) / dot(d, T)));
  }
  std::sort(angles.begin(), angles.end());
  double phi = 0.0, widest = -1.0;
  for (std::size_t i = 0; i < angles.size(); ++i) {
    const bool wraps = i + 1 == angles.size();
    const double lo = angles[i], hi = wraps ? angles[0] + 2.0 * kPi : angles[i + 1];
    if (hi - lo > widest) {
      widest = hi - lo;
      // Base opposite the gap middle; for the wrapping gap that is (lo + hi - 2 pi) / 2.
      phi = wraps ? 0.5 * (lo + angles[0]) : wrap_angle(0.5 * (lo + hi) + kPi);
    }
  }
  if (phi == 0.0 || kappa == 0.0) return Carrier::based(q, origin, T, kappa);
  const Carrier from_origin = Carrier::based(q, origin, T, kappa);
  const Point2 base = from_origin.at(std::tan(0.5 * phi) / kappa);
  return Carrier::based(q, base, rotate(T, phi), kappa);
}

IntersectionList intersections_on(const Carrier& carrier) {
  const auto roots = poly::roots(carrier.restricted());
  IntersectionList out;
  std::vector<double> real;
  for (const auto& r : roots) {
    if (std::abs(r.imag()) <= 1e-6 * (1.0 + std::abs(r.real())))
      real.push_back(r.real());
    else if (r.imag() > 0.0)
      ++out.complex_pairs;
  }
  std::sort(real.begin(), real.end());
  // Tangential roots split into clusters of width ~sqrt(eps); their mean is accurate.
  std::size_t i = 0;
  while (i < real.size()) {
    std::size_t j = i + 1;
    double sum = real[i];
    while (j < real.size() && std::abs(real[j] - real[i]) <= 1e-5 * (1.0 + std::abs(real[i]))) sum += real[j++];
    const int mult = static_cast<int>(j - i);
    double t = sum / mult;
    if (mult == 1) t = poly::polish_root(carrier.restricted(), t);
    const Point2 p = carrier.at(t);
    out.points.push_back({{p.x, p.y}, mult});
    i = j;
  }
  return out;
}

}  // namespace

int IntersectionList::real_multiplicity() const {
  int m = 0;
  for (const auto& p : points) m += p.multiplicity;
  return m;
}

IntersectionList circle_quartic_intersections(const MiquelQuartic& q, const Circle2& circle) {
  if (!is_nondegenerate(q)) throw Error(ErrorCode::NotNondegenerate, "intersections with a degenerate quartic");
  return intersections_on(Carrier::circle(q, circle.center(), circle.radius()));
}

IntersectionList circle_quartic_intersections(const MiquelQuartic& q, const Line2& line) {
  if (!is_nondegenerate(q)) throw Error(ErrorCode::NotNondegenerate, "intersections with a degenerate quartic");
  return intersections_on(Carrier::line(q, line.anchor(), line.direction()));
}

GroupLaw::GroupLaw(const MiquelQuartic& q) : q_(q) {
  if (!is_nondegenerate(q)) throw Error(ErrorCode::NotNondegenerate, "the quartic is degenerate");
  const Point2 n = x_axis_points(q).front();
  neutral_ = {n.x, 0.0};
  double s_max = norm2(n);
  for (const SInterval& iv : real_s_intervals(q)) s_max = std::max(s_max, iv.hi);
  extent_ = std::max(1.0, std::sqrt(s_max));
}

GroupPoint GroupLaw::lift(Point2 world, double tol) const {
  Point2 local = q_.frame.to_frame(world);
  auto step = [&](Point2 p) {
    const Vec2 g = q_.gradient_frame(p);
    const double g2 = norm2(g);
    const double f = q_.evaluate_frame(p);
    if (f == 0.0) return Vec2{};
    return g2 > 0.0 ? f / g2 * g : Vec2{INFINITY, INFINITY};
  };
  const Vec2 first = step(local);
  if (!(norm(first) <= tol * extent_)) throw Error(ErrorCode::NotOnCurve, "point does not lie on the quartic");
  local = project_frame(q_, local);
  return {local.x, local.y};
}

GroupPoint GroupLaw::add(GroupPoint p1, GroupPoint p2) const {
  // A fixed argument order makes the result exactly symmetric.
  if (std::pair{p2.x, p2.y} < std::pair{p1.x, p1.y}) std::swap(p1, p2);
  const Point2 a = p1.frame(), b = p2.frame(), n = neutral_.frame();
  if (miquel::distance(a, n) <= 1e-10 * extent_) return p2;
  if (miquel::distance(b, n) <= 1e-10 * extent_) return p1;
  if (miquel::distance(a, b) <= 1e-8 * extent_) return twice(p1);

  // Inversion about N maps the circle through N, P1, P2 to the line through
  // the images of P1 and P2, which is parallel to the tangent at N.
  const Vec2 da = a - n, db = b - n;
  const Vec2 chord = db / norm2(db) - da / norm2(da);
  const Vec2 T = chord / norm(chord);
  const Vec2 far = norm2(da) >= norm2(db) ? da : db;
  const double kappa = 2.0 * dot(far, perp(T)) / norm2(far);

  const Point2 others[2] = {a, b};
  const Carrier carrier = rebased_carrier(q_, n, T, kappa, others);
  const double known[3] = {carrier.param(a), carrier.param(b), carrier.param(n)};
  const Point2 fourth = carrier.at(carrier.residual_root(known));
  if (!is_finite(fourth)) throw Error(ErrorCode::SolverFailure, "fourth intersection is not finite");
  const Point2 snapped = project_frame(q_, fourth);
  return negate({snapped.x, snapped.y});
}

GroupPoint GroupLaw::twice(GroupPoint p) const {
  const Point2 a = p.frame(), n = neutral_.frame();
  if (miquel::distance(a, n) <= 1e-10 * extent_) return neutral_;

  const Vec2 grad = q_.gradient_frame(a);
  const double r = std::max(1.0, norm(a));
  const double grad_scale = std::max({r * r * r, std::abs(q_.a) * r, std::abs(q_.b) * r});
  if (norm(grad) <= 1e-12 * grad_scale)
    throw Error(ErrorCode::DegenerateGradient, "quartic gradient vanishes at the point");

  // Circle tangent to the curve at P through N.
  const Vec2 T = perp(grad / norm(grad));
  const Vec2 w = n - a;
  const double kappa = 2.0 * dot(w, perp(T)) / norm2(w);
  const Point2 others[1] = {n};
  const Carrier carrier = rebased_carrier(q_, a, T, kappa, others);
  const double ta = carrier.param(a);
  const double known[3] = {ta, ta, carrier.param(n)};
  const Point2 fourth = carrier.at(carrier.residual_root(known));
  if (!is_finite(fourth)) throw Error(ErrorCode::SolverFailure, "fourth intersection is not finite");
  const Point2 snapped = project_frame(q_, fourth);
  return negate({snapped.x, snapped.y});
}

GroupPoint GroupLaw::mul(std::int64_t n, GroupPoint p) const {
  if (n < 0) return negate(mul(-n, p));
  GroupPoint result = neutral_;
  GroupPoint addend = p;
  auto k = static_cast<std::uint64_t>(n);
  while (k != 0) {
    if (k & 1U) result = add(result, addend);
    k >>= 1U;
    if (k != 0) addend = twice(addend);
  }
  return result;
}

Point2 predict_mutation(const Pattern22& S, Color color, double tol) {
  const GroupLaw law(quartic_of_pattern(S, tol));
  const GroupPoint E = law.lift(S.E());
  const GroupPoint X = law.lift(color == Color::White ? S.A() : S.C());
  return law.to_world(law.negate(law.add(E, law.twice(X))));
}

TangentCircleConstruction tangent_circle_mutation(const Pattern22& S, double tol) {
  const MiquelQuartic q = quartic_of_pattern(S, tol);
  const Point2 E = S.E();
  auto center_at = [&](Point2 X) {
    const Vec2 grad = q.frame.vector_to_world(q.gradient_frame(q.frame.to_frame(X)));
    if (norm(grad) == 0.0) throw Error(ErrorCode::DegenerateGradient, "quartic gradient vanishes");
    if (distance(X, E) <= tol * S.scale())
      throw Error(ErrorCode::DegenerateInput, "tangent circle through coincident points");
    return intersect_lines(Line2(X, grad), Line2(midpoint(X, E), perp(E - X)), tol);
  };
  TangentCircleConstruction out;
  out.O_A = center_at(S.A());
  out.O_I = center_at(S.I());
  if (distance(out.O_A, out.O_I) <= tol * S.scale())
    throw Error(ErrorCode::CoincidentCenters, "tangent circles at A and I share their center");
  out.image = reflect_point(E, Line2::through(out.O_A, out.O_I));
  return out;
}

GroupPoint random_curve_point(const GroupLaw& law, Rng& rng) {
  const auto intervals = real_s_intervals(law.quartic());
  if (intervals.empty()) throw Error(ErrorCode::EmptyRealLocus, "the quartic has no real points");
  const auto pick = static_cast<std::size_t>(rng.uniform(0.0, static_cast<double>(intervals.size())));
  const SInterval& iv = intervals[std::min(pick, intervals.size() - 1)];
  const double s = iv.lo + (iv.hi - iv.lo) * rng.uniform(0.05, 0.95);
  const int sx = rng.coin() ? 1 : -1, sy = rng.coin() ? 1 : -1;
  const Point2 p = point_at(law.quartic(), s, sx, sy);
  return {p.x, p.y};
}

SumInvarianceReport base_point_sum_invariance(const GroupLaw& law, GroupPoint P, int trials, Rng& rng) {
  const MiquelQuartic& q = law.quartic();
  SumInvarianceReport report;
  std::vector<GroupPoint> sums;
  for (int trial = 0; trial < trials; ++trial) {
    const double radius = law.extent() * rng.uniform(0.1, 3.0);
    const double angle = rng.uniform(0.0, 2.0 * kPi);
    const Point2 center = P.frame() + radius * Vec2{std::cos(angle), std::sin(angle)};
    const Carrier carrier = Carrier::circle(q, center, radius);

    const auto rest = poly::deflate(carrier.restricted(), carrier.param(P.frame()));
    std::vector<double> ts;
    bool complex = false;
    for (const auto& r : poly::roots(rest)) {
      if (std::abs(r.imag()) > 1e-6 * (1.0 + std::abs(r.real()))) {
        complex = true;
        break;
      }
      ts.push_back(poly::polish_root(carrier.restricted(), r.real()));
    }
    if (complex || ts.size() != 3) {
      ++report.skipped;
      continue;
    }
    GroupPoint pts[3];
    for (int k = 0; k < 3; ++k) {
      const Point2 p = carrier.at(ts[k]);
      pts[k] = {p.x, p.y};
    }
    sums.push_back(law.add(law.add(pts[0], pts[1]), pts[2]));
    ++report.completed;
  }
  for (std::size_t i = 0; i < sums.size(); ++i)
    for (std::size_t j = i + 1; j < sums.size(); ++j)
      report.spread = std::max(report.spread, law.distance(sums[i], sums[j]));
  if (!sums.empty()) report.reference_sum = sums.front();
  return report;
}

}  // namespace miquel
