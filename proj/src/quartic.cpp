#include "miquel/quartic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "miquel/error.hpp"
#include "miquel/polynomial.hpp"

namespace miquel {

Vec2 canonical_axis(Vec2 direction) {
  const double n = norm(direction);
  if (!(n > 0.0)) throw Error(ErrorCode::DegenerateInput, "axis direction is zero");
  Vec2 axis = direction / n;
  const bool flip = std::abs(axis.x) > 1e-12 ? axis.x < 0.0 : axis.y < 0.0;
  return flip ? -axis : axis;
}

double MiquelQuartic::membership_residual(Point2 world) const {
  const Point2 local = frame.to_frame(world);
  const double r2 = norm2(local);
  return std::abs(evaluate_frame(local)) / std::max(1.0, r2 * r2);
}

namespace {

// The foci data is accumulated in extended precision: lambda and k are
// differences of products of order |PA|^4, which can exceed the curve
// coefficients by many orders of magnitude when P lies far out.
using W = long double;

struct WPoint {
  W x, y;
};

WPoint wide(Point2 p) { return {p.x, p.y}; }
WPoint operator-(WPoint a, WPoint b) { return {a.x - b.x, a.y - b.y}; }
W norm2(WPoint a) { return a.x * a.x + a.y * a.y; }
Point2 narrow(WPoint p) { return {static_cast<double>(p.x), static_cast<double>(p.y)}; }

WPoint wide_circumcenter(WPoint p1, WPoint p2, WPoint p3) {
  const WPoint b = p2 - p1, c = p3 - p1;
  const W d = 2 * (b.x * c.y - b.y * c.x);
  const W b2 = norm2(b), c2 = norm2(c);
  return {p1.x + (c.y * b2 - b.y * c2) / d, p1.y + (b.x * c2 - c.x * b2) / d};
}

// Intersection of the lines p + t u and q + r v.
WPoint wide_intersection(WPoint p, WPoint u, WPoint q, WPoint v) {
  const W t = ((q.x - p.x) * v.y - (q.y - p.y) * v.x) / (u.x * v.y - u.y * v.x);
  return {p.x + t * u.x, p.y + t * u.y};
}

struct WideFoci {
  WPoint omega, P;  // P relative to omega
  W lambda, k;
};

WideFoci wide_foci(const Pattern22& S, double tol) {
  const double scale = S.scale();
  const Point2 A = S.A(), C = S.C(), G = S.G(), I = S.I();
  if (std::abs(cross(S.B() - A, C - A)) <= tol * scale * scale)
    throw Error(ErrorCode::FlatAngle, "angle CBA is flat");
  if (std::abs(cross(S.D() - A, G - A)) <= tol * scale * scale)
    throw Error(ErrorCode::FlatAngle, "angle ADG is flat");
  // Validates both circles and the intersection in working precision.
  intersect_lines(Line2(circumcenter(A, S.B(), C, tol), G - A), Line2(circumcenter(A, S.D(), G, tol), C - A), tol);

  // Coordinates centered at Omega = (A + I) / 2.
  const WPoint omega{(W(A.x) + I.x) / 2, (W(A.y) + I.y) / 2};
  const auto local = [&](Point2 p) { return wide(p) - omega; };
  const WPoint a = local(A), c = local(C), g = local(G);
  const WPoint O_B = wide_circumcenter(a, local(S.B()), c);
  const WPoint O_D = wide_circumcenter(a, local(S.D()), g);

  WideFoci f;
  f.omega = omega;
  f.P = wide_intersection(O_B, g - a, O_D, c - a);
  const WPoint P_prime{-f.P.x, -f.P.y};

  const W oa = norm2(a), oc = norm2(c);
  const W denom = oa - oc;
  if (std::abs(denom) <= tol * scale * scale)
    throw Error(ErrorCode::ZeroDenominator, "Omega is equidistant from A and C");
  const W prod_a = norm2(a - f.P) * norm2(a - P_prime);
  const W prod_c = norm2(c - f.P) * norm2(c - P_prime);
  f.lambda = (prod_a - prod_c) / denom;
  f.k = (oa * prod_c - oc * prod_a) / denom;
  return f;
}

}  // namespace

GenericFoci generic_foci(const Pattern22& S, double tol) {
  const WideFoci w = wide_foci(S, tol);
  GenericFoci f;
  f.omega = narrow(w.omega);
  f.P = narrow({w.omega.x + w.P.x, w.omega.y + w.P.y});
  f.P_prime = narrow({w.omega.x - w.P.x, w.omega.y - w.P.y});
  f.lambda = static_cast<double>(w.lambda);
  f.k = static_cast<double>(w.k);
  return f;
}

MiquelQuartic quartic_generic(const Pattern22& S, double tol) {
  if (classify(S, tol) != PatternClass::Generic)
    throw Error(ErrorCode::WrongClass, "generic quartic construction on a trapezoidal pattern");
  const WideFoci f = wide_foci(S, tol);
  // Coincident foci leave a rotationally symmetric curve; any axis will do.
  const bool centered = std::sqrt(norm2(f.P)) <= tol * S.scale();
  const W p2 = centered ? 0 : norm2(f.P);

  MiquelQuartic q;
  q.a = static_cast<double>(-2 * p2 - f.lambda);
  q.b = static_cast<double>(2 * p2 - f.lambda);
  q.c = static_cast<double>(p2 * p2 - f.k);
  q.frame = {narrow(f.omega), centered ? Vec2{1.0, 0.0} : canonical_axis(narrow(f.P))};
  return q;
}

TrapezoidCoefficients trapezoid_coefficients(double x_C, double y_C, double x_D, double x_E, double y_E,
                                             double tol) {
  const double rc = x_C * x_C + y_C * y_C;
  const double re = x_E * x_E + y_E * y_E;
  const double denom = y_C * y_C - y_E * y_E;
  const double scale2 = std::max({1.0, rc, re});
  if (std::abs(denom) <= tol * scale2)
    throw Error(ErrorCode::ZeroDenominator, "trapezoid coefficients: y_C^2 equals y_E^2");
  const double shift2 = (x_D + x_C) * (x_D + x_C);
  const double diff = rc - re;
  TrapezoidCoefficients t;
  t.alpha = rc + re + shift2 * diff / denom;
  t.beta = rc + re + shift2 * (x_E * x_E - x_C * x_C) * diff / (denom * denom);
  t.gamma = rc * re + shift2 * (x_E * x_E * y_C * y_C - x_C * x_C * y_E * y_E) * diff / (denom * denom);
  return t;
}

MiquelQuartic quartic_trapezoidal(const Pattern22& S, double tol) {
  const PatternClass cls = classify(S, tol);
  if (cls == PatternClass::Generic)
    throw Error(ErrorCode::WrongClass, "trapezoidal quartic construction on a generic pattern");
  // The vertical class is the horizontal one with the lattice transposed;
  // transposition keeps A, E, I and swaps C with G.
  if (cls == PatternClass::TrapezoidalVertical) return quartic_trapezoidal(transpose(S, tol), tol);

  MiquelQuartic q;
  q.frame = {midpoint(S.A(), S.I()), canonical_axis(S.C() - S.A())};
  const Point2 c = q.frame.to_frame(S.C());
  const Point2 d = q.frame.to_frame(S.D());
  const Point2 e = q.frame.to_frame(S.E());
  const TrapezoidCoefficients t = trapezoid_coefficients(c.x, c.y, d.x, e.x, e.y, tol);
  q.a = -t.alpha;
  q.b = -t.beta;
  q.c = t.gamma;
  return q;
}

MiquelQuartic quartic_of_pattern(const Pattern22& S, double tol) {
  return classify(S, tol) == PatternClass::Generic ? quartic_generic(S, tol) : quartic_trapezoidal(S, tol);
}

bool is_nondegenerate(double a, double b, double c) {
  constexpr double rel = 1e-10;
  const double ref = std::max({1.0, a * a, b * b, std::abs(c)});
  if (std::abs(a - b) <= rel * std::sqrt(ref)) return false;
  const double four_c = 4.0 * c;
  return std::abs(four_c) > rel * ref && std::abs(four_c - a * a) > rel * ref &&
         std::abs(four_c - b * b) > rel * ref;
}

double coefficient_drift(const MiquelQuartic& reference, const MiquelQuartic& other) {
  const double l2 = std::max({1.0, std::abs(reference.a), std::abs(reference.b), std::sqrt(std::abs(reference.c))});
  return std::max({std::abs(other.a - reference.a) / l2, std::abs(other.b - reference.b) / l2,
                   std::abs(other.c - reference.c) / (l2 * l2)});
}

double frame_drift(const MiquelQuartic& reference, const MiquelQuartic& other, double scale) {
  const Vec2 r = reference.frame.axis, o = other.frame.axis;
  const double axis = std::min(norm(r - o), norm(r + o));
  return distance(reference.frame.origin, other.frame.origin) + scale * axis;
}

SRoots s_roots(const MiquelQuartic& q) {
  return {poly::monic_quadratic_roots(q.a, q.c), poly::monic_quadratic_roots(q.b, q.c)};
}

namespace {

// (s - r1)(s - r2) when the quadratic has real roots, else s^2 + l s + c.
double factored(const std::vector<double>& roots, double linear, double constant, double s) {
  if (roots.size() == 2) return (s - roots[0]) * (s - roots[1]);
  return s * s + linear * s + constant;
}

}  // namespace

double x_squared_at(const MiquelQuartic& q, double s) {
  const auto r = poly::monic_quadratic_roots(q.b, q.c);
  return factored(r, q.b, q.c, s) / (q.b - q.a);
}

double y_squared_at(const MiquelQuartic& q, double s) {
  const auto r = poly::monic_quadratic_roots(q.a, q.c);
  return -factored(r, q.a, q.c, s) / (q.b - q.a);
}

std::vector<SInterval> real_s_intervals(const MiquelQuartic& q) {
  if (q.a == q.b) throw Error(ErrorCode::NotNondegenerate, "s-parametrization requires a != b");
  const SRoots roots = s_roots(q);

  struct Break {
    double s;
    EndpointKind kind;
  };
  std::vector<Break> breaks;
  for (double r : roots.y_zero)
    if (r > 0.0) breaks.push_back({r, EndpointKind::YZero});
  for (double r : roots.x_zero)
    if (r > 0.0) breaks.push_back({r, EndpointKind::XZero});
  std::sort(breaks.begin(), breaks.end(), [](const Break& l, const Break& r) { return l.s < r.s; });

  std::vector<SInterval> out;
  bool open = false;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double mid = 0.5 * (breaks[i].s + breaks[i + 1].s);
    const bool admissible = x_squared_at(q, mid) >= 0.0 && y_squared_at(q, mid) >= 0.0;
    if (admissible && !open) {
      out.push_back({breaks[i].s, breaks[i + 1].s, breaks[i].kind, breaks[i + 1].kind});
      open = true;
    } else if (admissible) {
      out.back().hi = breaks[i + 1].s;
      out.back().hi_kind = breaks[i + 1].kind;
    } else {
      open = false;
    }
  }
  return out;
}

Point2 project_frame(const MiquelQuartic& q, Point2 local, int steps) {
  using W = long double;
  W x = local.x, y = local.y;
  for (int i = 0; i < steps; ++i) {
    const W x2 = x * x, y2 = y * y, s = x2 + y2;
    const W f = s * s + q.a * x2 + q.b * y2 + q.c;
    const W gx = x * (4 * s + 2 * W(q.a)), gy = y * (4 * s + 2 * W(q.b));
    const W g2 = gx * gx + gy * gy;
    if (!(g2 > 0)) break;
    x -= f / g2 * gx;
    y -= f / g2 * gy;
  }
  return {static_cast<double>(x), static_cast<double>(y)};
}

Point2 point_at(const MiquelQuartic& q, double s, int sign_x, int sign_y) {
  const double x2 = std::max(0.0, x_squared_at(q, s));
  const double y2 = std::max(0.0, y_squared_at(q, s));
  return project_frame(q, {sign_x * std::sqrt(x2), sign_y * std::sqrt(y2)});
}

std::vector<QuarticBranchSample> sample_real_curve(const MiquelQuartic& q, int points_per_branch) {
  if (!is_nondegenerate(q)) throw Error(ErrorCode::NotNondegenerate, "sampling a degenerate quartic");
  if (points_per_branch < 2) throw Error(ErrorCode::InvalidInput, "need at least two samples per branch");
  const auto intervals = real_s_intervals(q);
  if (intervals.empty()) throw Error(ErrorCode::EmptyRealLocus, "the quartic has no real points");

  constexpr int kSigns[4][2] = {{1, 1}, {-1, 1}, {-1, -1}, {1, -1}};
  std::vector<QuarticBranchSample> out;
  for (std::size_t idx = 0; idx < intervals.size(); ++idx) {
    const SInterval& iv = intervals[idx];
    for (const auto& sg : kSigns) {
      QuarticBranchSample br{iv.lo, iv.hi, sg[0], sg[1], idx, {}};
      br.points.reserve(static_cast<std::size_t>(points_per_branch));
      for (int k = 0; k < points_per_branch; ++k) {
        const double theta = std::numbers::pi * k / (points_per_branch - 1);
        const double s = iv.lo + (iv.hi - iv.lo) * 0.5 * (1.0 - std::cos(theta));
        br.points.push_back(point_at(q, s, sg[0], sg[1]));
      }
      out.push_back(std::move(br));
    }
  }
  return out;
}

std::vector<Point2> x_axis_points(const MiquelQuartic& q) {
  std::vector<Point2> out;
  for (double t : poly::monic_quadratic_roots(q.a, q.c)) {
    if (t < 0.0) continue;
    const double x = std::sqrt(t);
    out.push_back({x, 0.0});
    if (x > 0.0) out.push_back({-x, 0.0});
  }
  if (out.empty()) throw Error(ErrorCode::NoRealAxisPoint, "the quartic does not meet its x-axis");
  std::sort(out.begin(), out.end(), [](Point2 l, Point2 r) { return l.x > r.x; });
  return out;
}

}  // namespace miquel
