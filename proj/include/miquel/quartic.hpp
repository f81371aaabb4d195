#pragma once

#include <cstddef>
#include <vector>

#include "miquel/geometry.hpp"
#include "miquel/pattern.hpp"

namespace miquel {

/// Euclidean frame: frame coordinates (x, y) sit at origin + x*axis + y*perp(axis).
struct QuarticFrame {
  Point2 origin{};
  Vec2 axis{1.0, 0.0};

  Point2 to_frame(Point2 world) const {
    const Vec2 d = world - origin;
    return {dot(d, axis), cross(axis, d)};
  }
  Point2 to_world(Point2 local) const { return origin + local.x * axis + local.y * perp(axis); }
  Vec2 vector_to_world(Vec2 local) const { return local.x * axis + local.y * perp(axis); }
};

/// Unit axis with the sign fixed so that its first nonzero component is positive.
Vec2 canonical_axis(Vec2 direction);

/// The curve (x^2+y^2)^2 + a x^2 + b y^2 + c = 0 placed in the world by `frame`.
/// (The coefficient b is unrelated to the hyperbola abscissa b of a pattern.)
struct MiquelQuartic {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  QuarticFrame frame;

  double evaluate_frame(Point2 local) const {
    const double x2 = local.x * local.x, y2 = local.y * local.y, s = x2 + y2;
    return s * s + a * x2 + b * y2 + c;
  }
  Vec2 gradient_frame(Point2 local) const {
    const double s = norm2(local);
    return {local.x * (4.0 * s + 2.0 * a), local.y * (4.0 * s + 2.0 * b)};
  }

  /// F at a world point.
  double evaluate(Point2 world) const { return evaluate_frame(frame.to_frame(world)); }

  /// |F| / max(1, r^4) with r the frame radius of the point.
  double membership_residual(Point2 world) const;
  bool contains(Point2 world, double tol = 1e-7) const { return membership_residual(world) <= tol; }
};

/// Foci construction of the generic case.
struct GenericFoci {
  Point2 omega;    // center of the parallelogram ACIG
  Point2 P;        // intersection of the parallel to AG through O_B and the parallel to AC through O_D
  Point2 P_prime;  // 2*omega - P
  double lambda = 0.0;
  double k = 0.0;
};

GenericFoci generic_foci(const Pattern22& S, double tol = kDefaultTol);

/// Invariant quartic of a generic pattern from its foci:
/// PM^2 P'M^2 - lambda OmegaM^2 = k, i.e. a = -2p^2 - lambda, b = 2p^2 - lambda,
/// c = p^4 - k with p = |Omega P|.
MiquelQuartic quartic_generic(const Pattern22& S, double tol = kDefaultTol);

struct TrapezoidCoefficients {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

/// The closed-form coefficients of the trapezoidal quartic
/// (x^2+y^2)^2 - alpha x^2 - beta y^2 + gamma = 0, from frame coordinates of
/// C, D and E (D and E share their ordinate).
TrapezoidCoefficients trapezoid_coefficients(double x_C, double y_C, double x_D, double x_E, double y_E,
                                             double tol = kDefaultTol);

MiquelQuartic quartic_trapezoidal(const Pattern22& S, double tol = kDefaultTol);

MiquelQuartic quartic_of_pattern(const Pattern22& S, double tol = kDefaultTol);

/// Non-degenerate binodal iff a != b and 4c not in {0, a^2, b^2}.
bool is_nondegenerate(double a, double b, double c);
inline bool is_nondegenerate(const MiquelQuartic& q) { return is_nondegenerate(q.a, q.b, q.c); }

/// Coefficient distance normalized by dimension: a, b against l^2 and c
/// against l^4, where l^2 = max(1, |a|, |b|, sqrt|c|) of `reference`.
double coefficient_drift(const MiquelQuartic& reference, const MiquelQuartic& other);

/// Frame distance: origin distance plus axis distance up to sign (times `scale`).
double frame_drift(const MiquelQuartic& reference, const MiquelQuartic& other, double scale);

// ---- real locus via s = x^2 + y^2 -------------------------------------------
//
// On the curve x^2 = (s^2+bs+c)/(b-a) and y^2 = -(s^2+as+c)/(b-a).

enum class EndpointKind { XZero, YZero };

/// Maximal interval of s on which both right-hand sides are nonnegative.
struct SInterval {
  double lo = 0.0;
  double hi = 0.0;
  EndpointKind lo_kind = EndpointKind::XZero;
  EndpointKind hi_kind = EndpointKind::XZero;
};

/// Roots of s^2 + a s + c (y = 0) and s^2 + b s + c (x = 0).
struct SRoots {
  std::vector<double> y_zero;
  std::vector<double> x_zero;
};

SRoots s_roots(const MiquelQuartic& q);

/// Admissible s-intervals, ascending. Requires a != b.
std::vector<SInterval> real_s_intervals(const MiquelQuartic& q);

/// x^2 and y^2 at a given s, from the factored forms where possible.
double x_squared_at(const MiquelQuartic& q, double s);
double y_squared_at(const MiquelQuartic& q, double s);

/// Gradient-direction Newton steps toward F = 0 in extended precision.
/// A point with vanishing gradient is returned unchanged.
Point2 project_frame(const MiquelQuartic& q, Point2 local, int steps = 2);

/// Frame point with the given s and signs (clamping tiny negative squares),
/// projected onto the curve: the s-formulas lose digits when a is close to b.
Point2 point_at(const MiquelQuartic& q, double s, int sign_x, int sign_y);

struct QuarticBranchSample {
  double s_lo = 0.0;
  double s_hi = 0.0;
  int sign_x = 1;
  int sign_y = 1;
  std::size_t interval = 0;
  std::vector<Point2> points;  // frame coordinates, ordered by s
};

/// Samples every sign branch of every admissible interval, clustering
/// samples toward the interval ends.
std::vector<QuarticBranchSample> sample_real_curve(const MiquelQuartic& q, int points_per_branch);

/// Real intersections with the frame x-axis, sorted by x descending.
std::vector<Point2> x_axis_points(const MiquelQuartic& q);

}  // namespace miquel
