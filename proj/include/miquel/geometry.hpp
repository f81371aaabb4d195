#pragma once

#include <cmath>
#include <initializer_list>
#include <span>

namespace miquel {

/// Default scale-relative tolerance of the geometric predicates.
inline constexpr double kDefaultTol = 1e-9;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
  constexpr Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }
  constexpr Vec2& operator*=(double k) { x *= k; y *= k; return *this; }

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
  friend constexpr Vec2 operator*(double k, Vec2 a) { return {k * a.x, k * a.y}; }
  friend constexpr Vec2 operator*(Vec2 a, double k) { return {k * a.x, k * a.y}; }
  friend constexpr Vec2 operator/(Vec2 a, double k) { return {a.x / k, a.y / k}; }
  friend constexpr bool operator==(Vec2, Vec2) = default;
};

// Points and displacement vectors share one representation.
using Point2 = Vec2;

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
constexpr double norm2(Vec2 a) { return dot(a, a); }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }
constexpr Point2 midpoint(Point2 a, Point2 b) { return {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)}; }
/// Counterclockwise quarter turn.
constexpr Vec2 perp(Vec2 a) { return {-a.y, a.x}; }
inline Vec2 rotate(Vec2 a, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return {c * a.x - s * a.y, s * a.x + c * a.y};
}
inline bool is_finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

/// Largest pairwise distance among the points; zero for fewer than two.
double scale_of(std::span<const Point2> points);
double scale_of(std::initializer_list<Point2> points);

/// Line through `anchor` with unit `direction`.
class Line2 {
 public:
  /// Normalizes `direction`; throws DegenerateInput on a zero vector.
  Line2(Point2 anchor, Vec2 direction);

  static Line2 through(Point2 a, Point2 b);

  Point2 anchor() const { return anchor_; }
  Vec2 direction() const { return direction_; }
  Vec2 normal() const { return perp(direction_); }

  /// Foot of the perpendicular from `p`.
  Point2 project(Point2 p) const;
  double signed_distance(Point2 p) const { return cross(direction_, p - anchor_); }

 private:
  Point2 anchor_;
  Vec2 direction_;
};

class Circle2 {
 public:
  /// Throws DegenerateInput unless radius > 0.
  Circle2(Point2 center, double radius);

  static Circle2 through(Point2 p1, Point2 p2, Point2 p3, double tol = kDefaultTol);

  Point2 center() const { return center_; }
  double radius() const { return radius_; }

 private:
  Point2 center_;
  double radius_;
};

/// Throws CollinearPoints when |cross| <= tol * scale^2.
Point2 circumcenter(Point2 p1, Point2 p2, Point2 p3, double tol = kDefaultTol);

Point2 reflect_point(Point2 p, const Line2& line);

/// Scale-normalized concyclicity test. Collinear quadruples are reported
/// as not concyclic; coincident points throw DegenerateInput.
bool concyclic(Point2 p1, Point2 p2, Point2 p3, Point2 p4, double tol = kDefaultTol);

/// The 4x4 determinant with rows [x, y, x^2+y^2, 1] divided by scale^4.
double concyclicity_residual(Point2 p1, Point2 p2, Point2 p3, Point2 p4);

/// Angle from ray vertex->from to ray vertex->to, counterclockwise
/// positive, on the branch (-pi, pi].
double signed_angle(Point2 vertex, Point2 from, Point2 to);

/// Wraps an angle into (-pi, pi].
double wrap_angle(double angle);

/// Wraps an angle between lines into (-pi/2, pi/2].
double wrap_line_angle(double angle);

/// Oriented angle from line (vertex, from) to line (vertex, to), on the
/// branch (-pi/2, pi/2].
double line_angle(Point2 vertex, Point2 from, Point2 to);

Point2 intersect_lines(const Line2& l1, const Line2& l2, double tol = kDefaultTol);

}  // namespace miquel
