#include "miquel/geometry.hpp"

#include <algorithm>
#include <numbers>
#include <vector>

#include "miquel/error.hpp"

namespace miquel {

double scale_of(std::span<const Point2> points) {
  double s = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      s = std::max(s, distance(points[i], points[j]));
  return s;
}

double scale_of(std::initializer_list<Point2> points) {
  return scale_of(std::span<const Point2>(points.begin(), points.size()));
}

Line2::Line2(Point2 anchor, Vec2 direction) : anchor_(anchor) {
  const double n = norm(direction);
  if (!(n > 0.0) || !std::isfinite(n) || !is_finite(anchor))
    throw Error(ErrorCode::DegenerateInput, "line direction must be a finite nonzero vector");
  direction_ = direction / n;
}

Line2 Line2::through(Point2 a, Point2 b) { return Line2(a, b - a); }

Point2 Line2::project(Point2 p) const {
  return anchor_ + dot(p - anchor_, direction_) * direction_;
}

Circle2::Circle2(Point2 center, double radius) : center_(center), radius_(radius) {
  if (!(radius > 0.0) || !std::isfinite(radius) || !is_finite(center))
    throw Error(ErrorCode::DegenerateInput, "circle radius must be positive and finite");
}

Circle2 Circle2::through(Point2 p1, Point2 p2, Point2 p3, double tol) {
  const Point2 c = circumcenter(p1, p2, p3, tol);
  return Circle2(c, distance(c, p1));
}

Point2 circumcenter(Point2 p1, Point2 p2, Point2 p3, double tol) {
  const Vec2 b = p2 - p1;
  const Vec2 c = p3 - p1;
  const double scale = scale_of({p1, p2, p3});
  const double d = 2.0 * cross(b, c);
  if (!(scale > 0.0) || std::abs(d) <= 2.0 * tol * scale * scale)
    throw Error(ErrorCode::CollinearPoints, "circumcenter of collinear points");
  const double bb = norm2(b), cc = norm2(c);
  return p1 + Vec2{(c.y * bb - b.y * cc) / d, (b.x * cc - c.x * bb) / d};
}

Point2 reflect_point(Point2 p, const Line2& line) {
  const Point2 foot = line.project(p);
  return 2.0 * foot - p;
}

double concyclicity_residual(Point2 p1, Point2 p2, Point2 p3, Point2 p4) {
  // Translating to p1 leaves the determinant unchanged and reduces it to 3x3.
  const double scale = scale_of({p1, p2, p3, p4});
  const Vec2 r[3] = {p2 - p1, p3 - p1, p4 - p1};
  double w[3];
  for (int i = 0; i < 3; ++i) w[i] = norm2(r[i]);
  const double det = r[0].x * (r[1].y * w[2] - w[1] * r[2].y) -
                     r[0].y * (r[1].x * w[2] - w[1] * r[2].x) +
                     w[0] * (r[1].x * r[2].y - r[1].y * r[2].x);
  const double s2 = scale * scale;
  return det / (s2 * s2);
}

bool concyclic(Point2 p1, Point2 p2, Point2 p3, Point2 p4, double tol) {
  const Point2 pts[4] = {p1, p2, p3, p4};
  const double scale = scale_of(pts);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (!(distance(pts[i], pts[j]) > tol * scale))
        throw Error(ErrorCode::DegenerateInput, "concyclic test on coincident points");
  const double s2 = scale * scale;
  if (std::abs(cross(p2 - p1, p3 - p1)) <= tol * s2 && std::abs(cross(p2 - p1, p4 - p1)) <= tol * s2)
    return false;
  return std::abs(concyclicity_residual(p1, p2, p3, p4)) <= tol;
}

double wrap_angle(double angle) {
  constexpr double pi = std::numbers::pi;
  angle = std::remainder(angle, 2.0 * pi);
  if (angle <= -pi) angle += 2.0 * pi;
  return angle;
}

double wrap_line_angle(double angle) {
  constexpr double half = 0.5 * std::numbers::pi;
  angle = std::remainder(angle, std::numbers::pi);
  if (angle <= -half) angle += std::numbers::pi;
  return angle;
}

double line_angle(Point2 vertex, Point2 from, Point2 to) { return wrap_line_angle(signed_angle(vertex, from, to)); }

double signed_angle(Point2 vertex, Point2 from, Point2 to) {
  const Vec2 a = from - vertex;
  const Vec2 b = to - vertex;
  if (norm2(a) == 0.0 || norm2(b) == 0.0)
    throw Error(ErrorCode::DegenerateInput, "angle with coincident points");
  const double angle = std::atan2(cross(a, b), dot(a, b));
  return angle == -std::numbers::pi ? std::numbers::pi : angle;
}

Point2 intersect_lines(const Line2& l1, const Line2& l2, double tol) {
  const double denom = cross(l1.direction(), l2.direction());
  if (std::abs(denom) <= tol)
    throw Error(ErrorCode::ParallelLines, "intersection of parallel lines");
  const double t = cross(l2.anchor() - l1.anchor(), l2.direction()) / denom;
  return l1.anchor() + t * l1.direction();
}

}  // namespace miquel
