#pragma once

#include <cstdint>
#include <vector>

#include "miquel/geometry.hpp"
#include "miquel/pattern.hpp"
#include "miquel/quartic.hpp"

namespace miquel {

/// A point of a Miquel quartic in the quartic's frame coordinates. The
/// owning curve is the GroupLaw that produced it.
struct GroupPoint {
  double x = 0.0;
  double y = 0.0;

  Point2 frame() const { return {x, y}; }
  friend bool operator==(GroupPoint, GroupPoint) = default;
};

struct Intersection {
  GroupPoint point;
  int multiplicity = 1;
};

/// Real intersections of a circle or line with a quartic, with multiplicity.
/// Real multiplicities plus twice `complex_pairs` add up to four.
struct IntersectionList {
  std::vector<Intersection> points;
  int complex_pairs = 0;

  int real_multiplicity() const;
  bool has_complex() const { return complex_pairs > 0; }
};

/// Circle and line are given in frame coordinates. For a line, the line at
/// infinity completes it to a conic through both circular points, so the
/// count is still four.
IntersectionList circle_quartic_intersections(const MiquelQuartic& q, const Circle2& circle);
IntersectionList circle_quartic_intersections(const MiquelQuartic& q, const Line2& line);

/// Group law on a non-degenerate Miquel quartic with neutral element N on
/// the frame x-axis (the axis point of largest abscissa). The inverse is
/// reflection through the x-axis; P1 + P2 is the reflection of the fourth
/// intersection of the circle through P1, P2, N.
class GroupLaw {
 public:
  /// Throws NotNondegenerate or NoRealAxisPoint.
  explicit GroupLaw(const MiquelQuartic& q);

  const MiquelQuartic& quartic() const { return q_; }
  GroupPoint neutral() const { return neutral_; }
  /// Frame radius of the real locus (at least 1); base length of tolerances.
  double extent() const { return extent_; }

  /// World point to group point, moved onto the curve along the gradient.
  /// Throws NotOnCurve when the first-order distance |F| / |grad F| exceeds
  /// `tol` * extent.
  GroupPoint lift(Point2 world, double tol = 1e-7) const;
  Point2 to_world(GroupPoint p) const { return q_.frame.to_world(p.frame()); }

  GroupPoint negate(GroupPoint p) const { return {p.x, -p.y}; }
  GroupPoint add(GroupPoint p1, GroupPoint p2) const;
  /// 2P via the circle through N tangent to the curve at P.
  GroupPoint twice(GroupPoint p) const;
  GroupPoint mul(std::int64_t n, GroupPoint p) const;

  double distance(GroupPoint p1, GroupPoint p2) const { return miquel::distance(p1.frame(), p2.frame()); }

 private:
  MiquelQuartic q_;
  GroupPoint neutral_;
  double extent_ = 1.0;
};

/// Predicted renormalized-mutation image of E: -E - 2A (white) or -E - 2C
/// (black) in the group law of the pattern's quartic.
Point2 predict_mutation(const Pattern22& S, Color color, double tol = kDefaultTol);

struct TangentCircleConstruction {
  Point2 image;   // reflection of E through the line O_A O_I
  Point2 O_A;     // center of the circle through A and E tangent to the quartic at A
  Point2 O_I;     // same at I
};

/// White renormalized mutation of E built from the quartic alone.
TangentCircleConstruction tangent_circle_mutation(const Pattern22& S, double tol = kDefaultTol);

/// Random real point of the curve: uniform interval, s uniform in its
/// middle 90 percent, random signs.
GroupPoint random_curve_point(const GroupLaw& law, Rng& rng);

struct SumInvarianceReport {
  double spread = 0.0;  // largest distance between two trial sums
  int completed = 0;
  int skipped = 0;      // circles with complex additional intersections
  GroupPoint reference_sum;
};

/// For random circles through base point P, sums the three additional
/// intersections in the N-law and reports how much the sums disagree.
SumInvarianceReport base_point_sum_invariance(const GroupLaw& law, GroupPoint P, int trials, Rng& rng);

}  // namespace miquel
