#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "miquel/elliptic_law.hpp"
#include "miquel/pattern.hpp"
#include "miquel/quartic.hpp"

namespace miquel {

/// One sign branch (sign x, sign y) over one admissible s-interval.
struct BranchId {
  std::size_t interval = 0;
  int sign_x = 1;
  int sign_y = 1;

  friend bool operator==(const BranchId&, const BranchId&) = default;
};

struct ArcMeasure {
  double value = 0.0;  // |omega|-length
  BranchId branch;
};

/// |b-a| / sqrt(-(s^2+as+c)(s^2+bs+c)), the density of |omega| = |d(x^2+y^2)/(xy)|
/// with respect to ds. Throws OutOfDomain where the radicand is not positive.
double omega_integrand(const MiquelQuartic& q, double s);

/// Sign branch of a frame point (zero coordinates count as positive).
/// Throws BranchTrackingFailure when s lies outside every admissible interval.
BranchId branch_of(const MiquelQuartic& q, Point2 frame_point);

/// Integral of |omega| between two points of one sign branch.
ArcMeasure arc_measure(const MiquelQuartic& q, GroupPoint p1, GroupPoint p2);

/// The ovals of the real locus with a cyclic |omega|-phase on each.
class ComponentAtlas {
 public:
  explicit ComponentAtlas(const MiquelQuartic& q);

  struct Location {
    std::size_t component = 0;
    double phase = 0.0;  // in [0, length(component))
  };

  Location locate(Point2 frame_point) const;

  std::size_t component_count() const { return components_.size(); }
  double length(std::size_t component) const;

 private:
  struct Segment {
    int sign_x, sign_y;
    bool ascending;  // traversed from lo to hi
    double offset;
  };
  struct Component {
    std::size_t interval;
    std::vector<Segment> segments;
    double length;
  };

  MiquelQuartic q_;
  std::vector<SInterval> intervals_;
  std::vector<double> branch_length_;  // per interval
  std::vector<Component> components_;
};

struct StepMeasure {
  int from_step = 0;
  int to_step = 0;
  std::size_t branch = 0;  // component index in the atlas
  double measure = 0.0;    // shorter |omega|-arc between the two orbit points
  bool component_hop = false;
};

/// Iterates the renormalized black-after-white mutation and measures the
/// |omega|-distance between successive positions of E on the same oval,
/// pairing E_k with E_{k+2} when consecutive points sit on different ovals.
/// `reversed` applies the white mutation after the black one instead.
std::vector<StepMeasure> orbit_measure_report(const Pattern22& S, int steps, bool reversed = false,
                                              double tol = kDefaultTol);

}  // namespace miquel
