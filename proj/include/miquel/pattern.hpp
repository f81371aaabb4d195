#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string_view>

#include "miquel/geometry.hpp"

namespace miquel {

/// Vertex labels of the fundamental domain {0,1,2}^2:
///
///     A=S(0,0)  B=S(1,0)  C=S(2,0)
///     D=S(0,1)  E=S(1,1)  F=S(2,1)
///     G=S(0,2)  H=S(1,2)  I=S(2,2)
enum class Label : int { A, B, C, D, E, F, G, H, I };

inline constexpr std::array<Label, 9> kAllLabels = {Label::A, Label::B, Label::C, Label::D, Label::E,
                                                    Label::F, Label::G, Label::H, Label::I};

char to_char(Label label);

enum class Color { White, Black };

std::string_view to_string(Color color);

enum class PatternClass { Generic, TrapezoidalHorizontal, TrapezoidalVertical };

std::string_view to_string(PatternClass cls);

/// A (2,2)-biperiodic square-grid circle pattern, stored as the nine labeled
/// vertices of its fundamental domain. Every instance satisfies periodicity
/// closure, concyclic faces ABED, BCFE, DEHG, EFIH with pairwise distinct
/// vertices, and non-collinear monodromies.
class Pattern22 {
 public:
  /// Validates the nine points (in label order A..I).
  static Pattern22 from_points(const std::array<Point2, 9>& points, double tol = kDefaultTol);

  const Point2& operator[](Label label) const { return points_[static_cast<int>(label)]; }
  const std::array<Point2, 9>& points() const { return points_; }

  Point2 A() const { return (*this)[Label::A]; }
  Point2 B() const { return (*this)[Label::B]; }
  Point2 C() const { return (*this)[Label::C]; }
  Point2 D() const { return (*this)[Label::D]; }
  Point2 E() const { return (*this)[Label::E]; }
  Point2 F() const { return (*this)[Label::F]; }
  Point2 G() const { return (*this)[Label::G]; }
  Point2 H() const { return (*this)[Label::H]; }
  Point2 I() const { return (*this)[Label::I]; }

  /// Horizontal monodromy C - A.
  Vec2 u() const { return C() - A(); }
  /// Vertical monodromy G - A.
  Vec2 v() const { return G() - A(); }

  /// Lattice vertex S(i,j) for any integers, extended by periodicity.
  Point2 at(int i, int j) const;

  /// Largest pairwise distance among the nine vertices.
  double scale() const { return scale_; }

 private:
  explicit Pattern22(const std::array<Point2, 9>& points);

  std::array<Point2, 9> points_;
  double scale_;
};

struct ConicCoefficients {
  // xx*x^2 + xy*x*y + yy*y^2 + x*x + y*y + c
  double xx = 0, xy = 0, yy = 0, x = 0, y = 0, c = 0;

  double operator()(Point2 p) const {
    return xx * p.x * p.x + xy * p.x * p.y + yy * p.y * p.y + x * p.x + y * p.y + c;
  }
};

enum class HyperbolaKind { NonDegenerate, DegenerateOrthogonalLines };

/// Equilateral hyperbola (xx + yy == 0) through the marked points B, D, E, F, H.
struct HyperbolaSpec {
  HyperbolaKind kind = HyperbolaKind::NonDegenerate;
  ConicCoefficients conic;
  std::array<Point2, 5> marked{};
  /// Largest |conic(marked point)|, in world units.
  double residual = 0.0;
};

/// The angles are oriented angles between lines, so a vertex crossing the
/// line through its neighbours does not change them.
struct ConservedQuantities {
  Point2 A, C, G, I;
  double angle_CBA = 0.0;
  double angle_ADG = 0.0;
};

/// Direct similarity z -> scaling * e^{i rotation} z + translation.
struct Similarity {
  double rotation = 0.0;
  double scaling = 1.0;
  Vec2 translation{};

  Point2 apply(Point2 p) const { return scaling * miquel::rotate(p, rotation) + translation; }
};

/// Rebuilds the pattern determined by B, D, E, F, H on a common equilateral
/// hyperbola: A is the reflection of B through the line joining the
/// circumcenter of BDE and the circumcenter of DEH translated by B - H.
Pattern22 reconstruct_from_five(Point2 B, Point2 D, Point2 E, Point2 F, Point2 H,
                                double tol = kDefaultTol);

/// Places B, D, E, F, H on xy = 1 at abscissas (b, d, e, f, h), reconstructs
/// and maps all nine points through `similarity`.
Pattern22 from_hyperbola(const std::array<double, 5>& abscissas, const Similarity& similarity = {},
                         double tol = kDefaultTol);

PatternClass classify(const Pattern22& S, double tol = kDefaultTol);

/// Least-norm fit of the equilateral conic through B, D, E, F, H.
HyperbolaSpec fit_equilateral_hyperbola(const Pattern22& S, double tol = 1e-7);

/// The same fit on five arbitrary points; used by reconstruction.
HyperbolaSpec fit_equilateral_hyperbola(const std::array<Point2, 5>& marked, double tol = 1e-7);

/// Center O(i,j) of face circle C(i,j) for any integers (periodic extension).
Point2 face_center(const Pattern22& S, int i, int j);

struct FaceCircle {
  Circle2 circle;
  Color color;  // black iff i + j even
  int i, j;
};

std::array<FaceCircle, 4> face_circles(const Pattern22& S);

/// Reflects every vertex through the line joining the centers of its two
/// face circles of the opposite color (extended-precision kernel).
Pattern22 mutate(const Pattern22& S, Color color, double tol = kDefaultTol);

/// The same mutation in plain double arithmetic.
Pattern22 mutate_by_centers(const Pattern22& S, Color color, double tol = kDefaultTol);

/// Mutation followed by the translation that brings A back to its old place.
Pattern22 mutate_renormalized(const Pattern22& S, Color color, double tol = kDefaultTol);

struct WidePoint {
  long double x = 0.0L;
  long double y = 0.0L;
};

/// A sequence of renormalized mutations with the state carried in extended
/// precision. Mutation preserves concyclicity exactly but amplifies any
/// defect in it, so after each step (and once at the start) the state is
/// moved by the smallest change, with A fixed, that makes all faces
/// concyclic again. `last_correction` is that change relative to scale.
/// Every state is validated after rounding to double.
class MutationOrbit {
 public:
  explicit MutationOrbit(const Pattern22& start, double tol = kDefaultTol);

  const Pattern22& apply(Color color);
  const Pattern22& pattern() const { return pattern_; }
  double last_correction() const { return last_correction_; }

 private:
  std::array<WidePoint, 9> state_;
  Pattern22 pattern_;
  double tol_;
  double last_correction_ = 0.0;
};

ConservedQuantities conserved_quantities(const Pattern22& S);

/// Relabeling S(i,j) -> S(j,i); swaps the horizontal and vertical classes.
Pattern22 transpose(const Pattern22& S, double tol = kDefaultTol);

/// Largest vertex displacement between two patterns.
double max_vertex_distance(const Pattern22& a, const Pattern22& b);

/// Largest |concyclicity residual| over the four faces.
double max_face_residual(const Pattern22& S);

/// Seeded generator with a portable uniform draw.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) {
    const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * unit;
  }
  bool coin() { return (engine_() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

/// Abscissas uniform on [-5,-0.2] U [0.2,5], pairwise at least 0.05 apart.
std::array<double, 5> random_abscissas(Rng& rng);

Similarity random_similarity(Rng& rng);

/// Generic pattern from random abscissas and a random similarity; retries
/// until construction and validation succeed.
Pattern22 random_generic_pattern(Rng& rng, double tol = kDefaultTol);

/// Horizontal trapezoidal pattern built on the axes (D, E, F on one line,
/// B, H on the perpendicular one) and moved by a random similarity;
/// transposed to the vertical class when `vertical` is set.
Pattern22 random_trapezoidal_pattern(Rng& rng, bool vertical = false, double tol = kDefaultTol);

}  // namespace miquel
