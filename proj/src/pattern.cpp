#include "miquel/pattern.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "miquel/error.hpp"

namespace miquel {

namespace {

// Fundamental-domain coordinates of each label.
constexpr int kCol[9] = {0, 1, 2, 0, 1, 2, 0, 1, 2};
constexpr int kRow[9] = {0, 0, 0, 1, 1, 1, 2, 2, 2};

int floor_div(int a, int b) {
  const int q = a / b;
  return (a % b != 0 && (a < 0) != (b < 0)) ? q - 1 : q;
}

int mod2(int a) { return ((a % 2) + 2) % 2; }

std::array<Point2, 4> face_vertices(const Pattern22& S, int i, int j) {
  return {S.at(i, j), S.at(i + 1, j), S.at(i + 1, j + 1), S.at(i, j + 1)};
}

// Circumcenter of the best-conditioned triple of a cyclic face.
Point2 face_circumcenter(const std::array<Point2, 4>& face, double tol) {
  int skip = 0;
  double best = -1.0;
  for (int k = 0; k < 4; ++k) {
    const Point2& p = face[(k + 1) % 4];
    const Point2& q = face[(k + 2) % 4];
    const Point2& r = face[(k + 3) % 4];
    const double area = std::abs(cross(q - p, r - p));
    if (area > best) {
      best = area;
      skip = k;
    }
  }
  try {
    return circumcenter(face[(skip + 1) % 4], face[(skip + 2) % 4], face[(skip + 3) % 4], tol);
  } catch (const Error&) {
    throw Error(ErrorCode::DegenerateFaceCircle, "face with collinear vertices has no circumcircle");
  }
}

bool collinear3(Point2 a, Point2 b, Point2 c, double tol, double scale) {
  return std::abs(cross(b - a, c - a)) <= tol * scale * scale;
}

}  // namespace

char to_char(Label label) { return static_cast<char>('A' + static_cast<int>(label)); }

std::string_view to_string(Color color) { return color == Color::White ? "white" : "black"; }

std::string_view to_string(PatternClass cls) {
  switch (cls) {
    case PatternClass::Generic: return "generic";
    case PatternClass::TrapezoidalHorizontal: return "trapezoidal-horizontal";
    case PatternClass::TrapezoidalVertical: return "trapezoidal-vertical";
  }
  return "unknown";
}

Pattern22::Pattern22(const std::array<Point2, 9>& points)
    : points_(points), scale_(scale_of(points)) {}

Point2 Pattern22::at(int i, int j) const {
  const int ci = mod2(i), cj = mod2(j);
  const Point2 base = points_[3 * cj + ci];
  return base + static_cast<double>(floor_div(i, 2)) * u() + static_cast<double>(floor_div(j, 2)) * v();
}

Pattern22 Pattern22::from_points(const std::array<Point2, 9>& points, double tol) {
  for (const Point2& p : points)
    if (!is_finite(p)) throw Error(ErrorCode::DegenerateInput, "pattern point is not finite");

  Pattern22 S(points);
  const double scale = S.scale();
  if (!(scale > 0.0)) throw Error(ErrorCode::DegenerateFace, "all pattern points coincide");
  const double lim = tol * scale;

  const Vec2 u = S.u(), v = S.v();
  if (distance(S.I() - S.G(), u) > lim || distance(S.F() - S.D(), u) > lim ||
      distance(S.I() - S.C(), v) > lim || distance(S.H() - S.B(), v) > lim)
    throw Error(ErrorCode::PeriodicityViolation, "vertices violate the (2,2) periodicity closure");

  if (std::abs(cross(u, v)) <= tol * scale * scale)
    throw Error(ErrorCode::CollinearMonodromies, "monodromies are collinear");

  for (int j = 0; j < 2; ++j) {
    for (int i = 0; i < 2; ++i) {
      const auto face = face_vertices(S, i, j);
      for (int p = 0; p < 4; ++p)
        for (int q = p + 1; q < 4; ++q)
          if (distance(face[p], face[q]) <= lim)
            throw Error(ErrorCode::DegenerateFace,
                        "face (" + std::to_string(i) + "," + std::to_string(j) + ") has coincident vertices");
      // Scale the determinant by the pattern, not the face, so that tiny faces
      // are judged at the pattern's resolution.
      const double face_scale = scale_of(face);
      const double r = concyclicity_residual(face[0], face[1], face[2], face[3]);
      const double ratio = face_scale / scale;
      if (std::abs(r) * ratio * ratio * ratio * ratio > tol)
        throw Error(ErrorCode::NonConcyclicFace,
                    "face (" + std::to_string(i) + "," + std::to_string(j) + ") is not concyclic");
      const double s2 = scale * scale;
      if (std::abs(cross(face[1] - face[0], face[2] - face[0])) <= tol * s2 &&
          std::abs(cross(face[1] - face[0], face[3] - face[0])) <= tol * s2)
        throw Error(ErrorCode::NonConcyclicFace,
                    "face (" + std::to_string(i) + "," + std::to_string(j) + ") is collinear");
    }
  }
  return S;
}

HyperbolaSpec fit_equilateral_hyperbola(const std::array<Point2, 5>& marked, double tol) {
  Point2 center{};
  for (const Point2& p : marked) center += p;
  center = center / 5.0;
  const double s = scale_of(marked);
  if (!(s > 0.0)) throw Error(ErrorCode::FitFailure, "hyperbola fit on coincident points");

  Eigen::Matrix<double, 5, 5> M;
  for (int r = 0; r < 5; ++r) {
    const Vec2 q = (marked[r] - center) / s;
    M.row(r) << q.x * q.x - q.y * q.y, q.x * q.y, q.x, q.y, 1.0;
  }
  Eigen::JacobiSVD<Eigen::Matrix<double, 5, 5>> svd(M, Eigen::ComputeFullV);
  const Eigen::Matrix<double, 5, 1> k = svd.matrixV().col(4);
  const double normalized_residual = (M * k).cwiseAbs().maxCoeff();

  HyperbolaSpec spec;
  spec.marked = marked;
  ConicCoefficients& q = spec.conic;
  const double cx = center.x, cy = center.y;
  q.xx = k(0);
  q.yy = -k(0);
  q.xy = k(1);
  q.x = -2.0 * k(0) * cx - k(1) * cy + s * k(2);
  q.y = 2.0 * k(0) * cy - k(1) * cx + s * k(3);
  q.c = k(0) * (cx * cx - cy * cy) + k(1) * cx * cy - s * k(2) * cx - s * k(3) * cy + s * s * k(4);
  for (const Point2& p : marked) spec.residual = std::max(spec.residual, std::abs(q(p)));

  if (!(normalized_residual <= tol))
    throw Error(ErrorCode::FitFailure, "no equilateral hyperbola through the five marked points");

  // A conic is a line pair iff its 3x3 symmetric matrix is singular.
  Eigen::Matrix3d C;
  C << k(0), 0.5 * k(1), 0.5 * k(2),
       0.5 * k(1), -k(0), 0.5 * k(3),
       0.5 * k(2), 0.5 * k(3), k(4);
  spec.kind = std::abs(C.determinant()) <= 1e-8 ? HyperbolaKind::DegenerateOrthogonalLines
                                                : HyperbolaKind::NonDegenerate;
  return spec;
}

HyperbolaSpec fit_equilateral_hyperbola(const Pattern22& S, double tol) {
  return fit_equilateral_hyperbola(std::array<Point2, 5>{S.B(), S.D(), S.E(), S.F(), S.H()}, tol);
}

namespace {

using W = long double;
struct P2 {
  W x, y;
};

P2 wide(Point2 p) { return {p.x, p.y}; }

// Throws unless B, D, E, F, H admit the construction.
void screen_five(Point2 B, Point2 D, Point2 E, Point2 F, Point2 H, double tol) {
  try {
    fit_equilateral_hyperbola(std::array<Point2, 5>{B, D, E, F, H});
  } catch (const Error& e) {
    if (e.code() != ErrorCode::FitFailure) throw;
    throw Error(ErrorCode::NotOnCommonHyperbola, "B, D, E, F, H do not lie on a common equilateral hyperbola");
  }
  const Point2 O1 = circumcenter(B, D, E, tol);
  const Point2 O2 = circumcenter(D, E, H, tol);
  if (distance(O1, O2 + (B - H)) <= tol * scale_of({B, D, E, F, H}))
    throw Error(ErrorCode::CoincidentCenters, "reconstruction line is undefined");
}

// The construction in extended precision, in lattice order A..I.
std::array<P2, 9> construct_wide(P2 B, P2 D, P2 E, P2 F, P2 H) {
  auto center = [](P2 a, P2 b, P2 c) {
    const W bx = b.x - a.x, by = b.y - a.y, cx = c.x - a.x, cy = c.y - a.y;
    const W d = 2 * (bx * cy - by * cx);
    const W bb = bx * bx + by * by, cc = cx * cx + cy * cy;
    return P2{a.x + (cy * bb - by * cc) / d, a.y + (bx * cc - cx * bb) / d};
  };
  const P2 o1 = center(B, D, E);
  const P2 o2 = center(D, E, H);
  const W dx = o2.x + (B.x - H.x) - o1.x, dy = o2.y + (B.y - H.y) - o1.y;
  const W rx = B.x - o1.x, ry = B.y - o1.y;
  const W along = 2 * (rx * dx + ry * dy) / (dx * dx + dy * dy);
  const P2 A{o1.x + along * dx - rx, o1.y + along * dy - ry};
  const W ux = F.x - D.x, uy = F.y - D.y, vx = H.x - B.x, vy = H.y - B.y;
  return {A, B, P2{A.x + ux, A.y + uy}, D, E, F, P2{A.x + vx, A.y + vy}, H, P2{A.x + ux + vx, A.y + uy + vy}};
}

Pattern22 round_pattern(const std::array<P2, 9>& w, double tol) {
  std::array<Point2, 9> pts;
  for (int k = 0; k < 9; ++k) pts[k] = {static_cast<double>(w[k].x), static_cast<double>(w[k].y)};
  return Pattern22::from_points(pts, tol);
}

}  // namespace

Pattern22 reconstruct_from_five(Point2 B, Point2 D, Point2 E, Point2 F, Point2 H, double tol) {
  screen_five(B, D, E, F, H, tol);
  return round_pattern(construct_wide(wide(B), wide(D), wide(E), wide(F), wide(H)), tol);
}

Pattern22 from_hyperbola(const std::array<double, 5>& abscissas, const Similarity& similarity, double tol) {
  for (std::size_t i = 0; i < abscissas.size(); ++i) {
    if (!std::isfinite(abscissas[i]) || abscissas[i] == 0.0)
      throw Error(ErrorCode::InvalidAbscissas, "abscissas must be finite and nonzero");
    for (std::size_t j = i + 1; j < abscissas.size(); ++j)
      if (abscissas[i] == abscissas[j]) throw Error(ErrorCode::InvalidAbscissas, "duplicate abscissa");
  }
  if (!(similarity.scaling > 0.0)) throw Error(ErrorCode::InvalidInput, "similarity scaling must be positive");

  auto narrow = [](double t) { return Point2{t, 1.0 / t}; };
  screen_five(narrow(abscissas[0]), narrow(abscissas[1]), narrow(abscissas[2]), narrow(abscissas[3]),
              narrow(abscissas[4]), tol);
  // Points are placed on xy = 1 in extended precision so that rounding
  // happens once, after the similarity.
  auto on_hyperbola = [](double t) { return P2{t, 1 / W(t)}; };
  std::array<P2, 9> w = construct_wide(on_hyperbola(abscissas[0]), on_hyperbola(abscissas[1]),
                                       on_hyperbola(abscissas[2]), on_hyperbola(abscissas[3]),
                                       on_hyperbola(abscissas[4]));
  const W cs = std::cos(W(similarity.rotation)), sn = std::sin(W(similarity.rotation));
  for (P2& p : w) {
    const W x = similarity.scaling * (cs * p.x - sn * p.y) + similarity.translation.x;
    const W y = similarity.scaling * (sn * p.x + cs * p.y) + similarity.translation.y;
    p = {x, y};
  }
  return round_pattern(w, tol);
}

PatternClass classify(const Pattern22& S, double tol) {
  const double s = S.scale();
  const bool horizontal = collinear3(S.A(), S.B(), S.C(), tol, s) && collinear3(S.D(), S.E(), S.F(), tol, s) &&
                          collinear3(S.G(), S.H(), S.I(), tol, s);
  const bool vertical = collinear3(S.A(), S.D(), S.G(), tol, s) && collinear3(S.B(), S.E(), S.H(), tol, s) &&
                        collinear3(S.C(), S.F(), S.I(), tol, s);
  if (horizontal && vertical)
    throw Error(ErrorCode::AmbiguousClass, "pattern is both horizontally and vertically trapezoidal");
  if (horizontal) return PatternClass::TrapezoidalHorizontal;
  if (vertical) return PatternClass::TrapezoidalVertical;
  return PatternClass::Generic;
}

Point2 face_center(const Pattern22& S, int i, int j) {
  const int ci = mod2(i), cj = mod2(j);
  const Point2 base = face_circumcenter(face_vertices(S, ci, cj), kDefaultTol);
  return base + static_cast<double>(floor_div(i, 2)) * S.u() + static_cast<double>(floor_div(j, 2)) * S.v();
}

std::array<FaceCircle, 4> face_circles(const Pattern22& S) {
  auto make = [&](int i, int j) {
    const auto face = face_vertices(S, i, j);
    const Point2 c = face_circumcenter(face, kDefaultTol);
    double r = 0.0;
    for (const Point2& p : face) r += distance(c, p);
    return FaceCircle{Circle2(c, r / 4.0), (i + j) % 2 == 0 ? Color::Black : Color::White, i, j};
  };
  return {make(0, 0), make(1, 0), make(0, 1), make(1, 1)};
}

namespace {

// Faces whose circles meet at S(i,j) and carry the mutation of that vertex.
// White mutation reflects through lines joining black centers and vice
// versa; the diagonal pair is used on the matching parity.
std::array<std::array<int, 2>, 2> mutation_faces(int i, int j, Color color) {
  const bool even = (i + j) % 2 == 0;
  if ((color == Color::White) == even) return {{{i, j}, {i - 1, j - 1}}};
  return {{{i - 1, j}, {i, j - 1}}};
}

using WidePoints = std::array<WidePoint, 9>;

WidePoint wide_sub(WidePoint a, WidePoint b) { return {a.x - b.x, a.y - b.y}; }

WidePoints widen(const Pattern22& S) {
  WidePoints out;
  for (int k = 0; k < 9; ++k) out[k] = {S.points()[k].x, S.points()[k].y};
  return out;
}

std::array<Point2, 9> narrow(const WidePoints& P) {
  std::array<Point2, 9> out;
  for (int k = 0; k < 9; ++k) out[k] = {static_cast<double>(P[k].x), static_cast<double>(P[k].y)};
  return out;
}

WidePoint wide_at(const WidePoints& P, int i, int j) {
  const WidePoint base = P[3 * mod2(j) + mod2(i)];
  const WidePoint u = wide_sub(P[2], P[0]), v = wide_sub(P[6], P[0]);
  const long double fi = floor_div(i, 2), fj = floor_div(j, 2);
  return {base.x + fi * u.x + fj * v.x, base.y + fi * u.y + fj * v.y};
}

// Generalized circle alpha |q|^2 + beta q.x + gamma q.y + delta = 0 through
// the four vertices of a face, with q = (P - origin) / scale. Fitting all four
// points keeps nearly flat faces well conditioned: they tend to lines
// (alpha -> 0) instead of sending a center off to infinity.
using Wide4 = Eigen::Matrix<long double, 4, 1>;

Wide4 fit_face_circle(const WidePoints& P, int fi, int fj, WidePoint origin, long double scale) {
  Eigen::Matrix<long double, 4, 4> M;
  for (int dj = 0; dj < 2; ++dj)
    for (int di = 0; di < 2; ++di) {
      const WidePoint q = wide_sub(wide_at(P, fi + di, fj + dj), origin);
      const long double x = q.x / scale, y = q.y / scale;
      M.row(2 * dj + di) << x * x + y * y, x, y, 1.0L;
    }
  Eigen::JacobiSVD<Eigen::Matrix<long double, 4, 4>> svd(M, Eigen::ComputeFullV);
  return svd.matrixV().col(3);
}

// Face circles in a common frame; face (i, j) for i, j in {-1, 0, 1, 2} is
// the fundamental one shifted by the monodromies, so only four fits are made.
class FaceCircles {
 public:
  FaceCircles(const WidePoints& P, long double scale) : P_(P), origin_(P[4]), scale_(scale) {
    for (int j = 0; j < 2; ++j)
      for (int i = 0; i < 2; ++i) base_[2 * j + i] = fit_face_circle(P, i, j, origin_, scale);
  }

  // Coefficients of face (i, j): translating by t = shift/scale maps
  // alpha|q|^2 + b.q + delta to alpha|q - t|^2 + b.(q - t) + delta.
  Wide4 at(int i, int j) const {
    const Wide4& c = base_[2 * mod2(j) + mod2(i)];
    const WidePoint shift = wide_sub(wide_at(P_, i, j), P_[3 * mod2(j) + mod2(i)]);
    const long double tx = shift.x / scale_, ty = shift.y / scale_;
    Wide4 out;
    out(0) = c(0);
    out(1) = c(1) - 2.0L * c(0) * tx;
    out(2) = c(2) - 2.0L * c(0) * ty;
    out(3) = c(3) + c(0) * (tx * tx + ty * ty) - c(1) * tx - c(2) * ty;
    return out;
  }

  WidePoint origin() const { return origin_; }
  long double scale() const { return scale_; }

 private:
  const WidePoints& P_;
  WidePoint origin_;
  long double scale_;
  std::array<Wide4, 4> base_;
};

// Reflection of every vertex through the line of centers of its two face
// circles of the opposite color. The line's direction is the normal of the
// radical axis alpha2 C1 - alpha1 C2, and it passes through the center of the
// tighter circle; both stay finite when the other face is nearly flat.
WidePoints mutate_wide(const WidePoints& P, Color color, double tol) {
  long double scale = 0.0L;
  for (int a = 0; a < 9; ++a)
    for (int b = a + 1; b < 9; ++b) {
      const WidePoint d = wide_sub(P[a], P[b]);
      scale = std::max(scale, std::sqrt(d.x * d.x + d.y * d.y));
    }
  if (!(scale > 0.0L)) throw Error(ErrorCode::DegenerateFace, "all pattern points coincide");
  const FaceCircles circles(P, scale);

  WidePoints next;
  for (int k = 0; k < 9; ++k) {
    const int i = kCol[k], j = kRow[k];
    const auto faces = mutation_faces(i, j, color);
    const Wide4 c1 = circles.at(faces[0][0], faces[0][1]);
    const Wide4 c2 = circles.at(faces[1][0], faces[1][1]);

    const long double nx = c2(0) * c1(1) - c1(0) * c2(1);
    const long double ny = c2(0) * c1(2) - c1(0) * c2(2);
    const long double n = std::hypot(nx, ny);
    if (n == 0.0L || n <= tol * (std::abs(c1(0)) + std::abs(c2(0))))
      throw Error(ErrorCode::CoincidentCenters, std::string("reflection line undefined at vertex ") +
                                                    to_char(static_cast<Label>(k)));
    const Wide4& c = std::abs(c1(0)) >= std::abs(c2(0)) ? c1 : c2;
    const long double ox = -c(1) / (2.0L * c(0)), oy = -c(2) / (2.0L * c(0));
    const WidePoint q = wide_sub(P[k], circles.origin());
    const long double qx = q.x / scale - ox, qy = q.y / scale - oy;
    // Remove twice the component across the line (unit normal perp(n)/|n|).
    const long double mx = -ny / n, my = nx / n;
    const long double across = 2.0L * (qx * mx + qy * my);
    next[k] = {P[k].x - across * mx * scale, P[k].y - across * my * scale};
  }
  return next;
}

WidePoints renormalize(const WidePoints& before, WidePoints after) {
  const WidePoint shift = wide_sub(before[0], after[0]);
  for (WidePoint& p : after) p = {p.x + shift.x, p.y + shift.y};
  after[0] = before[0];
  return after;
}

// Periodic pattern from A and the free parameters (B, D, E, u, v).
using ProjectionParams = Eigen::Matrix<long double, 10, 1>;

WidePoints assemble(WidePoint A, const ProjectionParams& x) {
  const WidePoint B{x(0), x(1)}, D{x(2), x(3)}, E{x(4), x(5)}, u{x(6), x(7)}, v{x(8), x(9)};
  auto plus = [](WidePoint p, WidePoint d) { return WidePoint{p.x + d.x, p.y + d.y}; };
  return {A, B, plus(A, u), D, E, plus(D, u), plus(A, v), plus(B, v), plus(plus(A, u), v)};
}

ProjectionParams parameters(const WidePoints& P) {
  ProjectionParams x;
  const WidePoint u = wide_sub(P[2], P[0]), v = wide_sub(P[6], P[0]);
  x << P[1].x, P[1].y, P[3].x, P[3].y, P[4].x, P[4].y, u.x, u.y, v.x, v.y;
  return x;
}

// Scale-free concyclicity defect of the four fundamental faces.
Eigen::Matrix<long double, 4, 1> face_defects(const WidePoints& P, long double scale) {
  Eigen::Matrix<long double, 4, 1> r;
  for (int j = 0; j < 2; ++j)
    for (int i = 0; i < 2; ++i) {
      const WidePoint p1 = wide_at(P, i, j);
      WidePoint q[3];
      long double w[3];
      const int corner[3][2] = {{1, 0}, {1, 1}, {0, 1}};
      for (int m = 0; m < 3; ++m) {
        const WidePoint d = wide_sub(wide_at(P, i + corner[m][0], j + corner[m][1]), p1);
        q[m] = {d.x / scale, d.y / scale};
        w[m] = q[m].x * q[m].x + q[m].y * q[m].y;
      }
      r(2 * j + i) = q[0].x * (q[1].y * w[2] - w[1] * q[2].y) - q[0].y * (q[1].x * w[2] - w[1] * q[2].x) +
                     w[0] * (q[1].x * q[2].y - q[1].y * q[2].x);
    }
  return r;
}

// Smallest parameter change (A fixed) that makes all four faces concyclic,
// by Gauss-Newton on the underdetermined constraint system. The exact map
// preserves concyclicity but pushes a small defect further away from it at
// every step, so without this the rounding of the start pattern grows
// geometrically along an orbit.
long double project_to_miquel(WidePoints& P) {
  long double scale = 0.0L;
  for (int a = 0; a < 9; ++a)
    for (int b = a + 1; b < 9; ++b) {
      const WidePoint d = wide_sub(P[a], P[b]);
      scale = std::max(scale, std::sqrt(d.x * d.x + d.y * d.y));
    }
  const WidePoint A = P[0];
  ProjectionParams x = parameters(P);
  const ProjectionParams start = x;
  for (int iter = 0; iter < 2; ++iter) {
    const auto r = face_defects(assemble(A, x), scale);
    Eigen::Matrix<long double, 4, 10> J;
    const long double h = 1e-6L * scale;
    for (int c = 0; c < 10; ++c) {
      ProjectionParams xp = x, xm = x;
      xp(c) += h;
      xm(c) -= h;
      J.col(c) = (face_defects(assemble(A, xp), scale) - face_defects(assemble(A, xm), scale)) / (2.0L * h);
    }
    const Eigen::Matrix<long double, 4, 4> JJt = J * J.transpose();
    Eigen::JacobiSVD<Eigen::Matrix<long double, 4, 4>> svd(JJt, Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (!(svd.singularValues()(3) > 1e-24L * svd.singularValues()(0))) break;
    x -= J.transpose() * svd.solve(r);
  }
  P = assemble(A, x);
  return (x - start).cwiseAbs().maxCoeff() / scale;
}

}  // namespace

Pattern22 mutate(const Pattern22& S, Color color, double tol) {
  return Pattern22::from_points(narrow(mutate_wide(widen(S), color, tol)), tol);
}

MutationOrbit::MutationOrbit(const Pattern22& start, double tol)
    : state_(widen(start)), pattern_(start), tol_(tol) {
  last_correction_ = static_cast<double>(project_to_miquel(state_));
}

const Pattern22& MutationOrbit::apply(Color color) {
  WidePoints next = renormalize(state_, mutate_wide(state_, color, tol_));
  last_correction_ = static_cast<double>(project_to_miquel(next));
  pattern_ = Pattern22::from_points(narrow(next), tol_);
  state_ = next;
  return pattern_;
}

Pattern22 mutate_by_centers(const Pattern22& S, Color color, double tol) {
  std::array<Point2, 4> base;
  for (int j = 0; j < 2; ++j)
    for (int i = 0; i < 2; ++i) base[2 * j + i] = face_circumcenter(face_vertices(S, i, j), tol);
  auto center = [&](int i, int j) {
    return base[2 * mod2(j) + mod2(i)] + static_cast<double>(floor_div(i, 2)) * S.u() +
           static_cast<double>(floor_div(j, 2)) * S.v();
  };

  const double lim = tol * S.scale();
  std::array<Point2, 9> next;
  for (int k = 0; k < 9; ++k) {
    const int i = kCol[k], j = kRow[k];
    const auto faces = mutation_faces(i, j, color);
    const Point2 p = center(faces[0][0], faces[0][1]);
    const Point2 q = center(faces[1][0], faces[1][1]);
    if (distance(p, q) <= lim)
      throw Error(ErrorCode::CoincidentCenters, std::string("reflection line undefined at vertex ") +
                                                    to_char(static_cast<Label>(k)));
    next[k] = reflect_point(S.points()[k], Line2::through(p, q));
  }
  return Pattern22::from_points(next, tol);
}

Pattern22 mutate_renormalized(const Pattern22& S, Color color, double tol) {
  MutationOrbit orbit(S, tol);
  return orbit.apply(color);
}

ConservedQuantities conserved_quantities(const Pattern22& S) {
  return {S.A(), S.C(), S.G(), S.I(), line_angle(S.B(), S.C(), S.A()), line_angle(S.D(), S.A(), S.G())};
}

Pattern22 transpose(const Pattern22& S, double tol) {
  return Pattern22::from_points({S.A(), S.D(), S.G(), S.B(), S.E(), S.H(), S.C(), S.F(), S.I()}, tol);
}

double max_vertex_distance(const Pattern22& a, const Pattern22& b) {
  double m = 0.0;
  for (int k = 0; k < 9; ++k) m = std::max(m, distance(a.points()[k], b.points()[k]));
  return m;
}

double max_face_residual(const Pattern22& S) {
  double m = 0.0;
  for (int j = 0; j < 2; ++j)
    for (int i = 0; i < 2; ++i) {
      const auto f = face_vertices(S, i, j);
      m = std::max(m, std::abs(concyclicity_residual(f[0], f[1], f[2], f[3])));
    }
  return m;
}

std::array<double, 5> random_abscissas(Rng& rng) {
  std::array<double, 5> out{};
  for (;;) {
    for (double& t : out) {
      t = rng.uniform(0.2, 5.0);
      if (rng.coin()) t = -t;
    }
    bool ok = true;
    for (int i = 0; i < 5 && ok; ++i)
      for (int j = i + 1; j < 5 && ok; ++j) ok = std::abs(out[i] - out[j]) >= 0.05;
    if (ok) return out;
  }
}

Similarity random_similarity(Rng& rng) {
  Similarity sim;
  sim.rotation = rng.uniform(0.0, 2.0 * std::numbers::pi);
  sim.scaling = rng.uniform(0.5, 2.0);
  sim.translation = {rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)};
  return sim;
}

Pattern22 random_generic_pattern(Rng& rng, double tol) {
  for (;;) {
    const auto abscissas = random_abscissas(rng);
    const Similarity sim = random_similarity(rng);
    try {
      Pattern22 S = from_hyperbola(abscissas, sim, tol);
      if (classify(S, tol) == PatternClass::Generic) return S;
    } catch (const Error&) {
    }
  }
}

Pattern22 random_trapezoidal_pattern(Rng& rng, bool vertical, double tol) {
  for (;;) {
    const double xd = rng.uniform(-3.0, 3.0), xe = rng.uniform(-3.0, 3.0), xf = rng.uniform(-3.0, 3.0);
    double yb = rng.uniform(0.3, 3.0), yh = rng.uniform(0.3, 3.0);
    if (rng.coin()) yb = -yb;
    if (rng.coin()) yh = -yh;
    const double gaps[] = {xd - xe, xe - xf, xd - xf, yb - yh, xd + xe, xd, xe, xf};
    if (std::any_of(std::begin(gaps), std::end(gaps), [](double g) { return std::abs(g) < 0.3; })) continue;
    const Similarity sim = random_similarity(rng);
    try {
      const Pattern22 base = reconstruct_from_five({0.0, yb}, {xd, 0.0}, {xe, 0.0}, {xf, 0.0}, {0.0, yh}, tol);
      std::array<Point2, 9> moved;
      for (int k = 0; k < 9; ++k) moved[k] = sim.apply(base.points()[k]);
      Pattern22 S = Pattern22::from_points(moved, tol);
      if (vertical) S = transpose(S, tol);
      const PatternClass want = vertical ? PatternClass::TrapezoidalVertical : PatternClass::TrapezoidalHorizontal;
      if (classify(S, tol) == want) return S;
    } catch (const Error&) {
    }
  }
}

}  // namespace miquel
