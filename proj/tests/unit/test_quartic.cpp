#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "miquel/pattern.hpp"
#include "miquel/quartic.hpp"
#include "unit/support.hpp"

using namespace miquel;
using support::code_of;
using support::near;

namespace {

MiquelQuartic plain(double a, double b, double c) {
  MiquelQuartic q;
  q.a = a;
  q.b = b;
  q.c = c;
  return q;
}

double scale4(const Pattern22& S) { return std::pow(S.scale(), 4); }

std::vector<Pattern22> sample(std::uint64_t seed, int generic, int trapezoidal) {
  Rng rng(seed);
  std::vector<Pattern22> out;
  for (int i = 0; i < generic; ++i) out.push_back(random_generic_pattern(rng));
  for (int i = 0; i < trapezoidal; ++i) out.push_back(random_trapezoidal_pattern(rng, i % 2 == 1));
  return out;
}

}  // namespace

TEST_CASE("expanding the focal form gives the Miquel coefficients") {
  // With Omega at the origin and P = (p, 0), PM^2 P'M^2 - lambda OM^2 - k
  // equals (x^2+y^2)^2 + (-2p^2-lambda) x^2 + (2p^2-lambda) y^2 + p^4 - k.
  Rng rng(31);
  for (int t = 0; t < 20; ++t) {
    const double p = rng.uniform(0.1, 5), lambda = rng.uniform(-10, 10), k = rng.uniform(-10, 10);
    const double x = rng.uniform(-5, 5), y = rng.uniform(-5, 5);
    const double pm2 = (x - p) * (x - p) + y * y, ppm2 = (x + p) * (x + p) + y * y, om2 = x * x + y * y;
    const double focal = pm2 * ppm2 - lambda * om2 - k;
    const double expanded =
        om2 * om2 + (-2 * p * p - lambda) * x * x + (2 * p * p - lambda) * y * y + (p * p * p * p - k);
    CHECK(std::abs(focal - expanded) <= 1e-12 * std::max(1.0, std::abs(focal)));
  }
}

TEST_CASE("generic quartic equals the focal form of its foci") {
  for (const Pattern22& S : sample(32, 50, 0)) {
    const GenericFoci f = generic_foci(S);
    const MiquelQuartic q = quartic_generic(S);
    CHECK(near(q.frame.origin, f.omega, 1e-12 * S.scale()));
    CHECK(near(f.P_prime, 2.0 * f.omega - f.P, 1e-12 * S.scale()));
    Rng rng(33);
    for (int t = 0; t < 10; ++t) {
      const Point2 m = f.omega + Vec2{rng.uniform(-1, 1), rng.uniform(-1, 1)} * S.scale();
      const double pm2 = norm2(m - f.P), ppm2 = norm2(m - f.P_prime), om2 = norm2(m - f.omega);
      const double focal = pm2 * ppm2 - f.lambda * om2 - f.k;
      const double size = pm2 * ppm2 + std::abs(f.lambda) * om2 + std::abs(f.k);
      CHECK(std::abs(q.evaluate(m) - focal) <= 1e-9 * size);
    }
  }
}

TEST_CASE("foci of the fixture pattern") {
  const Pattern22 S = from_hyperbola({1, 2, 3, 4, 6});
  const GenericFoci f = generic_foci(S);
  // Omega = ((b+d+2e+f+h)/2, ...), P = ((b+d+e+f+h-bdefh)/2, ...).
  CHECK(near(f.omega, {19.0 / 2.0, 31.0 / 24.0}, 1e-13 * S.scale()));
  CHECK(near(f.P, {-64.0, 323.0 / 288.0}, 1e-12 * 64.0));
}

TEST_CASE("trapezoid coefficient arithmetic") {
  const TrapezoidCoefficients t = trapezoid_coefficients(2, 2, -1, 0, 1);
  CHECK(t.alpha == doctest::Approx(34.0 / 3.0).epsilon(1e-15));
  CHECK(t.beta == doctest::Approx(53.0 / 9.0).epsilon(1e-15));
  CHECK(t.gamma == doctest::Approx(44.0 / 9.0).epsilon(1e-15));
  CHECK(code_of([] { trapezoid_coefficients(2, 1, -1, 0, 1); }) == ErrorCode::ZeroDenominator);
}

TEST_CASE("trapezoidal quartic uses the closed-form coefficients") {
  for (const Pattern22& S : sample(34, 0, 20)) {
    const MiquelQuartic q = quartic_of_pattern(S);
    if (classify(S) == PatternClass::TrapezoidalVertical) continue;
    const Point2 C = q.frame.to_frame(S.C()), D = q.frame.to_frame(S.D()), E = q.frame.to_frame(S.E());
    const TrapezoidCoefficients t = trapezoid_coefficients(C.x, C.y, D.x, E.x, E.y);
    CHECK(q.a == -t.alpha);
    CHECK(q.b == -t.beta);
    CHECK(q.c == t.gamma);
  }
  const Pattern22 G = from_hyperbola({1, 2, 3, 4, 6});
  CHECK(code_of([&] { quartic_trapezoidal(G); }) == ErrorCode::WrongClass);
}

TEST_CASE("pattern points lie on the quartic") {
  for (const Pattern22& S : sample(35, 100, 40)) {
    const MiquelQuartic q = quartic_of_pattern(S);
    for (Label l : {Label::A, Label::C, Label::G, Label::I, Label::E})
      CHECK(std::abs(q.evaluate(S[l])) <= 1e-7 * scale4(S));
    CHECK(std::abs(q.frame.axis.x) + std::abs(q.frame.axis.y) > 0);
    CHECK(std::abs(norm(q.frame.axis) - 1.0) <= 1e-12);
    CHECK((q.frame.axis.x > 0 || (q.frame.axis.x == 0 && q.frame.axis.y > 0)));
    for (Color c : {Color::White, Color::Black})
      CHECK(std::abs(q.evaluate(mutate_renormalized(S, c).E())) <= 1e-7 * scale4(S));
  }
}

TEST_CASE("the quartic is invariant under renormalized mutation") {
  for (const Pattern22& S : sample(36, 100, 40)) {
    const MiquelQuartic q = quartic_of_pattern(S);
    for (Color c : {Color::White, Color::Black}) {
      const MiquelQuartic m = quartic_of_pattern(mutate_renormalized(S, c));
      CHECK(coefficient_drift(q, m) <= 1e-7);
      CHECK(frame_drift(q, m, S.scale()) <= 1e-9 * S.scale());
    }
  }
}

TEST_CASE("evaluate examples") {
  const MiquelQuartic q = plain(-5, 3, 4);
  CHECK(q.evaluate({1, 0}) == 0.0);
  CHECK(std::abs(q.evaluate({std::sqrt(7.0) / 2, 0.5})) <= 1e-14);
  CHECK(q.evaluate({0, 0}) == 4.0);
  CHECK(q.contains({2, 0}));
  CHECK_FALSE(q.contains({0, 0}));
}

TEST_CASE("non-degeneracy predicate") {
  CHECK(is_nondegenerate(-5, 3, 4));
  CHECK_FALSE(is_nondegenerate(1, 1, -1));
  CHECK_FALSE(is_nondegenerate(-4, 2, 4));
  CHECK_FALSE(is_nondegenerate(-5, 3, 0));
  CHECK_FALSE(is_nondegenerate(-5, 4, 4));
}

TEST_CASE("the nodes of every Miquel quartic are the circular points") {
  // Homogenized F = (x^2+y^2)^2 + a x^2 z^2 + b y^2 z^2 + c z^4 and its gradient
  // vanish at (1, i, 0) whatever a, b, c are.
  using C = std::complex<double>;
  Rng rng(37);
  for (int t = 0; t < 100; ++t) {
    const double a = rng.uniform(-10, 10), b = rng.uniform(-10, 10), c = rng.uniform(-10, 10);
    for (C y : {C(0, 1), C(0, -1)}) {
      const C x = 1, z = 0, s = x * x + y * y;
      CHECK(std::abs(s * s + a * x * x * z * z + b * y * y * z * z + c * z * z * z * z) == 0.0);
      CHECK(std::abs(4.0 * x * s + 2.0 * a * x * z * z) == 0.0);
      CHECK(std::abs(4.0 * y * s + 2.0 * b * y * z * z) == 0.0);
      CHECK(std::abs(2.0 * a * x * x * z + 2.0 * b * y * y * z + 4.0 * c * z * z * z) == 0.0);
    }
  }
}

TEST_CASE("s-parametrization identity") {
  Rng rng(38);
  for (int t = 0; t < 1000; ++t) {
    const double a = rng.uniform(-10, 10), b = rng.uniform(-10, 10), c = rng.uniform(-10, 10);
    const double s = rng.uniform(-10, 10);
    if (std::abs(b - a) < 1e-3) continue;
    const MiquelQuartic q = plain(a, b, c);
    const double X = x_squared_at(q, s), Y = y_squared_at(q, s);
    const double F = (X + Y) * (X + Y) + a * X + b * Y + c;
    CHECK(std::abs(F) <= 1e-10 * std::max(1.0, std::pow(s, 4)) * std::max({1.0, std::abs(a), std::abs(b), std::abs(c)}));
    CHECK(std::abs(X + Y - s) <= 1e-12 * std::max({1.0, std::abs(s), std::abs(X), std::abs(Y)}));
  }
}

TEST_CASE("real locus of the fixture quartic") {
  const MiquelQuartic q = plain(-5, 3, 4);
  const auto intervals = real_s_intervals(q);
  REQUIRE(intervals.size() == 1);
  CHECK(intervals[0].lo == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(intervals[0].hi == doctest::Approx(4.0).epsilon(1e-15));
  // x^2 = (s^2+3s+4)/8, y^2 = -(s-1)(s-4)/8.
  CHECK(x_squared_at(q, 2) == doctest::Approx(14.0 / 8.0));
  CHECK(y_squared_at(q, 2) == doctest::Approx(2.0 / 8.0));
  CHECK(near(point_at(q, 2, 1, 1), {std::sqrt(7.0) / 2, 0.5}, 1e-15));
}

TEST_CASE("sampled branches lie on the curve and mirror each other") {
  std::vector<MiquelQuartic> curves = {plain(-5, 3, 4)};
  for (const Pattern22& S : sample(39, 20, 5)) curves.push_back(quartic_of_pattern(S));
  for (const MiquelQuartic& q : curves) {
    const auto branches = sample_real_curve(q, 400);
    REQUIRE(branches.size() % 4 == 0);
    for (std::size_t i = 0; i < branches.size(); ++i) {
      const QuarticBranchSample& br = branches[i];
      CHECK(br.points.size() == 400);
      for (std::size_t k = 0; k < br.points.size(); ++k) {
        const Point2 p = br.points[k];
        const double s = norm2(p);
        CHECK(std::abs(q.evaluate_frame(p)) <= 1e-7 * std::pow(std::max(1.0, s), 2));
        if (k > 0) CHECK(s >= norm2(br.points[k - 1]) - 1e-9 * std::max(1.0, s));
      }
      // Branch i of each group of four carries the signs (+,+), (-,+), (-,-), (+,-).
      const QuarticBranchSample& first = branches[i - i % 4];
      for (std::size_t k = 0; k < br.points.size(); k += 37) {
        CHECK(br.points[k].x == br.sign_x * first.sign_x * first.points[k].x);
        CHECK(br.points[k].y == br.sign_y * first.sign_y * first.points[k].y);
      }
    }
  }
  CHECK(code_of([] { sample_real_curve(plain(1, 2, 5), 10); }) == ErrorCode::EmptyRealLocus);
}

TEST_CASE("x-axis points") {
  const auto pts = x_axis_points(plain(-5, 3, 4));
  REQUIRE(pts.size() == 4);
  const double expected[4] = {2, 1, -1, -2};
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(pts[k].x == expected[k]);
    CHECK(pts[k].y == 0.0);
    CHECK(std::abs(plain(-5, 3, 4).evaluate_frame(pts[k])) <= 1e-12);
  }
  CHECK(code_of([] { x_axis_points(plain(2, -3, 5)); }) == ErrorCode::NoRealAxisPoint);
}

TEST_CASE("Cassini ovals keep the product of focal distances") {
  // a + b = 0 means lambda = 0, and p^4 != k keeps c off the lemniscate: |PM| |P'M| = sqrt(k) with P = (p, 0).
  for (double p : {0.8, 1.2, 1.5}) {
    const double k = 1.0;
    const MiquelQuartic q = plain(-2 * p * p, 2 * p * p, std::pow(p, 4) - k);
    REQUIRE(is_nondegenerate(q));
    for (const auto& br : sample_real_curve(q, 200))
      for (Point2 m : br.points)
        CHECK(distance(m, {p, 0}) * distance(m, {-p, 0}) == doctest::Approx(std::sqrt(k)).epsilon(1e-9));
  }
}

TEST_CASE("vertical trapezoidal patterns get the transposed quartic") {
  Rng rng(40);
  for (int t = 0; t < 20; ++t) {
    const Pattern22 S = random_trapezoidal_pattern(rng, true);
    const MiquelQuartic q = quartic_of_pattern(S);
    const MiquelQuartic h = quartic_of_pattern(transpose(S));
    CHECK(coefficient_drift(h, q) == 0.0);
    for (Label l : {Label::A, Label::C, Label::G, Label::I, Label::E})
      CHECK(std::abs(q.evaluate(S[l])) <= 1e-7 * scale4(S));
  }
}
