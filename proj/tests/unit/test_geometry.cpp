#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "miquel/error.hpp"
#include "miquel/geometry.hpp"
#include "miquel/pattern.hpp"
#include "unit/support.hpp"

using namespace miquel;
using support::code_of;
using support::near;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("circumcenter examples") {
  CHECK(near(circumcenter({0, 0}, {2, 0}, {0, 2}), {1, 1}, 1e-15));
  CHECK(near(circumcenter({1, 0}, {0, 1}, {-1, 0}), {0, 0}, 1e-15));
  CHECK(code_of([] { circumcenter({0, 0}, {1, 0}, {2, 0}); }) == ErrorCode::CollinearPoints);
}

TEST_CASE("circumcenter is equidistant from its inputs") {
  Rng rng(11);
  for (int t = 0; t < 1000; ++t) {
    const Point2 p[3] = {{rng.uniform(-10, 10), rng.uniform(-10, 10)},
                         {rng.uniform(-10, 10), rng.uniform(-10, 10)},
                         {rng.uniform(-10, 10), rng.uniform(-10, 10)}};
    const double scale = scale_of({p[0], p[1], p[2]});
    if (std::abs(cross(p[1] - p[0], p[2] - p[0])) < 1e-3 * scale * scale) continue;
    const Point2 o = circumcenter(p[0], p[1], p[2]);
    // Equidistance is measured against the radius, which sets the size of the rounding.
    const double r = distance(o, p[0]);
    CHECK(std::abs(distance(o, p[1]) - r) <= 1e-12 * std::max(scale, r));
    CHECK(std::abs(distance(o, p[2]) - r) <= 1e-12 * std::max(scale, r));
  }
}

TEST_CASE("reflect_point examples") {
  const Line2 y_axis({0, 0}, {0, 1});
  const Line2 x_axis({0, 0}, {1, 0});
  CHECK(near(reflect_point({1, 0}, y_axis), {-1, 0}, 1e-15));
  CHECK(near(reflect_point({3, 4}, x_axis), {3, -4}, 1e-15));
  const Line2 slanted({1, 2}, {3, -1});
  const Point2 on = slanted.anchor() + 2.5 * slanted.direction();
  CHECK(near(reflect_point(on, slanted), on, 1e-14));
}

TEST_CASE("reflect_point is an involution and fixes the midpoint line") {
  Rng rng(12);
  for (int t = 0; t < 1000; ++t) {
    const Point2 p{rng.uniform(-10, 10), rng.uniform(-10, 10)};
    const Line2 l({rng.uniform(-10, 10), rng.uniform(-10, 10)}, {rng.uniform(-1, 1), rng.uniform(-1, 1)});
    const Point2 m = reflect_point(p, l);
    const double scale = std::max({1.0, norm(p), norm(l.anchor())});
    CHECK(near(reflect_point(m, l), p, 1e-12 * scale));
    CHECK(std::abs(l.signed_distance(midpoint(p, m))) <= 1e-12 * scale);
  }
}

TEST_CASE("Line2 keeps a unit direction") {
  const Line2 l({0, 0}, {3, 4});
  CHECK(std::abs(norm(l.direction()) - 1.0) <= 1e-12);
  CHECK(code_of([] { Line2({0, 0}, {0, 0}); }) == ErrorCode::DegenerateInput);
  CHECK(code_of([] { Circle2({0, 0}, 0.0); }) == ErrorCode::DegenerateInput);
}

TEST_CASE("concyclic examples") {
  CHECK(concyclic({1, 0}, {0, 1}, {-1, 0}, {0, -1}));
  CHECK_FALSE(concyclic({0, 0}, {1, 0}, {0, 1}, {5, 5}));
  CHECK_FALSE(concyclic({0, 0}, {1, 0}, {2, 0}, {3, 0}));
  CHECK(code_of([] { concyclic({0, 0}, {0, 0}, {1, 0}, {0, 1}); }) == ErrorCode::DegenerateInput);
}

TEST_CASE("concyclic does not depend on the order of its points") {
  Rng rng(13);
  for (int t = 0; t < 200; ++t) {
    const Point2 c{rng.uniform(-5, 5), rng.uniform(-5, 5)};
    const double r = rng.uniform(0.5, 4);
    std::array<Point2, 4> p;
    for (Point2& q : p) q = c + r * Vec2{std::cos(rng.uniform(0, 2 * pi)), std::sin(rng.uniform(0, 2 * pi))};
    if (rng.coin()) p[3] = p[3] + Vec2{0.1, 0.05};
    std::array<int, 4> idx = {0, 1, 2, 3};
    const bool reference = concyclic(p[0], p[1], p[2], p[3]);
    do {
      CHECK(concyclic(p[idx[0]], p[idx[1]], p[idx[2]], p[idx[3]]) == reference);
    } while (std::next_permutation(idx.begin(), idx.end()));
  }
}

TEST_CASE("signed_angle examples") {
  CHECK(signed_angle({0, 0}, {1, 0}, {0, 1}) == doctest::Approx(pi / 2).epsilon(1e-15));
  CHECK(signed_angle({0, 0}, {1, 0}, {1, 0}) == 0.0);
  CHECK(signed_angle({0, 0}, {1, 0}, {-1, 1}) == doctest::Approx(3 * pi / 4).epsilon(1e-15));
  CHECK(signed_angle({0, 0}, {1, 0}, {-1, 0}) == pi);
  CHECK(code_of([] { signed_angle({0, 0}, {0, 0}, {1, 0}); }) == ErrorCode::DegenerateInput);
}

TEST_CASE("signed_angle is antisymmetric up to the branch") {
  Rng rng(14);
  for (int t = 0; t < 1000; ++t) {
    const Point2 v{rng.uniform(-3, 3), rng.uniform(-3, 3)};
    const Point2 a{rng.uniform(-3, 3), rng.uniform(-3, 3)}, b{rng.uniform(-3, 3), rng.uniform(-3, 3)};
    const double ab = signed_angle(v, a, b), ba = signed_angle(v, b, a);
    CHECK(ab > -pi);
    CHECK(ab <= pi);
    CHECK(std::abs(wrap_angle(ab + ba)) <= 1e-15);
  }
}

TEST_CASE("line angles live on (-pi/2, pi/2] and ignore ray direction") {
  CHECK(line_angle({0, 0}, {1, 0}, {-1, 1}) == doctest::Approx(-pi / 4).epsilon(1e-15));
  CHECK(line_angle({0, 0}, {1, 0}, {0, 1}) == doctest::Approx(pi / 2).epsilon(1e-15));
  CHECK(line_angle({0, 0}, {1, 0}, {0, -1}) == doctest::Approx(pi / 2).epsilon(1e-15));
  CHECK(wrap_line_angle(pi) == 0.0);
  CHECK(wrap_line_angle(-pi / 2) == doctest::Approx(pi / 2));
}

TEST_CASE("intersect_lines examples") {
  const Line2 x_axis({0, 0}, {1, 0}), y_axis({0, 0}, {0, 1});
  CHECK(near(intersect_lines(x_axis, y_axis), {0, 0}, 1e-15));
  CHECK(near(intersect_lines(Line2({0, 1}, {1, 0}), Line2({2, 0}, {0, 1})), {2, 1}, 1e-15));
  CHECK(code_of([&] { intersect_lines(x_axis, Line2({0, 1}, {1, 0})); }) == ErrorCode::ParallelLines);
}

TEST_CASE("intersect_lines lands on both lines") {
  Rng rng(15);
  for (int t = 0; t < 1000; ++t) {
    const Line2 l1({rng.uniform(-5, 5), rng.uniform(-5, 5)}, {rng.uniform(-1, 1), rng.uniform(-1, 1)});
    const Line2 l2({rng.uniform(-5, 5), rng.uniform(-5, 5)}, {rng.uniform(-1, 1), rng.uniform(-1, 1)});
    if (std::abs(cross(l1.direction(), l2.direction())) < 0.05) continue;
    const Point2 p = intersect_lines(l1, l2);
    const double scale = std::max({1.0, norm(p), norm(l1.anchor()), norm(l2.anchor())});
    CHECK(std::abs(l1.signed_distance(p)) <= 1e-12 * scale);
    CHECK(std::abs(l2.signed_distance(p)) <= 1e-12 * scale);
  }
}
