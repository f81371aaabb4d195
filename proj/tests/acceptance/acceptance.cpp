// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Every check records value / bound, so a criterion passes iff its worst
// ratio is at most 1.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "miquel/elliptic_law.hpp"
#include "miquel/error.hpp"
#include "miquel/measure.hpp"
#include "miquel/pattern.hpp"
#include "miquel/quartic.hpp"

using namespace miquel;

namespace {

constexpr std::uint64_t kSeed = 20240611;

class Criterion {
 public:
  Criterion(int number, std::string name) : number_(number), name_(std::move(name)) {}

  void check(double value, double bound) {
    ++checks_;
    const double ratio = value / bound;
    if (!(ratio <= 1.0)) ++failures_;
    if (!(ratio <= worst_ratio_) || std::isnan(ratio)) {
      worst_ratio_ = std::isnan(ratio) ? INFINITY : ratio;
      worst_value_ = value;
      worst_bound_ = bound;
    }
  }
  void require(bool ok) { check(ok ? 0.0 : 1.0, ok ? 1.0 : 0.5); }
  void error(const Error& e) {
    ++checks_;
    ++failures_;
    worst_ratio_ = INFINITY;
    note(std::string("error ") + e.what());
  }
  void note(const std::string& text) {
    if (!notes_.empty()) notes_ += "; ";
    notes_ += text;
  }

  bool passed() const { return failures_ == 0 && checks_ > 0; }

  void report() const {
    std::printf("criterion %2d %-34s %s  checks=%d failed=%d worst=%.3g bound=%.3g%s%s\n", number_, name_.c_str(),
                passed() ? "PASS" : "FAIL", checks_, failures_, worst_value_, worst_bound_,
                notes_.empty() ? "" : "  ", notes_.c_str());
  }

 private:
  int number_;
  std::string name_;
  int checks_ = 0, failures_ = 0;
  double worst_ratio_ = -INFINITY, worst_value_ = 0.0, worst_bound_ = 0.0;
  std::string notes_;
};

MiquelQuartic plain(double a, double b, double c) {
  MiquelQuartic q;
  q.a = a;
  q.b = b;
  q.c = c;
  return q;
}

// World distance of the fourth vertex of a face from the circle through the
// best-conditioned triple of the other three.
double face_defect(const Pattern22& S, int i, int j) {
  const Point2 f[4] = {S.at(i, j), S.at(i + 1, j), S.at(i + 1, j + 1), S.at(i, j + 1)};
  int out = 0;
  double best = -1.0;
  for (int k = 0; k < 4; ++k) {
    const Point2 p = f[(k + 1) % 4], q = f[(k + 2) % 4], r = f[(k + 3) % 4];
    const double area = std::abs(cross(q - p, r - p));
    if (area > best) best = area, out = k;
  }
  const Point2 o = circumcenter(f[(out + 1) % 4], f[(out + 2) % 4], f[(out + 3) % 4]);
  return std::abs(distance(o, f[out]) - distance(o, f[(out + 1) % 4]));
}

double max_face_defect(const Pattern22& S) {
  double m = 0.0;
  for (int j = 0; j < 2; ++j)
    for (int i = 0; i < 2; ++i) m = std::max(m, face_defect(S, i, j));
  return m;
}

struct Sample {
  std::vector<Pattern22> patterns;
  int degenerate = 0;  // drawn but without a group law
};

bool has_law(const Pattern22& S) {
  try {
    GroupLaw law(quartic_of_pattern(S));
    return true;
  } catch (const Error&) {
    return false;
  }
}

// `generic` generic patterns and `trapezoidal` trapezoidal ones, half of
// them vertical. With `lawful`, draws continue until the counts are met by
// patterns whose quartic carries a group law.
Sample draw(Rng& rng, int generic, int trapezoidal, bool lawful) {
  Sample s;
  auto fill = [&](int count, auto make) {
    int have = 0;
    while (have < count) {
      const Pattern22 S = make(have);
      if (lawful && !has_law(S)) {
        ++s.degenerate;
        continue;
      }
      s.patterns.push_back(S);
      ++have;
    }
  };
  fill(generic, [&](int) { return random_generic_pattern(rng); });
  fill(trapezoidal, [&](int k) { return random_trapezoidal_pattern(rng, k % 2 == 1); });
  return s;
}

void criterion_involution(Criterion& c, const Sample& sample) {
  for (const Pattern22& S : sample.patterns) {
    for (Color color : {Color::White, Color::Black}) {
      try {
        const Pattern22 M = mutate(S, color);
        c.check(max_vertex_distance(mutate(M, color), S), 1e-9 * S.scale());
        c.check(max_face_defect(M), 1e-9 * S.scale());
      } catch (const Error& e) {
        c.error(e);
      }
    }
  }
}

void criterion_conserved(Criterion& c, const Sample& sample) {
  for (const Pattern22& S : sample.patterns) {
    const ConservedQuantities before = conserved_quantities(S);
    for (Color color : {Color::White, Color::Black}) {
      try {
        const ConservedQuantities after = conserved_quantities(mutate_renormalized(S, color));
        for (auto [p, q] : {std::pair{after.A, before.A}, std::pair{after.C, before.C},
                            std::pair{after.G, before.G}, std::pair{after.I, before.I}})
          c.check(distance(p, q), 1e-9 * S.scale());
        c.check(std::abs(wrap_line_angle(after.angle_CBA + before.angle_CBA)), 1e-9);
        c.check(std::abs(wrap_line_angle(after.angle_ADG + before.angle_ADG)), 1e-9);
      } catch (const Error& e) {
        c.error(e);
      }
    }
  }
  c.note("angles between lines, compared modulo pi");
}

void criterion_quartic(Criterion& c, const Sample& sample) {
  for (const Pattern22& S : sample.patterns) {
    try {
      const MiquelQuartic q = quartic_of_pattern(S);
      const double s4 = std::pow(S.scale(), 4);
      for (Label l : {Label::A, Label::C, Label::G, Label::I, Label::E}) c.check(std::abs(q.evaluate(S[l])), 1e-7 * s4);
      for (Color color : {Color::White, Color::Black}) {
        const Pattern22 M = mutate_renormalized(S, color);
        c.check(coefficient_drift(q, quartic_of_pattern(M)), 1e-7);
        c.check(std::abs(q.evaluate(M.E())), 1e-7 * s4);
      }
    } catch (const Error& e) {
      c.error(e);
    }
  }
}

void criterion_triangle(Criterion& c, const Sample& sample) {
  for (const Pattern22& S : sample.patterns) {
    try {
      const double bound = 1e-7 * S.scale();
      const Point2 direct = mutate_renormalized(S, Color::White).E();
      const Point2 tangent = tangent_circle_mutation(S).image;
      const Point2 law = predict_mutation(S, Color::White);
      c.check(distance(direct, tangent), bound);
      c.check(distance(direct, law), bound);
      c.check(distance(tangent, law), bound);
      c.check(distance(mutate_renormalized(S, Color::Black).E(), predict_mutation(S, Color::Black)), bound);
    } catch (const Error& e) {
      c.error(e);
    }
  }
  c.note(std::to_string(sample.degenerate) + " degenerate draws skipped");
}

void criterion_translation(Criterion& c, const Sample& sample) {
  for (const Pattern22& S : sample.patterns) {
    try {
      const GroupLaw law(quartic_of_pattern(S));
      const GroupPoint E0 = law.lift(S.E());
      const GroupPoint twice_shift = law.mul(2, law.add(law.lift(S.A()), law.negate(law.lift(S.C()))));
      MutationOrbit orbit(S);
      for (int k = 1; k <= 20; ++k) {
        orbit.apply(Color::White);
        const Point2 Ek = orbit.apply(Color::Black).E();
        c.check(distance(Ek, law.to_world(law.add(E0, law.mul(k, twice_shift)))), 1e-6 * S.scale());
      }
    } catch (const Error& e) {
      c.error(e);
    }
  }
  c.note(std::to_string(sample.degenerate) + " degenerate draws skipped");
}

void criterion_axioms(Criterion& c, const Sample& sample, Rng& rng) {
  std::vector<MiquelQuartic> curves = {plain(-5, 3, 4)};
  for (const Pattern22& S : sample.patterns) curves.push_back(quartic_of_pattern(S));
  int triples = 0;
  for (std::size_t i = 0; triples < 100; ++i) {
    try {
      const GroupLaw law(curves[i % curves.size()]);
      const double scale = law.extent();
      const GroupPoint P = random_curve_point(law, rng), Q = random_curve_point(law, rng),
                       R = random_curve_point(law, rng);
      ++triples;
      c.require(law.add(P, Q) == law.add(Q, P));
      c.check(law.distance(law.add(law.add(P, Q), R), law.add(P, law.add(Q, R))), 1e-6 * scale);
      c.check(law.distance(law.add(P, law.neutral()), P), 1e-9 * scale);
      c.check(law.distance(law.add(P, law.negate(P)), law.neutral()), 1e-9 * scale);
      if (i < curves.size())
        for (Point2 T : x_axis_points(law.quartic()))
          c.check(law.distance(law.twice({T.x, T.y}), law.neutral()), 1e-9 * scale);
    } catch (const Error& e) {
      c.error(e);
    }
  }
  c.note("scale = curve extent");
}

void criterion_fixture(Criterion& c) {
  try {
    const MiquelQuartic q = plain(-5, 3, 4);
    const auto axis = x_axis_points(q);
    c.require(axis.size() == 4);
    const double expected[4] = {2, 1, -1, -2};
    for (std::size_t k = 0; k < std::min<std::size_t>(4, axis.size()); ++k)
      c.check(distance(axis[k], {expected[k], 0}), 1e-12);
    const GroupLaw law(q);
    c.check(distance(law.neutral().frame(), {2, 0}), 1e-12);
    c.check(distance(law.add({1, 0}, {-1, 0}).frame(), {-2, 0}), 1e-12);
    c.check(distance(law.twice({1, 0}).frame(), {2, 0}), 1e-12);
  } catch (const Error& e) {
    c.error(e);
  }
}

void criterion_sums(Criterion& c, const Sample& sample, Rng& rng) {
  int completed = 0, skipped = 0;
  for (const Pattern22& S : sample.patterns) {
    try {
      const GroupLaw law(quartic_of_pattern(S));
      for (int b = 0; b < 2; ++b) {
        const SumInvarianceReport r = base_point_sum_invariance(law, random_curve_point(law, rng), 50, rng);
        completed += r.completed;
        skipped += r.skipped;
        c.check(r.spread, 1e-6 * law.extent());
      }
    } catch (const Error& e) {
      c.error(e);
    }
  }
  c.require(completed > 0);
  c.note(std::to_string(completed) + " circles, " + std::to_string(skipped) + " with complex intersections skipped");
}

void criterion_measure(Criterion& c, const Sample& sample) {
  for (const Pattern22& S : sample.patterns) {
    try {
      const auto report = orbit_measure_report(S, 20);
      c.require(!report.empty());
      if (report.empty()) continue;
      const double first = report.front().measure;
      for (const StepMeasure& m : report) c.check(std::abs(m.measure - first), 1e-6 * first);
    } catch (const Error& e) {
      c.error(e);
    }
  }
  // Midpoint rule at 10^7 nodes; the integrand is smooth on [1.5, 2.5].
  const long nodes = 10'000'000;
  const long double lo = 1.5L, hi = 2.5L, h = (hi - lo) / nodes;
  long double sum = 0.0L;
  for (long k = 0; k < nodes; ++k) {
    const long double s = lo + (k + 0.5L) * h;
    sum += 8.0L / std::sqrt(-(s * s - 5 * s + 4) * (s * s + 3 * s + 4));
  }
  const double reference = static_cast<double>(sum * h);
  try {
    const MiquelQuartic q = plain(-5, 3, 4);
    const Point2 p1 = point_at(q, 1.5, 1, 1), p2 = point_at(q, 2.5, 1, 1);
    const double value = arc_measure(q, {p1.x, p1.y}, {p2.x, p2.y}).value;
    c.check(std::abs(value - reference), 1e-8 * reference);
  } catch (const Error& e) {
    c.error(e);
  }
}

void criterion_parametrization(Criterion& c, Rng& rng) {
  int drawn = 0;
  while (drawn < 1000) {
    const double a = rng.uniform(-10, 10), b = rng.uniform(-10, 10), cc = rng.uniform(-10, 10);
    const double s = rng.uniform(-10, 10);
    if (a == b) continue;
    ++drawn;
    const MiquelQuartic q = plain(a, b, cc);
    const long double X = x_squared_at(q, s), Y = y_squared_at(q, s);
    const long double F = (X + Y) * (X + Y) + a * X + b * Y + cc;
    c.check(static_cast<double>(std::abs(F)), 1e-10 * std::max(1.0, std::pow(s, 4)));
  }
  c.note("(a, b, c, s) uniform on [-10, 10]^4");
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  Rng rng(kSeed);

  const Sample dynamics = draw(rng, 200, 50, false);
  const Sample lawful = draw(rng, 100, 20, true);
  const Sample orbits = draw(rng, 20, 0, true);
  const Sample curves = draw(rng, 20, 4, true);

  std::vector<Criterion> criteria;
  criteria.emplace_back(1, "involution and closure");
  criterion_involution(criteria.back(), dynamics);
  criteria.emplace_back(2, "conserved quantities");
  criterion_conserved(criteria.back(), dynamics);
  criteria.emplace_back(3, "quartic invariance and membership");
  criterion_quartic(criteria.back(), dynamics);
  criteria.emplace_back(4, "three routes to the white image");
  criterion_triangle(criteria.back(), lawful);
  criteria.emplace_back(5, "translation along orbits");
  criterion_translation(criteria.back(), orbits);
  criteria.emplace_back(6, "group axioms");
  criterion_axioms(criteria.back(), curves, rng);
  criteria.emplace_back(7, "closed-form fixture");
  criterion_fixture(criteria.back());
  criteria.emplace_back(8, "base-point sum invariance");
  criterion_sums(criteria.back(), curves, rng);
  criteria.emplace_back(9, "measure invariance and quadrature");
  criterion_measure(criteria.back(), orbits);
  criteria.emplace_back(10, "parametrization identity");
  criterion_parametrization(criteria.back(), rng);

  int failed = 0;
  for (const Criterion& c : criteria) {
    c.report();
    if (!c.passed()) ++failed;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("acceptance: %d of %zu criteria passed in %.1f s (seed %llu)\n",
              static_cast<int>(criteria.size()) - failed, criteria.size(), seconds,
              static_cast<unsigned long long>(kSeed));
  return failed == 0 ? 0 : 1;
}
