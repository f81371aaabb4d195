#include "miquel/polynomial.hpp"

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <unsupported/Eigen/Polynomials>

namespace miquel::poly {

Poly multiply(std::span<const double> p, std::span<const double> q) {
  if (p.empty() || q.empty()) return {};
  Poly out(p.size() + q.size() - 1, 0.0);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) out[i + j] += p[i] * q[j];
  return out;
}

Poly add(std::span<const double> p, std::span<const double> q) {
  Poly out(std::max(p.size(), q.size()), 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) out[i] += p[i];
  for (std::size_t i = 0; i < q.size(); ++i) out[i] += q[i];
  return out;
}

Poly scale(std::span<const double> p, double k) {
  Poly out(p.begin(), p.end());
  for (double& c : out) c *= k;
  return out;
}

double evaluate(std::span<const double> p, double t) {
  double acc = 0.0;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * t + p[i];
  return acc;
}

double evaluate_derivative(std::span<const double> p, double t) {
  double acc = 0.0;
  for (std::size_t i = p.size(); i-- > 1;) acc = acc * t + static_cast<double>(i) * p[i];
  return acc;
}

Poly deflate(std::span<const double> p, double root) {
  if (p.size() < 2) return {};
  Poly out(p.size() - 1, 0.0);
  double carry = 0.0;
  for (std::size_t i = p.size(); i-- > 1;) {
    carry = carry * root + p[i];
    out[i - 1] = carry;
  }
  return out;
}

std::vector<std::complex<double>> roots(std::span<const double> p) {
  std::size_t n = p.size();
  while (n > 0 && p[n - 1] == 0.0) --n;
  if (n < 2) return {};
  if (n == 2) return {std::complex<double>(-p[0] / p[1], 0.0)};
  Eigen::VectorXd coeffs(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) coeffs(static_cast<Eigen::Index>(i)) = p[i];
  Eigen::PolynomialSolver<double, Eigen::Dynamic> solver(coeffs);
  std::vector<std::complex<double>> out;
  for (Eigen::Index i = 0; i < solver.roots().size(); ++i) out.push_back(solver.roots()(i));
  return out;
}

double polish_root(std::span<const double> p, double t, int iterations) {
  double value = std::abs(evaluate(p, t));
  for (int it = 0; it < iterations && value > 0.0; ++it) {
    const double d = evaluate_derivative(p, t);
    if (d == 0.0 || !std::isfinite(d)) break;
    const double next = t - evaluate(p, t) / d;
    const double next_value = std::abs(evaluate(p, next));
    if (!(next_value < value)) break;
    t = next;
    value = next_value;
  }
  return t;
}

std::vector<double> monic_quadratic_roots(double linear, double constant) {
  const double disc = linear * linear - 4.0 * constant;
  if (disc < 0.0) return {};
  const double sq = std::sqrt(disc);
  // Avoid cancellation: compute the larger-magnitude root first.
  const double q = -0.5 * (linear + std::copysign(sq, linear));
  double r1, r2;
  if (q == 0.0) {
    r1 = r2 = 0.0;
  } else {
    r1 = q;
    r2 = constant / q;
  }
  if (r1 > r2) std::swap(r1, r2);
  return {r1, r2};
}

}  // namespace miquel::poly
