#pragma once

#include <complex>
#include <span>
#include <vector>

namespace miquel::poly {

// Coefficients in ascending order of degree.
using Poly = std::vector<double>;

Poly multiply(std::span<const double> p, std::span<const double> q);
Poly add(std::span<const double> p, std::span<const double> q);
Poly scale(std::span<const double> p, double k);

double evaluate(std::span<const double> p, double t);
double evaluate_derivative(std::span<const double> p, double t);

/// Synthetic division by (t - root); the remainder is dropped.
Poly deflate(std::span<const double> p, double root);

/// All complex roots; leading zero coefficients are trimmed first.
std::vector<std::complex<double>> roots(std::span<const double> p);

/// A few Newton steps, kept only while |p| decreases.
double polish_root(std::span<const double> p, double t, int iterations = 4);

/// Real roots of t^2 + linear*t + constant, ascending; empty when the
/// discriminant is negative.
std::vector<double> monic_quadratic_roots(double linear, double constant);

}  // namespace miquel::poly
