#pragma once

#include <vector>

#include "callias/types.hpp"

namespace callias {

struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// q-point Gauss rule for the weight (1 - t^2)^a on [-1, 1] (a > -1), via Golub-Welsch.
Rule1D gauss_gegenbauer(int q, double a);

// Gauss-Legendre mapped to [lo, hi].
Rule1D gauss_legendre(int q, double lo = -1.0, double hi = 1.0);

// Surface area of the unit sphere S^{n-1} in R^n.
double sphere_area(int n);

struct SphereRule {
  int n = 0;
  int degree = 0;
  std::vector<Vec> nodes;       // unit vectors
  std::vector<double> weights;  // sum to sphere_area(n)
};

// Product rule on S^{n-1}, exact for polynomials of total degree <= degree.
// n = 2: trapezoid in the angle; n >= 3: Gegenbauer nodes in each polar cosine
// times a trapezoid in the last angle.
SphereRule make_sphere_rule(int n, int degree);

// Closed-form integral of x^alpha over S^{n-1}.
double sphere_moment(const std::vector<int>& alpha);

}  // namespace callias
