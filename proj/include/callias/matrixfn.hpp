#pragma once

#include <functional>

#include "callias/types.hpp"

namespace callias {

struct SpectralDecomposition {
  Vec eigenvalues;   // ascending
  CMat eigenvectors; // columns orthonormal
};

// Relative Hermiticity tolerance used throughout.
constexpr double kHermitianTol = 1e-10;

// Raises DomainError unless a is Hermitian to kHermitianTol * (1 + |a|_max).
void require_hermitian(const CMat& a, const char* who);

SpectralDecomposition spectral(const CMat& a);

struct NotInvertibleError : NumericalError {
  double min_abs_eigenvalue;
  NotInvertibleError(const std::string& what, double m) : NumericalError(what, m), min_abs_eigenvalue(m) {}
};

CMat sign_spectral(const CMat& a, double c);

// (2/pi) A int_0^inf (t^2 + A^2)^{-1} dt via adaptive Gauss-Kronrod after t = c tan(theta).
// Requires the Hermitian part of A^2 to be >= c.
CMat sign_integral(const CMat& a, double c, double tol = 1e-12);

CMat abs_matrix(const CMat& a);

// Directional derivative of sgn at a along da (a Hermitian, invertible).
CMat sign_derivative(const SpectralDecomposition& eig, const CMat& da);

using MatrixField = std::function<CMat(const Vec&)>;

double default_fd_step(const Vec& x);

// Fourth-order central difference along e_j (0-based direction).
CMat fd_derivative(const MatrixField& f, const Vec& x, int j, double h);
inline CMat fd_derivative(const MatrixField& f, const Vec& x, int j) {
  return fd_derivative(f, x, j, default_fd_step(x));
}

}  // namespace callias
