#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace callias {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXd;

constexpr double kPi = 3.14159265358979323846;

// Bad input: wrong dimension, index out of range, unknown name.
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A numerical procedure did not reach its target.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
  double residual = 0.0;
  NumericalError(const std::string& what, double res) : std::runtime_error(what), residual(res) {}
};

inline double max_abs(const CMat& a) { return a.size() ? a.cwiseAbs().maxCoeff() : 0.0; }

inline bool is_hermitian(const CMat& a, double tol) {
  return a.rows() == a.cols() && max_abs(a - a.adjoint()) <= tol;
}

inline bool is_unitary(const CMat& a, double tol) {
  return a.rows() == a.cols() &&
         max_abs(a.adjoint() * a - CMat::Identity(a.rows(), a.cols())) <= tol;
}

}  // namespace callias
