#include "callias/matrixfn.hpp"

#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <sstream>

namespace callias {

void require_hermitian(const CMat& a, const char* who) {
  if (a.rows() != a.cols()) throw DomainError(std::string(who) + ": matrix not square");
  const double scale = 1.0 + max_abs(a);
  if (max_abs(a - a.adjoint()) > kHermitianTol * scale)
    throw DomainError(std::string(who) + ": matrix not Hermitian");
}

SpectralDecomposition spectral(const CMat& a) {
  require_hermitian(a, "spectral");
  Eigen::SelfAdjointEigenSolver<CMat> es(a);
  if (es.info() != Eigen::Success) throw NumericalError("spectral: eigensolver failed", 0.0);
  return {es.eigenvalues(), es.eigenvectors()};
}

CMat sign_spectral(const CMat& a, double c) {
  auto eig = spectral(a);
  const double m = eig.eigenvalues.cwiseAbs().minCoeff();
  if (m < c) {
    std::ostringstream os;
    os << "sign_spectral: not invertible at required gap (min |lambda| = " << m << ")";
    throw NotInvertibleError(os.str(), m);
  }
  Vec s = eig.eigenvalues.unaryExpr([](double v) { return v > 0 ? 1.0 : -1.0; });
  return eig.eigenvectors * s.asDiagonal() * eig.eigenvectors.adjoint();
}

CMat abs_matrix(const CMat& a) {
  auto eig = spectral(a);
  return eig.eigenvectors * eig.eigenvalues.cwiseAbs().asDiagonal() * eig.eigenvectors.adjoint();
}

CMat sign_derivative(const SpectralDecomposition& eig, const CMat& da) {
  const Eigen::Index d = eig.eigenvalues.size();
  const CMat& V = eig.eigenvectors;
  CMat b = V.adjoint() * da * V;
  for (Eigen::Index k = 0; k < d; ++k)
    for (Eigen::Index l = 0; l < d; ++l) {
      const double lk = eig.eigenvalues(k), ll = eig.eigenvalues(l);
      const bool sk = lk > 0, sl = ll > 0;
      b(k, l) *= (sk == sl) ? 0.0 : ((sk ? 1.0 : -1.0) - (sl ? 1.0 : -1.0)) / (lk - ll);
    }
  return V * b * V.adjoint();
}

namespace {

struct Panel {
  double a, b;
  CMat value;
  double err;
};

// One Gauss-Kronrod 15/7 panel of a matrix-valued integrand.
template <class F>
Panel gk_panel(F& f, double a, double b) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  const auto& x = GK::abscissa();
  const auto& wk = GK::weights();
  const auto& wg = boost::math::quadrature::gauss<double, 7>::weights();
  const double h = 0.5 * (b - a), m = 0.5 * (a + b);
  CMat f0 = f(m);
  CMat kr = wk[0] * f0;
  CMat ga = wg[0] * f0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    CMat fp = f(m + h * x[i]);
    CMat fm = f(m - h * x[i]);
    kr += wk[i] * (fp + fm);
    if (i % 2 == 0) ga += wg[i / 2] * (fp + fm);
  }
  kr *= h;
  ga *= h;
  return {a, b, kr, max_abs(kr - ga)};
}

}  // namespace

CMat sign_integral(const CMat& a, double c, double tol) {
  if (a.rows() != a.cols()) throw DomainError("sign_integral: matrix not square");
  if (!(c > 0)) throw DomainError("sign_integral: c must be positive");
  const Eigen::Index d = a.rows();
  const CMat a2 = a * a;
  const CMat herm = 0.5 * (a2 + a2.adjoint());
  Eigen::SelfAdjointEigenSolver<CMat> es(herm, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < c * (1 - 1e-12))
    throw DomainError("sign_integral: Re(A^2) below the required bound");
  const CMat id = CMat::Identity(d, d);
  // t = c tan(theta): dt = c sec^2(theta) dtheta, (t^2 + A^2)^{-1} c sec^2 = c (c^2 sin^2 + cos^2 A^2)^{-1}
  auto integrand = [&](double th) -> CMat {
    const double s = std::sin(th), co = std::cos(th);
    CMat m = (c * c * s * s) * id + (co * co) * a2;
    return c * m.partialPivLu().solve(id);
  };
  std::vector<Panel> done;
  std::vector<Panel> work{gk_panel(integrand, 0.0, 0.5 * kPi)};
  const int max_panels = 4000;
  int count = 1;
  CMat total = CMat::Zero(d, d);
  double total_err = 0.0;
  while (!work.empty()) {
    Panel p = work.back();
    work.pop_back();
    const double share = tol * (p.b - p.a) / (0.5 * kPi);
    if (p.err <= share || count >= max_panels) {
      total += p.value;
      total_err += p.err;
      continue;
    }
    const double mid = 0.5 * (p.a + p.b);
    work.push_back(gk_panel(integrand, p.a, mid));
    work.push_back(gk_panel(integrand, mid, p.b));
    count += 2;
  }
  if (total_err > 1e3 * tol * (1 + max_abs(total)))
    throw NumericalError("sign_integral: quadrature did not converge", total_err);
  return (2.0 / kPi) * a * total;
}

double default_fd_step(const Vec& x) {
  return std::pow(std::numeric_limits<double>::epsilon(), 0.2) * (1.0 + x.norm());
}

CMat fd_derivative(const MatrixField& f, const Vec& x, int j, double h) {
  if (j < 0 || j >= x.size()) throw DomainError("fd_derivative: direction out of range");
  Vec y = x;
  auto at = [&](double s) {
    y(j) = x(j) + s * h;
    return f(y);
  };
  CMat r = at(-2.0) - 8.0 * at(-1.0) + 8.0 * at(1.0) - at(2.0);
  return r / (12.0 * h);
}

}  // namespace callias
