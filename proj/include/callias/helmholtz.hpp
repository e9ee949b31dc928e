#pragma once

#include <string>
#include <vector>

#include "callias/types.hpp"

namespace callias {

struct GreenKernel {
  int n = 3;    // odd, >= 3
  cplx mu = 1;  // Re mu > 0; mu = 0 selects the Laplace kernel
  GreenKernel() = default;
  GreenKernel(int n_, cplx mu_);
};

// Principal branch: Re sqrt(mu) > 0 for Re mu > 0.
cplx sqrt_branch(cplx mu);

// Fundamental solution of (-Delta + mu) in odd n at distance r.
cplx kernel_eval(const GreenKernel& k, double r);
// d/dr of kernel_eval
cplx kernel_radial_derivative(const GreenKernel& k, double r);
// |d/dr kernel|, the radial envelope bounding every partial derivative
double q_mu(const GreenKernel& k, double r);

// (2 pi)^{-n} omega_{n-1} int_0^inf r^{n-1} (r^2 + 1 + z)^{-m} dr
cplx resolvent_power_diagonal(int n, int m, cplx z);
// closed form a^{n/2-m} Gamma(n/2) Gamma(m-n/2) / (2 Gamma(m)) scaled as above, a = 1 + z
cplx resolvent_power_diagonal_closed(int n, int m, cplx z);
// envelope (1/Re mu)^m (sqrt Re mu)^n c with mu = 1 + z
double resolvent_power_envelope(int n, int m, cplx z);

// s_mu(r) = exp(-sqrt(mu) r) / r^{n-2}
double s_envelope(int n, double mu, double r);

struct KernelBoundReport {
  std::string id;
  std::size_t samples = 0;
  double max_violation = 0.0;  // max over samples of (LHS - RHS) / |RHS|; <= 0 means pass
  std::vector<std::pair<std::string, double>> constants;
  std::vector<double> worst_sample;  // parameters at the worst sample
  bool pass() const { return max_violation <= 0.0; }
};

struct InequalityGrid {
  int n = 3;
  int samples = 200;
  double lambda = 0.5;  // L11_1_upper
  double tau = 0.5;     // L11_4_convolution
  double mu = 1.0;      // L11_4_convolution, T11_7_positivity
  int k = 1;            // T11_7_positivity exponent
  unsigned seed = 7;
};

// ids: L11_1_upper, L11_1_lower, L11_4_convolution, T11_7_positivity,
//      L5_11_argument, L5_11_shift, L5_13_gradient, L5_13_argument, L5_13_shift,
//      P5_8_envelope, radial_ode
KernelBoundReport verify_inequality(const std::string& id, const InequalityGrid& grid = {});
std::vector<std::string> inequality_ids();

// Fourier symbol of exp(-mu |x|) / |x|^k in R^n at |xi| = xi (Hankel-type quadrature).
double radial_symbol(int n, int k, double mu, double xi);

}  // namespace callias
