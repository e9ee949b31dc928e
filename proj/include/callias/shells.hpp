#pragma once

#include <vector>

#include "callias/potential.hpp"

namespace callias {

// phi_1: normalized integral of the bump exp(-1/(t(1-t))) on (0,1); 0 for x <= 0, 1 for x >= 1.
double cutoff_phi1(double x);
double cutoff_phi1_deriv(double x, int order);  // order 1 or 2
// sup norms of phi_1', phi_1'' (computed on a fine grid)
double cutoff_d(int order);

// psi_{r1,r2,t1,t2}(x) and its first two derivatives.
double window_psi(double r1, double r2, double t1, double t2, double x, int order = 0);

double shell_radius(int k);  // r_k = 2^k - 2

struct ShellWindow {
  double r1, r2, t1, t2;
};
ShellWindow radial_window(int k);  // psi_{1,k}
ShellWindow axial_window(int k);   // psi_{2,k}

// xi_{k,j}(x) and its gradient (j 0-based).
double shell_bump(int k, int j, const Vec& x);
Eigen::Vector3d shell_bump_gradient(int k, int j, const Vec& x);

bool in_shell_region(int k, const Vec& x);        // B_k
bool in_inner_box(int k, const Vec& x);           // B-tilde_k
double inner_box_volume(int k, bool* cube_inside = nullptr);

struct ShellDerivative {
  int k = 0;
  int samples = 0;
  double observed = 0.0;        // c with d_j Phi = c sigma_j on the inner box
  double sigma_residual = 0.0;  // max |d_j Phi - c sigma_j| and |c_j - c|
  double with_radius = 0.0;     // k^{-1/3} / r_{k+1}
  double without_radius = 0.0;  // k^{-1/3}
};

struct CutoffCheck {
  double bounds = 0.0;      // max violation of 0 <= psi <= 1
  double plateau = 0.0;     // max |psi - 1| on [r1+t1, r2-t2]
  double support = 0.0;     // max |psi| outside [r1, r2]
  double slope1 = 0.0;      // max |psi'| - d1 max(1/t1, 1/t2), should be <= 0
  double slope2 = 0.0;      // same for psi''
};

struct ShellDiagnostics {
  int k0 = 0;  // first shell from which vol(B-tilde_k) = 2^{3k}/36^3 up to k_max
  double d1 = 0.0, d2 = 0.0;
  std::vector<ShellDerivative> shells;
  std::vector<double> volume_ratio;  // vol * 36^3 / 2^{3k}, index k - 2
  std::vector<double> partial_sums;  // S_K for K = k0 .. 2 k_max, index K - k0
  double doubling_gain = 0.0;        // S_{2 k_max} - S_{k_max}
  double log_slope = 0.0;            // fitted dS / d log K over the upper half
  CutoffCheck cutoff;
  double support_violation = 0.0;    // count of sampled x with xi != 0 outside B_k
  double derivative_identity = 0.0;  // max |r_{k+1} d_l xi_{k,j} - delta_lj| on inner boxes
};

// S_K = sum_{k=k0}^{K} (1/k) 2^{3k} / (2^k - 2)^3 / 36^3
double trace_lower_bound_partial_sum(int k0, int K);

ShellDiagnostics shell_diagnostics(int k_max, int samples_per_shell = 16);

}  // namespace callias
