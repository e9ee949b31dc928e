#pragma once

#include <string>
#include <utility>
#include <vector>

#include "callias/potential.hpp"
#include "callias/types.hpp"

namespace callias {

// ---------------------------------------------------------------------------
// Finite-matrix identities

// Partial trace over the block index: a is (m*base) x (m*base) with m x m blocks
// of size base; returns sum_k a[k-block, k-block].
CMat internal_trace(const CMat& a, int m);

// z tr_m((L*L + z)^{-1} - (LL* + z)^{-1})
CMat witten_regularization(const CMat& l, cplx z, int m);

struct IdentityResidual {
  double residual = 0.0;
  double condition = 0.0;  // worst condition number of the solves
  bool ill_conditioned = false;
};

// 2 B_L(z) = tr_m[L, L*(LL*+z)^{-1}] - tr_m[L*, L(L*L+z)^{-1}] on a random
// size x size matrix with m blocks.
IdentityResidual check_witten_identity(const CMat& l, cplx z, int m);
IdentityResidual check_witten_identity(int size, int m, cplx z, unsigned seed);

// ||tr_m(AB) - tr_m(BA)||_max with B = b (x) I_base.
double check_internal_trace_cyclicity(const CMat& a, const CMat& b);
double check_internal_trace_cyclicity(int m, int base, unsigned seed);
// Same with B = b (x) M for a generic base matrix M: cyclicity fails.
double cyclicity_counterexample(int m, int base, unsigned seed);

struct NeumannReport {
  double residual = 0.0;        // exact-remainder identity, relative max norm
  double spectral_radius = 0.0; // of C R
  bool convergent = false;      // spectral radius < 1
  double truncation = 0.0;      // size of the remainder term, relative
};

// (L*L+z)^{-1} - (LL*+z)^{-1} = 2 sum_{k=0}^{terms} R (CR)^{2k+1} + Delta (CR)^{2 terms + 2}
// on a dim-dimensional spectral lattice with N points per axis, unitary Hermitian
// Phi built from a random smooth unit field, R = (-Delta_h + 1 + z)^{-1}, C = [Q_h, Phi_h].
NeumannReport check_neumann_expansion(int dim, int N, int terms, cplx z, unsigned seed, double amplitude = 1.0);
// C = 0 variant: constant Phi, difference vanishes.
double neumann_constant_phi(int dim, int N, cplx z);

enum class CommutatorForm {
  printed,   // R (Q^2 Psi) R + 2 R (Q Psi) Q R
  gradient,  // R (Delta Psi) R + 2 R (grad Psi . grad) R
};

// ||[R, Psi] - RHS|| / ||[R, Psi]|| on band-limited test vectors, where R = (-Delta_h + mu)^{-1}
// on a dim-dimensional spectral lattice and Psi a smooth periodic trigonometric polynomial.
double check_commutator_identity(int dim, int N, cplx mu, CommutatorForm form, unsigned seed);

struct VogtResult {
  cplx trace;
  double norm = 0.0;
};
// Diagonal operator B(z) phi_k = z e^{-(k-1) z} phi_k truncated to n_modes.
VogtResult vogt_counterexample(cplx z, long long n_modes);

// ---------------------------------------------------------------------------
// Lattice Witten regularization

enum class EdgeMode {
  blend_zero,  // Phi -> (1 - b) Phi with b a smooth step near the box faces
  freeze,      // Phi evaluated at the point pulled back radially to the blend radius
  none,
};

struct LatticeConfig {
  int N = 16;
  double half_width = 8.0;
  std::vector<double> lambdas{2, 3, 4};
  std::vector<cplx> zs{0.25, 0.5, 1.0};
  EdgeMode edge = EdgeMode::blend_zero;
  double edge_start = 0.75;  // fraction of the half-width where blending starts
};

// Level 0: N=8, box 4; level 1: N=16, box 8; level 2: N=24, box 8.
LatticeConfig lattice_level(int level);

struct LatticeOperator {
  int n = 3;
  int N = 16;
  double half_width = 8.0;
  int d = 2;
  int spin = 2;   // 2^nhat
  int comps = 4;  // spin * d
  std::vector<CMat> gammas;
  std::vector<CMat> phi;  // per site, d x d
  std::vector<cplx> phi_flat;  // row-major copy used by the matrix-free apply; refresh with flatten()
  bool constant_phi = false;
  std::string label;

  double h() const { return 2.0 * half_width / N; }
  std::size_t sites() const;
  std::size_t dim() const { return sites() * comps; }
  Vec position(std::size_t site) const;
  void flatten();
};

// Samples p at the cell centres of the box with the chosen edge treatment.
LatticeOperator make_lattice(const Potential& p, const LatticeConfig& cfg);

// y = L x or y = L* x, antiperiodic spectral derivative.
void apply_lattice(const LatticeOperator& lat, const std::vector<cplx>& x, std::vector<cplx>& y, bool adjoint);
// Dense L (only for small dims).
CMat dense_lattice(const LatticeOperator& lat);
// max |<u, Q v> + <Q u, v>| over random unit vectors.
double lattice_skew_defect(const LatticeOperator& lat, unsigned seed = 3);

struct WittenSample {
  double lambda = 0.0;
  cplx z;
  cplx trace;
  std::size_t window_sites = 0;
};

struct WittenTraceResult {
  int n = 3;
  int N = 0;
  double half_width = 0.0;
  double h = 0.0;
  std::string label;
  std::string method;  // dense | pcg | commuting
  std::vector<WittenSample> samples;
  // f(z) per z: value at the largest Lambda, spread across Lambda
  std::vector<std::pair<cplx, cplx>> f_curve;
  std::vector<double> f_spread;
  // index: f(z) (1+z)^{n/2} averaged over z, spread over z
  double index_estimate = 0.0;
  double index_spread = 0.0;
  // z -> 0 at fixed Lambda (linear in z through the two smallest z), largest Lambda
  double index_z_first = 0.0;
  double max_solver_residual = 0.0;
  int max_iterations = 0;
  double max_imag = 0.0;
};

struct WittenOptions {
  double tol = 1e-8;
  int max_iter = 2000;
  std::size_t dense_limit = 1024;
};

WittenTraceResult witten_trace(const LatticeOperator& lat, const std::vector<double>& lambdas,
                               const std::vector<cplx>& zs, const WittenOptions& opt = {});

// target f(z) = ind (1+z)^{-n/2}
double witten_target(int index, int n, double z);

// Even-dimensional analog: n = 2 lattice with d = 1 scalar Phi; returns the largest
// |per-site component trace| of the resolvent difference.
double even_dimension_analog(int N, double half_width, cplx z);

}  // namespace callias
