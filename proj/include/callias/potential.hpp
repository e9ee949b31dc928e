#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "callias/types.hpp"

namespace callias {

struct Potential {
  int n = 3;
  int d = 2;
  std::function<CMat(const Vec&)> eval;
  // optional analytic derivative along e_j (0-based)
  std::function<CMat(const Vec&, int)> derivative;
  double gap_R = 0.0;
  double gap_c = 1.0;
  std::string label;
  bool experimental = false;
  // Phi^2 = I outside gap_R, so the potential is its own sign there
  bool sign_type = false;
  // block_embed: size of the zero block and the embedded base potential
  int null_block = 0;
  std::shared_ptr<const Potential> base;

  CMat operator()(const Vec& x) const { return eval(x); }
  // analytic derivative when available, otherwise fourth-order finite differences
  CMat deriv(const Vec& x, int j) const;
  std::vector<CMat> gradient(const Vec& x) const;
  bool analytic() const { return static_cast<bool>(derivative); }
};

using Params = std::map<std::string, std::string>;

// Generalized hedgehog x.gamma/|x| on |x| >= 1 with a smooth monotone radial
// cap inside the unit ball. n odd >= 3; n = 3 gives the Pauli hedgehog.
Potential hedgehog(int n = 3);
Potential anti_hedgehog(int n = 3);
Potential constant_unitary(const CMat& m, int n = 3);
// cos(t) sigma_3 + sin(t) sigma_1 with t = amp * x_1 / sqrt(1 + |x|^2); unitary everywhere.
Potential rotated_constant(double amp = 1.0, int n = 3);
// Hedgehog precomposed with azimuthal winding phi -> m phi (n = 3). Experimental.
Potential winding(int m);
Potential block_embed(const Potential& base, int l);
Potential shell_counterexample(int k_max = 60);
// Linear fixture sum_j x_j A_j whose epsilon-trace is 24i.
Potential local_24i();
// Phi(x) = A0 + sum_j x_j A_j
Potential affine(int n, const CMat& a0, const std::vector<CMat>& coef, const std::string& label);

// Named builtins: hedgehog, anti_hedgehog, constant, constant_unitary,
// rotated_constant, winding_m, block_embed, appendix_b (alias shells), local_24i.
Potential builtin(const std::string& name, const Params& params = {});

// "hedgehog", "hedgehog,n=5", "block:hedgehog,l=2", "winding_m,m=2", or a file path.
Potential potential_from_spec(const std::string& spec);

// Derived potentials.
Potential negated(const Potential& p);
Potential scaled(const Potential& p, double t);  // x -> p(t x)

struct Transform {
  int n = 3;
  std::function<Vec(const Vec&)> map;
  std::function<Eigen::MatrixXd(const Vec&)> jacobian;  // J(i,j) = d map_i / d x_j
  int orientation = 1;                                  // sign of det J
  std::string label;
};

Transform identity_transform(int n);
Transform scaling_transform(int n, double t);
Transform reflection_transform(int n, int axis);
Transform rotation_transform(int n, double angle, int a = 0, int b = 1);
Transform inversion_transform(int n);  // x / |x|^2

// p o T with chain-rule derivatives.
Potential compose(const Potential& p, const Transform& t);

// Smoothed sign U = phi(x) sgn(Phi(alpha(x))) with a radial retraction alpha that
// is the identity outside the gap radius. phi = 0 on B(tau/2), 1 outside B(tau).
// With gap radius 0 the cutoff is dropped (U = sgn Phi).
Potential smoothed_sign(const Potential& p, double tau = 1.0);

// Sign-type potential used by the index formula: the potential itself when it is
// unitary outside its gap radius, otherwise smoothed_sign. Block embeddings map
// to the block embedding of the base sign potential.
Potential sign_potential(const Potential& p);

// Convolution with the normalized bump exp(-1/(1-|y|^2)) scaled to radius gamma,
// tensor Gauss-Legendre with nodes_per_axis nodes.
Potential mollify(const Potential& p, double gamma, int nodes_per_axis = 8);

enum class AdmissibilityClass { admissible, callias_admissible, tau_admissible, general_C2, fails };
const char* to_string(AdmissibilityClass c);

struct Witness {
  Vec point;
  double value = 0.0;
  std::string what;
};

struct AdmissibilityReport {
  AdmissibilityClass cls = AdmissibilityClass::fails;
  double epsilon = 0.0;      // second-order decay exponent minus one
  double slope1 = 0.0;       // fitted log-log slope of first derivatives
  double slope2 = 0.0;       // fitted log-log slope of second derivatives
  std::vector<double> kappa; // observed bounds for derivative orders 1, 2
  bool hermitian = true;
  bool unitary_outside = false;
  bool unitary_everywhere = false;
  bool tau_admissible = false;  // U^2 = u I with 0 <= u <= 1 and u = 1 outside the gap radius
  double max_unitarity_defect = 0.0;
  std::size_t sample_count = 0;
  std::vector<Witness> witnesses;
};

struct ClassifyOptions {
  std::vector<double> radii;  // empty: geometric 1..1e3, 16 radii
  int directions = 32;
  double tol = 1e-8;
  unsigned seed = 12345;
};

AdmissibilityReport classify(const Potential& p, const ClassifyOptions& opt = {});

// Potential files.
// Text: "key = value" lines with keys name, n, d, params, gap_c, gap_R and, for
// name = matrix, entries const, coef1..coefn (rows separated by ';').
// Binary (little endian): uint64 n, uint64 d, uint64 count, then per sample n
// doubles of coordinates and d*d (re, im) doubles row-major.
Potential load_potential_file(const std::string& path);

struct GridSamples {
  int n = 0, d = 0;
  std::vector<Vec> points;
  std::vector<CMat> values;
};
void write_grid_file(const std::string& path, const GridSamples& g);
GridSamples read_grid_file(const std::string& path);
// Multilinear interpolation on a tensor-product grid.
Potential grid_potential(const GridSamples& g, const std::string& label);

// Parses a complex matrix literal "a b; c d" with entries like 1, -2.5, i, 3-2i, (1,2).
CMat parse_matrix(const std::string& s);

}  // namespace callias
