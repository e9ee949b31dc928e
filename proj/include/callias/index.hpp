#pragma once

#include <string>
#include <vector>

#include "callias/potential.hpp"
#include "callias/quadrature.hpp"

namespace callias {

// (i / 8 pi)^{nhat} / nhat!  -- the index formula prefactor before the 1/(2 Lambda).
cplx index_prefactor(int n);
// c_n = prefactor / 2, used with 1/Lambda in the surface form and with the volume form.
cplx c_n(int n);

// sum over permutations of eps_{i1..in} tr(U d_{i1}U ... d_{i(n-1)}U)(x) x_{in}
cplx surface_integrand(const Potential& u, const Vec& x);
// M_U(x) = sum eps tr(d_{i1}U ... d_{in}U)(x)
cplx m_density(const Potential& u, const Vec& x);

// prefactor / (2 Lambda) * surface integral over Lambda S^{n-1}
cplx surface_index(const Potential& u, double radius, const SphereRule& rule);

struct RadiusValue {
  double radius = 0.0;
  cplx value;
};

struct IndexResult {
  int n = 3;
  std::string label;
  std::vector<RadiusValue> per_radius;
  cplx extrapolated;
  double index_real = 0.0;
  double imag_residual = 0.0;
  double integer_distance = 0.0;
  double extrapolation_residual = 0.0;
  cplx c_n_used;
  bool plateau = false;
  bool converged = false;
  std::string method;  // "plateau" or "richardson"
  std::string note;
};

struct IndexOptions {
  std::vector<double> radii;  // empty: {R+1, 2(R+1), 4(R+1), 8(R+1)}
  int degree = 0;             // 0: 31 for n = 3, 11 for n = 5, 3 for n >= 7
  double plateau_tol = 1e-7;
  double tol = 1e-5;
};

std::vector<double> default_radii(const Potential& u);
int default_degree(int n);

// u must be sign-type outside its gap radius (see sign_potential).
IndexResult callias_index(const Potential& u, const IndexOptions& opt = {});
IndexResult callias_index(const Potential& u, const std::vector<double>& radii, const SphereRule& rule,
                          const IndexOptions& opt = {});

// c_n * integral of M_U over B(0, Lambda), radial Gauss-Legendre on panels split at
// the structural radii of u, sphere rule on each shell.
cplx volume_index(const Potential& u, double radius, const SphereRule& rule, int radial_nodes = 40);

// max over samples of |M_{U o T}(x) - M_U(T x) det T'(x)|; the composite derivative
// is taken by finite differences of U o T, independent of the chain rule.
double chain_rule_check(const Potential& u, const Transform& t, const std::vector<Vec>& samples);

struct InvarianceResult {
  double index_u = 0.0;
  double signed_index_composed = 0.0;
  double difference = 0.0;
};
InvarianceResult invariance_check(const Potential& u, const Transform& t, const IndexOptions& opt = {});

// |index(u) - index(u(t .))|
double scaling_check(const Potential& u, double t, const IndexOptions& opt = {});

std::string index_result_text(const IndexResult& r);
std::string index_result_csv(const IndexResult& r);

}  // namespace callias
