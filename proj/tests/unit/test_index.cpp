#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "callias/clifford.hpp"
#include "callias/index.hpp"
#include "callias/quadrature.hpp"

using namespace callias;

namespace {

CMat pauli_hedgehog(const Eigen::Vector3d& x) {
  const double r = x.norm();
  return (x(0) * pauli(1) + x(1) * pauli(2) + x(2) * pauli(3)) / r;
}

// surface integral of sum eps tr(U d_a U d_b U) x_c over the radius-r sphere,
// midpoint rule in (theta, phi), central differences
cplx naive_surface_integral(double r, int nt, int np) {
  const double h = 1e-5;
  cplx total = 0;
  for (int it = 0; it < nt; ++it) {
    const double th = kPi * (it + 0.5) / nt;
    for (int ip = 0; ip < np; ++ip) {
      const double ph = 2 * kPi * (ip + 0.5) / np;
      const Eigen::Vector3d x(r * std::sin(th) * std::cos(ph), r * std::sin(th) * std::sin(ph), r * std::cos(th));
      CMat d[3];
      for (int j = 0; j < 3; ++j) {
        Eigen::Vector3d e = Eigen::Vector3d::Zero();
        e(j) = h;
        d[j] = (pauli_hedgehog(x + e) - pauli_hedgehog(x - e)) / (2 * h);
      }
      const CMat u = pauli_hedgehog(x);
      cplx s = 0;
      const int perms[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {2, 1, 0}, {1, 0, 2}};
      for (int p = 0; p < 6; ++p) {
        const double sg = p < 3 ? 1.0 : -1.0;
        s += sg * (u * d[perms[p][0]] * d[perms[p][1]]).trace() * x(perms[p][2]);
      }
      total += s * r * r * std::sin(th) * (kPi / nt) * (2 * kPi / np);
    }
  }
  return total;
}

}  // namespace

TEST_CASE("surface integral matches a hand-rolled quadrature") {
  const Potential h = hedgehog(3);
  const double r = 3.0;
  const SphereRule rule = make_sphere_rule(3, 31);
  cplx lib = 0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    lib += rule.weights[i] * surface_integrand(h, r * rule.nodes[i]) * r * r;
  const cplx naive = naive_surface_integral(r, 120, 240);
  CHECK(std::abs(lib - naive) < 1e-4 * std::abs(naive));
  CHECK(std::abs(surface_index(h, r, rule) - index_prefactor(3) / (2 * r) * lib) < 1e-12);
}

TEST_CASE("hedgehog indices") {
  const auto r3 = callias_index(hedgehog(3));
  CHECK(r3.converged);
  CHECK(std::abs(r3.index_real + 1.0) < 1e-6);
  CHECK(r3.imag_residual < 1e-9);
  const auto r5 = callias_index(hedgehog(5));
  CHECK(std::abs(r5.index_real - 1.0) < 1e-6);
  CHECK(std::abs(callias_index(anti_hedgehog(3)).index_real - 1.0) < 1e-6);
}

TEST_CASE("admissible potentials have index zero") {
  CHECK(std::abs(callias_index(sign_potential(constant_unitary(pauli(3)))).index_real) < 1e-6);
  CHECK(std::abs(callias_index(sign_potential(rotated_constant())).index_real) < 1e-6);
}

TEST_CASE("block embedding keeps the index") {
  const auto r = callias_index(sign_potential(block_embed(hedgehog(3), 2)));
  CHECK(std::abs(r.index_real + 1.0) < 1e-6);
}

TEST_CASE("surface and volume forms agree") {
  const Potential h = hedgehog(3);
  const SphereRule rule = make_sphere_rule(3, 31);
  const cplx s = surface_index(h, 4.0, rule), v = volume_index(h, 4.0, rule);
  CHECK(std::abs(s - v) < 1e-6);
}

TEST_CASE("the surface value is independent of the radius outside the gap") {
  const Potential h = hedgehog(3);
  const SphereRule rule = make_sphere_rule(3, 31);
  CHECK(std::abs(surface_index(h, 1.5, rule) - surface_index(h, 40.0, rule)) < 1e-10);
}

TEST_CASE("invariance under reflection, rotation and scaling") {
  const Potential h = hedgehog(3);
  CHECK(invariance_check(h, reflection_transform(3, 1)).difference < 1e-5);
  CHECK(invariance_check(h, rotation_transform(3, 0.9, 1, 2)).difference < 1e-5);
  CHECK(scaling_check(h, 3.0) < 1e-5);
  std::vector<Vec> pts;
  for (int i = 0; i < 5; ++i) pts.push_back(Vec::Constant(3, 0.5 + i));
  CHECK(chain_rule_check(h, rotation_transform(3, 0.4, 0, 2), pts) < 1e-6);
}

TEST_CASE("even dimensions and bad radii are rejected") {
  Potential p;
  p.n = 2;
  p.d = 2;
  p.eval = [](const Vec&) { return pauli(3); };
  CHECK_THROWS_AS(callias_index(p), DomainError);
  CHECK_THROWS_AS(callias_index(smoothed_sign(hedgehog(3)), {0.1}, make_sphere_rule(3, 11)), DomainError);
}
