#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "callias/clifford.hpp"
#include "callias/witten.hpp"

using namespace callias;

namespace {

CMat random_matrix(int k, std::mt19937& rng) {
  std::normal_distribution<double> nd;
  CMat a(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) a(i, j) = cplx(nd(rng), nd(rng));
  return a;
}

LatticeConfig small_config(int N, double half_width, std::vector<double> lambdas) {
  LatticeConfig c;
  c.N = N;
  c.half_width = half_width;
  c.lambdas = std::move(lambdas);
  c.zs = {1.0};
  return c;
}

}  // namespace

TEST_CASE("internal trace of a Kronecker product") {
  std::mt19937 rng(1);
  const CMat x = random_matrix(3, rng), y = random_matrix(4, rng);
  CHECK(max_abs(internal_trace(kronecker(x, y), 3) - x.trace() * y) < 1e-12);
}

TEST_CASE("Witten regularization identity on random matrices") {
  for (unsigned seed = 0; seed < 10; ++seed) {
    const auto r = check_witten_identity(12, 3, cplx(0.7, 0.2 * seed), seed);
    CHECK(r.residual < 1e-11);
  }
}

TEST_CASE("internal trace cyclicity holds for B = b (x) I and fails otherwise") {
  CHECK(check_internal_trace_cyclicity(4, 3, 2) < 1e-12);
  CHECK(cyclicity_counterexample(4, 3, 2) > 1e-3);
}

TEST_CASE("Neumann expansion has an exact remainder") {
  for (int dim : {1, 2}) {
    const auto r = check_neumann_expansion(dim, 8, 3, 1.0, 5, 0.3);
    CHECK(r.residual < 1e-12);
    CHECK(r.convergent);
  }
  CHECK(neumann_constant_phi(2, 8, 1.0) == 0.0);
}

TEST_CASE("commutator identity in gradient form") {
  CHECK(check_commutator_identity(1, 32, 1.0, CommutatorForm::printed, 3) < 1e-10);
  CHECK(check_commutator_identity(2, 16, 1.0, CommutatorForm::gradient, 3) < 1e-10);
}

TEST_CASE("Vogt counterexample: trace of B(z) tends to 1 while the norm tends to 0") {
  const auto v = vogt_counterexample(1e-3, 1000000);
  CHECK(std::abs(v.trace - 1.0) < 1e-3);
  CHECK(v.norm == doctest::Approx(1e-3));
  const cplx z(0.2, 0.1);
  cplx direct = 0;
  for (int k = 1; k <= 200; ++k) direct += z * std::exp(-(k - 1.0) * z);
  CHECK(std::abs(vogt_counterexample(z, 200).trace - direct) < 1e-12);
}

TEST_CASE("lattice Dirac part is skew-adjoint") {
  const LatticeOperator lat = make_lattice(hedgehog(3), small_config(8, 4, {1}));
  CHECK(lattice_skew_defect(lat) < 1e-10);
}

TEST_CASE("matrix-free apply matches the dense operator and its adjoint") {
  const LatticeOperator lat = make_lattice(hedgehog(3), small_config(4, 2, {1}));
  const CMat l = dense_lattice(lat);
  std::mt19937 rng(4);
  std::normal_distribution<double> nd;
  std::vector<cplx> x(lat.dim()), y, ya;
  Eigen::VectorXcd xv(lat.dim());
  for (std::size_t i = 0; i < x.size(); ++i) xv(i) = x[i] = cplx(nd(rng), nd(rng));
  apply_lattice(lat, x, y, false);
  apply_lattice(lat, x, ya, true);
  const Eigen::VectorXcd ly = l * xv, lay = l.adjoint() * xv;
  double d = 0, da = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    d = std::max(d, std::abs(y[i] - ly(i)));
    da = std::max(da, std::abs(ya[i] - lay(i)));
  }
  CHECK(d < 1e-12);
  CHECK(da < 1e-12);
  const CMat ll = l.adjoint() * l;
  CHECK(is_hermitian(ll, 1e-10));
  Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (ll + ll.adjoint()), Eigen::EigenvaluesOnly);
  CHECK(es.eigenvalues().minCoeff() > -1e-10);
}

TEST_CASE("dense and iterative traces agree") {
  const LatticeOperator lat = make_lattice(hedgehog(3), small_config(6, 3, {1.0, 1.5}));
  WittenOptions dense, pcg;
  dense.dense_limit = 100000;
  pcg.dense_limit = 0;
  pcg.tol = 1e-11;
  const auto a = witten_trace(lat, {1.0, 1.5}, {0.5, 1.0}, dense);
  const auto b = witten_trace(lat, {1.0, 1.5}, {0.5, 1.0}, pcg);
  CHECK(a.method == "dense");
  CHECK(b.method == "pcg");
  REQUIRE(a.samples.size() == b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) CHECK(std::abs(a.samples[i].trace - b.samples[i].trace) < 1e-8);
}

TEST_CASE("constant potential gives exactly zero") {
  const LatticeConfig c = lattice_level(0);
  const LatticeOperator lat = make_lattice(constant_unitary(pauli(3)), c);
  const auto r = witten_trace(lat, c.lambdas, c.zs);
  CHECK(r.method == "commuting");
  for (const auto& s : r.samples) CHECK(s.trace == cplx(0, 0));
}

TEST_CASE("level 0 hedgehog has the right sign and the anti-hedgehog is its mirror") {
  const LatticeConfig c = lattice_level(0);
  const auto h = witten_trace(make_lattice(hedgehog(3), c), c.lambdas, {1.0});
  const auto a = witten_trace(make_lattice(anti_hedgehog(3), c), c.lambdas, {1.0});
  const double fh = h.f_curve.front().second.real(), fa = a.f_curve.front().second.real();
  CHECK(fh < -0.2);
  CHECK(std::abs(fh - witten_target(-1, 3, 1.0)) < 0.1);
  CHECK(std::abs(fh + fa) < 1e-8);
  CHECK(h.max_imag < 1e-8);
}

TEST_CASE("even-dimensional analog vanishes") {
  CHECK(even_dimension_analog(16, 8, 1.0) < 1e-9);
}

TEST_CASE("invalid lattice requests") {
  CHECK_THROWS_AS(lattice_level(3), DomainError);
  CHECK_THROWS_AS(make_lattice(hedgehog(5), LatticeConfig{}), DomainError);
  const LatticeOperator lat = make_lattice(hedgehog(3), small_config(8, 4, {1}));
  CHECK_THROWS_AS(witten_trace(lat, {3.0}, {1.0}), DomainError);
  CHECK_THROWS_AS(witten_trace(lat, {1.0}, {-1.0}), DomainError);
}
