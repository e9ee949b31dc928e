#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "callias/clifford.hpp"
#include "callias/matrixfn.hpp"

using namespace callias;

namespace {

struct Gapped {
  CMat a;
  double gap;
};

// V diag(lambda) V* with |lambda| >= 0.1 and mixed signs
Gapped random_gapped(int k, std::mt19937& rng) {
  std::normal_distribution<double> nd;
  std::uniform_real_distribution<double> ur(0.1, 3.0);
  CMat g(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) g(i, j) = cplx(nd(rng), nd(rng));
  const CMat v = g.householderQr().householderQ();
  Vec lam(k);
  for (int i = 0; i < k; ++i) lam(i) = (i % 2 ? -1.0 : 1.0) * ur(rng);
  CMat a = v * lam.cast<cplx>().asDiagonal() * v.adjoint();
  a = 0.5 * (a + a.adjoint());
  return {a, lam.cwiseAbs().minCoeff() * 0.999};
}

}  // namespace

TEST_CASE("sign_integral matches sign_spectral on 100 random gapped matrices") {
  std::mt19937 rng(1);
  double dev = 0, sq = 0, pol = 0;
  for (int t = 0; t < 100; ++t) {
    const auto g = random_gapped(2 + t % 7, rng);
    const CMat s1 = sign_spectral(g.a, g.gap);
    const CMat s2 = sign_integral(g.a, g.gap * g.gap);
    const auto k = g.a.rows();
    dev = std::max(dev, max_abs(s1 - s2));
    sq = std::max(sq, max_abs(s1 * s1 - CMat::Identity(k, k)));
    pol = std::max(pol, max_abs(s1 * abs_matrix(g.a) - g.a));
  }
  CHECK(dev < 1e-7);
  CHECK(sq < 1e-8);
  CHECK(pol < 1e-8);
}

TEST_CASE("sign of a diagonal matrix is the entrywise sign") {
  CMat a = CMat::Zero(3, 3);
  a(0, 0) = 2.0;
  a(1, 1) = -0.5;
  a(2, 2) = 7.0;
  const CMat s = sign_spectral(a, 0.1);
  CHECK(std::abs(s(0, 0) - 1.0) < 1e-14);
  CHECK(std::abs(s(1, 1) + 1.0) < 1e-14);
  CHECK(max_abs(sign_integral(a, 0.25) - s) < 1e-10);
}

TEST_CASE("sign of a unitary Hermitian matrix is itself") {
  const CMat u = (pauli(1) + pauli(3)) / std::sqrt(2.0);
  CHECK(max_abs(sign_spectral(u, 0.5) - u) < 1e-14);
}

TEST_CASE("singular input raises NotInvertibleError with the eigenvalue") {
  CMat a = CMat::Zero(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = 1e-9;
  try {
    sign_spectral(a, 1e-3);
    FAIL("expected NotInvertibleError");
  } catch (const NotInvertibleError& e) {
    CHECK(e.min_abs_eigenvalue == doctest::Approx(1e-9));
  }
  CHECK_THROWS_AS(sign_integral(a, 1e-3), DomainError);
}

TEST_CASE("non-Hermitian input is rejected") {
  CMat a = CMat::Zero(2, 2);
  a(0, 1) = 1.0;
  CHECK_THROWS_AS(sign_spectral(a, 0.1), DomainError);
  CHECK_THROWS_AS(spectral(a), DomainError);
}

TEST_CASE("sign_derivative matches finite differences") {
  std::mt19937 rng(3);
  const auto g = random_gapped(4, rng);
  const auto h = random_gapped(4, rng);
  const auto eig = spectral(g.a);
  const CMat d = sign_derivative(eig, h.a);
  const double e = 1e-5;
  const CMat fd = (sign_spectral(g.a + e * h.a, 0.0) - sign_spectral(g.a - e * h.a, 0.0)) / (2 * e);
  CHECK(max_abs(d - fd) < 1e-6);
}

TEST_CASE("fourth-order finite differences") {
  MatrixField f = [](const Vec& x) {
    CMat m(1, 1);
    m(0, 0) = cplx(std::sin(x(0)) * std::exp(x(1)), x(0) * x(0) * x(1));
    return m;
  };
  Vec x(2);
  x << 0.3, -0.7;
  const CMat d0 = fd_derivative(f, x, 0), d1 = fd_derivative(f, x, 1);
  CHECK(std::abs(d0(0, 0) - cplx(std::cos(0.3) * std::exp(-0.7), 2 * 0.3 * -0.7)) < 1e-10);
  CHECK(std::abs(d1(0, 0) - cplx(std::sin(0.3) * std::exp(-0.7), 0.09)) < 1e-10);
  CHECK_THROWS_AS(fd_derivative(f, x, 2), DomainError);
}
