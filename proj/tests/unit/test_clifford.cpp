#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "callias/clifford.hpp"
#include "callias/quadrature.hpp"

using namespace callias;

namespace {

// sign of a permutation by counting inversions
int inversion_sign(const std::vector<int>& p) {
  int inv = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) inv += p[i] > p[j];
  return inv % 2 ? -1 : 1;
}

CMat product(const CliffordAlgebra& alg, const std::vector<int>& idx) {
  CMat m = CMat::Identity(alg.dim(), alg.dim());
  for (int i : idx) m = m * alg[i];
  return m;
}

CMat random_matrix(int k, std::mt19937& rng) {
  std::normal_distribution<double> nd;
  CMat a(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) a(i, j) = cplx(nd(rng), nd(rng));
  return a;
}

}  // namespace

TEST_CASE("pauli matrices multiply as sigma_1 sigma_2 = i sigma_3") {
  CHECK(max_abs(pauli(1) * pauli(2) - cplx(0, 1) * pauli(3)) < 1e-15);
  CHECK(max_abs(pauli(2) * pauli(3) - cplx(0, 1) * pauli(1)) < 1e-15);
  CHECK(max_abs(pauli(0) - CMat::Identity(2, 2)) == 0.0);
  CHECK_THROWS_AS(pauli(4), DomainError);
}

TEST_CASE("generators are Hermitian, unitary and anticommute for n = 2..8") {
  for (int n = 2; n <= 8; ++n) {
    const auto& alg = build_algebra(n);
    CHECK(alg.dim() == (1 << (n / 2)));
    CHECK(static_cast<int>(alg.gammas.size()) == n);
    double worst = 0;
    for (int j = 1; j <= n; ++j) {
      worst = std::max(worst, max_abs(alg[j] - alg[j].adjoint()));
      for (int k = 1; k <= n; ++k) {
        const CMat ac = alg[j] * alg[k] + alg[k] * alg[j];
        const CMat expect = (j == k ? 2.0 : 0.0) * CMat::Identity(alg.dim(), alg.dim());
        worst = std::max(worst, max_abs(ac - expect));
      }
    }
    CHECK(worst < 1e-12);
    CHECK(algebra_defect(alg) < 1e-12);
  }
}

TEST_CASE("build_algebra memoizes and rejects small n") {
  CHECK(&build_algebra(5) == &build_algebra(5));
  CHECK_THROWS_AS(build_algebra(1), DomainError);
}

TEST_CASE("full-length trace equals (2i)^nhat epsilon for n = 3, 5, 7") {
  for (int n : {3, 5, 7}) {
    const auto& alg = build_algebra(n);
    cplx expect = 1.0;
    for (int k = 0; k < n / 2; ++k) expect *= cplx(0, 2);
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 1);
    double worst = 0;
    int count = 0;
    do {
      const cplx t = gamma_trace(alg, p);
      worst = std::max(worst, std::abs(t - double(inversion_sign(p)) * expect));
      worst = std::max(worst, std::abs(t - product(alg, p).trace()));
      ++count;
    } while (std::next_permutation(p.begin(), p.end()));
    CHECK(worst <= 1e-12);
    CHECK(count == (n == 3 ? 6 : n == 5 ? 120 : 5040));
  }
}

TEST_CASE("odd products of fewer than n distinct generators are traceless") {
  for (int n : {3, 4, 5, 6, 7}) {
    const auto& alg = build_algebra(n);
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      const int k = __builtin_popcount(mask);
      if (k % 2 == 0 || k >= n) continue;
      std::vector<int> idx;
      for (int j = 0; j < n; ++j)
        if (mask & (1u << j)) idx.push_back(j + 1);
      CHECK(std::abs(gamma_trace(alg, idx)) <= 1e-12);
    }
  }
}

TEST_CASE("gamma_trace rejects out-of-range indices") {
  CHECK_THROWS_AS(gamma_trace(build_algebra(3), {1, 4}), DomainError);
}

TEST_CASE("epsilon_symbol") {
  CHECK(epsilon_symbol({1, 2, 3}) == 1);
  CHECK(epsilon_symbol({2, 1, 3}) == -1);
  CHECK(epsilon_symbol({3, 1, 2}) == 1);
  CHECK(epsilon_symbol({1, 1, 2}) == 0);
  CHECK(epsilon_symbol({}) == 1);
}

TEST_CASE("for_each_permutation visits k! permutations with inversion parity") {
  for (int k = 1; k <= 6; ++k) {
    int count = 0;
    bool ok = true;
    for_each_permutation(k, [&](const std::vector<int>& p, int sign) {
      ++count;
      ok = ok && sign == inversion_sign(p);
    });
    int fact = 1;
    for (int i = 2; i <= k; ++i) fact *= i;
    CHECK(count == fact);
    CHECK(ok);
  }
}

TEST_CASE("antisymmetrized traces agree with brute force") {
  std::mt19937 rng(5);
  for (int k : {2, 3, 4, 5}) {
    std::vector<CMat> mats;
    for (int i = 0; i < k; ++i) mats.push_back(random_matrix(3, rng));
    std::vector<double> w(k);
    for (auto& v : w) v = std::normal_distribution<double>()(rng);
    const CMat lead = random_matrix(3, rng);
    std::vector<int> p(k);
    std::iota(p.begin(), p.end(), 0);
    cplx plain = 0, weighted = 0;
    do {
      CMat m = CMat::Identity(3, 3);
      for (int i : p) m = m * mats[i];
      plain += double(inversion_sign(p)) * m.trace();
      CMat q = lead;
      for (int i = 0; i + 1 < k; ++i) q = q * mats[p[i]];
      weighted += double(inversion_sign(p)) * q.trace() * w[p[k - 1]];
    } while (std::next_permutation(p.begin(), p.end()));
    CHECK(std::abs(antisymmetrized_trace(mats) - plain) < 1e-10 * (1 + std::abs(plain)));
    CHECK(std::abs(antisymmetrized_trace_weighted(lead, mats, w) - weighted) < 1e-10 * (1 + std::abs(weighted)));
  }
}

TEST_CASE("antisymmetrized trace of the generators themselves") {
  // sum_p eps(p) tr(gamma_p1 ... gamma_pn) = n! (2i)^nhat
  const auto& alg = build_algebra(5);
  const cplx t = antisymmetrized_trace(alg.gammas);
  CHECK(std::abs(t - 120.0 * cplx(-4, 0)) < 1e-9);
}

TEST_CASE("kronecker product layout") {
  const CMat a = pauli(1), b = pauli(3);
  const CMat k = kronecker(a, b);
  CHECK(k.rows() == 4);
  CHECK(k(0, 2) == cplx(1, 0));
  CHECK(k(1, 3) == cplx(-1, 0));
  CHECK(k(0, 0) == cplx(0, 0));
}

TEST_CASE("sphere rules integrate monomials exactly") {
  for (int n : {2, 3, 5, 7}) {
    const int deg = n == 7 ? 5 : 9;
    const auto rule = make_sphere_rule(n, deg);
    double wsum = 0;
    for (double w : rule.weights) wsum += w;
    CHECK(std::abs(wsum - sphere_area(n)) < 1e-12 * sphere_area(n));
    std::mt19937 rng(n);
    for (int t = 0; t < 20; ++t) {
      std::vector<int> alpha(n, 0);
      int total = std::uniform_int_distribution<int>(0, deg)(rng);
      for (int i = 0; i < total; ++i) alpha[std::uniform_int_distribution<int>(0, n - 1)(rng)]++;
      double q = 0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        double v = rule.weights[i];
        for (int a = 0; a < n; ++a) v *= std::pow(rule.nodes[i](a), alpha[a]);
        q += v;
      }
      CHECK(std::abs(q - sphere_moment(alpha)) < 1e-12);
    }
  }
}

TEST_CASE("sphere areas") {
  CHECK(std::abs(sphere_area(2) - 2 * kPi) < 1e-14);
  CHECK(std::abs(sphere_area(3) - 4 * kPi) < 1e-14);
  CHECK(std::abs(sphere_area(5) - 8 * kPi * kPi / 3) < 1e-13);
}
