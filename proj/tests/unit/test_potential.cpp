#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>

#include "callias/clifford.hpp"
#include "callias/matrixfn.hpp"
#include "callias/potential.hpp"

using namespace callias;

namespace {

Vec random_point(int n, double rmin, double rmax, std::mt19937& rng) {
  std::normal_distribution<double> nd;
  std::uniform_real_distribution<double> ur(rmin, rmax);
  Vec x(n);
  for (int i = 0; i < n; ++i) x(i) = nd(rng);
  return x * (ur(rng) / x.norm());
}

double derivative_gap(const Potential& p, const Vec& x) {
  double worst = 0;
  for (int j = 0; j < p.n; ++j) worst = std::max(worst, max_abs(p.deriv(x, j) - fd_derivative(p.eval, x, j)));
  return worst;
}

}  // namespace

TEST_CASE("hedgehog is Hermitian everywhere and unitary outside the unit ball") {
  std::mt19937 rng(5);
  for (int n : {3, 5, 7}) {
    const Potential h = hedgehog(n);
    CHECK(h.d == build_algebra(n).dim());
    for (int t = 0; t < 40; ++t) {
      const Vec x = random_point(n, 0.01, 20, rng);
      const CMat v = h(x);
      CHECK(is_hermitian(v, 1e-13));
      if (x.norm() >= 1.0) CHECK(is_unitary(v, 1e-12));
    }
  }
  Vec x = Vec::Zero(3);
  x(0) = 2.0;
  CHECK(max_abs(hedgehog(3)(x) - pauli(1)) < 1e-15);
}

TEST_CASE("analytic derivatives agree with finite differences") {
  std::mt19937 rng(7);
  for (const Potential& p : {hedgehog(3), hedgehog(5), anti_hedgehog(3), rotated_constant(0.8), winding(2)}) {
    for (int t = 0; t < 20; ++t) {
      const Vec x = random_point(p.n, 0.2, 10, rng);
      CHECK_MESSAGE(derivative_gap(p, x) < 1e-7, p.label);
    }
  }
}

TEST_CASE("anti-hedgehog is the hedgehog reflected in the first axis") {
  std::mt19937 rng(9);
  const Potential h = hedgehog(3), a = anti_hedgehog(3);
  const Potential r = compose(h, reflection_transform(3, 0));
  for (int t = 0; t < 20; ++t) {
    const Vec x = random_point(3, 1.0, 5, rng);
    // reflection flips the sign of one Pauli component, which is unitarily equivalent
    CHECK(std::abs(r(x).trace() - a(x).trace()) < 1e-14);
    CHECK(std::abs((r(x) * r(x)).trace() - 2.0) < 1e-12);
  }
}

TEST_CASE("compose applies the chain rule") {
  std::mt19937 rng(11);
  const Potential h = hedgehog(3);
  for (const Transform& t : {rotation_transform(3, 0.7, 0, 2), scaling_transform(3, 2.5), inversion_transform(3)}) {
    const Potential c = compose(h, t);
    for (int s = 0; s < 10; ++s) {
      const Vec x = random_point(3, 0.3, 0.9, rng);
      CHECK(max_abs(c(x) - h(t.map(x))) < 1e-14);
      CHECK_MESSAGE(derivative_gap(c, x) < 1e-6, t.label);
    }
  }
}

TEST_CASE("block embedding pads with a zero block") {
  const Potential b = block_embed(hedgehog(3), 2);
  CHECK(b.d == 4);
  CHECK(b.null_block == 2);
  Vec x = Vec::Zero(3);
  x(2) = 3.0;
  const CMat v = b(x);
  CHECK(max_abs(v.topLeftCorner(2, 2)) == 0.0);
  CHECK(max_abs(v.bottomRightCorner(2, 2) - pauli(3)) < 1e-15);
}

TEST_CASE("smoothed sign is unitary outside tau and vanishes near the origin") {
  const Potential s = smoothed_sign(hedgehog(3), 1.0);
  std::mt19937 rng(13);
  for (int t = 0; t < 30; ++t) {
    const Vec x = random_point(3, 1.0, 30, rng);
    CHECK(is_unitary(s(x), 1e-10));
  }
  CHECK(max_abs(s(Vec::Constant(3, 0.1))) < 1e-15);
}

TEST_CASE("sign_potential keeps sign-type potentials") {
  const Potential h = hedgehog(3);
  const Potential u = sign_potential(h);
  const Vec x = Vec::Constant(3, 2.0);
  CHECK(max_abs(u(x) - h(x)) < 1e-14);
}

TEST_CASE("mollification of a constant is the constant") {
  const Potential m = mollify(constant_unitary(pauli(2)), 0.5, 6);
  CHECK(max_abs(m(Vec::Constant(3, 0.3)) - pauli(2)) < 1e-12);
}

TEST_CASE("classification of the builtins") {
  CHECK(classify(constant_unitary(pauli(3))).cls == AdmissibilityClass::admissible);
  CHECK(classify(rotated_constant()).cls == AdmissibilityClass::admissible);
  const auto hr = classify(hedgehog(3));
  CHECK(hr.cls == AdmissibilityClass::callias_admissible);
  CHECK(hr.epsilon == doctest::Approx(1.0).epsilon(0.05));
  CHECK(hr.slope1 == doctest::Approx(-1.0).epsilon(0.05));
  CHECK(classify(block_embed(hedgehog(3), 2)).cls == AdmissibilityClass::general_C2);
}

TEST_CASE("named builtins and spec strings") {
  CHECK(builtin("hedgehog", {{"n", "5"}}).n == 5);
  CHECK(potential_from_spec("hedgehog,n=7").d == 8);
  CHECK(potential_from_spec("block:hedgehog,l=2").d == 4);
  CHECK_THROWS_AS(builtin("nonesuch"), DomainError);
  CHECK_THROWS_AS(builtin("hedgehog", {{"bogus", "1"}}), DomainError);
  CHECK_THROWS_AS(hedgehog(1), DomainError);
  CHECK_THROWS_AS(potential_from_spec("winding_m,n=5"), DomainError);
}

TEST_CASE("matrix literals") {
  const CMat m = parse_matrix("1 -i; i -1");
  CHECK(m(0, 1) == cplx(0, -1));
  CHECK(m(1, 0) == cplx(0, 1));
  CHECK(parse_matrix("(1,2) 3-2i; 0 2.5")(0, 0) == cplx(1, 2));
  CHECK(parse_matrix("(1,2) 3-2i; 0 2.5")(0, 1) == cplx(3, -2));
  CHECK_THROWS_AS(parse_matrix("1 2; 3"), DomainError);
}

TEST_CASE("text potential files") {
  const std::string path = "test_potential_text.pot";
  {
    std::ofstream f(path);
    f << "name = matrix\nn = 3\nd = 2\nconst = 0 0; 0 0\ncoef1 = 0 1; 1 0\ncoef2 = 0 -i; i 0\ncoef3 = 1 0; 0 -1\n";
  }
  const Potential p = load_potential_file(path);
  std::remove(path.c_str());
  const Vec x = Vec::Constant(3, 1.5);
  CHECK(max_abs(p(x) - 1.5 * (pauli(1) + pauli(2) + pauli(3))) < 1e-14);
}

TEST_CASE("binary grid files round trip and interpolate linear data exactly") {
  GridSamples g;
  g.n = 3;
  g.d = 2;
  const CMat a = pauli(1), b = pauli(3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        Vec x(3);
        x << i - 1.0, j - 1.0, k - 1.0;
        g.points.push_back(x);
        g.values.push_back(x(0) * a + x(2) * b);
      }
  const std::string path = "test_potential_grid.bin";
  write_grid_file(path, g);
  const GridSamples r = read_grid_file(path);
  std::remove(path.c_str());
  REQUIRE(r.points.size() == g.points.size());
  CHECK(max_abs(r.values[7] - g.values[7]) == 0.0);
  const Potential p = grid_potential(r, "grid");
  Vec x(3);
  x << 0.3, -0.4, 0.7;
  CHECK(max_abs(p(x) - (0.3 * a + 0.7 * b)) < 1e-14);
}
