#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/ooura_fourier_integrals.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "callias/helmholtz.hpp"
#include "callias/quadrature.hpp"

using namespace callias;

namespace {

// (2 pi^2 r)^{-1} int_0^inf xi sin(xi r) / (xi^2 + mu) dxi
cplx fourier_kernel_3d(cplx mu, double r) {
  boost::math::quadrature::ooura_fourier_sin<double> s;
  auto re = [&](double xi) { return (xi / (xi * xi + mu)).real(); };
  auto im = [&](double xi) { return (xi / (xi * xi + mu)).imag(); };
  const double a = s.integrate(re, r).first, b = s.integrate(im, r).first;
  return cplx(a, b) / (2 * kPi * kPi * r);
}

}  // namespace

TEST_CASE("n = 3 kernel is exp(-sqrt(mu) r) / (4 pi r)") {
  for (cplx mu : {cplx(1, 0), cplx(0.3, 0), cplx(2, 1.5)}) {
    const GreenKernel k(3, mu);
    for (double r : {0.05, 0.5, 1.0, 3.0, 10.0}) {
      const cplx exact = std::exp(-sqrt_branch(mu) * r) / (4 * kPi * r);
      CHECK(std::abs(kernel_eval(k, r) - exact) < 1e-13 * std::abs(exact));
    }
  }
}

TEST_CASE("n = 3 kernel matches its Fourier representation") {
  for (cplx mu : {cplx(1, 0), cplx(2, 1.5)}) {
    const GreenKernel k(3, mu);
    for (double r : {0.5, 1.0, 2.0}) {
      const cplx f = fourier_kernel_3d(mu, r);
      CHECK(std::abs(kernel_eval(k, r) - f) < 1e-8 * std::abs(f));
    }
  }
}

TEST_CASE("dimension raising E_{n+2} = -E_n' / (2 pi r)") {
  for (cplx mu : {cplx(1, 0), cplx(0.5, 0.7)}) {
    for (int n : {3, 5}) {
      const GreenKernel lo(n, mu), hi(n + 2, mu);
      for (double r : {0.2, 1.0, 4.0}) {
        const cplx lhs = kernel_eval(hi, r);
        const cplx rhs = -kernel_radial_derivative(lo, r) / (2 * kPi * r);
        CHECK(std::abs(lhs - rhs) < 1e-12 * std::abs(rhs));
      }
    }
  }
}

TEST_CASE("radial derivative matches finite differences") {
  const GreenKernel k(7, cplx(1.3, 0.4));
  for (double r : {0.3, 1.0, 2.5}) {
    const double h = 1e-5 * r;
    const cplx fd = (kernel_eval(k, r + h) - kernel_eval(k, r - h)) / (2 * h);
    CHECK(std::abs(kernel_radial_derivative(k, r) - fd) < 1e-6 * std::abs(fd));
    CHECK(q_mu(k, r) == doctest::Approx(std::abs(fd)).epsilon(1e-6));
  }
}

TEST_CASE("mu = 0 gives the Laplace kernel") {
  for (int n : {3, 5, 7}) {
    const GreenKernel k(n, 0.0);
    for (double r : {0.5, 2.0}) {
      const double exact = 1.0 / ((n - 2) * sphere_area(n) * std::pow(r, n - 2));
      CHECK(std::abs(kernel_eval(k, r) - exact) < 1e-12 * exact);
    }
  }
}

TEST_CASE("invalid kernels are rejected") {
  CHECK_THROWS_AS(GreenKernel(4, 1.0), DomainError);
  CHECK_THROWS_AS(GreenKernel(3, cplx(-1, 0)), DomainError);
  CHECK_THROWS_AS(resolvent_power_diagonal(3, 1, 0.0), DomainError);
}

TEST_CASE("resolvent power diagonal") {
  // n = 3, m = 2: (2 pi)^{-3} 4 pi int r^2 / (r^2 + 1)^2 dr = 1 / (8 pi)
  CHECK(std::abs(resolvent_power_diagonal(3, 2, 0.0) - 1.0 / (8 * kPi)) < 1e-12);
  boost::math::quadrature::exp_sinh<double> q;
  for (int n : {3, 5, 7})
    for (int m = n / 2 + 1; m <= n + 1; ++m)
      for (double z : {0.0, 0.5, 2.0}) {
        const double a = 1 + z;
        const double integral = q.integrate(
            [&](double r) { return r == 0.0 ? 0.0 : std::exp((n - 1) * std::log(r) - m * std::log(r * r + a)); });
        const double oracle = std::pow(2 * kPi, -n) * sphere_area(n) * integral;
        CHECK(std::abs(resolvent_power_diagonal(n, m, z) - oracle) < 1e-9 * oracle);
        CHECK(std::abs(resolvent_power_diagonal_closed(n, m, z) - oracle) < 1e-9 * oracle);
        if (2 * m >= n + 3)
          CHECK(std::abs(resolvent_power_diagonal(n, m, z)) <= resolvent_power_envelope(n, m, z) * (1 + 1e-12));
      }
  const cplx zc(0.5, 1.0);
  CHECK(std::abs(resolvent_power_diagonal(5, 4, zc) - resolvent_power_diagonal_closed(5, 4, zc)) < 1e-10);
}

TEST_CASE("radial symbol of exp(-mu r) / r in three dimensions") {
  for (double mu : {0.5, 1.0, 2.0})
    for (double xi : {0.0, 0.7, 2.0, 5.0}) {
      const double exact = 4 * kPi / (xi * xi + mu * mu);
      CHECK(radial_symbol(3, 1, mu, xi) == doctest::Approx(exact).epsilon(1e-8));
    }
}

TEST_CASE("every kernel inequality holds for n = 3 and 5") {
  for (int n : {3, 5}) {
    InequalityGrid g;
    g.n = n;
    g.samples = 100;
    for (const auto& id : inequality_ids()) {
      const auto rep = verify_inequality(id, g);
      CHECK_MESSAGE(rep.pass(), id << " n=" << n << " violation " << rep.max_violation);
      CHECK(rep.samples > 0);
    }
  }
  CHECK_THROWS_AS(verify_inequality("nonesuch"), DomainError);
}
