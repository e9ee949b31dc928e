#include "callias/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <map>
#include <mutex>

namespace callias {

Rule1D gauss_gegenbauer(int q, double a) {
  if (q < 1) throw DomainError("gauss_gegenbauer: need at least one node");
  if (!(a > -1.0)) throw DomainError("gauss_gegenbauer: exponent must exceed -1");
  static std::mutex mu;
  static std::map<std::pair<int, double>, Rule1D> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({q, a});
    if (it != cache.end()) return it->second;
  }
  // monic recurrence for (1 - t^2)^a = Gegenbauer with lambda = a + 1/2
  const double lam = a + 0.5;
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(q, q);
  for (int j = 1; j < q; ++j) {
    const double b = j * (j + 2 * lam - 1) / (4.0 * (j + lam) * (j + lam - 1));
    J(j, j - 1) = J(j - 1, j) = std::sqrt(b);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  const double mu0 = std::sqrt(kPi) * std::tgamma(a + 1) / std::tgamma(a + 1.5);
  Rule1D r;
  for (int i = 0; i < q; ++i) {
    r.nodes.push_back(es.eigenvalues()(i));
    const double v = es.eigenvectors()(0, i);
    r.weights.push_back(mu0 * v * v);
  }
  // exact symmetry
  for (int i = 0; i < q / 2; ++i) {
    const double x = 0.5 * (r.nodes[q - 1 - i] - r.nodes[i]);
    const double w = 0.5 * (r.weights[i] + r.weights[q - 1 - i]);
    r.nodes[i] = -x;
    r.nodes[q - 1 - i] = x;
    r.weights[i] = r.weights[q - 1 - i] = w;
  }
  if (q % 2) r.nodes[q / 2] = 0.0;
  std::lock_guard<std::mutex> lock(mu);
  cache[{q, a}] = r;
  return r;
}

Rule1D gauss_legendre(int q, double lo, double hi) {
  Rule1D r = gauss_gegenbauer(q, 0.0);
  const double h = 0.5 * (hi - lo), m = 0.5 * (hi + lo);
  for (int i = 0; i < q; ++i) {
    r.nodes[i] = m + h * r.nodes[i];
    r.weights[i] *= h;
  }
  return r;
}

double sphere_area(int n) { return 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n); }

SphereRule make_sphere_rule(int n, int degree) {
  if (n < 2) throw DomainError("make_sphere_rule: n must be >= 2");
  if (degree < 1) throw DomainError("make_sphere_rule: degree must be >= 1");
  SphereRule rule;
  rule.n = n;
  rule.degree = degree;
  const int nphi = degree + 1;
  const int q = degree / 2 + 1;
  std::vector<Rule1D> axes;
  for (int i = 1; i <= n - 2; ++i) axes.push_back(gauss_gegenbauer(q, 0.5 * (n - 2 - i)));

  std::vector<int> idx(axes.size(), 0);
  while (true) {
    // walk the polar product, then the azimuth
    double w = 1.0, s = 1.0;
    Vec x(n);
    for (std::size_t i = 0; i < axes.size(); ++i) {
      const double t = axes[i].nodes[idx[i]];
      x(i) = s * t;
      w *= axes[i].weights[idx[i]];
      s *= std::sqrt(std::max(0.0, 1.0 - t * t));
    }
    for (int k = 0; k < nphi; ++k) {
      const double phi = 2.0 * kPi * (k + 0.5) / nphi;
      Vec y = x;
      y(n - 2) = s * std::cos(phi);
      y(n - 1) = s * std::sin(phi);
      rule.nodes.push_back(y);
      rule.weights.push_back(w * 2.0 * kPi / nphi);
    }
    std::size_t i = 0;
    for (; i < axes.size(); ++i) {
      if (++idx[i] < q) break;
      idx[i] = 0;
    }
    if (i == axes.size()) break;
  }
  return rule;
}

double sphere_moment(const std::vector<int>& alpha) {
  double num = 1.0, sum = 0.0;
  for (int a : alpha) {
    if (a % 2) return 0.0;
    const double b = 0.5 * (a + 1);
    num *= std::tgamma(b);
    sum += b;
  }
  return 2.0 * num / std::tgamma(sum);
}

}  // namespace callias
