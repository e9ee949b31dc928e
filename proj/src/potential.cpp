#include "callias/potential.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <random>
#include <sstream>

#include "callias/clifford.hpp"
#include "callias/matrixfn.hpp"
#include "callias/quadrature.hpp"
#include "callias/smooth.hpp"

namespace callias {

CMat Potential::deriv(const Vec& x, int j) const {
  if (derivative) return derivative(x, j);
  return fd_derivative(eval, x, j);
}

std::vector<CMat> Potential::gradient(const Vec& x) const {
  std::vector<CMat> g;
  g.reserve(n);
  for (int j = 0; j < n; ++j) g.push_back(deriv(x, j));
  return g;
}

namespace {

void require_dim(const Vec& x, int n, const char* who) {
  if (x.size() != n) throw DomainError(std::string(who) + ": point has wrong dimension");
}

CMat gamma_dot(const CliffordAlgebra& alg, const Vec& x) {
  CMat m = CMat::Zero(alg.dim(), alg.dim());
  for (int j = 0; j < alg.n; ++j) m += x(j) * alg.gammas[j];
  return m;
}

// Radial profile g(r) = rho(r) / r of the hedgehog cap:
// rho = r (1 - b) + b with b a smooth step from r = 1/4 to r = 1.
struct Cap {
  static constexpr double lo = 0.25;
  static double b(double r) { return SmoothStep::value((r - lo) / (1 - lo)); }
  static double bp(double r) { return SmoothStep::deriv((r - lo) / (1 - lo)) / (1 - lo); }
  static double g(double r) {
    if (r >= 1) return 1.0 / r;
    if (r <= lo) return 1.0;
    const double bb = b(r);
    return 1 - bb + bb / r;
  }
  static double gp(double r) {
    if (r >= 1) return -1.0 / (r * r);
    if (r <= lo) return 0.0;
    const double bb = b(r), q = bp(r);
    return -q + q / r - bb / (r * r);
  }
};

}  // namespace

Potential hedgehog(int n) {
  if (n < 2) throw DomainError("hedgehog: n must be >= 2");
  const CliffordAlgebra* alg = &build_algebra(n);
  Potential p;
  p.n = n;
  p.d = alg->dim();
  p.eval = [alg, n](const Vec& x) {
    require_dim(x, n, "hedgehog");
    return CMat(Cap::g(x.norm()) * gamma_dot(*alg, x));
  };
  p.derivative = [alg, n](const Vec& x, int k) {
    require_dim(x, n, "hedgehog");
    const double r = x.norm();
    CMat out = Cap::g(r) * alg->gammas.at(k);
    if (r > 0) out += (Cap::gp(r) * x(k) / r) * gamma_dot(*alg, x);
    return out;
  };
  p.gap_R = 1.0;
  p.gap_c = 1.0;
  p.sign_type = true;
  p.label = n == 3 ? "hedgehog" : "hedgehog(n=" + std::to_string(n) + ")";
  return p;
}

Potential negated(const Potential& p) {
  Potential q = p;
  auto e = p.eval;
  q.eval = [e](const Vec& x) { return CMat(-e(x)); };
  if (p.derivative) {
    auto d = p.derivative;
    q.derivative = [d](const Vec& x, int j) { return CMat(-d(x, j)); };
  }
  if (p.base) q.base = std::make_shared<Potential>(negated(*p.base));
  q.label = "-" + p.label;
  return q;
}

Potential anti_hedgehog(int n) {
  Potential p = negated(hedgehog(n));
  p.label = n == 3 ? "anti_hedgehog" : "anti_hedgehog(n=" + std::to_string(n) + ")";
  return p;
}

Potential constant_unitary(const CMat& m, int n) {
  require_hermitian(m, "constant_unitary");
  if (!is_unitary(m, 1e-10)) throw DomainError("constant_unitary: matrix not unitary");
  Potential p;
  p.n = n;
  p.d = static_cast<int>(m.rows());
  p.eval = [m](const Vec&) { return m; };
  p.derivative = [m](const Vec&, int) { return CMat(CMat::Zero(m.rows(), m.cols())); };
  p.gap_R = 0.0;
  p.gap_c = 1.0;
  p.sign_type = true;
  p.label = "constant_unitary";
  return p;
}

Potential rotated_constant(double amp, int n) {
  const CMat s1 = pauli(1), s3 = pauli(3);
  Potential p;
  p.n = n;
  p.d = 2;
  auto angle = [amp](const Vec& x) { return amp * x(0) / std::sqrt(1 + x.squaredNorm()); };
  p.eval = [=](const Vec& x) {
    const double t = angle(x);
    return CMat(std::cos(t) * s3 + std::sin(t) * s1);
  };
  p.derivative = [=](const Vec& x, int j) {
    const double t = angle(x);
    const double q = 1 + x.squaredNorm();
    double dt = -amp * x(0) * x(j) / std::pow(q, 1.5);
    if (j == 0) dt += amp / std::sqrt(q);
    return CMat(dt * (-std::sin(t) * s3 + std::cos(t) * s1));
  };
  p.gap_R = 0.0;
  p.gap_c = 1.0;
  p.sign_type = true;
  p.label = "rotated_constant";
  return p;
}

Potential winding(int m) {
  const CliffordAlgebra* alg = &build_algebra(3);
  Potential p;
  p.n = 3;
  p.d = 2;
  p.eval = [alg, m](const Vec& x) {
    require_dim(x, 3, "winding");
    const double r = x.norm();
    const double rho = std::hypot(x(0), x(1));
    Vec y = x;
    if (rho > 0) {
      const double phi = std::atan2(x(1), x(0));
      y(0) = rho * std::cos(m * phi);
      y(1) = rho * std::sin(m * phi);
    }
    (void)r;
    return CMat(Cap::g(y.norm()) * gamma_dot(*alg, y));
  };
  p.gap_R = 1.0;
  p.gap_c = 1.0;
  p.sign_type = true;
  p.experimental = true;
  p.label = "winding_m(m=" + std::to_string(m) + ")";
  return p;
}

Potential block_embed(const Potential& base, int l) {
  if (l < 1) throw DomainError("block_embed: block size must be >= 1");
  auto b = std::make_shared<Potential>(base);
  const int d = base.d + l;
  auto pad = [d, l](const CMat& m) {
    CMat out = CMat::Zero(d, d);
    out.bottomRightCorner(d - l, d - l) = m;
    return out;
  };
  Potential p;
  p.n = base.n;
  p.d = d;
  p.eval = [b, pad](const Vec& x) { return pad(b->eval(x)); };
  p.derivative = [b, pad](const Vec& x, int j) { return pad(b->deriv(x, j)); };
  p.gap_R = base.gap_R;
  p.gap_c = base.gap_c;
  p.null_block = l;
  p.base = b;
  p.label = "block_embed(" + base.label + ",l=" + std::to_string(l) + ")";
  return p;
}

Potential affine(int n, const CMat& a0, const std::vector<CMat>& coef, const std::string& label) {
  if (static_cast<int>(coef.size()) != n) throw DomainError("affine: need one coefficient per axis");
  for (const auto& c : coef) {
    require_hermitian(c, "affine");
    if (c.rows() != a0.rows()) throw DomainError("affine: size mismatch");
  }
  require_hermitian(a0, "affine");
  Potential p;
  p.n = n;
  p.d = static_cast<int>(a0.rows());
  p.eval = [a0, coef, n](const Vec& x) {
    require_dim(x, n, "affine");
    CMat m = a0;
    for (int j = 0; j < n; ++j) m += x(j) * coef[j];
    return m;
  };
  p.derivative = [coef](const Vec&, int j) { return coef.at(j); };
  p.gap_R = 0.0;
  p.gap_c = 0.0;
  p.label = label;
  return p;
}

Potential local_24i() {
  const cplx I(0, 1);
  CMat a1(2, 2), a2(2, 2), a3(2, 2);
  a1 << 1, 2, 2, 1;
  a2 << 1, 2, 2, -1;
  a3 << 0, I, -I, 0;
  return affine(3, CMat::Zero(2, 2), {a1, a2, a3}, "local_24i");
}

// ---- transforms ----

Transform identity_transform(int n) {
  return {n, [](const Vec& x) { return x; },
          [n](const Vec&) { return Eigen::MatrixXd(Eigen::MatrixXd::Identity(n, n)); }, 1, "identity"};
}

Transform scaling_transform(int n, double t) {
  if (!(t > 0)) throw DomainError("scaling_transform: factor must be positive");
  return {n, [t](const Vec& x) { return Vec(t * x); },
          [n, t](const Vec&) { return Eigen::MatrixXd(t * Eigen::MatrixXd::Identity(n, n)); }, 1,
          "scale"};
}

Transform reflection_transform(int n, int axis) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
  m(axis, axis) = -1;
  return {n, [m](const Vec& x) { return Vec(m * x); }, [m](const Vec&) { return m; }, -1, "reflection"};
}

Transform rotation_transform(int n, double angle, int a, int b) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
  m(a, a) = std::cos(angle);
  m(a, b) = -std::sin(angle);
  m(b, a) = std::sin(angle);
  m(b, b) = std::cos(angle);
  return {n, [m](const Vec& x) { return Vec(m * x); }, [m](const Vec&) { return m; }, 1, "rotation"};
}

Transform inversion_transform(int n) {
  auto jac = [n](const Vec& x) {
    const double r2 = x.squaredNorm();
    Eigen::MatrixXd j = Eigen::MatrixXd::Identity(n, n) / r2 - 2.0 * x * x.transpose() / (r2 * r2);
    return j;
  };
  return {n, [](const Vec& x) { return Vec(x / x.squaredNorm()); }, jac, -1, "inversion"};
}

Potential compose(const Potential& p, const Transform& t) {
  if (p.n != t.n) throw DomainError("compose: dimension mismatch");
  auto base = std::make_shared<Potential>(p);
  Potential q = p;
  q.eval = [base, t](const Vec& x) { return base->eval(t.map(x)); };
  q.derivative = [base, t](const Vec& x, int j) {
    const Vec y = t.map(x);
    const Eigen::MatrixXd J = t.jacobian(x);
    CMat out = CMat::Zero(base->d, base->d);
    for (int k = 0; k < base->n; ++k)
      if (J(k, j) != 0.0) out += J(k, j) * base->deriv(y, k);
    return out;
  };
  if (p.base) {
    Potential inner = compose(*p.base, t);
    q.base = std::make_shared<Potential>(inner);
  }
  q.label = p.label + "o" + t.label;
  return q;
}

Potential scaled(const Potential& p, double t) {
  Potential q = compose(p, scaling_transform(p.n, t));
  q.gap_R = p.gap_R / t;
  if (q.base) {
    auto b = std::make_shared<Potential>(*q.base);
    b->gap_R = p.base->gap_R / t;
    q.base = b;
  }
  std::ostringstream os;
  os << p.label << "(t=" << t << ")";
  q.label = os.str();
  return q;
}

// ---- smoothed sign ----

Potential smoothed_sign(const Potential& p, double tau) {
  if (!(tau > 0)) throw DomainError("smoothed_sign: tau must be positive");
  if (p.null_block > 0) return block_embed(smoothed_sign(*p.base, tau), p.null_block);
  auto base = std::make_shared<Potential>(p);
  const double R = p.gap_R;
  const double c = p.gap_c;
  const int n = p.n;

  auto checked_eig = [c, R](const CMat& m, double radius) {
    SpectralDecomposition e = spectral(m);
    const double mn = e.eigenvalues.cwiseAbs().minCoeff();
    const double need = radius >= R ? c * (1 - 1e-8) : 1e-12;
    if (mn < need) {
      std::ostringstream os;
      os << "smoothed_sign: gap violation at radius " << radius << " (min |lambda| = " << mn << ")";
      throw NotInvertibleError(os.str(), mn);
    }
    return e;
  };
  auto sgn = [](const SpectralDecomposition& e) {
    Vec s = e.eigenvalues.unaryExpr([](double v) { return v > 0 ? 1.0 : -1.0; });
    return CMat(e.eigenvectors * s.asDiagonal() * e.eigenvectors.adjoint());
  };

  Potential u;
  u.n = n;
  u.d = p.d;
  u.sign_type = true;
  u.gap_c = 1.0;
  u.label = "sgn(" + p.label + ")";

  if (R <= 0) {
    u.eval = [base, checked_eig, sgn](const Vec& x) { return sgn(checked_eig(base->eval(x), x.norm())); };
    u.derivative = [base, checked_eig](const Vec& x, int j) {
      return sign_derivative(checked_eig(base->eval(x), x.norm()), base->deriv(x, j));
    };
    u.gap_R = 0.0;
    return u;
  }

  const double Rp = 0.75 * R;
  struct Radial {
    double R, Rp, tau;
    double cut(double r) const { return SmoothStep::value((r - 0.5 * tau) / (0.5 * tau)); }
    double cutp(double r) const { return SmoothStep::deriv((r - 0.5 * tau) / (0.5 * tau)) / (0.5 * tau); }
    double eta(double r) const {
      if (r <= Rp) return Rp;
      return Rp + (r - Rp) * SmoothStep::value((r - Rp) / (R - Rp));
    }
    double etap(double r) const {
      if (r <= Rp) return 0.0;
      const double t = (r - Rp) / (R - Rp);
      return SmoothStep::value(t) + t * SmoothStep::deriv(t);
    }
  };
  const Radial rad{R, Rp, tau};

  u.eval = [base, rad, checked_eig, sgn](const Vec& x) {
    const double r = x.norm();
    const double phi = rad.cut(r);
    if (phi == 0.0) return CMat(CMat::Zero(base->d, base->d));
    const Vec a = (rad.eta(r) / r) * x;
    return CMat(phi * sgn(checked_eig(base->eval(a), a.norm())));
  };
  u.derivative = [base, rad, checked_eig, sgn, n](const Vec& x, int j) {
    const double r = x.norm();
    const double phi = rad.cut(r), phip = rad.cutp(r);
    if (phi == 0.0 && phip == 0.0) return CMat(CMat::Zero(base->d, base->d));
    const double eta = rad.eta(r), etap = rad.etap(r);
    const Vec a = (eta / r) * x;
    auto e = checked_eig(base->eval(a), a.norm());
    CMat out = (phip * x(j) / r) * sgn(e);
    if (phi != 0.0) {
      CMat da = CMat::Zero(base->d, base->d);
      for (int k = 0; k < n; ++k) {
        double jk = etap * x(j) * x(k) / (r * r) + (eta / r) * ((k == j ? 1.0 : 0.0) - x(j) * x(k) / (r * r));
        if (jk != 0.0) da += jk * base->deriv(a, k);
      }
      out += phi * sign_derivative(e, da);
    }
    return out;
  };
  u.gap_R = std::max(R, tau);
  return u;
}

Potential sign_potential(const Potential& p) {
  if (p.null_block > 0) return block_embed(sign_potential(*p.base), p.null_block);
  if (p.sign_type) return p;
  return smoothed_sign(p, std::max(1.0, p.gap_R));
}

// ---- mollification ----

Potential mollify(const Potential& p, double gamma, int q) {
  if (!(gamma > 0 && gamma < 1)) throw DomainError("mollify: gamma must lie in (0,1)");
  if (q < 2) throw DomainError("mollify: need at least 2 nodes per axis");
  const int n = p.n;
  const Rule1D g = gauss_legendre(q);
  auto nodes = std::make_shared<std::vector<std::pair<Vec, double>>>();
  std::vector<int> idx(n, 0);
  double mass = 0.0;
  while (true) {
    Vec y(n);
    double w = 1.0;
    for (int i = 0; i < n; ++i) {
      y(i) = g.nodes[idx[i]];
      w *= g.weights[idx[i]];
    }
    const double s = y.squaredNorm();
    if (s < 1.0) {
      const double b = w * std::exp(-1.0 / (1.0 - s));
      nodes->push_back({y, b});
      mass += b;
    }
    int i = 0;
    for (; i < n; ++i) {
      if (++idx[i] < q) break;
      idx[i] = 0;
    }
    if (i == n) break;
  }
  if (nodes->empty() || !(mass > 0)) throw NumericalError("mollify: empty quadrature", 0.0);
  for (auto& nw : *nodes) nw.second /= mass;

  auto base = std::make_shared<Potential>(p);
  Potential m;
  m.n = n;
  m.d = p.d;
  m.eval = [base, nodes, gamma](const Vec& x) {
    CMat acc = CMat::Zero(base->d, base->d);
    for (const auto& [y, w] : *nodes) acc += w * base->eval(x - gamma * y);
    return acc;
  };
  m.derivative = [base, nodes, gamma](const Vec& x, int j) {
    CMat acc = CMat::Zero(base->d, base->d);
    for (const auto& [y, w] : *nodes) acc += w * base->deriv(x - gamma * y, j);
    return acc;
  };
  m.gap_R = p.gap_R + gamma;
  m.gap_c = 0.5 * p.gap_c;
  std::ostringstream os;
  os << "mollify(" << p.label << ",gamma=" << gamma << ")";
  m.label = os.str();
  return m;
}

// ---- classification ----

const char* to_string(AdmissibilityClass c) {
  switch (c) {
    case AdmissibilityClass::admissible: return "admissible";
    case AdmissibilityClass::callias_admissible: return "callias_admissible";
    case AdmissibilityClass::tau_admissible: return "tau_admissible";
    case AdmissibilityClass::general_C2: return "general_C2";
    case AdmissibilityClass::fails: return "fails";
  }
  return "?";
}

namespace {

double opnorm(const CMat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMat> svd(m);
  return svd.singularValues()(0);
}

// least-squares slope of log(y) against log(1 + r) over positive y
double fit_slope(const std::vector<double>& r, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int k = 0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!(y[i] > 0)) continue;
    const double a = std::log1p(r[i]), b = std::log(y[i]);
    sx += a;
    sy += b;
    sxx += a * a;
    sxy += a * b;
    ++k;
  }
  if (k < 2) return -std::numeric_limits<double>::infinity();
  const double den = k * sxx - sx * sx;
  if (den <= 0) return -std::numeric_limits<double>::infinity();
  return (k * sxy - sx * sy) / den;
}

}  // namespace

AdmissibilityReport classify(const Potential& p, const ClassifyOptions& opt) {
  std::vector<double> radii = opt.radii;
  if (radii.empty())
    for (int i = 0; i < 16; ++i) radii.push_back(std::pow(10.0, 3.0 * i / 15.0));
  if (radii.size() < 4 || opt.directions < 1)
    throw DomainError("classify: insufficient samples (need >= 4 radii)");
  std::sort(radii.begin(), radii.end());
  const int n = p.n, d = p.d;
  std::mt19937 rng(opt.seed);
  std::normal_distribution<double> normal;
  std::vector<Vec> dirs;
  for (int k = 0; k < opt.directions; ++k) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v(i) = normal(rng);
    dirs.push_back(v.normalized());
  }
  const CMat id = CMat::Identity(d, d);

  AdmissibilityReport rep;
  rep.unitary_outside = true;
  rep.unitary_everywhere = true;
  rep.tau_admissible = true;
  Witness w1{Vec::Zero(n), 0.0, "first derivative"}, w2{Vec::Zero(n), 0.0, "second derivative"},
      wu{Vec::Zero(n), 0.0, "unitarity"};

  auto sample_point = [&](const Vec& x, bool outside) {
    const CMat m = p.eval(x);
    if (max_abs(m - m.adjoint()) > kHermitianTol * (1 + max_abs(m))) rep.hermitian = false;
    const CMat sq = m * m;
    const double defect = max_abs(sq - id);
    const cplx u = sq.trace() / static_cast<double>(d);
    const bool scalar = max_abs(sq - u * id) <= 1e-8;
    if (defect > 1e-8) {
      rep.unitary_everywhere = false;
      if (outside) rep.unitary_outside = false;
    }
    if (outside) {
      if (defect > wu.value) wu = {x, defect, "unitarity"};
      rep.max_unitarity_defect = std::max(rep.max_unitarity_defect, defect);
    }
    if (!scalar || u.real() < -1e-8 || u.real() > 1 + 1e-8) rep.tau_admissible = false;
    ++rep.sample_count;
  };

  // interior samples only feed the unitarity and scalar-square checks
  for (double r : {0.0, 0.1, 0.3, 0.6, 0.9})
    for (const Vec& v : dirs) sample_point(r * v, r >= p.gap_R && r > 0);

  std::vector<double> m1(radii.size(), 0.0), m2(radii.size(), 0.0);
  for (std::size_t ir = 0; ir < radii.size(); ++ir) {
    const double r = radii[ir];
    for (const Vec& v : dirs) {
      const Vec x = r * v;
      sample_point(x, r >= p.gap_R);
      for (int j = 0; j < n; ++j) {
        const double a = opnorm(p.deriv(x, j));
        if (a > m1[ir]) m1[ir] = a;
        if (a * (1 + r) > w1.value) w1 = {x, a * (1 + r), "first derivative"};
        MatrixField dj = [&p, j](const Vec& y) { return p.deriv(y, j); };
        for (int k = j; k < n; ++k) {
          const double b = opnorm(fd_derivative(dj, x, k));
          if (b > m2[ir]) m2[ir] = b;
          if (b > w2.value) w2 = {x, b, "second derivative"};
        }
      }
    }
  }
  // fit over the outer half of the radii
  const std::size_t h = radii.size() / 2;
  std::vector<double> ro(radii.begin() + h, radii.end());
  std::vector<double> a1(m1.begin() + h, m1.end()), a2(m2.begin() + h, m2.end());
  const double floor1 = 1e-9 * (1 + *std::max_element(m1.begin(), m1.end()));
  const double floor2 = 1e-7 * (1 + *std::max_element(m2.begin(), m2.end()));
  for (auto& v : a1)
    if (v < floor1) v = 0;
  for (auto& v : a2)
    if (v < floor2) v = 0;
  rep.slope1 = fit_slope(ro, a1);
  rep.slope2 = fit_slope(ro, a2);
  rep.epsilon = -rep.slope2 - 1.0;
  double k1 = 0, k2 = 0;
  const double eps_used = std::isfinite(rep.epsilon) ? rep.epsilon : 1.0;
  for (std::size_t ir = 0; ir < radii.size(); ++ir) {
    k1 = std::max(k1, m1[ir] * (1 + radii[ir]));
    k2 = std::max(k2, m2[ir] * std::pow(1 + radii[ir], 1 + eps_used));
  }
  rep.kappa = {k1, k2};
  rep.witnesses = {w1, w2, wu};

  const bool decay1 = rep.slope1 <= -0.95;
  const bool decay2 = rep.epsilon > 0.5;
  if (!rep.hermitian || !decay1 || !decay2) {
    rep.cls = AdmissibilityClass::fails;
  } else if (rep.unitary_everywhere) {
    rep.cls = AdmissibilityClass::admissible;
  } else if (rep.unitary_outside) {
    rep.cls = AdmissibilityClass::callias_admissible;
  } else {
    rep.cls = AdmissibilityClass::general_C2;
  }
  if (!rep.unitary_outside) rep.tau_admissible = false;
  return rep;
}

// ---- named builtins ----

namespace {

double param_d(const Params& p, const std::string& k, double def) {
  auto it = p.find(k);
  if (it == p.end()) return def;
  try {
    std::size_t pos = 0;
    double v = std::stod(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw DomainError("invalid value for parameter " + k + ": " + it->second);
  }
}

int param_i(const Params& p, const std::string& k, int def) {
  double v = param_d(p, k, def);
  if (v != std::floor(v)) throw DomainError("parameter " + k + " must be an integer");
  return static_cast<int>(v);
}

}  // namespace

Potential builtin(const std::string& name, const Params& params) {
  static const std::vector<std::string> known{"n", "l", "m", "amp", "base", "matrix", "kmax", "tau"};
  for (const auto& kv : params)
    if (std::find(known.begin(), known.end(), kv.first) == known.end())
      throw DomainError("unknown parameter '" + kv.first + "' for potential " + name);
  const int n = param_i(params, "n", 3);
  if (name == "hedgehog") return hedgehog(n);
  if (name == "anti_hedgehog") return anti_hedgehog(n);
  if (name == "constant" || name == "constant_unitary") {
    auto it = params.find("matrix");
    CMat m = it == params.end() ? pauli(3) : parse_matrix(it->second);
    Potential p = constant_unitary(m, n);
    p.label = name;
    return p;
  }
  if (name == "rotated_constant") return rotated_constant(param_d(params, "amp", 1.0), n);
  if (name == "winding_m" || name == "winding") {
    if (n != 3) throw DomainError("winding_m: only n = 3");
    return winding(param_i(params, "m", 1));
  }
  if (name == "block_embed" || name == "block") {
    auto it = params.find("base");
    const std::string base = it == params.end() ? "hedgehog" : it->second;
    Params rest = params;
    rest.erase("base");
    rest.erase("l");
    return block_embed(builtin(base, rest), param_i(params, "l", 1));
  }
  if (name == "appendix_b" || name == "shells") {
    if (n != 3) throw DomainError(name + ": only n = 3");
    return shell_counterexample(param_i(params, "kmax", 60));
  }
  if (name == "local_24i") {
    if (n != 3) throw DomainError("local_24i: only n = 3");
    return local_24i();
  }
  throw DomainError("unknown potential: " + name);
}

Potential potential_from_spec(const std::string& spec) {
  if (spec.empty()) throw DomainError("empty potential spec");
  namespace fs = std::filesystem;
  std::error_code ec;
  if (spec.find('/') != std::string::npos || fs::is_regular_file(spec, ec)) return load_potential_file(spec);
  std::string head = spec, rest;
  Params params;
  const auto colon = spec.find(':');
  if (colon != std::string::npos) {
    head = spec.substr(0, colon);
    rest = spec.substr(colon + 1);
  }
  std::vector<std::string> parts;
  {
    std::stringstream ss(colon != std::string::npos ? rest : spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) parts.push_back(tok);
  }
  std::size_t first = 0;
  if (colon == std::string::npos) {
    head = parts.empty() ? spec : parts[0];
    first = 1;
  } else if (!parts.empty() && parts[0].find('=') == std::string::npos) {
    params["base"] = parts[0];
    first = 1;
  }
  for (std::size_t i = first; i < parts.size(); ++i) {
    const auto eq = parts[i].find('=');
    if (eq == std::string::npos) throw DomainError("malformed potential parameter: " + parts[i]);
    params[parts[i].substr(0, eq)] = parts[i].substr(eq + 1);
  }
  return builtin(head, params);
}

}  // namespace callias
