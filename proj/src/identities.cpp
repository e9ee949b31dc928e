#include <algorithm>
#include <cmath>
#include <array>
#include <limits>
#include <random>

#include "callias/clifford.hpp"
#include "callias/witten.hpp"

namespace callias {

namespace {

CMat random_matrix(int rows, int cols, std::mt19937& rng) {
  std::normal_distribution<double> nd;
  CMat a(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) a(i, j) = cplx(nd(rng), nd(rng));
  return a;
}

CMat solve_checked(const CMat& a, const CMat& b, IdentityResidual& rep) {
  Eigen::PartialPivLU<CMat> lu(a);
  const double rc = lu.rcond();
  const double cond = rc > 0 ? 1.0 / rc : std::numeric_limits<double>::infinity();
  rep.condition = std::max(rep.condition, cond);
  if (cond > 1e12) rep.ill_conditioned = true;
  return lu.solve(b);
}

// Antiperiodic spectral derivative on N points with spacing h (real skew-symmetric).
CMat derivative_1d(int N, double h) {
  CMat d = CMat::Zero(N, N);
  const double len = N * h;
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) {
      cplx s = 0.0;
      for (int k = -N / 2; k < N / 2; ++k) {
        const double kappa = 2 * kPi * (k + 0.5) / len;
        s += cplx(0, kappa) * std::exp(cplx(0, kappa * (a - b) * h));
      }
      d(a, b) = cplx(s.real() / N, 0.0);
    }
  return d;
}

CMat identity(int k) { return CMat::Identity(k, k); }

// Axis operator on a dim-dimensional grid with axis 0 slowest.
CMat on_axis(const CMat& op1d, int axis, int dim, int N) {
  CMat out = identity(1);
  for (int a = 0; a < dim; ++a) out = kronecker(out, a == axis ? op1d : identity(N));
  return out;
}

std::vector<CMat> spin_gammas(int dim) {
  if (dim == 1) return {identity(1)};
  return build_algebra(dim).gammas;
}

struct SpectralLattice {
  int dim, N, spin, d;
  double h;
  std::vector<CMat> grid_d;  // per-axis derivative on the site space
  std::vector<std::vector<double>> coords;  // per site, per axis
  std::vector<CMat> gammas;

  SpectralLattice(int dim_, int N_, int d_, double h_) : dim(dim_), N(N_), d(d_), h(h_) {
    gammas = spin_gammas(dim);
    spin = static_cast<int>(gammas[0].rows());
    const CMat d1 = derivative_1d(N, h);
    for (int a = 0; a < dim; ++a) grid_d.push_back(on_axis(d1, a, dim, N));
    const int sites = static_cast<int>(std::pow(N, dim));
    coords.resize(sites);
    for (int s = 0; s < sites; ++s) {
      int rem = s;
      std::vector<double> c(dim);
      for (int a = dim - 1; a >= 0; --a) {
        c[a] = (rem % N) * h;
        rem /= N;
      }
      coords[s] = c;
    }
  }
  int sites() const { return static_cast<int>(coords.size()); }
  int full() const { return spin * sites() * d; }
  // gamma (x) D_axis (x) I_d
  CMat dirac() const {
    CMat q = CMat::Zero(full(), full());
    for (int a = 0; a < dim; ++a) q += kronecker(kronecker(gammas[a], grid_d[a]), identity(d));
    return q;
  }
  CMat laplacian() const {
    CMat lap = CMat::Zero(sites(), sites());
    for (int a = 0; a < dim; ++a) lap += grid_d[a] * grid_d[a];
    return kronecker(kronecker(identity(spin), lap), identity(d));
  }
  // I_spin (x) blockdiag(field(site))
  template <class F>
  CMat site_field(F&& field) const {
    CMat blk = CMat::Zero(sites() * d, sites() * d);
    for (int s = 0; s < sites(); ++s) blk.block(s * d, s * d, d, d) = field(coords[s]);
    return kronecker(identity(spin), blk);
  }
};

}  // namespace

CMat internal_trace(const CMat& a, int m) {
  if (m <= 0 || a.rows() != a.cols() || a.rows() % m != 0)
    throw DomainError("internal_trace: size must be a multiple of m");
  const Eigen::Index base = a.rows() / m;
  CMat t = CMat::Zero(base, base);
  for (int k = 0; k < m; ++k) t += a.block(k * base, k * base, base, base);
  return t;
}

CMat witten_regularization(const CMat& l, cplx z, int m) {
  const CMat id = identity(static_cast<int>(l.rows()));
  const CMat a = (l.adjoint() * l + z * id).inverse();
  const CMat b = (l * l.adjoint() + z * id).inverse();
  return z * internal_trace(a - b, m);
}

IdentityResidual check_witten_identity(const CMat& l, cplx z, int m) {
  IdentityResidual rep;
  const int n = static_cast<int>(l.rows());
  const CMat id = identity(n);
  const CMat ls = l.adjoint();
  const CMat r1 = solve_checked(ls * l + z * id, id, rep);  // (L*L+z)^{-1}
  const CMat r2 = solve_checked(l * ls + z * id, id, rep);  // (LL*+z)^{-1}
  const CMat lhs = 2.0 * z * internal_trace(r1 - r2, m);
  const CMat x = ls * r2, y = l * r1;
  const CMat rhs = internal_trace(l * x - x * l, m) - internal_trace(ls * y - y * ls, m);
  rep.residual = max_abs(lhs - rhs);
  return rep;
}

IdentityResidual check_witten_identity(int size, int m, cplx z, unsigned seed) {
  std::mt19937 rng(seed);
  return check_witten_identity(random_matrix(size, size, rng), z, m);
}

double check_internal_trace_cyclicity(const CMat& a, const CMat& b) {
  const int m = static_cast<int>(b.rows());
  const int base = static_cast<int>(a.rows()) / m;
  const CMat big = kronecker(b, identity(base));
  return max_abs(internal_trace(a * big, m) - internal_trace(big * a, m));
}

double check_internal_trace_cyclicity(int m, int base, unsigned seed) {
  std::mt19937 rng(seed);
  const CMat a = random_matrix(m * base, m * base, rng);
  const CMat b = random_matrix(m, m, rng);
  return check_internal_trace_cyclicity(a, b);
}

double cyclicity_counterexample(int m, int base, unsigned seed) {
  std::mt19937 rng(seed);
  const CMat a = random_matrix(m * base, m * base, rng);
  const CMat big = kronecker(random_matrix(m, m, rng), random_matrix(base, base, rng));
  return max_abs(internal_trace(a * big, m) - internal_trace(big * a, m));
}

namespace {

// Smooth periodic unit vector field v0 + amplitude * trig modes, normalized.
struct UnitField {
  std::vector<std::array<double, 3>> coef;  // per mode: component weights
  std::vector<std::vector<int>> freq;
  std::vector<double> phase;
  double amplitude;
  double len;

  std::array<double, 3> operator()(const std::vector<double>& x) const {
    std::array<double, 3> v{0.3, 0.2, 1.0};
    for (std::size_t m = 0; m < freq.size(); ++m) {
      double arg = phase[m];
      for (std::size_t a = 0; a < x.size(); ++a) arg += 2 * kPi * freq[m][a] * x[a] / len;
      for (int c = 0; c < 3; ++c) v[c] += amplitude * coef[m][c] * std::cos(arg);
    }
    const double nrm = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    for (auto& c : v) c /= nrm;
    return v;
  }
};

UnitField make_field(int dim, double len, double amplitude, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1, 1);
  std::uniform_int_distribution<int> f(-1, 1);
  UnitField fld;
  fld.amplitude = amplitude;
  fld.len = len;
  for (int m = 0; m < 3; ++m) {
    std::vector<int> fr(dim);
    for (auto& v : fr) v = f(rng);
    fr[m % dim] = 1;
    fld.freq.push_back(fr);
    fld.coef.push_back({u(rng), u(rng), u(rng)});
    fld.phase.push_back(kPi * u(rng));
  }
  return fld;
}

CMat sigma_dot(const std::array<double, 3>& v) {
  return v[0] * pauli(1) + v[1] * pauli(2) + v[2] * pauli(3);
}

}  // namespace

NeumannReport check_neumann_expansion(int dim, int N, int terms, cplx z, unsigned seed, double amplitude) {
  if (dim < 1 || dim > 3) throw DomainError("check_neumann_expansion: dim must be 1, 2 or 3");
  if (terms < 0) throw DomainError("check_neumann_expansion: terms must be >= 0");
  std::mt19937 rng(seed);
  const double h = 1.0;
  SpectralLattice lat(dim, N, 2, h);
  const UnitField fld = make_field(dim, N * h, amplitude, rng);
  const CMat q = lat.dirac();
  const CMat phi = lat.site_field([&](const std::vector<double>& x) { return sigma_dot(fld(x)); });
  const int n = lat.full();
  const CMat id = identity(n);
  const CMat l = q + phi, ls = -q + phi;
  const CMat diff = (ls * l + z * id).inverse() - (l * ls + z * id).inverse();
  const CMat r = (-lat.laplacian() + (1.0 + z) * id).inverse();
  const CMat c = q * phi - phi * q;
  const CMat cr = c * r;
  CMat sum = CMat::Zero(n, n);
  CMat term = r * cr;  // R (CR)^1
  const CMat cr2 = cr * cr;
  for (int k = 0; k <= terms; ++k) {
    sum += 2.0 * term;
    term = term * cr2;
  }
  CMat power = identity(n);
  for (int k = 0; k < 2 * terms + 2; ++k) power = power * cr;
  const CMat remainder = diff * power;
  NeumannReport rep;
  rep.residual = max_abs(diff - sum - remainder);
  rep.truncation = max_abs(remainder) / std::max(max_abs(diff), 1e-300);
  rep.spectral_radius = cr.eigenvalues().cwiseAbs().maxCoeff();
  rep.convergent = rep.spectral_radius < 1.0;
  return rep;
}

double neumann_constant_phi(int dim, int N, cplx z) {
  SpectralLattice lat(dim, N, 2, 1.0);
  const CMat q = lat.dirac();
  const CMat phi = lat.site_field([](const std::vector<double>&) { return sigma_dot({0.6, 0.0, 0.8}); });
  const CMat id = identity(lat.full());
  const CMat l = q + phi, ls = -q + phi;
  return max_abs((ls * l + z * id).inverse() - (l * ls + z * id).inverse());
}

double check_commutator_identity(int dim, int N, cplx mu, CommutatorForm form, unsigned seed) {
  if (dim < 1 || dim > 3) throw DomainError("check_commutator_identity: dim must be 1, 2 or 3");
  if (N % 8 != 0) throw DomainError("check_commutator_identity: N must be a multiple of 8");
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1, 1);
  const double len = 2 * kPi;
  const double h = len / N;
  SpectralLattice lat(dim, N, 1, h);
  const int n = lat.full();
  const CMat id = identity(n);

  // Psi: real trigonometric polynomial with frequencies |m_a| <= N/8
  struct Mode {
    std::vector<int> m;
    double amp, ph;
  };
  std::vector<Mode> modes;
  std::uniform_int_distribution<int> fi(-N / 8, N / 8);
  for (int i = 0; i < 4; ++i) {
    Mode md{std::vector<int>(dim), u(rng), kPi * u(rng)};
    for (auto& v : md.m) v = fi(rng);
    modes.push_back(md);
  }
  auto psi_d = [&](const std::vector<double>& x, int a, int b) {
    // a, b: derivative axes (-1 for none)
    double s = 0;
    for (const auto& md : modes) {
      double arg = md.ph;
      for (int c = 0; c < dim; ++c) arg += md.m[c] * x[c];
      double f = md.amp;
      int order = 0;
      for (int ax : {a, b})
        if (ax >= 0) {
          f *= md.m[ax];
          ++order;
        }
      // derivatives of cos: cos, -sin, -cos
      s += order == 0 ? f * std::cos(arg) : order == 1 ? -f * std::sin(arg) : -f * std::cos(arg);
    }
    return s;
  };
  auto scalar = [&](auto fn) {
    return lat.site_field([&](const std::vector<double>& x) { return CMat::Constant(1, 1, cplx(fn(x), 0)); });
  };
  const CMat psi = scalar([&](const std::vector<double>& x) { return psi_d(x, -1, -1); });
  const CMat lap_psi = scalar([&](const std::vector<double>& x) {
    double s = 0;
    for (int a = 0; a < dim; ++a) s += psi_d(x, a, a);
    return s;
  });
  std::vector<CMat> grad_psi;
  for (int a = 0; a < dim; ++a)
    grad_psi.push_back(scalar([&](const std::vector<double>& x) { return psi_d(x, a, -1); }));

  const CMat r = (-lat.laplacian() + mu * id).inverse();
  const CMat lhs = r * psi - psi * r;
  CMat middle = lap_psi;
  if (form == CommutatorForm::printed) {
    CMat q_psi = CMat::Zero(n, n);
    for (int a = 0; a < dim; ++a) q_psi += kronecker(lat.gammas[a], identity(lat.sites())) * grad_psi[a];
    middle += 2.0 * q_psi * lat.dirac();
  } else {
    for (int a = 0; a < dim; ++a)
      middle += 2.0 * grad_psi[a] * kronecker(identity(lat.spin), lat.grid_d[a]);
  }
  const CMat rhs = r * middle * r;

  // band-limited test vectors: antiperiodic modes with |k + 1/2| <= N/4 on each axis
  double worst = 0.0;
  for (int trial = 0; trial < 4; ++trial) {
    Eigen::VectorXcd f = Eigen::VectorXcd::Zero(n);
    std::vector<std::pair<std::vector<int>, cplx>> coeffs;
    for (int t = 0; t < 6; ++t) {
      std::vector<int> k(dim);
      for (auto& v : k) v = std::uniform_int_distribution<int>(-N / 4, N / 4 - 1)(rng);
      coeffs.push_back({k, cplx(u(rng), u(rng))});
    }
    for (int sp = 0; sp < lat.spin; ++sp) {
      const cplx spin_w(u(rng), u(rng));
      for (int s = 0; s < lat.sites(); ++s) {
        cplx v = 0;
        for (const auto& [k, c] : coeffs) {
          double arg = 0;
          for (int a = 0; a < dim; ++a) arg += (k[a] + 0.5) * lat.coords[s][a];
          v += c * std::exp(cplx(0, arg));
        }
        f(sp * lat.sites() + s) = spin_w * v;
      }
    }
    const Eigen::VectorXcd a = lhs * f, b = rhs * f;
    worst = std::max(worst, (a - b).norm() / a.norm());
  }
  return worst;
}

VogtResult vogt_counterexample(cplx z, long long n_modes) {
  if (!(z.real() > 0)) throw DomainError("vogt_counterexample: need Re z > 0");
  if (n_modes <= 0) throw DomainError("vogt_counterexample: need at least one mode");
  // z sum_{k<N} e^{-kz} = z (1 - e^{-Nz}) / (1 - e^{-z})
  const double x = z.real(), y = z.imag(), sh = std::sin(0.5 * y);
  const cplx denom(-(std::expm1(-x) - 2 * std::exp(-x) * sh * sh), std::exp(-x) * std::sin(y));
  VogtResult res;
  res.trace = z * (1.0 - std::exp(-double(n_modes) * z)) / denom;
  res.norm = std::abs(z);
  return res;
}

}  // namespace callias
