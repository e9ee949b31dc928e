#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <random>
#include <tuple>

#include "callias/clifford.hpp"
#include "callias/parallel.hpp"
#include "callias/smooth.hpp"
#include "callias/witten.hpp"

namespace callias {

LatticeConfig lattice_level(int level) {
  LatticeConfig c;
  switch (level) {
    case 0:
      c.N = 8;
      c.half_width = 4.0;
      c.lambdas = {1.0, 1.5, 2.0};
      break;
    case 1:
      c.N = 16;
      c.half_width = 8.0;
      c.lambdas = {2.0, 3.0, 4.0};
      break;
    case 2:
      c.N = 24;
      c.half_width = 8.0;
      c.lambdas = {2.0, 3.0, 4.0};
      break;
    default:
      throw DomainError("lattice_level: level must be 0, 1 or 2");
  }
  return c;
}

std::size_t LatticeOperator::sites() const {
  std::size_t s = 1;
  for (int a = 0; a < n; ++a) s *= static_cast<std::size_t>(N);
  return s;
}

// site = ((j_0 N) + j_1) N + j_2, last axis fastest
Vec LatticeOperator::position(std::size_t site) const {
  Vec x(n);
  for (int a = n - 1; a >= 0; --a) {
    x(a) = -half_width + (static_cast<double>(site % N) + 0.5) * h();
    site /= N;
  }
  return x;
}

namespace {
void apply_edge(LatticeOperator& lat, const Potential& p, const LatticeConfig& cfg);
}

LatticeOperator make_lattice(const Potential& p, const LatticeConfig& cfg) {
  if (p.n < 2 || p.n > 3) throw DomainError("make_lattice: lattice path supports n = 2 and n = 3");
  if (cfg.N < 2 || cfg.N % 2 != 0) throw DomainError("make_lattice: N must be even");
  if (!(cfg.half_width > 0)) throw DomainError("make_lattice: half-width must be positive");
  LatticeOperator lat;
  lat.n = p.n;
  lat.N = cfg.N;
  lat.half_width = cfg.half_width;
  lat.d = p.d;
  lat.gammas = build_algebra(p.n).gammas;
  lat.spin = static_cast<int>(lat.gammas[0].rows());
  lat.comps = lat.spin * lat.d;
  if (lat.comps > 64) throw DomainError("make_lattice: at most 64 components per site");
  lat.label = p.label;
  const std::size_t ns = lat.sites();
  lat.phi.resize(ns);
  parallel_for(ns, [&](std::size_t s) { lat.phi[s] = p(lat.position(s)); });
  lat.constant_phi = std::all_of(lat.phi.begin(), lat.phi.end(), [&](const CMat& m) { return m == lat.phi[0]; });
  // a constant Phi is already compatible with the periodic wrap
  if (!lat.constant_phi && cfg.edge != EdgeMode::none) apply_edge(lat, p, cfg);
  lat.flatten();
  return lat;
}

void LatticeOperator::flatten() {
  phi_flat.resize(sites() * d * d);
  for (std::size_t s = 0; s < phi.size(); ++s)
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) phi_flat[(s * d + a) * d + b] = phi[s](a, b);
}

namespace {
void apply_edge(LatticeOperator& lat, const Potential& p, const LatticeConfig& cfg) {
  const std::size_t ns = lat.sites();
  const double start = cfg.edge_start * cfg.half_width;
  if (cfg.edge == EdgeMode::blend_zero) {
    for (std::size_t s = 0; s < ns; ++s) {
      const double m = lat.position(s).cwiseAbs().maxCoeff();
      const double b = SmoothStep::value((m - start) / (cfg.half_width - start));
      lat.phi[s] *= (1.0 - b);
    }
  } else {
    parallel_for(ns, [&](std::size_t s) {
      const Vec x = lat.position(s);
      const double r = x.norm();
      if (r > start) lat.phi[s] = p(Vec(x * (start / r)));
    });
  }
}
}  // namespace

namespace {

// Cached FFTW plans for howmany = comps interleaved transforms on fftw_malloc'd buffers.
struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

PlanPair get_plans(int n, int N, int comps) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, PlanPair> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(n, N, comps);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<int> dims(n, N);
  std::size_t total = comps;
  for (int a = 0; a < n; ++a) total *= N;
  fftw_complex* buf = fftw_alloc_complex(total);
  PlanPair pp;
  pp.forward = fftw_plan_many_dft(n, dims.data(), comps, buf, nullptr, comps, 1, buf, nullptr, comps, 1,
                                  FFTW_FORWARD, FFTW_MEASURE);
  pp.backward = fftw_plan_many_dft(n, dims.data(), comps, buf, nullptr, comps, 1, buf, nullptr, comps, 1,
                                   FFTW_BACKWARD, FFTW_MEASURE);
  fftw_free(buf);
  cache[key] = pp;
  return pp;
}

struct Spectral {
  std::vector<cplx> symbol;  // per wavevector: spin x spin block of sum_a i kappa_a gamma_a, row-major
  std::vector<double> k2;    // per wavevector: |kappa|^2
  std::vector<cplx> twist;   // per site
  PlanPair plans;
};

const Spectral& spectral(const LatticeOperator& lat) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, double, int>, Spectral> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(lat.n, lat.N, lat.half_width, lat.comps);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  Spectral sp;
  const int N = lat.N, spin = lat.spin;
  const double len = 2 * lat.half_width;
  std::vector<double> kappa(N);
  for (int j = 0; j < N; ++j) {
    const int k = j < N / 2 ? j : j - N;
    kappa[j] = 2 * kPi * (k + 0.5) / len;
  }
  const std::size_t ns = lat.sites();
  sp.twist.resize(ns);
  sp.k2.resize(ns);
  sp.symbol.resize(ns * spin * spin);
  for (std::size_t s = 0; s < ns; ++s) {
    std::size_t rem = s;
    int jsum = 0;
    double k2 = 0;
    CMat sym = CMat::Zero(spin, spin);
    for (int a = lat.n - 1; a >= 0; --a) {
      const int j = static_cast<int>(rem % N);
      rem /= N;
      jsum += j;
      k2 += kappa[j] * kappa[j];
      sym += cplx(0, kappa[j]) * lat.gammas[a];
    }
    sp.twist[s] = std::polar(1.0, -kPi * jsum / N);
    sp.k2[s] = k2;
    for (int i = 0; i < spin; ++i)
      for (int j = 0; j < spin; ++j) sp.symbol[(s * spin + i) * spin + j] = sym(i, j);
  }
  sp.plans = get_plans(lat.n, N, lat.comps);
  return cache.emplace(key, std::move(sp)).first->second;
}

struct FftBuffer {
  fftw_complex* data = nullptr;
  std::size_t size = 0;
  ~FftBuffer() { fftw_free(data); }
  cplx* get(std::size_t n) {
    if (n > size) {
      fftw_free(data);
      data = fftw_alloc_complex(n);
      size = n;
    }
    return reinterpret_cast<cplx*>(data);
  }
};

// y = Q x, or y = (|kappa|^2 + shift)^{-1} x in Fourier space when precond is set.
void apply_fourier(const LatticeOperator& lat, const std::vector<cplx>& x, std::vector<cplx>& y, bool precond,
                   double shift) {
  const Spectral& sp = spectral(lat);
  const std::size_t ns = lat.sites();
  const int c = lat.comps, d = lat.d, spin = lat.spin;
  thread_local FftBuffer buf;
  cplx* u = buf.get(x.size());
  for (std::size_t s = 0; s < ns; ++s) {
    const cplx t = sp.twist[s];
    for (int k = 0; k < c; ++k) u[s * c + k] = x[s * c + k] * t;
  }
  auto* raw = reinterpret_cast<fftw_complex*>(u);
  fftw_execute_dft(sp.plans.forward, raw, raw);
  cplx tmp[64];
  for (std::size_t s = 0; s < ns; ++s) {
    cplx* v = u + s * c;
    if (precond) {
      const double f = 1.0 / (sp.k2[s] + shift);
      for (int k = 0; k < c; ++k) v[k] *= f;
      continue;
    }
    const cplx* sym = &sp.symbol[s * spin * spin];
    for (int i = 0; i < spin; ++i)
      for (int b = 0; b < d; ++b) {
        cplx acc = 0;
        for (int j = 0; j < spin; ++j) acc += sym[i * spin + j] * v[j * d + b];
        tmp[i * d + b] = acc;
      }
    std::copy(tmp, tmp + c, v);
  }
  fftw_execute_dft(sp.plans.backward, raw, raw);
  const double norm = 1.0 / static_cast<double>(ns);
  y.resize(x.size());
  for (std::size_t s = 0; s < ns; ++s) {
    const cplx t = std::conj(sp.twist[s]) * norm;
    for (int k = 0; k < c; ++k) y[s * c + k] = u[s * c + k] * t;
  }
}

void add_phi(const LatticeOperator& lat, const std::vector<cplx>& x, std::vector<cplx>& y) {
  const int c = lat.comps, d = lat.d;
  const std::size_t dd = static_cast<std::size_t>(d) * d;
  for (std::size_t s = 0; s < lat.sites(); ++s) {
    const cplx* ph = &lat.phi_flat[s * dd];
    for (int i = 0; i < lat.spin; ++i) {
      const cplx* in = &x[s * c + i * d];
      cplx* out = &y[s * c + i * d];
      for (int a = 0; a < d; ++a) {
        cplx acc = 0;
        for (int b = 0; b < d; ++b) acc += ph[a * d + b] * in[b];
        out[a] += acc;
      }
    }
  }
}

}  // namespace

void apply_lattice(const LatticeOperator& lat, const std::vector<cplx>& x, std::vector<cplx>& y, bool adjoint) {
  if (x.size() != lat.dim()) throw DomainError("apply_lattice: vector size mismatch");
  apply_fourier(lat, x, y, false, 0.0);
  if (adjoint)
    for (auto& v : y) v = -v;
  add_phi(lat, x, y);
}

CMat dense_lattice(const LatticeOperator& lat) {
  const std::size_t n = lat.dim();
  if (n > 8192) throw DomainError("dense_lattice: dimension too large");
  CMat l(n, n);
  std::vector<cplx> e(n, 0.0), y;
  for (std::size_t j = 0; j < n; ++j) {
    e[j] = 1.0;
    apply_lattice(lat, e, y, false);
    for (std::size_t i = 0; i < n; ++i) l(i, j) = y[i];
    e[j] = 0.0;
  }
  return l;
}

double lattice_skew_defect(const LatticeOperator& lat, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> nd;
  const std::size_t n = lat.dim();
  double worst = 0;
  for (int t = 0; t < 4; ++t) {
    std::vector<cplx> u(n), v(n), qu, qv;
    double nu = 0, nv = 0;
    for (std::size_t i = 0; i < n; ++i) {
      u[i] = cplx(nd(rng), nd(rng));
      v[i] = cplx(nd(rng), nd(rng));
      nu += std::norm(u[i]);
      nv += std::norm(v[i]);
    }
    apply_fourier(lat, u, qu, false, 0.0);
    apply_fourier(lat, v, qv, false, 0.0);
    cplx s = 0;
    for (std::size_t i = 0; i < n; ++i) s += std::conj(u[i]) * qv[i] + std::conj(qu[i]) * v[i];
    worst = std::max(worst, std::abs(s) / std::sqrt(nu * nv));
  }
  return worst;
}

double witten_target(int index, int n, double z) { return index * std::pow(1.0 + z, -0.5 * n); }

namespace {

struct SolveStats {
  double residual = 0.0;
  int iterations = 0;
};

// Preconditioned CG for (L*L + z) x = e_k (first) or (LL* + z) x = e_k; returns x_k.
cplx pcg_diagonal(const LatticeOperator& lat, std::size_t k, bool first, double z, const WittenOptions& opt,
                  SolveStats& st) {
  const std::size_t n = lat.dim();
  std::vector<cplx> x(n, 0.0), r(n, 0.0), zv, p, ap, tmp;
  r[k] = 1.0;
  auto apply_a = [&](const std::vector<cplx>& v, std::vector<cplx>& out) {
    apply_lattice(lat, v, tmp, !first);
    apply_lattice(lat, tmp, out, first);
    for (std::size_t i = 0; i < n; ++i) out[i] += z * v[i];
  };
  // Phi^2 ~ 1 away from the core, so (-Delta + 1 + z)^{-1} is a close preconditioner
  apply_fourier(lat, r, zv, true, 1.0 + z);
  p = zv;
  cplx rz = 0;
  for (std::size_t i = 0; i < n; ++i) rz += std::conj(r[i]) * zv[i];
  int it = 0;
  double rn = 1.0;
  for (; it < opt.max_iter; ++it) {
    apply_a(p, ap);
    cplx pap = 0;
    for (std::size_t i = 0; i < n; ++i) pap += std::conj(p[i]) * ap[i];
    const cplx alpha = rz / pap;
    double s = 0;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * ap[i];
      s += std::norm(r[i]);
    }
    rn = std::sqrt(s);
    if (rn <= opt.tol) break;
    apply_fourier(lat, r, zv, true, 1.0 + z);
    cplx rz_new = 0;
    for (std::size_t i = 0; i < n; ++i) rz_new += std::conj(r[i]) * zv[i];
    const cplx beta = rz_new / rz;
    rz = rz_new;
    for (std::size_t i = 0; i < n; ++i) p[i] = zv[i] + beta * p[i];
  }
  if (rn > opt.tol) throw NumericalError("witten_trace: PCG did not converge", rn);
  st.residual = std::max(st.residual, rn);
  st.iterations = std::max(st.iterations, it + 1);
  return x[k];
}

}  // namespace

WittenTraceResult witten_trace(const LatticeOperator& lat, const std::vector<double>& lambdas,
                               const std::vector<cplx>& zs, const WittenOptions& opt) {
  if (lambdas.empty() || zs.empty()) throw DomainError("witten_trace: empty Lambda or z schedule");
  for (double l : lambdas)
    if (!(l > 0) || l > 0.5 * lat.half_width) throw DomainError("witten_trace: window must satisfy Lambda <= half-width/2");
  for (cplx z : zs)
    if (!(z.real() > 0)) throw DomainError("witten_trace: need Re z > 0");

  WittenTraceResult res;
  res.n = lat.n;
  res.N = lat.N;
  res.half_width = lat.half_width;
  res.h = lat.h();
  res.label = lat.label;

  const double lmax = *std::max_element(lambdas.begin(), lambdas.end());
  std::vector<std::size_t> window;
  std::vector<double> radius;
  for (std::size_t s = 0; s < lat.sites(); ++s) {
    const double r = lat.position(s).norm();
    if (r <= lmax) {
      window.push_back(s);
      radius.push_back(r);
    }
  }
  const int c = lat.comps;
  // per z, per window site: component trace of the resolvent difference
  std::vector<std::vector<cplx>> per_site(zs.size(), std::vector<cplx>(window.size(), 0.0));

  if (lat.constant_phi) {
    // Phi commutes with Q, so L*L = LL* and the difference vanishes identically
    res.method = "commuting";
  } else if (lat.dim() <= opt.dense_limit) {
    res.method = "dense";
    const CMat l = dense_lattice(lat);
    const CMat lsl = l.adjoint() * l, lls = l * l.adjoint();
    const Eigen::Index dim = l.rows();
    const Eigen::Index cols = static_cast<Eigen::Index>(window.size()) * c;
    CMat rhs = CMat::Zero(dim, cols);
    for (std::size_t w = 0; w < window.size(); ++w)
      for (int k = 0; k < c; ++k) rhs(window[w] * c + k, w * c + k) = 1.0;
    const CMat id = CMat::Identity(dim, dim);
    for (std::size_t iz = 0; iz < zs.size(); ++iz) {
      CMat xa, xb;
      if (zs[iz].imag() == 0.0) {
        xa = (lsl + zs[iz] * id).llt().solve(rhs);
        xb = (lls + zs[iz] * id).llt().solve(rhs);
      } else {
        xa = (lsl + zs[iz] * id).partialPivLu().solve(rhs);
        xb = (lls + zs[iz] * id).partialPivLu().solve(rhs);
      }
      for (std::size_t w = 0; w < window.size(); ++w) {
        cplx t = 0;
        for (int k = 0; k < c; ++k) {
          const Eigen::Index row = window[w] * c + k, col = w * c + k;
          t += xa(row, col) - xb(row, col);
        }
        per_site[iz][w] = t;
      }
    }
  } else {
    res.method = "pcg";
    for (cplx z : zs)
      if (z.imag() != 0.0) throw DomainError("witten_trace: iterative path needs real z");
    const std::size_t jobs = window.size() * c;
    for (std::size_t iz = 0; iz < zs.size(); ++iz) {
      std::vector<cplx> diff(jobs);
      std::vector<SolveStats> stats(jobs);
      parallel_for(jobs, [&](std::size_t j) {
        const std::size_t i = window[j / c] * c + j % c;
        const double z = zs[iz].real();
        diff[j] = pcg_diagonal(lat, i, true, z, opt, stats[j]) - pcg_diagonal(lat, i, false, z, opt, stats[j]);
      });
      for (std::size_t w = 0; w < window.size(); ++w) {
        cplx t = 0;
        for (int k = 0; k < c; ++k) t += diff[w * c + k];
        per_site[iz][w] = t;
      }
      for (const auto& st : stats) {
        res.max_solver_residual = std::max(res.max_solver_residual, st.residual);
        res.max_iterations = std::max(res.max_iterations, st.iterations);
      }
    }
  }

  for (std::size_t iz = 0; iz < zs.size(); ++iz)
    for (double lam : lambdas) {
      std::vector<cplx> terms;
      for (std::size_t w = 0; w < window.size(); ++w)
        if (radius[w] <= lam) terms.push_back(per_site[iz][w]);
      WittenSample smp;
      smp.lambda = lam;
      smp.z = zs[iz];
      smp.trace = zs[iz] * pairwise_sum(terms);
      smp.window_sites = terms.size();
      res.max_imag = std::max(res.max_imag, std::abs(smp.trace.imag()));
      res.samples.push_back(smp);
    }

  std::vector<double> normalized;
  for (cplx z : zs) {
    double lo = 1e300, hi = -1e300, best_l = -1;
    cplx at_max = 0;
    for (const auto& smp : res.samples) {
      if (smp.z != z) continue;
      lo = std::min(lo, smp.trace.real());
      hi = std::max(hi, smp.trace.real());
      if (smp.lambda > best_l) {
        best_l = smp.lambda;
        at_max = smp.trace;
      }
    }
    res.f_curve.push_back({z, at_max});
    res.f_spread.push_back(hi - lo);
    normalized.push_back((at_max * std::pow(1.0 + z, 0.5 * lat.n)).real());
  }
  double mean = 0;
  for (double v : normalized) mean += v;
  mean /= normalized.size();
  res.index_estimate = mean;
  res.index_spread = *std::max_element(normalized.begin(), normalized.end()) -
                     *std::min_element(normalized.begin(), normalized.end());
  if (res.f_curve.size() >= 2) {
    std::vector<std::size_t> order(res.f_curve.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return std::abs(res.f_curve[a].first) < std::abs(res.f_curve[b].first); });
    const double z1 = res.f_curve[order[0]].first.real(), z2 = res.f_curve[order[1]].first.real();
    const double f1 = res.f_curve[order[0]].second.real(), f2 = res.f_curve[order[1]].second.real();
    res.index_z_first = f1 - z1 * (f2 - f1) / (z2 - z1);
  } else {
    res.index_z_first = res.f_curve[0].second.real();
  }
  return res;
}

double even_dimension_analog(int N, double half_width, cplx z) {
  Potential p;
  p.n = 2;
  p.d = 1;
  p.label = "scalar_kink";
  p.eval = [](const Vec& x) {
    return CMat::Constant(1, 1, cplx(std::tanh(x(0) - 0.3 * x(1)) + 0.2 * std::sin(x(1)), 0.0));
  };
  LatticeConfig cfg;
  cfg.N = N;
  cfg.half_width = half_width;
  const LatticeOperator lat = make_lattice(p, cfg);
  const CMat l = dense_lattice(lat);
  const CMat id = CMat::Identity(l.rows(), l.cols());
  const CMat a = (l.adjoint() * l + z * id).inverse();
  const CMat b = (l * l.adjoint() + z * id).inverse();
  double worst = 0;
  for (std::size_t s = 0; s < lat.sites(); ++s) {
    cplx t = 0;
    for (int k = 0; k < lat.comps; ++k) {
      const std::size_t i = s * lat.comps + k;
      t += a(i, i) - b(i, i);
    }
    worst = std::max(worst, std::abs(t));
  }
  return worst;
}

}  // namespace callias
