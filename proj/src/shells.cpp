#include "callias/shells.hpp"

#include <cmath>
#include <random>

#include "callias/clifford.hpp"
#include "callias/quadrature.hpp"

namespace callias {

namespace {

double bump(double t) { return (t > 0 && t < 1) ? std::exp(-1.0 / (t * (1 - t))) : 0.0; }

double bump_p(double t) {
  if (!(t > 0 && t < 1)) return 0.0;
  const double q = t * (1 - t);
  return bump(t) * (1 - 2 * t) / (q * q);
}

const Rule1D& unit_rule() {
  static const Rule1D r = gauss_legendre(48, 0.0, 1.0);
  return r;
}

double bump_integral(double x) {
  const Rule1D& r = unit_rule();
  double s = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * bump(x * r.nodes[i]);
  return s * x;
}

double bump_mass() {
  static const double z = [] {
    // split at the midpoint: the bump is flat near both ends
    return 2.0 * bump_integral(0.5);
  }();
  return z;
}

}  // namespace

double cutoff_phi1(double x) {
  if (x <= 0) return 0.0;
  if (x >= 1) return 1.0;
  if (x <= 0.5) return bump_integral(x) / bump_mass();
  return 1.0 - bump_integral(1 - x) / bump_mass();
}

double cutoff_phi1_deriv(double x, int order) {
  if (order == 1) return bump(x) / bump_mass();
  if (order == 2) return bump_p(x) / bump_mass();
  throw DomainError("cutoff_phi1_deriv: order must be 1 or 2");
}

double cutoff_d(int order) {
  double m = 0.0;
  for (int i = 1; i < 20000; ++i) m = std::max(m, std::abs(cutoff_phi1_deriv(i / 20000.0, order)));
  return m;
}

double window_psi(double r1, double r2, double t1, double t2, double x, int order) {
  const double a = (x - r1) / t1, b = (r2 - x) / t2;
  const double fa = cutoff_phi1(a), fb = cutoff_phi1(b);
  if (order == 0) return fa * fb;
  const double ga = cutoff_phi1_deriv(a, 1) / t1, gb = -cutoff_phi1_deriv(b, 1) / t2;
  if (order == 1) return ga * fb + fa * gb;
  const double ha = cutoff_phi1_deriv(a, 2) / (t1 * t1), hb = cutoff_phi1_deriv(b, 2) / (t2 * t2);
  return ha * fb + 2 * ga * gb + fa * hb;
}

double shell_radius(int k) { return std::ldexp(1.0, k) - 2.0; }

ShellWindow radial_window(int k) {
  const double p = std::ldexp(1.0, k);
  return {shell_radius(k), shell_radius(k + 1), p / 2, p / 20};
}

ShellWindow axial_window(int k) {
  const double p = std::ldexp(1.0, k);
  return {shell_radius(k), shell_radius(k + 1), p / 36, 17 * p / 18};
}

namespace {
double win(const ShellWindow& w, double x, int order = 0) { return window_psi(w.r1, w.r2, w.t1, w.t2, x, order); }
}  // namespace

double shell_bump(int k, int j, const Vec& x) {
  const double rk = shell_radius(k), rk1 = shell_radius(k + 1);
  const double p1 = win(radial_window(k), x.norm());
  if (p1 == 0.0) return 0.0;
  return p1 * (x(j) - rk) * win(axial_window(k), x(j)) / rk1;
}

Eigen::Vector3d shell_bump_gradient(int k, int j, const Vec& x) {
  Eigen::Vector3d g = Eigen::Vector3d::Zero();
  const double r = x.norm();
  const double rk = shell_radius(k), rk1 = shell_radius(k + 1);
  const ShellWindow rw = radial_window(k), aw = axial_window(k);
  const double p1 = win(rw, r), p1p = win(rw, r, 1);
  const double p2 = win(aw, x(j)), p2p = win(aw, x(j), 1);
  const double lin = (x(j) - rk) * p2;
  if (r > 0 && p1p != 0.0)
    for (int l = 0; l < 3; ++l) g(l) += p1p * x(l) / r * lin / rk1;
  g(j) += p1 * (p2 + (x(j) - rk) * p2p) / rk1;
  return g;
}

Potential shell_counterexample(int k_max) {
  if (k_max < 2) throw DomainError("shell_counterexample: k_max must be >= 2");
  const CMat s[3] = {pauli(1), pauli(2), pauli(3)};
  const CMat sum = s[0] + s[1] + s[2];
  // shells whose radial support [r_k, r_{k+1}] can contain |x|
  auto shells = [k_max](double r) {
    std::vector<int> ks;
    const int c = static_cast<int>(std::floor(std::log2(r + 2.0)));
    for (int k = std::max(2, c - 1); k <= std::min(k_max, c + 1); ++k)
      if (r >= shell_radius(k) && r <= shell_radius(k + 1)) ks.push_back(k);
    return ks;
  };
  Potential p;
  p.n = 3;
  p.d = 2;
  p.eval = [=](const Vec& x) {
    CMat m = sum;
    for (int k : shells(x.norm())) {
      const double w = std::pow(static_cast<double>(k), -1.0 / 3.0);
      for (int j = 0; j < 3; ++j) m += (w * shell_bump(k, j, x)) * s[j];
    }
    return m;
  };
  p.derivative = [=](const Vec& x, int l) {
    CMat m = CMat::Zero(2, 2);
    for (int k : shells(x.norm())) {
      const double w = std::pow(static_cast<double>(k), -1.0 / 3.0);
      for (int j = 0; j < 3; ++j) m += (w * shell_bump_gradient(k, j, x)(l)) * s[j];
    }
    return m;
  };
  p.gap_R = 0.0;
  p.gap_c = std::sqrt(3.0);
  p.label = "appendix_b";
  return p;
}

bool in_shell_region(int k, const Vec& x) {
  const double r = x.norm(), a = shell_radius(k), b = shell_radius(k + 1);
  if (r < a || r > b) return false;
  for (int j = 0; j < 3; ++j)
    if (x(j) >= a && x(j) <= b) return true;
  return false;
}

namespace {
struct BoxBounds {
  double lo, hi, rlo, rhi;
};
BoxBounds inner_bounds(int k) {
  const double p = std::ldexp(1.0, k);
  return {shell_radius(k) + p / 36, shell_radius(k + 1) - 17 * p / 18, shell_radius(k) + p / 2,
          shell_radius(k + 1) - p / 20};
}
}  // namespace

bool in_inner_box(int k, const Vec& x) {
  const BoxBounds b = inner_bounds(k);
  const double r = x.norm();
  if (r < b.rlo || r > b.rhi) return false;
  for (int j = 0; j < 3; ++j)
    if (x(j) < b.lo || x(j) > b.hi) return false;
  return true;
}

double inner_box_volume(int k, bool* cube_inside) {
  const BoxBounds b = inner_bounds(k);
  const bool inside = std::sqrt(3.0) * b.lo >= b.rlo && std::sqrt(3.0) * b.hi <= b.rhi;
  if (cube_inside) *cube_inside = inside;
  const double side = b.hi - b.lo;
  if (inside) return side * side * side;
  // cube partly outside the radial shell: integrate the x3 extent over (x1, x2)
  const Rule1D g = gauss_legendre(96, b.lo, b.hi);
  double v = 0.0;
  for (std::size_t i = 0; i < g.nodes.size(); ++i)
    for (std::size_t j = 0; j < g.nodes.size(); ++j) {
      const double q = g.nodes[i] * g.nodes[i] + g.nodes[j] * g.nodes[j];
      const double top2 = b.rhi * b.rhi - q;
      if (top2 <= 0) continue;
      const double lo = std::max(b.lo, std::sqrt(std::max(0.0, b.rlo * b.rlo - q)));
      const double hi = std::min(b.hi, std::sqrt(top2));
      if (hi > lo) v += g.weights[i] * g.weights[j] * (hi - lo);
    }
  return v;
}

double trace_lower_bound_partial_sum(int k0, int K) {
  double s = 0.0;
  for (int k = k0; k <= K; ++k) {
    const double p = std::ldexp(1.0, k);
    const double q = p / (p - 2.0);
    s += q * q * q / k;
  }
  return s / (36.0 * 36.0 * 36.0);
}

ShellDiagnostics shell_diagnostics(int k_max, int samples_per_shell) {
  ShellDiagnostics out;
  // k0: first shell from which the cube lies in the radial band for every k up to k_max
  int k0 = -1;
  for (int k = 2; k <= k_max; ++k) {
    bool inside = false;
    const double v = inner_box_volume(k, &inside);
    out.volume_ratio.push_back(v * std::pow(36.0, 3) / std::pow(2.0, 3 * k));
    if (inside && k0 < 0) k0 = k;
    if (!inside) k0 = -1;
  }
  if (k0 < 0) throw DomainError("shell_diagnostics: k_max too small to reach k0");
  out.k0 = k0;
  out.d1 = cutoff_d(1);
  out.d2 = cutoff_d(2);

  Potential phi = shell_counterexample(k_max + 1);
  const CMat s[3] = {pauli(1), pauli(2), pauli(3)};
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int k = 2; k <= k_max; ++k) {
    const BoxBounds b = inner_bounds(k);
    if (b.hi <= b.lo) continue;
    ShellDerivative sd;
    sd.k = k;
    sd.with_radius = std::pow(k, -1.0 / 3.0) / shell_radius(k + 1);
    sd.without_radius = std::pow(k, -1.0 / 3.0);
    double csum = 0.0;
    std::vector<double> cs;
    for (int t = 0; t < 40 * samples_per_shell && sd.samples < samples_per_shell; ++t) {
      Vec x(3);
      for (int i = 0; i < 3; ++i) x(i) = b.lo + (b.hi - b.lo) * uni(rng);
      if (!in_inner_box(k, x)) continue;
      ++sd.samples;
      for (int j = 0; j < 3; ++j) {
        const CMat dj = phi.deriv(x, j);
        const double c = 0.5 * (s[j] * dj).trace().real();
        cs.push_back(c);
        csum += c;
        sd.sigma_residual = std::max(sd.sigma_residual, max_abs(dj - c * s[j]));
        for (int jj = 0; jj < 3; ++jj) {
          const Eigen::Vector3d g = shell_bump_gradient(k, jj, x);
          for (int l = 0; l < 3; ++l)
            out.derivative_identity =
                std::max(out.derivative_identity, std::abs(shell_radius(k + 1) * g(l) - (l == jj ? 1.0 : 0.0)));
        }
      }
    }
    if (sd.samples == 0) continue;
    sd.observed = csum / static_cast<double>(cs.size());
    for (double c : cs) sd.sigma_residual = std::max(sd.sigma_residual, std::abs(c - sd.observed));
    out.shells.push_back(sd);
  }

  // support of xi_{k,j}: sample the positive octant region around each shell
  std::uniform_real_distribution<double> sym(-1.0, 1.0);
  int bad = 0;
  for (int k = 2; k <= std::min(k_max, 14); ++k) {
    const double span = shell_radius(k + 2);
    for (int t = 0; t < 400; ++t) {
      Vec x(3);
      for (int i = 0; i < 3; ++i) x(i) = span * sym(rng);
      for (int j = 0; j < 3; ++j)
        if (shell_bump(k, j, x) != 0.0 && !in_shell_region(k, x)) ++bad;
    }
  }
  out.support_violation = bad;

  // cutoff properties on dense grids
  for (int k = 2; k <= std::min(k_max, 30); ++k) {
    for (const ShellWindow& w : {radial_window(k), axial_window(k)}) {
      const double lo = w.r1 - w.t1, hi = w.r2 + w.t2;
      const double b1 = out.d1 * std::max(1 / w.t1, 1 / w.t2);
      const double b2 = out.d2 * std::max(1 / (w.t1 * w.t1), 1 / (w.t2 * w.t2));
      for (int i = 0; i <= 4000; ++i) {
        const double x = lo + (hi - lo) * i / 4000.0;
        const double v = win(w, x);
        out.cutoff.bounds = std::max({out.cutoff.bounds, -v, v - 1.0});
        if (x >= w.r1 + w.t1 && x <= w.r2 - w.t2) out.cutoff.plateau = std::max(out.cutoff.plateau, std::abs(v - 1));
        if (x < w.r1 || x > w.r2) out.cutoff.support = std::max(out.cutoff.support, std::abs(v));
        out.cutoff.slope1 = std::max(out.cutoff.slope1, (std::abs(win(w, x, 1)) - b1) / b1);
        out.cutoff.slope2 = std::max(out.cutoff.slope2, (std::abs(win(w, x, 2)) - b2) / b2);
      }
    }
  }

  for (int K = k0; K <= 2 * k_max; ++K) out.partial_sums.push_back(trace_lower_bound_partial_sum(k0, K));
  out.doubling_gain = trace_lower_bound_partial_sum(k0, 2 * k_max) - trace_lower_bound_partial_sum(k0, k_max);
  // slope of S_K against log K over K in [k_max, 2 k_max]
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (int K = k_max; K <= 2 * k_max; ++K) {
    const double a = std::log(static_cast<double>(K)), v = out.partial_sums[K - k0];
    sx += a;
    sy += v;
    sxx += a * a;
    sxy += a * v;
    ++cnt;
  }
  out.log_slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  return out;
}

}  // namespace callias
