#include "callias/index.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <set>
#include <sstream>

#include "callias/clifford.hpp"
#include "callias/matrixfn.hpp"
#include "callias/parallel.hpp"

namespace callias {

cplx index_prefactor(int n) {
  const int nh = (n - 1) / 2;
  cplx p(1.0, 0.0);
  const cplx base(0.0, 1.0 / (8.0 * kPi));
  for (int k = 1; k <= nh; ++k) p *= base / static_cast<double>(k);
  return p;
}

cplx c_n(int n) { return 0.5 * index_prefactor(n); }

cplx surface_integrand(const Potential& u, const Vec& x) {
  if (x.size() != u.n) throw DomainError("surface_integrand: point has wrong dimension");
  std::vector<double> w(x.data(), x.data() + x.size());
  return antisymmetrized_trace_weighted(u.eval(x), u.gradient(x), w);
}

cplx m_density(const Potential& u, const Vec& x) {
  if (x.size() != u.n) throw DomainError("m_density: point has wrong dimension");
  return antisymmetrized_trace(u.gradient(x));
}

namespace {

void require_odd(int n, const char* who) {
  if (n < 3 || n % 2 == 0)
    throw DomainError(std::string(who) + ": the index formula needs odd n >= 3 (even-dimensional indices vanish)");
}

}  // namespace

cplx surface_index(const Potential& u, double radius, const SphereRule& rule) {
  require_odd(u.n, "surface_index");
  if (rule.n != u.n) throw DomainError("surface_index: rule dimension mismatch");
  if (!(radius > 0)) throw DomainError("surface_index: radius must be positive");
  std::vector<cplx> terms(rule.nodes.size());
  parallel_for(rule.nodes.size(), [&](std::size_t i) {
    terms[i] = rule.weights[i] * surface_integrand(u, radius * rule.nodes[i]);
  });
  const cplx integral = pairwise_sum(terms) * std::pow(radius, u.n - 1);
  return index_prefactor(u.n) / (2.0 * radius) * integral;
}

std::vector<double> default_radii(const Potential& u) {
  const double b = u.gap_R + 1.0;
  return {b, 2 * b, 4 * b, 8 * b};
}

int default_degree(int n) {
  if (n <= 3) return 31;
  if (n == 5) return 11;
  return 3;
}

IndexResult callias_index(const Potential& u, const IndexOptions& opt) {
  const std::vector<double> radii = opt.radii.empty() ? default_radii(u) : opt.radii;
  const SphereRule rule = make_sphere_rule(u.n, opt.degree > 0 ? opt.degree : default_degree(u.n));
  return callias_index(u, radii, rule, opt);
}

IndexResult callias_index(const Potential& u, const std::vector<double>& radii, const SphereRule& rule,
                          const IndexOptions& opt) {
  require_odd(u.n, "callias_index");
  if (radii.empty()) throw DomainError("callias_index: empty radius schedule");
  for (double r : radii)
    if (!(r >= u.gap_R)) throw DomainError("callias_index: radius below the gap radius");
  IndexResult res;
  res.n = u.n;
  res.label = u.label;
  res.c_n_used = c_n(u.n);
  for (double r : radii) res.per_radius.push_back({r, surface_index(u, r, rule)});

  const auto& v = res.per_radius;
  // plateau: three consecutive radii agree
  for (std::size_t i = v.size(); i-- >= 3 && !res.plateau;) {
    const cplx a = v[i - 2].value, b = v[i - 1].value, c = v[i].value;
    if (std::abs(a - b) <= opt.plateau_tol && std::abs(b - c) <= opt.plateau_tol) {
      res.plateau = true;
      res.extrapolated = c;
      res.extrapolation_residual = std::max(std::abs(a - b), std::abs(b - c));
      res.method = "plateau";
    }
  }
  if (!res.plateau) {
    res.method = "richardson";
    if (v.size() == 1) {
      res.extrapolated = v[0].value;
      res.extrapolation_residual = std::numeric_limits<double>::infinity();
    } else {
      // value = a + b / Lambda on the last two radii; compare against the last value
      const std::size_t m = v.size();
      const double h1 = 1.0 / v[m - 2].radius, h2 = 1.0 / v[m - 1].radius;
      const cplx a = (v[m - 1].value * h1 - v[m - 2].value * h2) / (h1 - h2);
      res.extrapolated = a;
      double resid = std::abs(a - v[m - 1].value);
      if (m >= 3) {
        const double h0 = 1.0 / v[m - 3].radius;
        const cplx a_prev = (v[m - 2].value * h0 - v[m - 3].value * h1) / (h0 - h1);
        resid = std::max(resid, std::abs(a - a_prev));
      }
      res.extrapolation_residual = resid;
    }
  }
  res.index_real = res.extrapolated.real();
  res.imag_residual = std::abs(res.extrapolated.imag());
  res.integer_distance = std::abs(res.index_real - std::round(res.index_real));
  res.converged = res.plateau || res.extrapolation_residual <= opt.tol;
  if (u.null_block > 0) res.note = "generalized Witten index (non-Fredholm embedding)";
  if (u.experimental) res.note += (res.note.empty() ? "" : "; ") + std::string("experimental potential");
  return res;
}

cplx volume_index(const Potential& u, double radius, const SphereRule& rule, int radial_nodes) {
  require_odd(u.n, "volume_index");
  if (rule.n != u.n) throw DomainError("volume_index: rule dimension mismatch");
  if (!(radius > 0)) throw DomainError("volume_index: radius must be positive");
  std::set<double> cuts{0.0, radius};
  for (double c : {0.25, 0.5, 1.0, u.gap_R, 0.75 * u.gap_R, 0.5 * u.gap_R})
    if (c > 0 && c < radius) cuts.insert(c);
  std::vector<double> edges(cuts.begin(), cuts.end());
  struct Node {
    double r, w;
  };
  std::vector<Node> radial;
  for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
    const Rule1D g = gauss_legendre(radial_nodes, edges[k], edges[k + 1]);
    for (int i = 0; i < radial_nodes; ++i) radial.push_back({g.nodes[i], g.weights[i]});
  }
  const std::size_t ns = rule.nodes.size();
  std::vector<cplx> terms(radial.size() * ns);
  parallel_for(terms.size(), [&](std::size_t idx) {
    const Node& nd = radial[idx / ns];
    const std::size_t i = idx % ns;
    terms[idx] = nd.w * std::pow(nd.r, u.n - 1) * rule.weights[i] * m_density(u, nd.r * rule.nodes[i]);
  });
  return c_n(u.n) * pairwise_sum(terms);
}

double chain_rule_check(const Potential& u, const Transform& t, const std::vector<Vec>& samples) {
  double worst = 0.0;
  const auto comp = u.eval;
  MatrixField composite = [&](const Vec& x) { return comp(t.map(x)); };
  for (const Vec& x : samples) {
    std::vector<CMat> g;
    for (int j = 0; j < u.n; ++j) g.push_back(fd_derivative(composite, x, j));
    const cplx lhs = antisymmetrized_trace(g);
    const cplx rhs = m_density(u, t.map(x)) * t.jacobian(x).determinant();
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

InvarianceResult invariance_check(const Potential& u, const Transform& t, const IndexOptions& opt) {
  InvarianceResult r;
  r.index_u = callias_index(u, opt).index_real;
  Potential ut = compose(u, t);
  r.signed_index_composed = t.orientation * callias_index(ut, opt).index_real;
  r.difference = r.index_u - r.signed_index_composed;
  return r;
}

double scaling_check(const Potential& u, double t, const IndexOptions& opt) {
  const double a = callias_index(u, opt).index_real;
  IndexOptions o2 = opt;
  o2.radii.clear();
  const double b = callias_index(scaled(u, t), o2).index_real;
  return std::abs(a - b);
}

std::string index_result_text(const IndexResult& r) {
  std::ostringstream os;
  os << std::setprecision(12);
  os << "potential " << r.label << "  n=" << r.n << "\n";
  os << "c_n = " << r.c_n_used.real() << (r.c_n_used.imag() < 0 ? " - " : " + ") << std::abs(r.c_n_used.imag())
     << "i\n";
  os << std::setw(14) << "Lambda" << std::setw(22) << "Re" << std::setw(22) << "Im" << "\n";
  for (const auto& pr : r.per_radius)
    os << std::setw(14) << pr.radius << std::setw(22) << pr.value.real() << std::setw(22) << pr.value.imag() << "\n";
  os << "index " << r.index_real << "  (" << r.method << ", residual " << r.extrapolation_residual
     << ", |Im| " << r.imag_residual << ", integer distance " << r.integer_distance << ")\n";
  if (!r.converged) os << "warning: non-convergent limit\n";
  if (!r.note.empty()) os << "note: " << r.note << "\n";
  return os.str();
}

std::string index_result_csv(const IndexResult& r) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "lambda,re,im\n";
  for (const auto& pr : r.per_radius) os << pr.radius << "," << pr.value.real() << "," << pr.value.imag() << "\n";
  os << "extrapolated," << r.extrapolated.real() << "," << r.extrapolated.imag() << "\n";
  return os.str();
}

}  // namespace callias
