// One PASS/FAIL line per acceptance criterion, plus the measured values.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "callias/clifford.hpp"
#include "callias/commands.hpp"
#include "callias/index.hpp"
#include "callias/witten.hpp"

using namespace callias;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double index_of(const Potential& p) { return callias_index(sign_potential(p)).index_real; }

// All non-informational lines whose name starts with one of the prefixes pass.
Outcome from_suite(const std::vector<CheckLine>& lines, const std::vector<std::string>& prefixes) {
  Outcome o{true, ""};
  int used = 0;
  std::ostringstream os;
  for (const auto& l : lines) {
    bool hit = prefixes.empty();
    for (const auto& p : prefixes) hit = hit || l.name.rfind(p, 0) == 0;
    if (!hit || l.informational) continue;
    ++used;
    if (!l.pass) {
      o.pass = false;
      os << ", failed " << l.name << " (" << l.value << " vs " << l.bound << ")";
    }
  }
  if (used == 0) o.pass = false;
  o.detail = std::to_string(used) + " checks" + os.str();
  return o;
}

Outcome hedgehog_index() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = callias_index(sign_potential(hedgehog(3)));
  const double t = seconds_since(t0);
  std::ostringstream os;
  os << "index " << r.index_real << " |err| " << std::abs(r.index_real + 1) << " |Im| " << r.imag_residual << " time "
     << t << " s";
  return {r.converged && std::abs(r.index_real + 1) < 1e-6 && r.imag_residual < 1e-9 && t < 5.0, os.str()};
}

Outcome admissible_zero() {
  const double a = index_of(constant_unitary(pauli(3))), b = index_of(rotated_constant());
  std::ostringstream os;
  os << "constant " << a << " rotated_constant " << b;
  return {std::abs(a) < 1e-6 && std::abs(b) < 1e-6, os.str()};
}

Outcome parity_invariance() {
  const double anti = index_of(anti_hedgehog(3));
  const Potential h = hedgehog(3);
  double worst = 0;
  for (int axis = 0; axis < 3; ++axis) worst = std::max(worst, invariance_check(h, reflection_transform(3, axis)).difference);
  worst = std::max(worst, invariance_check(h, rotation_transform(3, 0.9, 0, 1)).difference);
  worst = std::max(worst, invariance_check(h, rotation_transform(3, 2.1, 1, 2)).difference);
  for (double t : {0.5, 3.0}) worst = std::max(worst, scaling_check(h, t));
  std::ostringstream os;
  os << "anti-hedgehog " << anti << " max invariance difference " << worst;
  return {std::abs(anti - 1) < 1e-6 && worst < 1e-5, os.str()};
}

Outcome block_embedding() {
  const double a = index_of(block_embed(hedgehog(3), 1)), b = index_of(block_embed(hedgehog(3), 2));
  std::ostringstream os;
  os << "l=1 " << a << " l=2 " << b;
  return {std::abs(a + 1) < 1e-6 && std::abs(b + 1) < 1e-6, os.str()};
}

Outcome clifford_suite() {
  const auto t0 = std::chrono::steady_clock::now();
  auto o = from_suite(verify_suite("clifford", RunConfig{}), {"relations", "full_trace_epsilon", "odd_subtraces"});
  const double t = seconds_since(t0);
  o.pass = o.pass && t < 10.0;
  o.detail += ", time " + std::to_string(t) + " s";
  return o;
}

Outcome non_cancellation() {
  const cplx t = m_density(local_24i(), Vec::Zero(3));
  auto o = from_suite(verify_suite("clifford", RunConfig{}), {"epsilon_sum_24i", "hedgehog_density"});
  std::ostringstream os;
  os << "epsilon trace " << t << ", " << o.detail;
  o.detail = os.str();
  return o;
}

Outcome sign_function() { return from_suite(verify_suite("sign", RunConfig{}), {}); }

Outcome green_kernel() { return from_suite(verify_suite("kernels", RunConfig{}), {}); }

Outcome identities() {
  auto o = from_suite(verify_suite("identities", RunConfig{}), {});
  // resolvent commutator on the spectral lattice, 50 randomized instances
  double worst = 0;
  for (int i = 0; i < 50; ++i) {
    const int dim = 1 + i % 2;
    const int N = dim == 1 ? 32 : 16;
    const cplx mu(1.0 + 0.05 * i, 0.02 * i);
    worst = std::max(worst, check_commutator_identity(dim, N, mu, CommutatorForm::gradient, 1000 + i));
  }
  const double printed_2d = check_commutator_identity(2, 16, 1.0, CommutatorForm::printed, 5);
  o.pass = o.pass && worst < 1e-6;
  std::ostringstream os;
  os << o.detail << ", commutator (gradient form, 50 instances) " << worst << ", gamma form in 2D " << printed_2d;
  o.detail = os.str();
  return o;
}

Outcome lattice_witten() {
  std::ostringstream os;
  std::vector<double> err;
  double f1_level1 = 0, t_level1 = 0;
  bool ok = true;
  for (int level = 0; level <= 2; ++level) {
    LatticeConfig c = lattice_level(level);
    if (level == 2) c.zs = {1.0};  // the finest level is only needed at z = 1
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = witten_trace(make_lattice(hedgehog(3), c), c.lambdas, c.zs);
    const double t = seconds_since(t0);
    double f1 = 0;
    for (const auto& [z, f] : r.f_curve)
      if (z == cplx(1.0)) f1 = f.real();
    err.push_back(std::abs(f1 - witten_target(-1, 3, 1.0)));
    os << "level " << level << " f(1) " << f1 << " err " << err.back() << " (" << r.method << ", " << t << " s); ";
    if (level == 1) {
      f1_level1 = f1;
      t_level1 = t;
      os << "level 1 f(z)(1+z)^{3/2}:";
      for (const auto& [z, f] : r.f_curve) os << " " << (f * std::pow(1.0 + z, 1.5)).real();
      os << "; ";
    }
  }
  const bool band = std::abs(f1_level1 + 0.354) <= 0.07;
  const bool monotone = err[0] > err[1] && err[1] > err[2];
  ok = ok && band && monotone && t_level1 < 600;

  const LatticeConfig c1 = lattice_level(1);
  const auto zero = witten_trace(make_lattice(constant_unitary(pauli(3)), c1), c1.lambdas, c1.zs);
  bool exact_zero = true;
  for (const auto& s : zero.samples) exact_zero = exact_zero && s.trace == cplx(0, 0);
  const double even = even_dimension_analog(16, 8.0, 1.0);
  ok = ok && exact_zero && even < 1e-9;
  os << "band " << (band ? "ok" : "no") << ", monotone " << (monotone ? "ok" : "no") << ", constant exactly zero "
     << (exact_zero ? "ok" : "no") << ", even analog " << even;
  return {ok, os.str()};
}

Outcome counterexample() {
  RunConfig cfg;
  cfg.kmax = 40;
  const auto lines = verify_suite("counterexample", cfg);
  auto o = from_suite(lines, {});
  std::ostringstream os;
  for (const auto& l : lines)
    if (l.informational) os << ", info " << l.name << " " << l.value << " vs " << l.bound;
  o.detail += os.str();
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 hedgehog index", hedgehog_index},
      {"2 admissible potentials give zero", admissible_zero},
      {"3 parity and invariance", parity_invariance},
      {"4 block embedding", block_embedding},
      {"5 clifford suite", clifford_suite},
      {"6 non-cancellation fixture", non_cancellation},
      {"7 sign function", sign_function},
      {"8 Green's kernel", green_kernel},
      {"9 resolvent identities", identities},
      {"10 lattice Witten cross-check", lattice_witten},
      {"11 counterexample shells and partial sums", counterexample},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << "  [" << seconds_since(t0) << " s]  " << o.detail << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria pass" << std::endl;
  return failed == 0 ? 0 : 1;
}
