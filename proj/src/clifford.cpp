#include "callias/clifford.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace callias {

CMat pauli(int j) {
  CMat m = CMat::Zero(2, 2);
  const cplx I(0, 1);
  switch (j) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, -I, I, 0; break;
    case 3: m << 1, 0, 0, -1; break;
    default: throw DomainError("pauli: index must be 0..3");
  }
  return m;
}

CMat kronecker(const CMat& a, const CMat& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols())
    throw DomainError("kronecker: operands must be square");
  const Eigen::Index p = a.rows(), q = b.rows();
  CMat out(p * q, p * q);
  for (Eigen::Index i = 0; i < p; ++i)
    for (Eigen::Index j = 0; j < p; ++j) out.block(i * q, j * q, q, q) = a(i, j) * b;
  return out;
}

namespace {

CMat product(const std::vector<CMat>& g) {
  CMat p = g.front();
  for (std::size_t k = 1; k < g.size(); ++k) p = p * g[k];
  return p;
}

cplx ipow(cplx base, int e) {
  cplx r(1, 0);
  for (int k = 0; k < e; ++k) r *= base;
  return r;
}

CliffordAlgebra construct(int n) {
  // even base case n = 2, then alternate odd / even steps
  std::vector<CMat> g{pauli(1), pauli(2)};
  int m = 2;
  while (m < n) {
    const int nh = m / 2;
    CMat prod = product(g);
    if (m % 2 == 0) {
      g.push_back(ipow(cplx(0, -1), nh) * prod);
      m += 1;
    } else {
      // g holds the 2nh+1 odd generators; the even step uses the first 2nh
      std::vector<CMat> first(g.begin(), g.begin() + 2 * nh);
      CMat p2 = product(first);
      std::vector<CMat> next;
      for (int k = 0; k < 2 * nh; ++k) next.push_back(kronecker(pauli(1), first[k]));
      next.push_back(ipow(cplx(0, 1), nh) * kronecker(pauli(1), p2));
      next.push_back(kronecker(pauli(2), CMat::Identity(1 << nh, 1 << nh)));
      g = std::move(next);
      m += 1;
    }
  }
  CliffordAlgebra alg;
  alg.n = n;
  alg.nhat = n / 2;
  alg.gammas = std::move(g);
  return alg;
}

}  // namespace

const CliffordAlgebra& build_algebra(int n) {
  if (n < 2) throw DomainError("build_algebra: n must be >= 2");
  static std::mutex mu;
  static std::map<int, std::unique_ptr<CliffordAlgebra>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<CliffordAlgebra>(construct(n));
  return *slot;
}

cplx gamma_trace(const CliffordAlgebra& alg, const std::vector<int>& indices) {
  if (indices.empty()) throw DomainError("gamma_trace: empty index list");
  for (int i : indices)
    if (i < 1 || i > alg.n) throw DomainError("gamma_trace: index out of range");
  CMat p = alg[indices[0]];
  for (std::size_t k = 1; k < indices.size(); ++k) p = p * alg[indices[k]];
  return p.trace();
}

int epsilon_symbol(const std::vector<int>& indices) {
  const std::size_t k = indices.size();
  int inversions = 0;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b) {
      if (indices[a] == indices[b]) return 0;
      if (indices[a] > indices[b]) ++inversions;
    }
  return (inversions % 2) ? -1 : 1;
}

double algebra_defect(const CliffordAlgebra& alg) {
  const int d = alg.dim();
  const CMat id = CMat::Identity(d, d);
  double worst = 0.0;
  for (int j = 1; j <= alg.n; ++j) {
    const CMat& gj = alg[j];
    if (gj.rows() != d || gj.cols() != d) return 1e300;
    worst = std::max(worst, max_abs(gj - gj.adjoint()));
    worst = std::max(worst, max_abs(gj.adjoint() * gj - id));
    for (int k = 1; k <= alg.n; ++k) {
      CMat ac = gj * alg[k] + alg[k] * gj;
      if (j == k) ac -= 2.0 * id;
      worst = std::max(worst, max_abs(ac));
    }
  }
  return worst;
}

namespace {

// DFS over permutations keeping prefix[depth] = lead * M[p0] ... M[p(depth-1)].
template <class Leaf>
void permute_products(const CMat& lead, const std::vector<CMat>& mats, int stop, Leaf&& leaf) {
  const int k = static_cast<int>(mats.size());
  std::vector<CMat> prefix(stop + 1);
  prefix[0] = lead;
  std::vector<char> used(k, 0);
  auto rec = [&](auto&& self, int depth, int parity) -> void {
    if (depth == stop) {
      leaf(prefix[depth], used, parity ? -1.0 : 1.0);
      return;
    }
    int smaller_unused = 0;
    for (int v = 0; v < k; ++v) {
      if (used[v]) continue;
      used[v] = 1;
      prefix[depth + 1].noalias() = prefix[depth] * mats[v];
      self(self, depth + 1, parity ^ (smaller_unused & 1));
      used[v] = 0;
      ++smaller_unused;
    }
  };
  rec(rec, 0, 0);
}

}  // namespace

cplx antisymmetrized_trace(const std::vector<CMat>& mats) {
  if (mats.empty()) return 0.0;
  const Eigen::Index d = mats.front().rows();
  cplx sum = 0.0;
  permute_products(CMat::Identity(d, d), mats, static_cast<int>(mats.size()),
                   [&](const CMat& p, const std::vector<char>&, double s) { sum += s * p.trace(); });
  return sum;
}

cplx antisymmetrized_trace_weighted(const CMat& lead, const std::vector<CMat>& mats,
                                    const std::vector<double>& w) {
  const int k = static_cast<int>(mats.size());
  if (k == 0 || static_cast<int>(w.size()) != k)
    throw DomainError("antisymmetrized_trace_weighted: size mismatch");
  cplx sum = 0.0;
  permute_products(lead, mats, k - 1, [&](const CMat& p, const std::vector<char>& used, double s) {
    int last = 0;
    while (used[last]) ++last;
    // the remaining index sits last; its parity contribution is zero
    sum += s * p.trace() * w[last];
  });
  return sum;
}

}  // namespace callias
