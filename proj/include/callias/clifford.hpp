#pragma once

#include <vector>

#include "callias/types.hpp"

namespace callias {

struct CliffordAlgebra {
  int n = 0;
  int nhat = 0;
  std::vector<CMat> gammas;  // gammas[j-1] is the j-th generator

  int dim() const { return 1 << nhat; }
  const CMat& operator[](int j) const { return gammas.at(j - 1); }
};

// j in 1..3; j = 0 gives the identity.
CMat pauli(int j);

CMat kronecker(const CMat& a, const CMat& b);

// Memoized per n; the returned reference stays valid for the process lifetime.
const CliffordAlgebra& build_algebra(int n);

// tr(gamma_{i1} ... gamma_{ik}), 1-based indices.
cplx gamma_trace(const CliffordAlgebra& alg, const std::vector<int>& indices);

// Sign of the permutation, 0 if an index repeats.
int epsilon_symbol(const std::vector<int>& indices);

// Max deviation from the generator relations (Hermitian, unitary, anticommuting).
double algebra_defect(const CliffordAlgebra& alg);

// Calls fn(perm, sign) for every permutation of 0..k-1 in lexicographic order.
template <class Fn>
void for_each_permutation(int k, Fn&& fn) {
  std::vector<int> perm(k);
  std::vector<char> used(k, 0);
  auto rec = [&](auto&& self, int depth, int parity) -> void {
    if (depth == k) {
      fn(perm, parity ? -1 : 1);
      return;
    }
    int smaller_unused = 0;
    for (int v = 0; v < k; ++v) {
      if (used[v]) continue;
      used[v] = 1;
      perm[depth] = v;
      self(self, depth + 1, parity ^ (smaller_unused & 1));
      used[v] = 0;
      ++smaller_unused;
    }
  };
  rec(rec, 0, 0);
}

// Sum over permutations p of 0..k-1 of sign(p) * tr(M[p0] M[p1] ... M[p(k-1)]),
// with prefix products shared along the DFS.
cplx antisymmetrized_trace(const std::vector<CMat>& mats);

// Sum over permutations p of 0..k-1 of
//   sign(p) * tr(lead M[p0] ... M[p(k-2)]) * w[p(k-1)].
cplx antisymmetrized_trace_weighted(const CMat& lead, const std::vector<CMat>& mats,
                                    const std::vector<double>& w);

}  // namespace callias
