#pragma once

// Polarization of a degree d form Q into the symmetric d-linear form T with
// T(x,...,x) = d! Q(x), and the reverse diagonal restriction.

#include <algorithm>
#include <vector>

#include "ranklab/common.hpp"
#include "ranklab/homogeneous.hpp"
#include "ranklab/multilinear.hpp"

namespace ranklab {

// The monomial c x^e spreads over every index tuple whose multiset of slot
// values matches e, each carrying c * prod_j e_j!.
template <class R>
MultilinearForm<R> polarize(const HomogeneousForm<R>& q,
                            std::int64_t entry_cap = Caps{}.tensor_entries) {
  const R& ring = q.ring();
  const int n = q.variables();
  const int d = q.degree();
  const auto ch = ring.characteristic();
  if (ch != 0 && ch <= d) {
    throw std::domain_error("characteristic must be zero or exceed the degree");
  }
  MultilinearForm<R> t(ring, std::vector<int>(static_cast<std::size_t>(d), n),
                       entry_cap);
  for (const auto& [e, c] : q.terms()) {
    typename R::Element w = c;
    std::vector<int> idx;
    idx.reserve(static_cast<std::size_t>(d));
    for (int j = 0; j < n; ++j) {
      w = ring.mul(w, ring.from_int(static_cast<long long>(factorial(e[j]))));
      for (int k = 0; k < e[j]; ++k) idx.push_back(j);
    }
    do {
      t.set_entry(idx, ring.add(t.entry(idx), w));
    } while (std::next_permutation(idx.begin(), idx.end()));
  }
  return t;
}

// Q(x) = T(x,...,x) as a homogeneous polynomial; requires equal slot
// dimensions.
template <class R>
HomogeneousForm<R> restrict_diagonal(const MultilinearForm<R>& t) {
  const int d = t.arity();
  const int n = t.dim(0);
  for (int i = 1; i < d; ++i) {
    if (t.dim(i) != n) throw std::invalid_argument("slots must share dimension");
  }
  HomogeneousForm<R> q(t.ring(), n, d);
  std::vector<int> idx(static_cast<std::size_t>(d), 0);
  std::int64_t f = 0;
  do {
    const auto& c = t.entry_flat(f++);
    if (t.ring().is_zero(c)) continue;
    std::vector<int> e(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < d; ++i) e[idx[i]] += 1;
    q.add_term(e, c);
  } while (next_tuple(idx, t.dims()));
  return q;
}

template <class R>
bool is_symmetric(const MultilinearForm<R>& t) {
  const int d = t.arity();
  for (int i = 1; i < d; ++i) {
    if (t.dim(i) != t.dim(0)) return false;
  }
  std::vector<int> perm(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) perm[i] = i;
  // Adjacent transpositions generate the symmetric group.
  for (int i = 0; i + 1 < d; ++i) {
    std::swap(perm[i], perm[i + 1]);
    if (!(t.permuted(perm) == t)) return false;
    std::swap(perm[i], perm[i + 1]);
  }
  return true;
}

}  // namespace ranklab
