#pragma once

// Explicit rank witnesses: a partition rank certificate writes a multilinear
// form as a sum of products split across a bipartition of the slots; a
// Schmidt decomposition writes a polynomial as a sum of products of lower
// degree forms.

#include <utility>
#include <vector>

#include "ranklab/homogeneous.hpp"
#include "ranklab/multilinear.hpp"

namespace ranklab {

template <class R>
struct BipartiteTerm {
  std::vector<int> left_slots;  // strictly increasing proper nonempty subset
  MultilinearForm<R> left;      // arity |left_slots|
  MultilinearForm<R> right;     // arity d - |left_slots|
};

template <class R>
class PartitionRankCertificate {
 public:
  std::vector<BipartiteTerm<R>> terms;

  int rank() const { return static_cast<int>(terms.size()); }

  static void check_term(const BipartiteTerm<R>& term, const std::vector<int>& dims) {
    const int d = static_cast<int>(dims.size());
    const auto& ls = term.left_slots;
    if (ls.empty() || static_cast<int>(ls.size()) >= d) {
      throw std::invalid_argument("bipartition must be proper");
    }
    for (std::size_t i = 0; i < ls.size(); ++i) {
      if (ls[i] < 0 || ls[i] >= d || (i > 0 && ls[i] <= ls[i - 1])) {
        throw std::invalid_argument("left slots must be strictly increasing");
      }
    }
    std::vector<int> ld, rd;
    std::size_t k = 0;
    for (int i = 0; i < d; ++i) {
      if (k < ls.size() && ls[k] == i) {
        ld.push_back(dims[i]);
        ++k;
      } else {
        rd.push_back(dims[i]);
      }
    }
    if (term.left.dims() != ld || term.right.dims() != rd) {
      throw std::invalid_argument("factor shape mismatch");
    }
  }

  MultilinearForm<R> expand(const R& ring, const std::vector<int>& dims) const {
    MultilinearForm<R> out(ring, dims);
    std::vector<int> idx(dims.size(), 0);
    std::vector<int> li, ri;
    for (const auto& term : terms) {
      check_term(term, dims);
      std::fill(idx.begin(), idx.end(), 0);
      do {
        li.clear();
        ri.clear();
        std::size_t k = 0;
        for (int i = 0; i < static_cast<int>(dims.size()); ++i) {
          if (k < term.left_slots.size() && term.left_slots[k] == i) {
            li.push_back(idx[i]);
            ++k;
          } else {
            ri.push_back(idx[i]);
          }
        }
        auto v = ring.mul(term.left.entry(li), term.right.entry(ri));
        if (!ring.is_zero(v)) out.set_entry(idx, ring.add(out.entry(idx), v));
      } while (next_tuple(idx, dims));
    }
    return out;
  }

  bool matches(const MultilinearForm<R>& t) const {
    return expand(t.ring(), t.dims()) == t;
  }
};

template <class R>
class SchmidtDecomposition {
 public:
  // Each pair multiplies to a degree d summand; both factors have positive
  // degree.
  std::vector<std::pair<HomogeneousForm<R>, HomogeneousForm<R>>> pairs;

  int rank() const { return static_cast<int>(pairs.size()); }

  bool matches(const HomogeneousForm<R>& q) const {
    HomogeneousForm<R> acc(q.ring(), q.variables(), q.degree());
    for (const auto& [r, s] : pairs) {
      if (r.degree() < 1 || s.degree() < 1 || r.degree() + s.degree() != q.degree()) {
        throw std::invalid_argument("factor degrees must be positive and sum to d");
      }
      acc = acc.add(r.multiply(s));
    }
    return acc == q;
  }
};

}  // namespace ranklab
