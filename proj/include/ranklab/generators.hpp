#pragma once

// Standard instances and randomized generators for forms and collections.

#include <vector>

#include "ranklab/certificate.hpp"
#include "ranklab/common.hpp"
#include "ranklab/field.hpp"
#include "ranklab/homogeneous.hpp"
#include "ranklab/linalg.hpp"
#include "ranklab/multilinear.hpp"
#include "ranklab/ring.hpp"

namespace ranklab {

// sum_{i<r} x_{1,i} ... x_{d,i} on slot dimension r.
template <class R>
MultilinearForm<R> diagonal_form(const R& ring, int r, int d) {
  if (r <= 0 || d <= 0) throw std::invalid_argument("need positive rank and arity");
  MultilinearForm<R> t(ring, std::vector<int>(static_cast<std::size_t>(d), r));
  std::vector<int> idx(static_cast<std::size_t>(d), 0);
  for (int i = 0; i < r; ++i) {
    std::fill(idx.begin(), idx.end(), i);
    t.set_entry(idx, ring.one());
  }
  return t;
}

// m diagonal forms on slot dimension m*r; member l occupies coordinate block
// [l*r, (l+1)*r). Every nonzero combination is diagonal of rank at least r.
template <class R>
FormCollection<R> diagonal_collection(const R& ring, int m, int r, int d) {
  if (m <= 0) throw std::invalid_argument("need at least one member");
  FormCollection<R> c;
  for (int l = 0; l < m; ++l) {
    MultilinearForm<R> t(ring, std::vector<int>(static_cast<std::size_t>(d), m * r));
    std::vector<int> idx(static_cast<std::size_t>(d), 0);
    for (int i = 0; i < r; ++i) {
      std::fill(idx.begin(), idx.end(), l * r + i);
      t.set_entry(idx, ring.one());
    }
    c.members.push_back(std::move(t));
  }
  c.validate();
  return c;
}

// sum_{i<r} x_i^d.
template <class R>
HomogeneousForm<R> diagonal_power_form(const R& ring, int r, int d) {
  HomogeneousForm<R> q(ring, r, d);
  for (int i = 0; i < r; ++i) {
    std::vector<int> e(static_cast<std::size_t>(r), 0);
    e[i] = d;
    q.add_term(e, ring.one());
  }
  return q;
}

// x_i^d = x_i^floor(d/2) * x_i^ceil(d/2), one pair per summand.
template <class R>
SchmidtDecomposition<R> diagonal_power_schmidt(const R& ring, int r, int d) {
  if (d < 2) throw std::invalid_argument("decomposition needs degree >= 2");
  SchmidtDecomposition<R> dec;
  for (int i = 0; i < r; ++i) {
    HomogeneousForm<R> lo(ring, r, d / 2);
    HomogeneousForm<R> hi(ring, r, d - d / 2);
    std::vector<int> e(static_cast<std::size_t>(r), 0);
    e[i] = d / 2;
    lo.add_term(e, ring.one());
    e[i] = d - d / 2;
    hi.add_term(e, ring.one());
    dec.pairs.emplace_back(std::move(lo), std::move(hi));
  }
  return dec;
}

inline FiniteField::Element random_field_element(const FiniteField& f, Rng& rng) {
  return static_cast<FiniteField::Element>(uniform_below(rng, f.size()));
}

inline Int random_bounded_int(Rng& rng, long long bound) {
  if (bound < 0) throw std::invalid_argument("bound must be nonnegative");
  return Int(static_cast<long long>(
                 uniform_below(rng, 2 * static_cast<std::uint64_t>(bound) + 1)) -
             bound);
}

template <class R>
typename R::Element random_element(const R& ring, Rng& rng, long long bound) {
  if constexpr (std::is_same_v<R, FiniteField>) {
    (void)bound;
    return random_field_element(ring, rng);
  } else {
    (void)ring;
    return typename R::Element(random_bounded_int(rng, bound));
  }
}

template <class R>
MultilinearForm<R> random_form(const R& ring, const std::vector<int>& dims, Rng& rng,
                               long long bound = 9) {
  MultilinearForm<R> t(ring, dims);
  for (std::int64_t f = 0; f < t.size(); ++f) {
    t.entry_flat(f) = random_element(ring, rng, bound);
  }
  return t;
}

// All exponent vectors of length n summing to d, lexicographically.
inline std::vector<std::vector<int>> enumerate_exponents(int n, int d) {
  std::vector<std::vector<int>> out;
  std::vector<int> e(static_cast<std::size_t>(n), 0);
  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == n - 1) {
      e[pos] = left;
      out.push_back(e);
      return;
    }
    for (int v = left; v >= 0; --v) {
      e[pos] = v;
      self(self, pos + 1, left - v);
    }
  };
  rec(rec, 0, d);
  return out;
}

template <class R>
HomogeneousForm<R> random_homogeneous(const R& ring, int n, int d, Rng& rng,
                                      long long bound = 9) {
  HomogeneousForm<R> q(ring, n, d);
  for (const auto& e : enumerate_exponents(n, d)) {
    q.add_term(e, random_element(ring, rng, bound));
  }
  return q;
}

template <class R>
Matrix<R> random_invertible(const R& ring, int n, Rng& rng, long long bound = 9) {
  static_assert(R::kIsField, "invertibility sampling needs a field");
  for (;;) {
    Matrix<R> m(ring, n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) m.at(i, j) = random_element(ring, rng, bound);
    }
    if (matrix_rank(m) == n) return m;
  }
}

// Entrywise coefficient transport into another ring.
template <class R2, class R1, class Fn>
MultilinearForm<R2> map_form(const MultilinearForm<R1>& t, const R2& dst, Fn&& fn) {
  MultilinearForm<R2> out(dst, t.dims(), t.size());
  for (std::int64_t f = 0; f < t.size(); ++f) out.entry_flat(f) = fn(t.entry_flat(f));
  return out;
}

template <class R2, class R1, class Fn>
HomogeneousForm<R2> map_homogeneous(const HomogeneousForm<R1>& q, const R2& dst,
                                    Fn&& fn) {
  HomogeneousForm<R2> out(dst, q.variables(), q.degree());
  for (const auto& [e, c] : q.terms()) out.add_term(e, fn(c));
  return out;
}

inline FiniteField::Element to_field(const Int& v, const FiniteField& f) {
  Int r = v % f.characteristic();
  if (r < 0) r += f.characteristic();
  return f.from_int(static_cast<long long>(r));
}

inline MultilinearForm<FiniteField> reduce_mod_p(const MultilinearForm<IntegerRing>& t,
                                                 const FiniteField& f) {
  if (!f.is_prime_field()) {
    throw std::invalid_argument("reduction targets a prime field");
  }
  return map_form(t, f, [&f](const Int& v) { return to_field(v, f); });
}

inline MultilinearForm<RationalField> rationalize(
    const MultilinearForm<IntegerRing>& t) {
  return map_form(t, RationalField{}, [](const Int& v) { return Rat(v); });
}

// Transport along the inclusion of the prime field into an extension; the
// residue representation is shared.
inline MultilinearForm<FiniteField> extend_scalars(
    const MultilinearForm<FiniteField>& t, const FiniteField& ext) {
  if (!t.ring().is_prime_field() || ext.characteristic() != t.ring().characteristic()) {
    throw std::invalid_argument("extension must enlarge the prime field");
  }
  return map_form(t, ext,
                  [&ext](FiniteField::Element v) { return ext.from_int(v); });
}

}  // namespace ranklab
