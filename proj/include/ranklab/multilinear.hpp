#pragma once

// Dense multilinear forms. Slot i has dimension dims[i]; the coefficient
// tensor is stored row-major with the last slot fastest. All operations are
// exact over the coefficient ring.

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "ranklab/common.hpp"
#include "ranklab/linalg.hpp"

namespace ranklab {

template <class R>
struct LinearMapTuple {
  std::vector<Matrix<R>> maps;  // maps[i]: dims[i] x t_i

  LinearMapTuple multiply(const LinearMapTuple& other) const {
    LinearMapTuple out;
    out.maps.reserve(maps.size());
    for (std::size_t i = 0; i < maps.size(); ++i) {
      out.maps.push_back(maps[i].multiply(other.maps[i]));
    }
    return out;
  }
};

template <class R>
class MultilinearForm {
 public:
  using Element = typename R::Element;

  MultilinearForm(const R& ring, std::vector<int> dims,
                  std::int64_t entry_cap = Caps{}.tensor_entries)
      : ring_(ring), dims_(std::move(dims)) {
    if (dims_.empty()) throw std::invalid_argument("form needs at least one slot");
    Int total = 1;
    for (int s : dims_) {
      if (s <= 0) throw std::invalid_argument("slot dimension must be positive");
      total *= s;
      if (total > entry_cap) throw CapExceeded("coefficient tensor above cap");
    }
    size_ = static_cast<std::int64_t>(total);
    coeffs_.assign(static_cast<std::size_t>(size_), ring_.zero());
  }

  const R& ring() const { return ring_; }
  int arity() const { return static_cast<int>(dims_.size()); }
  const std::vector<int>& dims() const { return dims_; }
  int dim(int slot) const { return dims_[slot]; }
  std::int64_t size() const { return size_; }

  std::int64_t flat_index(const std::vector<int>& idx) const {
    std::int64_t f = 0;
    for (int i = 0; i < arity(); ++i) {
      if (idx[i] < 0 || idx[i] >= dims_[i]) {
        throw std::invalid_argument("tensor index out of range");
      }
      f = f * dims_[i] + idx[i];
    }
    return f;
  }

  const Element& entry(const std::vector<int>& idx) const {
    return coeffs_[static_cast<std::size_t>(flat_index(idx))];
  }
  const Element& entry(std::initializer_list<int> idx) const {
    return entry(std::vector<int>(idx));
  }
  void set_entry(const std::vector<int>& idx, Element v) {
    coeffs_[static_cast<std::size_t>(flat_index(idx))] = std::move(v);
  }
  void set_entry(std::initializer_list<int> idx, Element v) {
    set_entry(std::vector<int>(idx), std::move(v));
  }
  const Element& entry_flat(std::int64_t f) const {
    return coeffs_[static_cast<std::size_t>(f)];
  }
  Element& entry_flat(std::int64_t f) { return coeffs_[static_cast<std::size_t>(f)]; }

  bool is_zero() const {
    for (const auto& c : coeffs_) {
      if (!ring_.is_zero(c)) return false;
    }
    return true;
  }

  // Contracts the first slot against x, leaving a form of arity d-1 (or the
  // single coefficient as a 1-slot form is not produced: arity 1 contracts to
  // a scalar via eval).
  MultilinearForm contract_first(const std::vector<Element>& x) const {
    if (arity() < 2) throw std::invalid_argument("contract_first needs arity >= 2");
    if (static_cast<int>(x.size()) != dims_[0]) {
      throw std::invalid_argument("argument length mismatch");
    }
    MultilinearForm out(ring_, std::vector<int>(dims_.begin() + 1, dims_.end()),
                        size_);
    const std::int64_t block = size_ / dims_[0];
    for (int k = 0; k < dims_[0]; ++k) {
      if (ring_.is_zero(x[k])) continue;
      for (std::int64_t j = 0; j < block; ++j) {
        out.coeffs_[j] = ring_.add(
            out.coeffs_[j],
            ring_.mul(x[k], coeffs_[static_cast<std::size_t>(k) * block + j]));
      }
    }
    return out;
  }

  MultilinearForm partial_apply(const std::vector<std::vector<Element>>& prefix) const {
    if (static_cast<int>(prefix.size()) >= arity()) {
      throw std::invalid_argument("partial application must leave a slot");
    }
    MultilinearForm cur = contract_first(prefix[0]);
    for (std::size_t i = 1; i < prefix.size(); ++i) cur = cur.contract_first(prefix[i]);
    return cur;
  }

  Element eval(const std::vector<std::vector<Element>>& args) const {
    if (static_cast<int>(args.size()) != arity()) {
      throw std::invalid_argument("argument count mismatch");
    }
    if (arity() == 1) {
      if (static_cast<int>(args[0].size()) != dims_[0]) {
        throw std::invalid_argument("argument length mismatch");
      }
      Element acc = ring_.zero();
      for (int k = 0; k < dims_[0]; ++k) {
        acc = ring_.add(acc, ring_.mul(coeffs_[k], args[0][k]));
      }
      return acc;
    }
    MultilinearForm cur = contract_first(args[0]);
    for (int i = 1; i + 1 < arity(); ++i) cur = cur.contract_first(args[i]);
    return cur.eval({args.back()});
  }

  // Coefficients of the linear form in the last slot after fixing all other
  // slots; args has d-1 entries.
  std::vector<Element> slice_last(const std::vector<std::vector<Element>>& args) const {
    if (arity() < 2) throw std::invalid_argument("slice needs arity >= 2");
    if (static_cast<int>(args.size()) != arity() - 1) {
      throw std::invalid_argument("slice needs d-1 arguments");
    }
    if (arity() == 2) return contract_first(args[0]).coeffs_;
    return partial_apply(args).coeffs_;
  }

  MultilinearForm add(const MultilinearForm& other) const {
    check_shape(other);
    MultilinearForm out = *this;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      out.coeffs_[i] = ring_.add(coeffs_[i], other.coeffs_[i]);
    }
    return out;
  }

  MultilinearForm sub(const MultilinearForm& other) const {
    check_shape(other);
    MultilinearForm out = *this;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      out.coeffs_[i] = ring_.sub(coeffs_[i], other.coeffs_[i]);
    }
    return out;
  }

  void sub_in_place(const MultilinearForm& other) {
    check_shape(other);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      coeffs_[i] = ring_.sub(coeffs_[i], other.coeffs_[i]);
    }
  }

  MultilinearForm scaled(const Element& c) const {
    MultilinearForm out = *this;
    for (auto& v : out.coeffs_) v = ring_.mul(v, c);
    return out;
  }

  MultilinearForm negated() const {
    MultilinearForm out = *this;
    for (auto& v : out.coeffs_) v = ring_.neg(v);
    return out;
  }

  bool operator==(const MultilinearForm& other) const {
    if (!ring_.same(other.ring_) || dims_ != other.dims_) return false;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (!ring_.eq(coeffs_[i], other.coeffs_[i])) return false;
    }
    return true;
  }

  // Matrix of the bipartition (left_slots | complement); rows are indexed by
  // the left multi-index, both sides in ascending slot order, lexicographic.
  Matrix<R> flatten(const std::vector<int>& left_slots) const {
    std::vector<bool> is_left(static_cast<std::size_t>(arity()), false);
    for (int s : left_slots) {
      if (s < 0 || s >= arity()) throw std::invalid_argument("bad slot index");
      is_left[s] = true;
    }
    std::int64_t rows = 1, cols = 1;
    for (int i = 0; i < arity(); ++i) (is_left[i] ? rows : cols) *= dims_[i];
    if (rows < 1 || cols < 1 || rows * cols != size_) {
      throw std::invalid_argument("bipartition must be proper");
    }
    Matrix<R> m(ring_, static_cast<int>(rows), static_cast<int>(cols));
    std::vector<int> idx(static_cast<std::size_t>(arity()), 0);
    std::int64_t f = 0;
    do {
      std::int64_t ri = 0, ci = 0;
      for (int i = 0; i < arity(); ++i) {
        if (is_left[i]) {
          ri = ri * dims_[i] + idx[i];
        } else {
          ci = ci * dims_[i] + idx[i];
        }
      }
      m.at(static_cast<int>(ri), static_cast<int>(ci)) = coeffs_[f++];
    } while (next_tuple(idx, dims_));
    return m;
  }

  MultilinearForm compose(const LinearMapTuple<R>& t) const {
    if (static_cast<int>(t.maps.size()) != arity()) {
      throw std::invalid_argument("map count mismatch");
    }
    MultilinearForm cur = *this;
    for (int i = 0; i < arity(); ++i) {
      cur = cur.rotate_contract(t.maps[i]);
    }
    return cur;
  }

  // Slot permutation: result(j_0,...,j_{d-1}) = this(j at positions perm).
  // perm[i] names the result slot that feeds original slot i.
  MultilinearForm permuted(const std::vector<int>& perm) const {
    if (static_cast<int>(perm.size()) != arity()) {
      throw std::invalid_argument("permutation size mismatch");
    }
    std::vector<int> new_dims(static_cast<std::size_t>(arity()));
    for (int i = 0; i < arity(); ++i) new_dims[perm[i]] = dims_[i];
    MultilinearForm out(ring_, new_dims, size_);
    std::vector<int> idx(static_cast<std::size_t>(arity()), 0);
    std::int64_t f = 0;
    std::vector<int> nidx(static_cast<std::size_t>(arity()), 0);
    do {
      for (int i = 0; i < arity(); ++i) nidx[perm[i]] = idx[i];
      out.set_entry(nidx, coeffs_[f++]);
    } while (next_tuple(idx, dims_));
    return out;
  }

  std::uint64_t digest() const {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](const std::string& s) {
      for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
      }
      h ^= 0xff;
      h *= 1099511628211ULL;
    };
    for (int s : dims_) mix(std::to_string(s));
    for (const auto& c : coeffs_) mix(ring_.str(c));
    return h;
  }

 private:
  void check_shape(const MultilinearForm& other) const {
    if (!ring_.same(other.ring_) || dims_ != other.dims_) {
      throw std::invalid_argument("form shape mismatch");
    }
  }

  // Contracts slot 0 with map (dims_[0] x t) and appends the new slot last.
  MultilinearForm rotate_contract(const Matrix<R>& map) const {
    if (map.rows() != dims_[0]) throw std::invalid_argument("map shape mismatch");
    const int t = map.cols();
    std::vector<int> nd(dims_.begin() + 1, dims_.end());
    nd.push_back(t);
    Int total = 1;
    for (int s : nd) total *= s;
    MultilinearForm out(ring_, nd, std::max<std::int64_t>(
                                       size_, static_cast<std::int64_t>(total)));
    const std::int64_t block = size_ / dims_[0];
    for (std::int64_t rest = 0; rest < block; ++rest) {
      for (int j = 0; j < t; ++j) {
        Element acc = ring_.zero();
        for (int k = 0; k < dims_[0]; ++k) {
          acc = ring_.add(acc, ring_.mul(map.at(k, j),
                                         coeffs_[static_cast<std::size_t>(k) * block +
                                                 rest]));
        }
        out.coeffs_[static_cast<std::size_t>(rest) * t + j] = std::move(acc);
      }
    }
    return out;
  }

  R ring_;
  std::vector<int> dims_;
  std::int64_t size_ = 0;
  std::vector<Element> coeffs_;
};

template <class R>
struct FormCollection {
  std::vector<MultilinearForm<R>> members;

  int arity() const { return members.at(0).arity(); }
  const std::vector<int>& dims() const { return members.at(0).dims(); }
  int size() const { return static_cast<int>(members.size()); }

  void validate() const {
    if (members.empty()) throw std::invalid_argument("empty collection");
    for (const auto& m : members) {
      if (m.dims() != members[0].dims() || !m.ring().same(members[0].ring())) {
        throw std::invalid_argument("collection members must share shape");
      }
    }
  }

  MultilinearForm<R> combine(const std::vector<typename R::Element>& a) const {
    if (a.size() != members.size()) {
      throw std::invalid_argument("combination length mismatch");
    }
    const R& ring = members.at(0).ring();
    MultilinearForm<R> out(ring, members[0].dims(), members[0].size());
    for (std::size_t l = 0; l < members.size(); ++l) {
      if (ring.is_zero(a[l])) continue;
      out = out.add(members[l].scaled(a[l]));
    }
    return out;
  }
};

// Block sum on every slot: coefficients of p on the low index ranges, q on
// the high ranges, zero on mixed blocks.
template <class R>
MultilinearForm<R> direct_sum(const MultilinearForm<R>& p, const MultilinearForm<R>& q) {
  if (p.arity() != q.arity() || !p.ring().same(q.ring())) {
    throw std::invalid_argument("direct sum needs matching arity and ring");
  }
  std::vector<int> nd(static_cast<std::size_t>(p.arity()));
  for (int i = 0; i < p.arity(); ++i) nd[i] = p.dim(i) + q.dim(i);
  MultilinearForm<R> out(p.ring(), nd);
  std::vector<int> idx(static_cast<std::size_t>(p.arity()), 0);
  do {
    out.set_entry(idx, p.entry(idx));
  } while (next_tuple(idx, p.dims()));
  std::fill(idx.begin(), idx.end(), 0);
  std::vector<int> shifted(idx.size());
  do {
    for (int i = 0; i < q.arity(); ++i) shifted[i] = idx[i] + p.dim(i);
    out.set_entry(shifted, q.entry(idx));
  } while (next_tuple(idx, q.dims()));
  return out;
}

}  // namespace ranklab
