#pragma once

// Sparse homogeneous polynomials. Terms map exponent vectors (length n,
// entries summing to the degree) to nonzero coefficients.

#include <map>
#include <numeric>
#include <vector>

#include "ranklab/common.hpp"

namespace ranklab {

template <class R>
class HomogeneousForm {
 public:
  using Element = typename R::Element;
  using Exponents = std::vector<int>;

  HomogeneousForm(const R& ring, int variables, int degree)
      : ring_(ring), n_(variables), d_(degree) {
    if (variables <= 0) throw std::invalid_argument("need at least one variable");
    if (degree <= 0) throw std::invalid_argument("degree must be positive");
  }

  const R& ring() const { return ring_; }
  int variables() const { return n_; }
  int degree() const { return d_; }
  const std::map<Exponents, Element>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Exponents& e, const Element& c) {
    if (static_cast<int>(e.size()) != n_) {
      throw std::invalid_argument("exponent vector length mismatch");
    }
    int total = 0;
    for (int v : e) {
      if (v < 0) throw std::invalid_argument("negative exponent");
      total += v;
    }
    if (total != d_) throw std::invalid_argument("term degree mismatch");
    if (ring_.is_zero(c)) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, c);
      return;
    }
    it->second = ring_.add(it->second, c);
    if (ring_.is_zero(it->second)) terms_.erase(it);
  }

  Element eval(const std::vector<Element>& x) const {
    if (static_cast<int>(x.size()) != n_) {
      throw std::invalid_argument("point length mismatch");
    }
    Element acc = ring_.zero();
    for (const auto& [e, c] : terms_) {
      Element term = c;
      for (int j = 0; j < n_; ++j) {
        for (int k = 0; k < e[j]; ++k) term = ring_.mul(term, x[j]);
      }
      acc = ring_.add(acc, term);
    }
    return acc;
  }

  HomogeneousForm add(const HomogeneousForm& other) const {
    check_shape(other, d_);
    HomogeneousForm out = *this;
    for (const auto& [e, c] : other.terms_) out.add_term(e, c);
    return out;
  }

  HomogeneousForm scaled(const Element& c) const {
    HomogeneousForm out(ring_, n_, d_);
    for (const auto& [e, v] : terms_) out.add_term(e, ring_.mul(v, c));
    return out;
  }

  HomogeneousForm negated() const {
    HomogeneousForm out(ring_, n_, d_);
    for (const auto& [e, v] : terms_) out.add_term(e, ring_.neg(v));
    return out;
  }

  HomogeneousForm multiply(const HomogeneousForm& other) const {
    check_shape(other, -1);
    HomogeneousForm out(ring_, n_, d_ + other.d_);
    for (const auto& [e1, c1] : terms_) {
      for (const auto& [e2, c2] : other.terms_) {
        Exponents e(static_cast<std::size_t>(n_));
        for (int j = 0; j < n_; ++j) e[j] = e1[j] + e2[j];
        out.add_term(e, ring_.mul(c1, c2));
      }
    }
    return out;
  }

  // Formal partial derivative; degree drops by one. Exponent multipliers are
  // taken through from_int, so characteristic effects apply.
  HomogeneousForm partial_derivative(int var) const {
    if (var < 0 || var >= n_) throw std::invalid_argument("bad variable index");
    if (d_ == 1) throw std::invalid_argument("derivative would be constant");
    HomogeneousForm out(ring_, n_, d_ - 1);
    for (const auto& [e, c] : terms_) {
      if (e[var] == 0) continue;
      Exponents de = e;
      de[var] -= 1;
      out.add_term(de, ring_.mul(c, ring_.from_int(e[var])));
    }
    return out;
  }

  bool operator==(const HomogeneousForm& other) const {
    if (!ring_.same(other.ring_) || n_ != other.n_ || d_ != other.d_) return false;
    if (terms_.size() != other.terms_.size()) return false;
    for (const auto& [e, c] : terms_) {
      auto it = other.terms_.find(e);
      if (it == other.terms_.end() || !ring_.eq(c, it->second)) return false;
    }
    return true;
  }

 private:
  void check_shape(const HomogeneousForm& other, int want_degree) const {
    if (!ring_.same(other.ring_) || n_ != other.n_) {
      throw std::invalid_argument("form shape mismatch");
    }
    if (want_degree >= 0 && other.d_ != want_degree) {
      throw std::invalid_argument("degree mismatch");
    }
  }

  R ring_;
  int n_;
  int d_;
  std::map<Exponents, Element> terms_;
};

}  // namespace ranklab
