#pragma once

// Coefficient rings with the same static interface as FiniteField, so form
// and matrix templates instantiate uniformly over Z, Q and finite fields.

#include <string>

#include "ranklab/common.hpp"

namespace ranklab {

class IntegerRing {
 public:
  using Element = Int;
  static constexpr bool kIsField = false;
  static constexpr bool kFinite = false;

  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element from_int(std::int64_t v) const { return Element(v); }
  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element neg(const Element& a) const { return -a; }
  bool is_zero(const Element& a) const { return a == 0; }
  bool eq(const Element& a, const Element& b) const { return a == b; }
  std::int64_t characteristic() const { return 0; }
  std::string str(const Element& a) const { return a.str(); }
  bool same(const IntegerRing&) const { return true; }
};

class RationalField {
 public:
  using Element = Rat;
  static constexpr bool kIsField = true;
  static constexpr bool kFinite = false;

  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element from_int(std::int64_t v) const { return Element(v); }
  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element neg(const Element& a) const { return -a; }
  Element inv(const Element& a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    return 1 / a;
  }
  bool is_zero(const Element& a) const { return a == 0; }
  bool eq(const Element& a, const Element& b) const { return a == b; }
  std::int64_t characteristic() const { return 0; }
  std::string str(const Element& a) const { return a.str(); }
  bool same(const RationalField&) const { return true; }
};

}  // namespace ranklab
