#pragma once

// Prime fields F_p and small extensions F_{p^k}.
//
// Elements are indices in [0, q). For extensions the base-p digits of the
// index are the coefficients of the representative polynomial, constant term
// first, so the prime subfield embeds as indices 0..p-1 and enumeration order
// is the integer encoding of the coefficient vector.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ranklab/common.hpp"

namespace ranklab {

struct CharacterValue {
  double re = 1.0;
  double im = 0.0;
};

class FiniteField {
 public:
  using Element = std::int32_t;
  static constexpr bool kIsField = true;
  static constexpr bool kFinite = true;

  static FiniteField prime(std::int64_t p);
  // modulus: monic, coefficients low to high, degree k >= 2, irreducible.
  static FiniteField extension(std::int64_t p, std::vector<std::int64_t> modulus,
                               const Caps& caps = Caps{});
  // First irreducible monic modulus of degree k in index order.
  static FiniteField extension_auto(std::int64_t p, int k,
                                    const Caps& caps = Caps{});

  std::int64_t p() const;
  int degree() const;
  std::int64_t size() const;
  std::int64_t characteristic() const { return p(); }
  bool is_prime_field() const { return degree() == 1; }
  const std::vector<std::int64_t>& modulus() const;

  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element from_int(std::int64_t v) const;
  Element add(Element a, Element b) const;
  Element sub(Element a, Element b) const;
  Element mul(Element a, Element b) const;
  Element neg(Element a) const;
  Element inv(Element a) const;
  bool is_zero(Element a) const { return a == 0; }
  bool eq(Element a, Element b) const { return a == b; }

  Element frobenius(Element a) const;  // a -> a^p
  // Sum of the Frobenius orbit; always lands in the prime subfield and is
  // returned as the residue.
  std::int64_t trace(Element a) const;
  CharacterValue char_value(Element a) const;

  // All q elements in index order; throws CapExceeded when q > cap.
  std::vector<Element> enumerate(std::int64_t cap) const;
  std::vector<Element> enumerate(const Caps& caps) const {
    return enumerate(caps.enumeration);
  }

  // Coefficient digits of the representative, constant term first, length k.
  std::vector<std::int64_t> rep(Element a) const;
  Element from_rep(const std::vector<std::int64_t>& digits) const;

  std::string str(Element a) const;
  bool same(const FiniteField& other) const;

 private:
  struct Impl;
  explicit FiniteField(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;
};

}  // namespace ranklab
