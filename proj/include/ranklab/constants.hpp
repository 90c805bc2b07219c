#pragma once

// Constant tables for the rank comparison and universality bounds. Four field
// classes are distinguished; the asymptotic finite-field row is symbolic only
// and refuses numeric evaluation. Pairs relate as follows: the polynomial
// rank pair is (tilde_a * binom(d, d/2)^tilde_b, tilde_b) over the multilinear
// pair, and the multilinear pair is (c, d * d_exp) over the embedding
// threshold pair (c, d_exp).

#include <string>

#include "ranklab/common.hpp"

namespace ranklab {

enum class FieldClass {
  kRationals,         // the rational numbers
  kFiniteAsymptotic,  // finite field, no size assumption
  kFiniteLarge,       // finite field above the (non-explicit) size threshold
  kGlobalExtension,   // number field or separable extension of a rational
                      // function field
};

inline const char* field_class_str(FieldClass c) {
  switch (c) {
    case FieldClass::kRationals:
      return "rationals";
    case FieldClass::kFiniteAsymptotic:
      return "finite-asymptotic";
    case FieldClass::kFiniteLarge:
      return "finite-large";
    case FieldClass::kGlobalExtension:
      return "global-extension";
  }
  throw std::logic_error("unknown field class");
}

struct ConstantValue {
  bool symbolic = false;
  Int value = 0;       // meaningful only when !symbolic
  std::string expr;    // rendering, always set

  Int numeric() const {
    if (symbolic) {
      throw std::domain_error("symbolic constant has no numeric value: " + expr);
    }
    return value;
  }
};

inline ConstantValue numeric_constant(Int v) {
  ConstantValue c;
  c.value = std::move(v);
  c.expr = c.value.str();
  return c;
}

inline ConstantValue symbolic_constant(std::string expr) {
  ConstantValue c;
  c.symbolic = true;
  c.expr = std::move(expr);
  return c;
}

struct BoundPair {
  ConstantValue coeff;  // multiplicative constant
  ConstantValue exp;    // exponent
  std::string render() const { return "(" + coeff.expr + ", " + exp.expr + ")"; }
};

// All entries for a fixed arity d.
struct ConstantsTable {
  int d = 2;

  // rk over the base field vs rk over the closure: rk <= A (n rk' + 1)^B.
  BoundPair schmidt_rationals, schmidt_finite_asymptotic, schmidt_finite_large,
      schmidt_global;
  // Same shape for partition rank of multilinear collections.
  BoundPair partition_rationals, partition_finite_asymptotic, partition_finite_large,
      partition_global;
  // Embedding threshold: solvable whenever prk > C (n t^d)^D.
  BoundPair universality_rationals, universality_finite_asymptotic,
      universality_finite_large, universality_global;
  // Bias regime 1 threshold prk >= alpha r^beta (symbolic) and the regime 2
  // multiplier prk >= regime2 * r, both implying bias <= q^{-r}.
  ConstantValue bias_alpha, bias_beta, bias_regime2;

  const BoundPair& schmidt(FieldClass c) const {
    switch (c) {
      case FieldClass::kRationals:
        return schmidt_rationals;
      case FieldClass::kFiniteAsymptotic:
        return schmidt_finite_asymptotic;
      case FieldClass::kFiniteLarge:
        return schmidt_finite_large;
      case FieldClass::kGlobalExtension:
        return schmidt_global;
    }
    throw std::logic_error("unknown field class");
  }
  const BoundPair& partition(FieldClass c) const {
    switch (c) {
      case FieldClass::kRationals:
        return partition_rationals;
      case FieldClass::kFiniteAsymptotic:
        return partition_finite_asymptotic;
      case FieldClass::kFiniteLarge:
        return partition_finite_large;
      case FieldClass::kGlobalExtension:
        return partition_global;
    }
    throw std::logic_error("unknown field class");
  }
  const BoundPair& universality(FieldClass c) const {
    switch (c) {
      case FieldClass::kRationals:
        return universality_rationals;
      case FieldClass::kFiniteAsymptotic:
        return universality_finite_asymptotic;
      case FieldClass::kFiniteLarge:
        return universality_finite_large;
      case FieldClass::kGlobalExtension:
        return universality_global;
    }
    throw std::logic_error("unknown field class");
  }

  static ConstantsTable defaults(int d) {
    if (d < 2) throw std::invalid_argument("table needs arity >= 2");
    ConstantsTable t;
    t.d = d;
    const Int binom_half = binomial(d, d / 2);
    const Int two_pow = int_pow(2, static_cast<unsigned>(d - 1));
    const Int four_pow = int_pow(4, static_cast<unsigned>(d - 1));

    // Embedding thresholds (C, D).
    t.universality_rationals = {numeric_constant(four_pow * d), numeric_constant(1)};
    t.universality_finite_large = {numeric_constant(two_pow), numeric_constant(1)};
    t.universality_global = {numeric_constant(two_pow * (d - 1)), numeric_constant(2)};
    t.universality_finite_asymptotic = {symbolic_constant("2^(d^(2^O(d^2)))"),
                                        symbolic_constant("2^(2^O(d^2))")};

    // Multilinear pairs: coeff = C, exp = d * D.
    auto lift = [&](const BoundPair& u) -> BoundPair {
      return {u.coeff, numeric_constant(Int(d) * u.exp.numeric())};
    };
    t.partition_rationals = lift(t.universality_rationals);
    t.partition_finite_large = lift(t.universality_finite_large);
    t.partition_global = lift(t.universality_global);
    t.partition_finite_asymptotic = {symbolic_constant("2^(d^(2^O(d^2)))"),
                                     symbolic_constant("2^(2^O(d^2))")};

    // Polynomial pairs: coeff = Ctilde * binom^Btilde, exp = Btilde.
    auto polypair = [&](const BoundPair& m) -> BoundPair {
      const Int b = m.exp.numeric();
      return {numeric_constant(m.coeff.numeric() *
                               int_pow(binom_half, static_cast<unsigned>(b))),
              numeric_constant(b)};
    };
    t.schmidt_rationals = polypair(t.partition_rationals);
    t.schmidt_finite_large = polypair(t.partition_finite_large);
    t.schmidt_global = polypair(t.partition_global);
    t.schmidt_finite_asymptotic = {symbolic_constant("2^(2^O(d^2))"),
                                   symbolic_constant("2^(2^O(d^2))")};

    t.bias_alpha = symbolic_constant("2^(d^(2^O(d^2)))");
    t.bias_beta = symbolic_constant("2^(2^O(d^2))");
    t.bias_regime2 = numeric_constant(two_pow);
    return t;
  }
};

}  // namespace ranklab
