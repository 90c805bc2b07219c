#include "ranklab/field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ranklab {
namespace {

constexpr std::int64_t kMaxPrime = 1 << 15;

bool is_prime_trial(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

using Poly = std::vector<std::int64_t>;  // coefficients low to high, reduced mod p

std::int64_t mod_p(std::int64_t v, std::int64_t p) {
  v %= p;
  return v < 0 ? v + p : v;
}

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

std::int64_t poly_eval(const Poly& f, std::int64_t x, std::int64_t p) {
  std::int64_t acc = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) acc = mod_p(acc * x + *it, p);
  return acc;
}

// Remainder of f by monic g.
Poly poly_rem(Poly f, const Poly& g, std::int64_t p) {
  trim(f);
  const auto dg = static_cast<int>(g.size()) - 1;
  while (static_cast<int>(f.size()) - 1 >= dg) {
    const std::int64_t lead = f.back();
    const auto shift = f.size() - g.size();
    if (lead != 0) {
      for (std::size_t i = 0; i < g.size(); ++i) {
        f[shift + i] = mod_p(f[shift + i] - lead * g[i], p);
      }
    }
    f.pop_back();
    trim(f);
  }
  return f;
}

Poly poly_mul(const Poly& a, const Poly& b, std::int64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = mod_p(r[i + j] + a[i] * b[j], p);
    }
  }
  trim(r);
  return r;
}

bool divides(const Poly& g, const Poly& f, std::int64_t p) {
  return poly_rem(f, g, p).empty();
}

// Sufficient for degree <= 4: no roots rules out linear (and hence cubic)
// factors, and degree 4 additionally needs a check for quadratic factors.
bool is_irreducible(const Poly& m, std::int64_t p) {
  const auto k = static_cast<int>(m.size()) - 1;
  if (k < 2) return false;
  for (std::int64_t x = 0; x < p; ++x) {
    if (poly_eval(m, x, p) == 0) return false;
  }
  if (k == 4) {
    for (std::int64_t c = 0; c < p; ++c) {
      for (std::int64_t b = 0; b < p; ++b) {
        if (divides(Poly{c, b, 1}, m, p)) return false;
      }
    }
  }
  return true;
}

}  // namespace

struct FiniteField::Impl {
  std::int64_t p = 0;
  int k = 1;
  std::int64_t q = 0;
  std::vector<std::int64_t> modulus;  // empty for prime fields
  // Extension-field operation tables, indexed a * q + b.
  std::vector<Element> mul_table;
  std::vector<Element> add_table;
  std::vector<Element> neg_table;
  std::vector<Element> inv_table;
  std::vector<Element> frob_table;
  std::vector<std::int64_t> trace_table;
  std::vector<CharacterValue> unit_roots;  // size p
};

FiniteField::FiniteField(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

FiniteField FiniteField::prime(std::int64_t p) {
  if (p > kMaxPrime) throw CapExceeded("prime field characteristic too large");
  if (!is_prime_trial(p)) {
    throw std::invalid_argument("prime field characteristic must be prime");
  }
  auto impl = std::make_shared<Impl>();
  impl->p = p;
  impl->k = 1;
  impl->q = p;
  impl->unit_roots.resize(p);
  for (std::int64_t r = 0; r < p; ++r) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) /
                         static_cast<double>(p);
    impl->unit_roots[r] = {std::cos(angle), std::sin(angle)};
  }
  return FiniteField(std::move(impl));
}

FiniteField FiniteField::extension(std::int64_t p, std::vector<std::int64_t> modulus,
                                   const Caps& caps) {
  if (p > kMaxPrime || !is_prime_trial(p)) {
    throw std::invalid_argument("extension characteristic must be prime");
  }
  const auto k = static_cast<int>(modulus.size()) - 1;
  if (k < 2) throw std::invalid_argument("extension degree must be at least 2");
  if (k > caps.extension_degree) throw CapExceeded("extension degree above cap");
  for (auto& c : modulus) c = mod_p(c, p);
  if (modulus.back() != 1) throw std::invalid_argument("modulus must be monic");
  std::int64_t q = 1;
  for (int i = 0; i < k; ++i) {
    q *= p;
    if (q > caps.field_size) throw CapExceeded("field size above cap");
  }
  if (!is_irreducible(modulus, p)) {
    throw std::invalid_argument("modulus is reducible");
  }

  auto impl = std::make_shared<Impl>();
  impl->p = p;
  impl->k = k;
  impl->q = q;
  impl->modulus = modulus;

  auto digits_of = [&](Element a) {
    Poly d(static_cast<std::size_t>(k), 0);
    std::int64_t v = a;
    for (int i = 0; i < k; ++i) {
      d[i] = v % p;
      v /= p;
    }
    return d;
  };
  auto index_of = [&](const Poly& d) {
    std::int64_t idx = 0;
    for (int i = k - 1; i >= 0; --i) {
      idx = idx * p + (i < static_cast<int>(d.size()) ? d[i] : 0);
    }
    return static_cast<Element>(idx);
  };

  impl->mul_table.resize(static_cast<std::size_t>(q) * q);
  impl->add_table.resize(static_cast<std::size_t>(q) * q);
  impl->neg_table.resize(q);
  impl->inv_table.assign(q, -1);
  impl->frob_table.resize(q);
  impl->trace_table.resize(q);
  for (Element a = 0; a < q; ++a) {
    const Poly da = digits_of(a);
    Poly neg(da.size());
    for (std::size_t i = 0; i < da.size(); ++i) neg[i] = mod_p(-da[i], p);
    impl->neg_table[a] = index_of(neg);
    for (Element b = 0; b < q; ++b) {
      const Poly db = digits_of(b);
      Poly sum(da.size());
      for (std::size_t i = 0; i < da.size(); ++i) sum[i] = mod_p(da[i] + db[i], p);
      impl->add_table[static_cast<std::size_t>(a) * q + b] = index_of(sum);
      impl->mul_table[static_cast<std::size_t>(a) * q + b] =
          index_of(poly_rem(poly_mul(da, db, p), modulus, p));
    }
  }
  for (Element a = 1; a < q; ++a) {
    for (Element b = 1; b < q; ++b) {
      if (impl->mul_table[static_cast<std::size_t>(a) * q + b] == 1) {
        impl->inv_table[a] = b;
        break;
      }
    }
  }
  for (Element a = 0; a < q; ++a) {
    Element x = a;
    for (std::int64_t i = 1; i < p; ++i) {
      x = impl->mul_table[static_cast<std::size_t>(x) * q + a];
    }
    impl->frob_table[a] = x;
  }
  for (Element a = 0; a < q; ++a) {
    Element t = a;
    Element f = a;
    for (int i = 1; i < k; ++i) {
      f = impl->frob_table[f];
      t = impl->add_table[static_cast<std::size_t>(t) * q + f];
    }
    if (t >= p) throw std::logic_error("trace escaped the prime subfield");
    impl->trace_table[a] = t;
  }

  impl->unit_roots.resize(p);
  for (std::int64_t r = 0; r < p; ++r) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) /
                         static_cast<double>(p);
    impl->unit_roots[r] = {std::cos(angle), std::sin(angle)};
  }
  return FiniteField(std::move(impl));
}

FiniteField FiniteField::extension_auto(std::int64_t p, int k, const Caps& caps) {
  if (k == 1) return prime(p);
  std::int64_t count = 1;
  for (int i = 0; i < k; ++i) count *= p;
  for (std::int64_t idx = 0; idx < count; ++idx) {
    Poly m(static_cast<std::size_t>(k) + 1, 0);
    std::int64_t v = idx;
    for (int i = 0; i < k; ++i) {
      m[i] = v % p;
      v /= p;
    }
    m[k] = 1;
    if (is_irreducible(m, p)) return extension(p, m, caps);
  }
  throw std::logic_error("no irreducible modulus found");
}

std::int64_t FiniteField::p() const { return impl_->p; }
int FiniteField::degree() const { return impl_->k; }
std::int64_t FiniteField::size() const { return impl_->q; }

const std::vector<std::int64_t>& FiniteField::modulus() const {
  return impl_->modulus;
}

FiniteField::Element FiniteField::from_int(std::int64_t v) const {
  return static_cast<Element>(mod_p(v, impl_->p));
}

FiniteField::Element FiniteField::add(Element a, Element b) const {
  if (impl_->k == 1) {
    const std::int64_t s = static_cast<std::int64_t>(a) + b;
    return static_cast<Element>(s >= impl_->p ? s - impl_->p : s);
  }
  return impl_->add_table[static_cast<std::size_t>(a) * impl_->q + b];
}

FiniteField::Element FiniteField::neg(Element a) const {
  if (impl_->k == 1) return static_cast<Element>(a == 0 ? 0 : impl_->p - a);
  return impl_->neg_table[a];
}

FiniteField::Element FiniteField::sub(Element a, Element b) const {
  return add(a, neg(b));
}

FiniteField::Element FiniteField::mul(Element a, Element b) const {
  if (impl_->k == 1) {
    return static_cast<Element>(static_cast<std::int64_t>(a) * b % impl_->p);
  }
  return impl_->mul_table[static_cast<std::size_t>(a) * impl_->q + b];
}

FiniteField::Element FiniteField::inv(Element a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  if (impl_->k == 1) {
    // Extended Euclid on (a, p).
    std::int64_t r0 = impl_->p, r1 = a, s0 = 0, s1 = 1;
    while (r1 != 0) {
      const std::int64_t qq = r0 / r1;
      r0 -= qq * r1;
      std::swap(r0, r1);
      s0 -= qq * s1;
      std::swap(s0, s1);
    }
    return static_cast<Element>(mod_p(s0, impl_->p));
  }
  return impl_->inv_table[a];
}

FiniteField::Element FiniteField::frobenius(Element a) const {
  if (impl_->k == 1) return a;
  return impl_->frob_table[a];
}

std::int64_t FiniteField::trace(Element a) const {
  if (impl_->k == 1) return a;
  return impl_->trace_table[a];
}

CharacterValue FiniteField::char_value(Element a) const {
  return impl_->unit_roots[trace(a)];
}

std::vector<FiniteField::Element> FiniteField::enumerate(std::int64_t cap) const {
  if (impl_->q > cap) throw CapExceeded("field too large to enumerate");
  std::vector<Element> out(static_cast<std::size_t>(impl_->q));
  for (std::int64_t i = 0; i < impl_->q; ++i) out[i] = static_cast<Element>(i);
  return out;
}

std::vector<std::int64_t> FiniteField::rep(Element a) const {
  std::vector<std::int64_t> d(static_cast<std::size_t>(impl_->k), 0);
  std::int64_t v = a;
  for (int i = 0; i < impl_->k; ++i) {
    d[i] = v % impl_->p;
    v /= impl_->p;
  }
  return d;
}

FiniteField::Element FiniteField::from_rep(const std::vector<std::int64_t>& digits) const {
  if (static_cast<int>(digits.size()) != impl_->k) {
    throw std::invalid_argument("element digit count must equal the degree");
  }
  std::int64_t idx = 0;
  for (int i = impl_->k - 1; i >= 0; --i) {
    if (digits[i] < 0 || digits[i] >= impl_->p) {
      throw std::invalid_argument("element digit out of range");
    }
    idx = idx * impl_->p + digits[i];
  }
  return static_cast<Element>(idx);
}

std::string FiniteField::str(Element a) const {
  if (impl_->k == 1) return std::to_string(a);
  const auto d = rep(a);
  std::string out;
  for (int i = impl_->k - 1; i >= 0; --i) {
    if (d[i] == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(d[i]);
    } else {
      if (d[i] != 1) out += std::to_string(d[i]) + "*";
      out += i == 1 ? "t" : "t^" + std::to_string(i);
    }
  }
  return out.empty() ? "0" : out;
}

bool FiniteField::same(const FiniteField& other) const {
  if (impl_ == other.impl_) return true;
  return impl_->p == other.impl_->p && impl_->k == other.impl_->k &&
         impl_->modulus == other.impl_->modulus;
}

}  // namespace ranklab
