#pragma once
// Pseudo-normed rings: carriers with a subadditive size function phi that is
// multiplicative up to a recorded constant, and whose balls B_R = {phi <= R}
// grow linearly under scaling of R. Three models: the integers, integral
// bases Z^m with explicit structure constants, and polynomial bases F_q[t]^m.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ranklab/common.hpp"
#include "ranklab/field.hpp"

namespace ranklab {

// The integers with absolute value; phi(xy) = phi(x) phi(y) exactly.
class IntegerNorm {
 public:
  using Element = Int;

  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element add(const Element& a, const Element& b) const { return a + b; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element neg(const Element& a) const { return -a; }
  bool is_zero(const Element& a) const { return a == 0; }
  bool eq(const Element& a, const Element& b) const { return a == b; }

  Int phi(const Element& a) const { return a < 0 ? Int(-a) : a; }
  Int mult_constant() const { return 1; }

  // {-R, ..., R} ascending.
  std::vector<Element> ball(const Int& r, const Caps& caps = Caps{}) const {
    if (r < 0) throw std::invalid_argument("negative radius");
    if (2 * r + 1 > caps.enumeration) throw CapExceeded("ball exceeds the enumeration cap");
    std::vector<Element> out;
    for (Int v = -r; v <= r; ++v) out.push_back(v);
    return out;
  }

  std::string str(const Element& a) const { return a.str(); }
};

// Z^m with multiplication given by structure constants: the product of basis
// vectors e_i e_j is sum_k table[(i*m + j)*m + k] e_k. phi is the coordinate
// max; the multiplicativity constant is recorded, not derived.
class TableRingNorm {
 public:
  using Element = std::vector<Int>;

  TableRingNorm(int m, std::vector<Int> table, std::vector<Int> unit, Int mult_constant)
      : m_(m), table_(std::move(table)), unit_(std::move(unit)), c_(std::move(mult_constant)) {
    if (m_ < 1) throw std::invalid_argument("rank must be positive");
    if (table_.size() != static_cast<std::size_t>(m_) * m_ * m_)
      throw std::invalid_argument("structure table must have m^3 entries");
    if (unit_.size() != static_cast<std::size_t>(m_))
      throw std::invalid_argument("unit must have m coordinates");
    if (c_ < 1) throw std::invalid_argument("multiplicativity constant must be at least 1");
  }

  int rank() const { return m_; }
  const std::vector<Int>& table() const { return table_; }
  Int mult_constant() const { return c_; }

  Element zero() const { return Element(m_, Int(0)); }
  Element one() const { return unit_; }
  Element add(const Element& a, const Element& b) const {
    check(a);
    check(b);
    Element out(m_);
    for (int i = 0; i < m_; ++i) out[i] = a[i] + b[i];
    return out;
  }
  Element neg(const Element& a) const {
    check(a);
    Element out(m_);
    for (int i = 0; i < m_; ++i) out[i] = -a[i];
    return out;
  }
  Element mul(const Element& a, const Element& b) const {
    check(a);
    check(b);
    Element out(m_, Int(0));
    for (int i = 0; i < m_; ++i) {
      if (a[i] == 0) continue;
      for (int j = 0; j < m_; ++j) {
        if (b[j] == 0) continue;
        const Int prod = a[i] * b[j];
        for (int k = 0; k < m_; ++k) {
          const Int& t = table_[(static_cast<std::size_t>(i) * m_ + j) * m_ + k];
          if (t != 0) out[k] += prod * t;
        }
      }
    }
    return out;
  }
  bool is_zero(const Element& a) const {
    check(a);
    for (const auto& v : a)
      if (v != 0) return false;
    return true;
  }
  bool eq(const Element& a, const Element& b) const { return a == b; }

  Int phi(const Element& a) const {
    check(a);
    Int best = 0;
    for (const auto& v : a) {
      Int m = v < 0 ? Int(-v) : v;
      if (m > best) best = m;
    }
    return best;
  }

  // Coordinate grid [-R, R]^m, last coordinate fastest.
  std::vector<Element> ball(const Int& r, const Caps& caps = Caps{}) const {
    if (r < 0) throw std::invalid_argument("negative radius");
    const Int width = 2 * r + 1;
    Int size = 1;
    for (int i = 0; i < m_; ++i) {
      size *= width;
      if (size > caps.enumeration) throw CapExceeded("ball exceeds the enumeration cap");
    }
    std::vector<Element> out;
    Element cur(m_, Int(-r));
    while (true) {
      out.push_back(cur);
      int pos = m_ - 1;
      while (pos >= 0 && cur[pos] == r) {
        cur[pos] = -r;
        --pos;
      }
      if (pos < 0) break;
      cur[pos] += 1;
    }
    return out;
  }

  std::string str(const Element& a) const {
    check(a);
    std::string out = "(";
    for (int i = 0; i < m_; ++i) {
      if (i) out += ",";
      out += a[i].str();
    }
    return out + ")";
  }

 private:
  void check(const Element& a) const {
    if (a.size() != static_cast<std::size_t>(m_))
      throw std::invalid_argument("element has wrong coordinate count");
  }

  int m_;
  std::vector<Int> table_;
  std::vector<Int> unit_;
  Int c_;
};

// Z[i] in the basis (1, i): i^2 = -1, phi((a, b)) = max(|a|, |b|), and
// phi(xy) <= 2 phi(x) phi(y).
inline TableRingNorm gaussian_integers() {
  std::vector<Int> table{
      1, 0, 0, 1,  // e0 e0 = e0, e0 e1 = e1
      0, 1, -1, 0  // e1 e0 = e1, e1 e1 = -e0
  };
  return TableRingNorm(2, std::move(table), {Int(1), Int(0)}, Int(2));
}

// F_q[t]^m with coordinatewise polynomial structure scaled by constant
// structure coefficients; phi is the max of q^deg over coordinates, with
// phi(0) = 0. Polynomials are coefficient vectors, constant term first.
class PolyRingNorm {
 public:
  using Poly = std::vector<FiniteField::Element>;
  using Element = std::vector<Poly>;

  PolyRingNorm(FiniteField f, int m, std::vector<FiniteField::Element> table,
               std::vector<FiniteField::Element> unit)
      : f_(std::move(f)), m_(m), table_(std::move(table)), unit_(std::move(unit)) {
    if (m_ < 1) throw std::invalid_argument("rank must be positive");
    if (table_.size() != static_cast<std::size_t>(m_) * m_ * m_)
      throw std::invalid_argument("structure table must have m^3 entries");
    if (unit_.size() != static_cast<std::size_t>(m_))
      throw std::invalid_argument("unit must have m coordinates");
  }

  const FiniteField& field() const { return f_; }
  int rank() const { return m_; }

  Element zero() const { return Element(m_); }
  Element one() const {
    Element out(m_);
    for (int i = 0; i < m_; ++i)
      if (!f_.is_zero(unit_[i])) out[i] = {unit_[i]};
    return out;
  }
  Element add(const Element& a, const Element& b) const {
    check(a);
    check(b);
    Element out(m_);
    for (int i = 0; i < m_; ++i) out[i] = poly_add(a[i], b[i]);
    return out;
  }
  Element neg(const Element& a) const {
    check(a);
    Element out(m_);
    for (int i = 0; i < m_; ++i) {
      out[i] = a[i];
      for (auto& c : out[i]) c = f_.neg(c);
    }
    return out;
  }
  Element mul(const Element& a, const Element& b) const {
    check(a);
    check(b);
    Element out(m_);
    for (int i = 0; i < m_; ++i) {
      if (a[i].empty()) continue;
      for (int j = 0; j < m_; ++j) {
        if (b[j].empty()) continue;
        const auto prod = poly_mul(a[i], b[j]);
        for (int k = 0; k < m_; ++k) {
          const auto t = table_[(static_cast<std::size_t>(i) * m_ + j) * m_ + k];
          if (f_.is_zero(t)) continue;
          auto scaled = prod;
          for (auto& c : scaled) c = f_.mul(c, t);
          out[k] = poly_add(out[k], scaled);
        }
      }
    }
    return out;
  }
  bool is_zero(const Element& a) const {
    check(a);
    for (const auto& p : a)
      if (!p.empty()) return false;
    return true;
  }
  bool eq(const Element& a, const Element& b) const { return a == b; }

  Int phi(const Element& a) const {
    check(a);
    Int best = 0;
    for (const auto& p : a) {
      if (p.empty()) continue;
      const Int v = int_pow(Int(f_.size()), static_cast<unsigned>(p.size() - 1));
      if (v > best) best = v;
    }
    return best;
  }

  // Coordinatewise polynomials of degree at most floor(log_q R), ordered by
  // the integer whose base-q digits are the coefficients, constant term
  // least significant; coordinates advance last first.
  std::vector<Element> ball(const Int& r, const Caps& caps = Caps{}) const {
    if (r < 0) throw std::invalid_argument("negative radius");
    const std::int64_t q = f_.size();
    int maxdeg = -1;  // only the zero polynomial when r < 1
    if (r >= 1) {
      maxdeg = 0;
      Int v = q;
      while (v <= r) {
        v *= q;
        ++maxdeg;
      }
    }
    const std::int64_t per = maxdeg < 0 ? 1 : static_cast<std::int64_t>(
                                                  int_pow(Int(q), static_cast<unsigned>(maxdeg + 1))
                                                      .convert_to<long long>());
    Int size = 1;
    for (int i = 0; i < m_; ++i) {
      size *= per;
      if (size > caps.enumeration) throw CapExceeded("ball exceeds the enumeration cap");
    }
    std::vector<std::int64_t> codes(m_, 0);
    std::vector<Element> out;
    while (true) {
      Element e(m_);
      for (int i = 0; i < m_; ++i) e[i] = decode(codes[i], maxdeg);
      out.push_back(std::move(e));
      int pos = m_ - 1;
      while (pos >= 0 && codes[pos] == per - 1) {
        codes[pos] = 0;
        --pos;
      }
      if (pos < 0) break;
      codes[pos] += 1;
    }
    return out;
  }

  std::string str(const Element& a) const {
    check(a);
    std::string out = "(";
    for (int i = 0; i < m_; ++i) {
      if (i) out += ",";
      if (a[i].empty()) {
        out += "0";
        continue;
      }
      bool first = true;
      for (std::size_t e = 0; e < a[i].size(); ++e) {
        if (f_.is_zero(a[i][e])) continue;
        if (!first) out += "+";
        first = false;
        out += f_.str(a[i][e]);
        if (e >= 1) out += "t";
        if (e >= 2) out += "^" + std::to_string(e);
      }
      if (first) out += "0";
    }
    return out + ")";
  }

 private:
  void check(const Element& a) const {
    if (a.size() != static_cast<std::size_t>(m_))
      throw std::invalid_argument("element has wrong coordinate count");
    for (const auto& p : a)
      if (!p.empty() && f_.is_zero(p.back()))
        throw std::invalid_argument("polynomial has a trailing zero coefficient");
  }

  Poly trim(Poly p) const {
    while (!p.empty() && f_.is_zero(p.back())) p.pop_back();
    return p;
  }
  Poly poly_add(const Poly& a, const Poly& b) const {
    Poly out(std::max(a.size(), b.size()), f_.zero());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] = f_.add(out[i], b[i]);
    return trim(std::move(out));
  }
  Poly poly_mul(const Poly& a, const Poly& b) const {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, f_.zero());
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j)
        out[i + j] = f_.add(out[i + j], f_.mul(a[i], b[j]));
    return trim(std::move(out));
  }
  Poly decode(std::int64_t code, int maxdeg) const {
    Poly p;
    const std::int64_t q = f_.size();
    for (int e = 0; e <= maxdeg; ++e) {
      p.push_back(static_cast<FiniteField::Element>(code % q));
      code /= q;
    }
    return trim(std::move(p));
  }

  FiniteField f_;
  int m_;
  std::vector<FiniteField::Element> table_;
  std::vector<FiniteField::Element> unit_;
};

// F_q[t] itself: one coordinate, trivial structure table.
inline PolyRingNorm polynomial_ring(const FiniteField& f) {
  return PolyRingNorm(f, 1, {f.one()}, {f.one()});
}

template <typename A>
std::vector<typename A::Element> ball_enumerate(const A& ring, const Int& r,
                                                const Caps& caps = Caps{}) {
  return ring.ball(r, caps);
}

}  // namespace ranklab
