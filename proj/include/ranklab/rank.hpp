#pragma once

// Partition rank bounds and certificates: exact rank for arity 2, flattening
// upper bounds, an exhaustive deepening search on small instances, collective
// rank over linear combinations, and the bridges between Schmidt
// decompositions of a polynomial and partition rank certificates of its
// polarization.

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ranklab/certificate.hpp"
#include "ranklab/common.hpp"
#include "ranklab/constants.hpp"
#include "ranklab/field.hpp"
#include "ranklab/generators.hpp"
#include "ranklab/homogeneous.hpp"
#include "ranklab/linalg.hpp"
#include "ranklab/multilinear.hpp"
#include "ranklab/polarize.hpp"
#include "ranklab/report.hpp"

namespace ranklab {

enum class LowerKind { kTrivial, kBias, kSliceCount, kExact };
enum class UpperKind { kTrivialMinDim, kD2Elimination, kCertificate };

inline const char* lower_kind_str(LowerKind k) {
  switch (k) {
    case LowerKind::kTrivial:
      return "trivial";
    case LowerKind::kBias:
      return "bias";
    case LowerKind::kSliceCount:
      return "slice-count";
    case LowerKind::kExact:
      return "exact";
  }
  throw std::logic_error("unknown lower kind");
}

inline const char* upper_kind_str(UpperKind k) {
  switch (k) {
    case UpperKind::kTrivialMinDim:
      return "trivial-min-dim";
    case UpperKind::kD2Elimination:
      return "d2-elimination";
    case UpperKind::kCertificate:
      return "certificate";
  }
  throw std::logic_error("unknown upper kind");
}

struct RankBounds {
  int lower = 0;
  int upper = 0;
  LowerKind lower_kind = LowerKind::kTrivial;
  UpperKind upper_kind = UpperKind::kCertificate;

  int gap() const { return upper - lower; }
  bool exact() const { return lower == upper; }
  std::string str() const {
    return "[" + std::to_string(lower) + " (" + lower_kind_str(lower_kind) + "), " +
           std::to_string(upper) + " (" + upper_kind_str(upper_kind) + ")]";
  }
};

template <class R>
struct RankOutcome {
  RankBounds bounds;
  PartitionRankCertificate<R> certificate;  // witnesses bounds.upper
  bool exhausted = false;                   // deepening ran to completion
  std::int64_t nodes = 0;
};

template <class R>
bool verify_certificate(const MultilinearForm<R>& p,
                        const PartitionRankCertificate<R>& cert) {
  return cert.matches(p);
}

template <class R>
PartitionRankCertificate<R> concatenate(PartitionRankCertificate<R> a,
                                        const PartitionRankCertificate<R>& b) {
  for (const auto& t : b.terms) a.terms.push_back(t);
  return a;
}

namespace detail {

inline std::vector<int> mask_slots(int mask, int d, bool member) {
  std::vector<int> out;
  for (int i = 0; i < d; ++i) {
    if (((mask >> i) & 1) == (member ? 1 : 0)) out.push_back(i);
  }
  return out;
}

template <class R>
MultilinearForm<R> form_from_flat(const R& ring, const std::vector<int>& dims,
                                  const std::vector<typename R::Element>& flat) {
  MultilinearForm<R> f(ring, dims);
  for (std::int64_t i = 0; i < f.size(); ++i) f.entry_flat(i) = flat[i];
  return f;
}

}  // namespace detail

// Upper bound from a single bipartition: unflatten a rank-one decomposition
// of the flattening matrix.
template <class R>
PartitionRankCertificate<R> flattening_certificate(const MultilinearForm<R>& p,
                                                   const std::vector<int>& left_slots) {
  static_assert(R::kIsField, "flattening certificates need a field");
  const int d = p.arity();
  std::vector<bool> is_left(static_cast<std::size_t>(d), false);
  for (int s : left_slots) is_left[s] = true;
  std::vector<int> ld, rd, rs;
  for (int i = 0; i < d; ++i) {
    if (is_left[i]) {
      ld.push_back(p.dim(i));
    } else {
      rd.push_back(p.dim(i));
      rs.push_back(i);
    }
  }
  if (ld.empty() || rd.empty()) throw std::invalid_argument("bipartition must be proper");
  PartitionRankCertificate<R> cert;
  for (auto& [u, v] : rank_one_decomposition(p.flatten(left_slots))) {
    BipartiteTerm<R> term{left_slots, detail::form_from_flat(p.ring(), ld, u),
                          detail::form_from_flat(p.ring(), rd, v)};
    cert.terms.push_back(std::move(term));
  }
  return cert;
}

// Minimum flattening rank over bipartitions containing slot 0; deterministic
// tie break toward the earliest bipartition mask.
template <class R>
RankOutcome<R> best_flattening(const MultilinearForm<R>& p) {
  static_assert(R::kIsField, "flattening needs a field");
  const int d = p.arity();
  if (d < 2) throw std::invalid_argument("partition rank needs arity >= 2");
  const int full = (1 << d) - 1;
  int best_rank = -1;
  int best_mask = -1;
  for (int mask = 1; mask < full; mask += 2) {
    const int r = matrix_rank(p.flatten(detail::mask_slots(mask, d, true)));
    if (best_rank < 0 || r < best_rank) {
      best_rank = r;
      best_mask = mask;
    }
  }
  RankOutcome<R> out{RankBounds{p.is_zero() ? 0 : 1, best_rank,
                                p.is_zero() ? LowerKind::kExact : LowerKind::kTrivial,
                                UpperKind::kCertificate},
                     flattening_certificate(p, detail::mask_slots(best_mask, d, true)),
                     false, 0};
  return out;
}

// Arity 2: partition rank is the matrix rank, computed exactly.
template <class R>
RankOutcome<R> prk_exact_d2(const MultilinearForm<R>& p) {
  static_assert(R::kIsField, "exact bilinear rank needs a field");
  if (p.arity() != 2) throw std::invalid_argument("needs a bilinear form");
  RankOutcome<R> out;
  out.certificate = flattening_certificate(p, {0});
  const int r = out.certificate.rank();
  out.bounds = RankBounds{r, r, LowerKind::kExact, UpperKind::kD2Elimination};
  out.exhausted = true;
  return out;
}

namespace detail {

// One normalized left factor: a bipartition mask and the coefficients of a
// form on the mask's slots whose first nonzero coefficient is one.
template <class R>
struct LeftCandidate {
  int mask;
  std::vector<typename R::Element> coeffs;  // length = product of left dims
};

template <class R>
struct MaskLayout {
  int mask;
  std::vector<int> left_slots, right_slots;
  std::vector<int> left_dims, right_dims;
  std::int64_t left_size, right_size;
  std::vector<std::int64_t> row_of_left, row_of_right;  // flat row = sum of both
  bool enumerable;  // candidate space within the per-term cap
};

template <class R>
MaskLayout<R> make_layout(const MultilinearForm<R>& p, int mask,
                          std::int64_t term_space) {
  const int d = p.arity();
  MaskLayout<R> lay;
  lay.mask = mask;
  lay.left_slots = mask_slots(mask, d, true);
  lay.right_slots = mask_slots(mask, d, false);
  lay.left_size = 1;
  lay.right_size = 1;
  for (int s : lay.left_slots) {
    lay.left_dims.push_back(p.dim(s));
    lay.left_size *= p.dim(s);
  }
  for (int s : lay.right_slots) {
    lay.right_dims.push_back(p.dim(s));
    lay.right_size *= p.dim(s);
  }
  std::vector<std::int64_t> stride(static_cast<std::size_t>(d), 1);
  for (int i = d - 2; i >= 0; --i) stride[i] = stride[i + 1] * p.dim(i + 1);
  auto fill_rows = [&](const std::vector<int>& slots, const std::vector<int>& dims,
                       std::int64_t size, std::vector<std::int64_t>& rows) {
    rows.assign(static_cast<std::size_t>(size), 0);
    if (size == 0) return;
    std::vector<int> idx(dims.size(), 0);
    std::int64_t flat = 0;
    do {
      std::int64_t row = 0;
      for (std::size_t k = 0; k < slots.size(); ++k) row += idx[k] * stride[slots[k]];
      rows[flat++] = row;
    } while (next_tuple(idx, dims));
  };
  fill_rows(lay.left_slots, lay.left_dims, lay.left_size, lay.row_of_left);
  fill_rows(lay.right_slots, lay.right_dims, lay.right_size, lay.row_of_right);
  const Int space = int_pow(p.ring().size(), static_cast<unsigned>(lay.left_size));
  lay.enumerable = space <= term_space;
  return lay;
}

// Candidates are ordered mask-ascending, then by position of the leading one,
// then by the index-order tail; this makes the search deterministic.
template <class R>
void append_candidates(const R& ring, const MaskLayout<R>& lay,
                       std::vector<LeftCandidate<R>>& out) {
  const auto q = ring.size();
  const std::int64_t n = lay.left_size;
  for (std::int64_t pos = 0; pos < n; ++pos) {
    std::vector<int> tail(static_cast<std::size_t>(n - pos - 1), 0);
    std::vector<int> tail_dims(tail.size(), static_cast<int>(q));
    bool more = true;
    while (more) {
      LeftCandidate<R> c;
      c.mask = lay.mask;
      c.coeffs.assign(static_cast<std::size_t>(n), ring.zero());
      c.coeffs[pos] = ring.one();
      for (std::size_t k = 0; k < tail.size(); ++k) {
        c.coeffs[static_cast<std::size_t>(pos) + 1 + k] = ring.from_int(tail[k]);
      }
      out.push_back(std::move(c));
      more = !tail.empty() && next_tuple(tail, tail_dims);
    }
  }
}

// Given fixed left factors, right factors are the solution of a linear
// system; returns the assembled certificate when consistent.
template <class R>
std::optional<PartitionRankCertificate<R>> solve_right_factors(
    const MultilinearForm<R>& p, const std::vector<MaskLayout<R>>& layouts,
    const std::vector<LeftCandidate<R>>& cands, const std::vector<int>& chosen) {
  const R& ring = p.ring();
  const std::int64_t rows = p.size();
  std::vector<const MaskLayout<R>*> lay(chosen.size());
  std::vector<std::int64_t> offset(chosen.size() + 1, 0);
  for (std::size_t t = 0; t < chosen.size(); ++t) {
    for (const auto& l : layouts) {
      if (l.mask == cands[chosen[t]].mask) lay[t] = &l;
    }
    offset[t + 1] = offset[t] + lay[t]->right_size;
  }
  const auto cols = offset[chosen.size()];
  Matrix<R> aug(ring, static_cast<int>(rows), static_cast<int>(cols + 1));
  for (std::size_t t = 0; t < chosen.size(); ++t) {
    const auto& c = cands[chosen[t]];
    const auto& l = *lay[t];
    for (std::int64_t li = 0; li < l.left_size; ++li) {
      if (ring.is_zero(c.coeffs[li])) continue;
      for (std::int64_t ri = 0; ri < l.right_size; ++ri) {
        const auto row = static_cast<int>(l.row_of_left[li] + l.row_of_right[ri]);
        const auto col = static_cast<int>(offset[t] + ri);
        aug.at(row, col) = ring.add(aug.at(row, col), c.coeffs[li]);
      }
    }
  }
  for (std::int64_t i = 0; i < rows; ++i) {
    aug.at(static_cast<int>(i), static_cast<int>(cols)) = p.entry_flat(i);
  }
  std::vector<int> pivots;
  row_reduce(aug, &pivots);
  for (int c : pivots) {
    if (c == static_cast<int>(cols)) return std::nullopt;
  }
  std::vector<typename R::Element> x(static_cast<std::size_t>(cols), ring.zero());
  for (std::size_t k = 0; k < pivots.size(); ++k) {
    x[pivots[k]] = aug.at(static_cast<int>(k), static_cast<int>(cols));
  }
  PartitionRankCertificate<R> cert;
  for (std::size_t t = 0; t < chosen.size(); ++t) {
    const auto& l = *lay[t];
    std::vector<typename R::Element> rv(x.begin() + offset[t],
                                        x.begin() + offset[t + 1]);
    BipartiteTerm<R> term{l.left_slots,
                          form_from_flat(ring, l.left_dims, cands[chosen[t]].coeffs),
                          form_from_flat(ring, l.right_dims, rv)};
    cert.terms.push_back(std::move(term));
  }
  return cert;
}

}  // namespace detail

// Iterative deepening over certificates with strictly increasing normalized
// left factors; right factors come from a linear solve. Exhausting every
// level below the found one proves exactness. A caller-supplied lower hint
// must itself be a proved bound; levels below it are skipped.
template <class R>
RankOutcome<R> prk_upper_search(const MultilinearForm<R>& p, const Caps& caps,
                                int lower_hint = 0,
                                LowerKind hint_kind = LowerKind::kTrivial) {
  static_assert(R::kIsField && R::kFinite, "search runs over finite fields");
  const R& ring = p.ring();
  if (ring.size() > caps.field_size) throw CapExceeded("field above search cap");
  const int d = p.arity();
  if (d < 2) throw std::invalid_argument("partition rank needs arity >= 2");
  if (p.is_zero()) {
    RankOutcome<R> out;
    out.bounds = RankBounds{0, 0, LowerKind::kExact, UpperKind::kCertificate};
    out.exhausted = true;
    return out;
  }
  if (d == 2) return prk_exact_d2(p);

  RankOutcome<R> out = best_flattening(p);
  if (lower_hint > out.bounds.upper) {
    throw AuditViolation("rank lower bound exceeds a certified upper bound");
  }
  if (lower_hint > out.bounds.lower) {
    out.bounds.lower = lower_hint;
    out.bounds.lower_kind = hint_kind;
  }
  if (out.bounds.exact()) {
    out.exhausted = true;
    return out;
  }

  std::vector<detail::MaskLayout<R>> layouts;
  std::vector<detail::LeftCandidate<R>> cands;
  bool all_enumerable = true;
  const int full = (1 << d) - 1;
  constexpr std::int64_t kCandidateCap = 4'000'000;
  for (int mask = 1; mask < full; mask += 2) {
    auto lay = detail::make_layout(p, mask, caps.term_space);
    if (lay.enumerable) {
      const Int count = (int_pow(ring.size(), static_cast<unsigned>(lay.left_size)) - 1) /
                        (Int(ring.size()) - 1);
      if (Int(static_cast<std::int64_t>(cands.size())) + count > kCandidateCap) {
        lay.enumerable = false;
      }
    }
    if (lay.enumerable) detail::append_candidates(ring, lay, cands);
    all_enumerable = all_enumerable && lay.enumerable;
    layouts.push_back(std::move(lay));
  }

  const int total = static_cast<int>(cands.size());
  bool aborted = false;
  std::vector<int> chosen;
  // Depth-first over strictly increasing candidate tuples of size r.
  auto descend = [&](auto&& self, int r, int start) -> std::optional<PartitionRankCertificate<R>> {
    if (static_cast<int>(chosen.size()) == r) {
      ++out.nodes;
      if (out.nodes > caps.search_budget) {
        aborted = true;
        return std::nullopt;
      }
      return detail::solve_right_factors(p, layouts, cands, chosen);
    }
    const int need = r - static_cast<int>(chosen.size());
    for (int i = start; i + need <= total; ++i) {
      chosen.push_back(i);
      auto found = self(self, r, i + 1);
      chosen.pop_back();
      if (found || aborted) return found;
    }
    return std::nullopt;
  };

  for (int r = std::max(1, out.bounds.lower); r < out.bounds.upper; ++r) {
    chosen.clear();
    auto found = descend(descend, r, 0);
    if (found) {
      if (!found->matches(p)) throw std::logic_error("search produced a bad certificate");
      out.certificate = std::move(*found);
      out.bounds.upper = r;
      break;
    }
    if (aborted || !all_enumerable) {
      // Cannot certify that level r has no certificate.
      return out;
    }
    out.bounds.lower = r + 1;
    out.bounds.lower_kind = LowerKind::kExact;
  }
  out.exhausted = out.bounds.exact();
  return out;
}

// Projective representatives: leading coordinate position ascending, leading
// coefficient one, tail in element index order.
inline std::vector<std::vector<FiniteField::Element>> projective_points(
    const FiniteField& f, int n, std::int64_t cap) {
  if (int_pow(f.size(), static_cast<unsigned>(n)) > cap) {
    throw CapExceeded("combination space above cap");
  }
  std::vector<std::vector<FiniteField::Element>> pts;
  const auto q = static_cast<int>(f.size());
  for (int pos = 0; pos < n; ++pos) {
    std::vector<int> tail(static_cast<std::size_t>(n - pos - 1), 0);
    std::vector<int> tail_dims(tail.size(), q);
    bool more = true;
    while (more) {
      std::vector<FiniteField::Element> a(static_cast<std::size_t>(n), f.zero());
      a[pos] = f.one();
      for (std::size_t k = 0; k < tail.size(); ++k) {
        a[static_cast<std::size_t>(pos) + 1 + k] = f.from_int(tail[k]);
      }
      pts.push_back(std::move(a));
      more = !tail.empty() && next_tuple(tail, tail_dims);
    }
  }
  return pts;
}

template <class R>
struct CollectiveOutcome {
  RankBounds bounds;
  std::vector<typename R::Element> witness;  // first combination attaining upper
  RankOutcome<R> witness_outcome;
};

// Minimum over one representative per projective class of nonzero
// combinations; rank_fn is any bound producing rank operation.
template <class Fn>
CollectiveOutcome<FiniteField> collective_prk(const FormCollection<FiniteField>& c,
                                              Fn&& rank_fn, const Caps& caps) {
  c.validate();
  const auto& f = c.members[0].ring();
  const auto pts = projective_points(f, c.size(), caps.enumeration);
  CollectiveOutcome<FiniteField> out;
  bool first = true;
  int min_lower = 0;
  LowerKind min_lower_kind = LowerKind::kTrivial;
  for (const auto& a : pts) {
    RankOutcome<FiniteField> r = rank_fn(c.combine(a));
    if (first || r.bounds.lower < min_lower) {
      min_lower = r.bounds.lower;
      min_lower_kind = r.bounds.lower_kind;
    }
    if (first || r.bounds.upper < out.bounds.upper) {
      out.bounds.upper = r.bounds.upper;
      out.bounds.upper_kind = r.bounds.upper_kind;
      out.witness = a;
      out.witness_outcome = std::move(r);
    }
    first = false;
  }
  out.bounds.lower = std::min(min_lower, out.bounds.upper);
  out.bounds.lower_kind = min_lower_kind;
  return out;
}

// Diagonal restriction of a certificate for the polarization: each bipartite
// term restricts to a product of polynomials, and the factor 1/d! moves the
// identity d! Q(x) = T(x,...,x) onto Q itself. Terms whose restriction
// vanishes are dropped.
template <class R>
SchmidtDecomposition<R> schmidt_from_certificate(const HomogeneousForm<R>& q,
                                                 const PartitionRankCertificate<R>& cert) {
  static_assert(R::kIsField, "diagonal restriction divides by d!");
  const R& ring = q.ring();
  const int d = q.degree();
  typename R::Element dfact = ring.one();
  for (int i = 2; i <= d; ++i) dfact = ring.mul(dfact, ring.from_int(i));
  if (ring.is_zero(dfact)) {
    throw std::domain_error("degree factorial vanishes in the coefficient field");
  }
  const auto scale = ring.inv(dfact);
  SchmidtDecomposition<R> dec;
  for (const auto& term : cert.terms) {
    auto left = restrict_diagonal(term.left).scaled(scale);
    auto right = restrict_diagonal(term.right);
    if (left.is_zero() || right.is_zero()) continue;
    dec.pairs.emplace_back(std::move(left), std::move(right));
  }
  return dec;
}

// Expansion of the polarization of a product: polarize(RS) spreads over all
// slot subsets of size deg R, one bipartite term each, so the certificate for
// polarize(q) has at most binom(d, floor(d/2)) terms per decomposition pair.
template <class R>
PartitionRankCertificate<R> prk_upper_from_schmidt(const HomogeneousForm<R>& q,
                                                   const SchmidtDecomposition<R>& dec) {
  const int d = q.degree();
  PartitionRankCertificate<R> cert;
  for (const auto& [rp, sp] : dec.pairs) {
    if (rp.degree() + sp.degree() != d) {
      throw std::invalid_argument("pair degrees must sum to the target degree");
    }
    const auto left_tensor = polarize(rp);
    const auto right_tensor = polarize(sp);
    std::vector<int> subset(static_cast<std::size_t>(rp.degree()));
    for (int i = 0; i < rp.degree(); ++i) subset[i] = i;
    for (;;) {
      cert.terms.push_back(BipartiteTerm<R>{subset, left_tensor, right_tensor});
      // Next size-|subset| slot combination in ascending order.
      int i = rp.degree() - 1;
      while (i >= 0 && subset[i] == d - rp.degree() + i) --i;
      if (i < 0) break;
      subset[i] += 1;
      for (int j = i + 1; j < rp.degree(); ++j) subset[j] = subset[j - 1] + 1;
    }
  }
  return cert;
}

// Upper bound for the Schmidt rank of q through a partition rank certificate
// of its polarization.
template <class R>
std::pair<SchmidtDecomposition<R>, RankOutcome<R>> schmidt_upper_from_prk(
    const HomogeneousForm<R>& q, const Caps& caps) {
  const auto t = polarize(q, caps.tensor_entries);
  RankOutcome<R> outcome;
  if constexpr (R::kFinite) {
    outcome = prk_upper_search(t, caps);
  } else {
    outcome = best_flattening(t);
  }
  return {schmidt_from_certificate(q, outcome.certificate), outcome};
}

// Checks one instance of the rank comparison bound across a field extension:
// collective rank over the base field against the constants-table bound fed
// by the collective rank over an extension standing in for the closure.
template <class Fn>
AuditReport main_theorem_audit(const FormCollection<FiniteField>& c,
                               const ConstantsTable& table, const Caps& caps,
                               Fn&& rank_fn, const std::string& instance_id) {
  c.validate();
  const auto& f = c.members[0].ring();
  const auto base = collective_prk(c, rank_fn, caps);

  int ext_degree = 1;
  if (f.is_prime_field()) {
    for (int k = caps.extension_degree; k >= 2; --k) {
      if (int_pow(f.p(), static_cast<unsigned>(k)) <= caps.field_size) {
        ext_degree = k;
        break;
      }
    }
  }
  CollectiveOutcome<FiniteField> closure = base;
  std::int64_t proxy_q = f.size();
  if (ext_degree > 1) {
    const auto ext = FiniteField::extension_auto(f.p(), ext_degree, caps);
    proxy_q = ext.size();
    FormCollection<FiniteField> lifted;
    for (const auto& m : c.members) lifted.members.push_back(extend_scalars(m, ext));
    closure = collective_prk(lifted, rank_fn, caps);
  }

  const auto& pair = table.partition(FieldClass::kFiniteLarge);
  const Int n = c.size();
  const auto exp_b = static_cast<unsigned>(static_cast<long long>(pair.exp.numeric()));
  auto bound = [&](int closure_rank) {
    return Rat(pair.coeff.numeric() * int_pow(n * closure_rank + 1, exp_b));
  };
  AuditReport rep;
  rep.instance_id = instance_id;
  rep.inequality = "collective prk(base) <= A*(n*collective prk(closure proxy)+1)^B";
  rep.lhs = base.bounds.upper;
  rep.rhs = bound(closure.bounds.lower);
  rep.constants = "finite-large (A, B) = " + pair.render() +
                  ", size assumption untested; closure proxy F_" + std::to_string(proxy_q);
  if (Rat(base.bounds.lower) > bound(closure.bounds.upper)) {
    rep.verdict = Verdict::kViolated;
  } else if (rep.lhs <= rep.rhs) {
    rep.verdict = Verdict::kHolds;
  } else {
    rep.verdict = Verdict::kInconclusive;
  }
  auto render = [&](const CollectiveOutcome<FiniteField>& o) {
    std::string s = "a=(";
    for (std::size_t i = 0; i < o.witness.size(); ++i) {
      if (i) s += ",";
      s += c.members[0].ring().str(o.witness[i]);
    }
    return s + ") bounds " + o.bounds.str();
  };
  rep.witness = "base " + render(base) + "; proxy " + render(closure);
  return rep;
}

}  // namespace ranklab
