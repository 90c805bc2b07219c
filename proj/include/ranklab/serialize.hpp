#pragma once
// JSON codecs for rings, forms, collections, certificates, embeddings and
// table-ring descriptors, plus file helpers. Integers that fit 64 bits are
// written as JSON numbers; anything larger, and non-integral rationals, are
// written as decimal strings. Both encodings are accepted on read. Output key
// order is alphabetical and stable, so serialized artifacts diff cleanly.

#include <fstream>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ranklab/certificate.hpp"
#include "ranklab/common.hpp"
#include "ranklab/field.hpp"
#include "ranklab/homogeneous.hpp"
#include "ranklab/multilinear.hpp"
#include "ranklab/pseudo_norm.hpp"
#include "ranklab/report.hpp"
#include "ranklab/ring.hpp"
#include "ranklab/universality.hpp"

namespace ranklab {

using Json = nlohmann::json;

inline Json int_to_json(const Int& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() &&
      v <= std::numeric_limits<std::int64_t>::max()) {
    return Json(v.convert_to<std::int64_t>());
  }
  return Json(v.str());
}

inline Int int_from_json(const Json& j) {
  if (j.is_number_integer()) return Int(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return Int(j.get<std::string>());
    } catch (const std::runtime_error&) {
      throw std::invalid_argument("malformed integer string: " + j.get<std::string>());
    }
  }
  throw std::invalid_argument("expected an integer or an integer string");
}

inline Json rat_to_json(const Rat& v) {
  if (boost::multiprecision::denominator(v) == 1) {
    return int_to_json(boost::multiprecision::numerator(v));
  }
  return Json(rat_str(v));
}

inline Rat rat_from_json(const Json& j) {
  if (j.is_number_integer()) return Rat(j.get<std::int64_t>());
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    const auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return Rat(Int(s));
      const Int num(s.substr(0, slash));
      const Int den(s.substr(slash + 1));
      if (den == 0) throw std::invalid_argument("zero denominator: " + s);
      return Rat(num, den);
    } catch (const std::runtime_error&) {
      throw std::invalid_argument("malformed rational string: " + s);
    }
  }
  throw std::invalid_argument("expected a rational number or string");
}

// ---- ring descriptors -------------------------------------------------

inline Json ring_to_json(const IntegerRing&) { return Json("Z"); }
inline Json ring_to_json(const RationalField&) { return Json("Q"); }
inline Json ring_to_json(const FiniteField& f) {
  Json j;
  j["p"] = f.p();
  if (!f.is_prime_field()) {
    j["k"] = f.degree();
    j["modulus"] = f.modulus();
  }
  return j;
}

enum class RingKind { kInteger, kRational, kFinite };

inline RingKind ring_kind(const Json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "Z") return RingKind::kInteger;
    if (s == "Q") return RingKind::kRational;
    throw std::invalid_argument("unknown ring name: " + s);
  }
  if (j.is_object() && j.contains("p")) return RingKind::kFinite;
  throw std::invalid_argument("unrecognized ring descriptor");
}

inline FiniteField field_from_json(const Json& j, const Caps& caps = Caps{}) {
  if (ring_kind(j) != RingKind::kFinite) {
    throw std::invalid_argument("expected a finite field descriptor");
  }
  const auto p = j.at("p").get<std::int64_t>();
  if (j.contains("modulus")) {
    const auto modulus = j.at("modulus").get<std::vector<std::int64_t>>();
    if (j.contains("k") &&
        j.at("k").get<int>() != static_cast<int>(modulus.size()) - 1) {
      throw std::invalid_argument("field degree does not match the modulus");
    }
    return FiniteField::extension(p, modulus, caps);
  }
  if (j.contains("k")) {
    const int k = j.at("k").get<int>();
    if (k == 1) return FiniteField::prime(p);
    return FiniteField::extension_auto(p, k, caps);
  }
  return FiniteField::prime(p);
}

inline void validate_ring(const IntegerRing&, const Json& j) {
  if (ring_kind(j) != RingKind::kInteger) {
    throw std::invalid_argument("expected the integer ring");
  }
}
inline void validate_ring(const RationalField&, const Json& j) {
  if (ring_kind(j) != RingKind::kRational) {
    throw std::invalid_argument("expected the rational field");
  }
}
inline void validate_ring(const FiniteField& f, const Json& j) {
  if (ring_kind(j) != RingKind::kFinite || !field_from_json(j).same(f)) {
    throw std::invalid_argument("field descriptor mismatch");
  }
}

// ---- ring elements ----------------------------------------------------

inline Json element_to_json(const FiniteField&, FiniteField::Element e) { return Json(e); }
inline Json element_to_json(const IntegerRing&, const Int& v) { return int_to_json(v); }
inline Json element_to_json(const RationalField&, const Rat& v) { return rat_to_json(v); }

inline FiniteField::Element element_from_json(const FiniteField& f, const Json& j) {
  if (!j.is_number_integer()) {
    throw std::invalid_argument("field element must be an integer index");
  }
  const auto v = j.get<std::int64_t>();
  if (v < 0 || v >= f.size()) throw std::invalid_argument("field element out of range");
  return static_cast<FiniteField::Element>(v);
}
inline Int element_from_json(const IntegerRing&, const Json& j) { return int_from_json(j); }
inline Rat element_from_json(const RationalField&, const Json& j) { return rat_from_json(j); }

// ---- multilinear forms ------------------------------------------------

namespace detail {

template <class R>
Json coeffs_to_json(const MultilinearForm<R>& p, std::vector<int>& idx, int depth) {
  Json arr = Json::array();
  for (int v = 0; v < p.dim(depth); ++v) {
    idx[depth] = v;
    if (depth + 1 == p.arity()) {
      arr.push_back(element_to_json(p.ring(), p.entry(idx)));
    } else {
      arr.push_back(coeffs_to_json(p, idx, depth + 1));
    }
  }
  return arr;
}

template <class R>
void coeffs_from_json(MultilinearForm<R>& p, const Json& j, std::vector<int>& idx,
                      int depth) {
  if (!j.is_array() || static_cast<int>(j.size()) != p.dim(depth)) {
    throw std::invalid_argument("coefficient nesting does not match dims");
  }
  for (int v = 0; v < p.dim(depth); ++v) {
    idx[depth] = v;
    if (depth + 1 == p.arity()) {
      p.set_entry(idx, element_from_json(p.ring(), j.at(v)));
    } else {
      coeffs_from_json(p, j.at(v), idx, depth + 1);
    }
  }
}

}  // namespace detail

template <class R>
Json form_to_json(const MultilinearForm<R>& p) {
  Json j;
  j["kind"] = "multilinear";
  j["d"] = p.arity();
  j["dims"] = p.dims();
  j["ring"] = ring_to_json(p.ring());
  std::vector<int> idx(static_cast<std::size_t>(p.arity()), 0);
  j["coeffs"] = detail::coeffs_to_json(p, idx, 0);
  return j;
}

template <class R>
MultilinearForm<R> form_from_json(const R& ring, const Json& j,
                                  const Caps& caps = Caps{}) {
  if (j.at("kind") != "multilinear") throw std::invalid_argument("expected a multilinear form");
  validate_ring(ring, j.at("ring"));
  const auto dims = j.at("dims").get<std::vector<int>>();
  if (j.at("d").get<int>() != static_cast<int>(dims.size())) {
    throw std::invalid_argument("arity does not match dims");
  }
  MultilinearForm<R> out(ring, dims, caps.tensor_entries);
  std::vector<int> idx(dims.size(), 0);
  detail::coeffs_from_json(out, j.at("coeffs"), idx, 0);
  return out;
}

template <class R>
Json collection_to_json(const FormCollection<R>& c) {
  c.validate();
  Json j;
  j["kind"] = "collection";
  Json members = Json::array();
  for (const auto& m : c.members) members.push_back(form_to_json(m));
  j["members"] = std::move(members);
  return j;
}

template <class R>
FormCollection<R> collection_from_json(const R& ring, const Json& j,
                                       const Caps& caps = Caps{}) {
  if (j.at("kind") != "collection") throw std::invalid_argument("expected a collection");
  FormCollection<R> c;
  for (const auto& m : j.at("members")) c.members.push_back(form_from_json(ring, m, caps));
  c.validate();
  return c;
}

// ---- homogeneous forms ------------------------------------------------

template <class R>
Json homogeneous_to_json(const HomogeneousForm<R>& q) {
  Json j;
  j["kind"] = "homogeneous";
  j["d"] = q.degree();
  j["s"] = q.variables();
  j["ring"] = ring_to_json(q.ring());
  Json monomials = Json::array();
  for (const auto& [e, c] : q.terms()) {
    Json m;
    m["exp"] = e;
    m["c"] = element_to_json(q.ring(), c);
    monomials.push_back(std::move(m));
  }
  j["monomials"] = std::move(monomials);
  return j;
}

template <class R>
HomogeneousForm<R> homogeneous_from_json(const R& ring, const Json& j) {
  if (j.at("kind") != "homogeneous") throw std::invalid_argument("expected a homogeneous form");
  validate_ring(ring, j.at("ring"));
  HomogeneousForm<R> q(ring, j.at("s").get<int>(), j.at("d").get<int>());
  for (const auto& m : j.at("monomials")) {
    q.add_term(m.at("exp").get<std::vector<int>>(), element_from_json(ring, m.at("c")));
  }
  return q;
}

// ---- certificates and embeddings ---------------------------------------

template <class R>
Json certificate_to_json(const PartitionRankCertificate<R>& cert) {
  Json j;
  j["kind"] = "certificate";
  Json terms = Json::array();
  for (const auto& term : cert.terms) {
    Json t;
    t["I"] = term.left_slots;
    t["R"] = form_to_json(term.left);
    t["S"] = form_to_json(term.right);
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  return j;
}

template <class R>
PartitionRankCertificate<R> certificate_from_json(const R& ring, const Json& j,
                                                  const Caps& caps = Caps{}) {
  if (j.at("kind") != "certificate") throw std::invalid_argument("expected a certificate");
  PartitionRankCertificate<R> cert;
  for (const auto& t : j.at("terms")) {
    BipartiteTerm<R> term{t.at("I").get<std::vector<int>>(),
                          form_from_json(ring, t.at("R"), caps),
                          form_from_json(ring, t.at("S"), caps)};
    cert.terms.push_back(std::move(term));
  }
  return cert;
}

template <class R>
Json schmidt_to_json(const SchmidtDecomposition<R>& dec) {
  Json j;
  j["kind"] = "schmidt";
  Json pairs = Json::array();
  for (const auto& [r, s] : dec.pairs) {
    Json p;
    p["R"] = homogeneous_to_json(r);
    p["S"] = homogeneous_to_json(s);
    pairs.push_back(std::move(p));
  }
  j["pairs"] = std::move(pairs);
  return j;
}

template <class R>
Json matrix_to_json(const Matrix<R>& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int k = 0; k < m.cols(); ++k) row.push_back(element_to_json(m.ring(), m.at(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json embedding_to_json(const Embedding<FiniteField>& emb, const FiniteField& f) {
  Json j;
  j["kind"] = "embedding";
  j["ring"] = ring_to_json(f);
  j["verified"] = emb.verified;
  Json maps = Json::array();
  for (const auto& m : emb.maps.maps) maps.push_back(matrix_to_json(m));
  j["maps"] = std::move(maps);
  return j;
}

// ---- pseudo-normed ring descriptors ------------------------------------

inline Json pseudo_ring_to_json(const TableRingNorm& r) {
  Json j;
  j["kind"] = "table-ring";
  j["m"] = r.rank();
  Json table = Json::array();
  for (const auto& v : r.table()) table.push_back(int_to_json(v));
  j["table"] = std::move(table);
  Json unit = Json::array();
  for (const auto& v : r.one()) unit.push_back(int_to_json(v));
  j["unit"] = std::move(unit);
  j["c"] = int_to_json(r.mult_constant());
  return j;
}

inline TableRingNorm table_ring_from_json(const Json& j) {
  if (j.at("kind") != "table-ring") throw std::invalid_argument("expected a table ring");
  const int m = j.at("m").get<int>();
  std::vector<Int> table;
  for (const auto& v : j.at("table")) table.push_back(int_from_json(v));
  std::vector<Int> unit;
  for (const auto& v : j.at("unit")) unit.push_back(int_from_json(v));
  return TableRingNorm(m, std::move(table), std::move(unit), int_from_json(j.at("c")));
}

// ---- files --------------------------------------------------------------

inline Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument("malformed JSON in " + path + ": " + e.what());
  }
}

inline void save_json(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace ranklab
