#include <doctest.h>

#include "ranklab/rank.hpp"

using namespace ranklab;

TEST_CASE("bilinear partition rank equals matrix rank") {
  Caps caps;
  auto f3 = FiniteField::prime(3);
  Rng rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const int rows = 1 + static_cast<int>(uniform_below(rng, 3));
    const int cols = 1 + static_cast<int>(uniform_below(rng, 3));
    auto m = random_form(f3, {rows, cols}, rng);
    auto out = prk_exact_d2(m);
    CHECK(out.bounds.exact());
    CHECK(out.bounds.upper == matrix_rank(m.flatten({0})));
    CHECK(verify_certificate(m, out.certificate));
  }
  auto id3 = diagonal_form(FiniteField::prime(2), 3, 2);
  auto r = prk_exact_d2(id3);
  CHECK(r.bounds.lower == 3);
  CHECK(r.bounds.upper == 3);
}

TEST_CASE("zero forms have certified rank zero") {
  Caps caps;
  auto f2 = FiniteField::prime(2);
  MultilinearForm<FiniteField> zero(f2, {2, 2, 2});
  auto rz = prk_upper_search(zero, caps);
  CHECK(rz.bounds.upper == 0);
  CHECK(rz.bounds.exact());
  CHECK(rz.certificate.rank() == 0);
}

TEST_CASE("trilinear diagonal searches certify the block count") {
  Caps caps;
  auto f2 = FiniteField::prime(2);
  auto f3 = FiniteField::prime(3);

  auto r1 = prk_upper_search(diagonal_form(f2, 1, 3), caps);
  CHECK(r1.bounds.lower == 1);
  CHECK(r1.bounds.upper == 1);
  CHECK(r1.exhausted);

  auto d2f = diagonal_form(f2, 2, 3);
  auto r2 = prk_upper_search(d2f, caps);
  CHECK(r2.bounds.lower == 2);
  CHECK(r2.bounds.upper == 2);
  CHECK(r2.exhausted);
  CHECK(verify_certificate(d2f, r2.certificate));
  CHECK(r2.certificate.matches(d2f));

  // flattening pins the upper bound at 3; the default budget exhausts level 1
  auto r3 = prk_upper_search(diagonal_form(f3, 3, 3), caps);
  CHECK(r3.bounds.upper == 3);
  CHECK(r3.bounds.lower >= 2);
  CHECK(r3.bounds.lower <= r3.bounds.upper);
}

TEST_CASE("search upper bounds never undercut an exhaustive lower level") {
  Caps caps;
  auto f2 = FiniteField::prime(2);
  Rng rng(17);
  for (int trial = 0; trial < 15; ++trial) {
    auto m = random_form(f2, {2, 2, 2}, rng);
    auto out = prk_upper_search(m, caps);
    CHECK(out.bounds.lower <= out.bounds.upper);
    CHECK(out.certificate.matches(m));
    CHECK(out.certificate.rank() == out.bounds.upper);
  }
}

TEST_CASE("a tight budget aborts honestly without pretending exhaustion") {
  Caps tight;
  tight.search_budget = 1;
  auto f3 = FiniteField::prime(3);
  auto d3 = diagonal_form(f3, 3, 3);
  auto out = prk_upper_search(d3, tight);
  CHECK(!out.exhausted);
  CHECK(out.bounds.lower <= out.bounds.upper);
  CHECK(out.certificate.matches(d3));
}

TEST_CASE("a lower hint above the flattening ceiling is a contradiction") {
  Caps caps;
  auto f2 = FiniteField::prime(2);
  auto one = diagonal_form(f2, 1, 3);
  CHECK_THROWS_AS(prk_upper_search(one, caps, 3, LowerKind::kBias), AuditViolation);
}

TEST_CASE("collective rank minimizes over projective combinations") {
  Caps caps;
  auto f2 = FiniteField::prime(2);
  auto coll = diagonal_collection(f2, 2, 1, 2);
  auto co = collective_prk(
      coll, [](const MultilinearForm<FiniteField>& m) { return prk_exact_d2(m); }, caps);
  CHECK(co.bounds.lower == 1);
  CHECK(co.bounds.upper == 1);
  CHECK(co.witness[0] == 1);
  CHECK(co.witness[1] == 0);

  auto coll2 = diagonal_collection(f2, 2, 2, 2);
  auto co2 = collective_prk(
      coll2, [](const MultilinearForm<FiniteField>& m) { return prk_exact_d2(m); }, caps);
  CHECK(co2.bounds.upper == 2);
}

TEST_CASE("bridges between decompositions and certificates preserve validity") {
  Caps caps;
  RationalField qq;
  HomogeneousForm<RationalField> q(qq, 3, 3);
  q.add_term({1, 1, 1}, Rat(1));

  SchmidtDecomposition<RationalField> dec;
  HomogeneousForm<RationalField> rp(qq, 3, 1), sp(qq, 3, 2);
  rp.add_term({1, 0, 0}, Rat(1));
  sp.add_term({0, 1, 1}, Rat(1));
  dec.pairs.emplace_back(rp, sp);
  CHECK(dec.matches(q));

  auto cert = prk_upper_from_schmidt(q, dec);
  CHECK(cert.rank() == 3);
  CHECK(cert.matches(polarize(q)));

  auto dec2 = schmidt_from_certificate(q, cert);
  CHECK(static_cast<int>(dec2.pairs.size()) <= cert.rank());
  CHECK(dec2.matches(q));

  auto [dec3, out3] = schmidt_upper_from_prk(q, caps);
  CHECK(dec3.matches(q));
  CHECK(out3.bounds.upper >= 1);
}

TEST_CASE("certificates concatenate subadditively") {
  Caps caps;
  auto f2 = FiniteField::prime(2);
  auto d2f = diagonal_form(f2, 2, 3);
  auto r2 = prk_upper_search(d2f, caps);
  auto cc = concatenate(r2.certificate, r2.certificate);
  CHECK(cc.matches(d2f.add(d2f)));
  CHECK(cc.rank() == 2 * r2.certificate.rank());
}

TEST_CASE("rank relating audit holds on diagonal collections") {
  Caps caps;
  auto f2 = FiniteField::prime(2);
  auto coll = diagonal_collection(f2, 2, 1, 2);
  auto table = ConstantsTable::defaults(2);
  auto rep = main_theorem_audit(
      coll, table, caps,
      [&caps](const MultilinearForm<FiniteField>& m) { return prk_upper_search(m, caps); },
      "diag-2-1-2");
  CHECK(rep.verdict == Verdict::kHolds);
}
