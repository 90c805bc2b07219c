#include <doctest.h>

#include <filesystem>

#include "ranklab/bias.hpp"
#include "ranklab/corpus.hpp"
#include "ranklab/rank.hpp"
#include "ranklab/serialize.hpp"

using namespace ranklab;

TEST_CASE("scalar codecs round trip and accept both spellings") {
  CHECK(int_from_json(int_to_json(Int("123456789012345678901234567890"))) ==
        Int("123456789012345678901234567890"));
  CHECK(int_to_json(Int(7)).is_number_integer());
  CHECK(rat_from_json(rat_to_json(Rat(3, 4))) == Rat(3, 4));
  CHECK(rat_from_json(Json("3/4")) == Rat(3, 4));
  CHECK(rat_from_json(Json(-2)) == Rat(-2));
}

TEST_CASE("ring descriptors round trip") {
  Caps caps;
  auto f9 = FiniteField::extension_auto(3, 2, caps);
  auto j = ring_to_json(f9);
  CHECK(j.at("p") == 3);
  CHECK(j.at("k") == 2);
  CHECK(field_from_json(j).same(f9));
  CHECK(ring_kind(Json("Z")) == RingKind::kInteger);
  CHECK(ring_kind(Json("Q")) == RingKind::kRational);
}

TEST_CASE("multilinear forms round trip over each ring") {
  Caps caps;
  {
    auto f3 = FiniteField::prime(3);
    auto p = diagonal_form(f3, 2, 2);
    auto j = form_to_json(p);
    CHECK(j.at("kind") == "multilinear");
    CHECK(j.at("coeffs") == Json::parse("[[1,0],[0,1]]"));
    CHECK(form_from_json(f3, j) == p);
  }
  {
    IntegerRing z;
    MultilinearForm<IntegerRing> p(z, {2, 1, 2});
    p.set_entry({0, 0, 1}, Int("99999999999999999999"));
    p.set_entry({1, 0, 0}, Int(-7));
    CHECK(form_from_json(z, form_to_json(p)) == p);
  }
  {
    RationalField qf;
    MultilinearForm<RationalField> p(qf, {2, 2});
    p.set_entry({0, 1}, Rat(2, 3));
    p.set_entry({1, 0}, Rat(-5));
    CHECK(form_from_json(qf, form_to_json(p)) == p);
  }
  {
    auto f4 = FiniteField::extension_auto(2, 2, caps);
    Rng rng(3);
    auto p = random_form(f4, {2, 2, 2}, rng);
    CHECK(form_from_json(f4, form_to_json(p)) == p);
  }
}

TEST_CASE("loading a form into the wrong field is rejected") {
  auto f3 = FiniteField::prime(3);
  auto f5 = FiniteField::prime(5);
  auto j = form_to_json(diagonal_form(f3, 1, 2));
  CHECK_THROWS_AS(form_from_json(f5, j), std::invalid_argument);
}

TEST_CASE("homogeneous forms round trip") {
  RationalField qf;
  HomogeneousForm<RationalField> q(qf, 2, 3);
  q.add_term({2, 1}, Rat(2));
  q.add_term({0, 3}, Rat(-1, 2));
  auto j = homogeneous_to_json(q);
  CHECK(j.at("kind") == "homogeneous");
  CHECK(j.at("s") == 2);
  CHECK(homogeneous_from_json(qf, j) == q);
}

TEST_CASE("certificates stay valid across a round trip") {
  Caps caps;
  auto f2 = FiniteField::prime(2);
  auto p = diagonal_form(f2, 2, 3);
  auto outcome = prk_upper_search(p, caps);
  REQUIRE(outcome.bounds.upper == 2);
  auto back = certificate_from_json(f2, certificate_to_json(outcome.certificate));
  CHECK(back.matches(p));
  CHECK(back.rank() == outcome.certificate.rank());
}

TEST_CASE("collections round trip") {
  auto f2 = FiniteField::prime(2);
  auto c = diagonal_collection(f2, 2, 1, 2);
  auto back = collection_from_json(f2, collection_to_json(c));
  CHECK(back.size() == 2);
  CHECK(back.members[0] == c.members[0]);
  CHECK(back.members[1] == c.members[1]);
}

TEST_CASE("table rings round trip with their multiplication") {
  auto g = gaussian_integers();
  auto back = table_ring_from_json(pseudo_ring_to_json(g));
  CHECK(back.rank() == 2);
  CHECK(back.mult_constant() == 2);
  auto i = TableRingNorm::Element{Int(0), Int(1)};
  CHECK(back.mul(i, i) == g.mul(i, i));
}

TEST_CASE("corpus generation is deterministic in the seed") {
  Caps caps;
  auto a = corpus_instances(CorpusProfile::kRandomSmallField, 1, caps);
  auto b = corpus_instances(CorpusProfile::kRandomSmallField, 1, caps);
  REQUIRE(a.size() == 300);
  REQUIRE(b.size() == 300);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].form.dump() == b[i].form.dump());
    CHECK(a[i].meta.dump() == b[i].meta.dump());
  }
  auto c = corpus_instances(CorpusProfile::kRandomSmallField, 2, caps);
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) differs = differs || a[i].form != c[i].form;
  CHECK(differs);
}

TEST_CASE("fixed corpus profiles have pinned sizes") {
  Caps caps;
  CHECK(corpus_instances(CorpusProfile::kDiagonalLadder, 1, caps).size() == 18);
  CHECK(corpus_instances(CorpusProfile::kIntegerDescent, 1, caps).size() == 10);
}

TEST_CASE("generated corpus files load back and reproduce known values") {
  Caps caps;
  const std::string dir =
      (std::filesystem::temp_directory_path() / "ranklab_corpus_test").string();
  std::filesystem::remove_all(dir);
  auto manifest = corpus_generate(dir, CorpusProfile::kDiagonalLadder, 1, caps);
  CHECK(manifest.at("instances").size() == 18);
  auto j = load_json(dir + "/diag_r2_d2_p3.json");
  auto f3 = field_from_json(j.at("ring"));
  auto p = form_from_json(f3, j);
  CHECK(bias_exact(p, caps).value == Rat(1, 9));
  auto again = corpus_generate(dir, CorpusProfile::kDiagonalLadder, 1, caps);
  CHECK(manifest.dump() == again.dump());
  std::filesystem::remove_all(dir);
}
