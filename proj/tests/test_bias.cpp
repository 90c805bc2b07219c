#include <doctest.h>

#include <cmath>

#include "ranklab/bias.hpp"
#include "ranklab/rank.hpp"

using namespace ranklab;

TEST_CASE("hand checked bias values") {
  auto f2 = FiniteField::prime(2);
  auto f3 = FiniteField::prime(3);

  MultilinearForm<FiniteField> uv(f3, {1, 1});
  uv.set_entry({0, 0}, f3.one());
  CHECK(bias_exact(uv).value == Rat(1, 3));

  MultilinearForm<FiniteField> z(f2, {2, 2});
  auto bz = bias_exact(z);
  CHECK(bz.value == 1);
  CHECK(bz.analytic_rank == 0.0);
  CHECK(prk_lower_from_bias(bz) == 0);

  auto bx = bias_exact(diagonal_form(f2, 1, 3));
  CHECK(bx.value == Rat(3, 4));
  CHECK(prk_lower_from_bias(bx) == 1);
}

TEST_CASE("diagonal bilinear bias is the inverse power of the field size") {
  for (std::int64_t p : {2, 3, 5}) {
    for (int r : {1, 2, 3}) {
      auto f = FiniteField::prime(p);
      auto b = bias_exact(diagonal_form(f, r, 2));
      CHECK(b.value == Rat(Int(1), int_pow(Int(p), static_cast<unsigned>(r))));
      CHECK(prk_lower_from_bias(b) == r);
    }
  }
}

TEST_CASE("counting strategies and the character sum oracle agree") {
  auto f2 = FiniteField::prime(2);
  auto f3 = FiniteField::prime(3);
  Rng rng(7);
  for (int i = 0; i < 25; ++i) {
    auto f = (i % 2) ? f3 : f2;
    auto m = random_form(f, {2, 2, 2}, rng);
    auto a = bias_exact(m);
    auto b = bias_exact_slices(m);
    CHECK(a.value == b.value);
    CHECK(std::abs(bias_charsum(m) - a.value.convert_to<double>()) < 1e-9);
    Rat scaled = a.value * a.sample_space;
    CHECK(denominator(scaled) == 1);
  }
}

TEST_CASE("bias is multiplicative under direct sums") {
  auto f2 = FiniteField::prime(2);
  auto f3 = FiniteField::prime(3);
  Rng rng(13);
  for (int i = 0; i < 50; ++i) {
    auto f = (i % 2) ? f3 : f2;
    auto a = random_form(f, {2, 2}, rng);
    auto b = random_form(f, {1, 2}, rng);
    CHECK(bias_exact(direct_sum(a, b)).value == bias_exact(a).value * bias_exact(b).value);
  }
}

TEST_CASE("bias is invariant under invertible substitutions") {
  auto f3 = FiniteField::prime(3);
  Rng rng(19);
  for (int i = 0; i < 20; ++i) {
    auto m = random_form(f3, {2, 2, 2}, rng);
    LinearMapTuple<FiniteField> maps;
    for (int s = 0; s < 3; ++s) maps.maps.push_back(random_invertible(f3, 2, rng));
    CHECK(bias_exact(m.compose(maps)).value == bias_exact(m).value);
  }
}

TEST_CASE("collective bias minimizes over nonzero combinations") {
  auto f2 = FiniteField::prime(2);
  auto cb = collective_bias_min(diagonal_collection(f2, 2, 1, 2));
  CHECK(cb.bias.value == Rat(1, 2));
  CHECK(cb.witness[0] == 1);
  CHECK(cb.witness[1] == 0);
  CHECK(collective_bias_min(diagonal_collection(f2, 2, 2, 2)).bias.value == Rat(1, 4));
}

TEST_CASE("counting lower bound matches hand computed systems") {
  auto f2 = FiniteField::prime(2);
  auto f3 = FiniteField::prime(3);

  MultilinearForm<FiniteField> uv(f3, {1, 1});
  uv.set_entry({0, 0}, f3.one());
  FormCollection<FiniteField> sys{{uv}};
  CHECK(counting_lower_bound(sys, {f3.one()}) == Rat(1, 9));

  MultilinearForm<FiniteField> z11(f3, {1, 1});
  FormCollection<FiniteField> degenerate{{z11}};
  CHECK(counting_lower_bound(degenerate, {f3.one()}) <= 0);

  FormCollection<FiniteField> one{{diagonal_form(f2, 2, 2)}};
  CHECK(counting_lower_bound(one, {f2.one()}) == Rat(3, 8));
}

TEST_CASE("quadratic extensions sharpen the bias lower bound when needed") {
  Caps caps;
  auto f5 = FiniteField::prime(5);
  auto d33 = diagonal_form(f5, 3, 3);
  CHECK(prk_lower_from_bias(d33) == 2);
  auto ext = extension_bias_lower(d33, caps);
  CHECK(ext.lower == 3);
  CHECK(ext.degree == 2);
  CHECK(ext.q == 25);

  for (std::int64_t p : {7, 11, 13}) {
    auto f = FiniteField::prime(p);
    auto e = extension_bias_lower(diagonal_form(f, 3, 3), caps);
    CHECK(e.lower == 3);
    CHECK(e.degree == 1);
  }
}

TEST_CASE("bias rank audit verdicts across regimes") {
  Caps caps;
  auto f2 = FiniteField::prime(2);
  auto f3 = FiniteField::prime(3);

  auto diag22 = diagonal_form(f3, 2, 2);
  auto bounds = prk_exact_d2(diag22).bounds;
  auto rep = bias_rank_audit(diag22, 2, 2, ConstantsTable::defaults(2), bounds, caps, "a");
  CHECK(rep.verdict == Verdict::kHolds);

  auto xyz = diagonal_form(f2, 1, 3);
  auto table3 = ConstantsTable::defaults(3);
  auto bnds1 = prk_upper_search(xyz, caps).bounds;
  // Rank below the threshold leaves the implication vacuous.
  CHECK(bias_rank_audit(xyz, 1, 2, table3, bnds1, caps, "b").verdict == Verdict::kHolds);
  // The symbolic threshold of the first regime never certifies.
  CHECK(bias_rank_audit(xyz, 1, 1, table3, bnds1, caps, "c").verdict ==
        Verdict::kInconclusive);
}

TEST_CASE("bias enumeration respects the point cap") {
  Caps tight;
  tight.bias_points = 2;
  auto f3 = FiniteField::prime(3);
  CHECK_THROWS_AS(bias_exact(diagonal_form(f3, 1, 3), tight), CapExceeded);
}
