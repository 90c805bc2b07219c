#include <doctest.h>

#include "ranklab/bias.hpp"
#include "ranklab/geometry.hpp"

using namespace ranklab;

TEST_CASE("diagonal slice vanishing counts follow the closed product form") {
  // Per block the first d-1 coordinates need a zero factor; off block
  // coordinates are free: (q^(d-1) - (q-1)^(d-1))^r * q^((d-1)(s-r)).
  for (std::int64_t q : {2, 3, 5}) {
    for (int r : {1, 2}) {
      auto f = FiniteField::prime(q);
      const int s = r + 1;
      MultilinearForm<FiniteField> p(f, {s, s, s});
      for (int k = 0; k < r; ++k) p.set_entry({k, k, k}, f.one());
      auto lc = singular_locus_count(p);
      const Int expect = int_pow(Int(2 * q - 1), static_cast<unsigned>(r)) *
                         int_pow(Int(q), static_cast<unsigned>(2 * (s - r)));
      CHECK(lc.total_points == expect);
      CHECK(lc.ambient_dim == 2 * s);
    }
  }
}

TEST_CASE("codim estimates on landmark forms") {
  auto f2 = FiniteField::prime(2);
  auto f5 = FiniteField::prime(5);

  MultilinearForm<FiniteField> p(f5, {3, 3, 3});
  p.set_entry({0, 0, 0}, f5.one());
  p.set_entry({1, 1, 1}, f5.one());
  auto lc = singular_locus_count(p);
  CHECK(lc.total_points == 81 * 25);
  CHECK(lc.codim_estimate == 2);
  CHECK(!lc.low_confidence);

  MultilinearForm<FiniteField> z(f2, {2, 2, 2});
  auto lz = singular_locus_count(z);
  CHECK(lz.total_points == 16);
  CHECK(lz.codim_estimate == 0);

  auto lr = singular_locus_count(diagonal_form(f5, 3, 2));
  CHECK(lr.total_points == 1);
  CHECK(lr.codim_estimate == 3);
}

TEST_CASE("slice vanishing fraction equals the exact bias") {
  auto f2 = FiniteField::prime(2);
  Rng rng(11);
  for (int i = 0; i < 15; ++i) {
    auto m = random_form(f2, {2, 2, 2}, rng);
    auto lc = singular_locus_count(m);
    CHECK(Rat(lc.total_points, int_pow(Int(2), static_cast<unsigned>(lc.ambient_dim))) ==
          bias_exact(m).value);
    auto pts = singular_locus_points(m);
    CHECK(Int(pts.size()) == lc.total_points);
  }
}

TEST_CASE("dependence locus of a collection dominates each member locus") {
  auto f2 = FiniteField::prime(2);
  Rng rng(29);
  auto a = random_form(f2, {2, 2, 2}, rng);
  auto b = random_form(f2, {2, 2, 2}, rng);
  FormCollection<FiniteField> one{{a}};
  FormCollection<FiniteField> two{{a, b}};
  CHECK(singular_locus_count(one).total_points == singular_locus_count(a).total_points);
  CHECK(singular_locus_count(two).total_points >= singular_locus_count(one).total_points);
}

TEST_CASE("gradient loci of landmark polynomials") {
  auto f5 = FiniteField::prime(5);

  HomogeneousForm<FiniteField> cubes(f5, 3, 3);
  cubes.add_term({3, 0, 0}, f5.one());
  cubes.add_term({0, 3, 0}, f5.one());
  cubes.add_term({0, 0, 3}, f5.one());
  auto lc = gradient_locus_count(cubes);
  CHECK(lc.total_points == 1);
  CHECK(lc.codim_estimate == 3);

  HomogeneousForm<FiniteField> xy(f5, 2, 2);
  xy.add_term({1, 1}, f5.one());
  auto lx = gradient_locus_count(xy);
  CHECK(lx.total_points == 1);
  CHECK(lx.codim_estimate == 2);

  HomogeneousForm<FiniteField> zero(f5, 2, 3);
  auto lz = gradient_locus_count(zero);
  CHECK(lz.total_points == 25);
  CHECK(lz.codim_estimate == 0);
}

TEST_CASE("codimension based rank ceiling on a full rank bilinear form") {
  auto f5 = FiniteField::prime(5);
  CHECK(prk_upper_from_codim(diagonal_form(f5, 3, 2)) == 6);
}

TEST_CASE("rank inequality audits hold for a diagonal cubic") {
  Caps caps;
  auto f7 = FiniteField::prime(7);
  HomogeneousForm<FiniteField> q(f7, 2, 3);
  q.add_term({3, 0}, f7.one());
  q.add_term({0, 3}, f7.one());
  auto reps = geometry_inequality_audit({q}, caps, "diag-cubic");
  REQUIRE(reps.size() == 2);
  CHECK(reps[0].verdict == Verdict::kHolds);
  CHECK(reps[1].verdict == Verdict::kHolds);
}

TEST_CASE("projection fiber audit finds small fibers of structured sets") {
  auto f5 = FiniteField::prime(5);

  std::vector<std::vector<FiniteField::Element>> all;
  for (int a = 0; a < 5; ++a) {
    for (int b = 0; b < 5; ++b) {
      all.push_back({FiniteField::Element(a), FiniteField::Element(b)});
    }
  }
  auto rep = noether_fiber_audit(all, f5, 0, 50, 1, "full");
  CHECK(rep.verdict == Verdict::kHolds);
  CHECK(rep.lhs == 1);

  std::vector<std::vector<FiniteField::Element>> planes;
  for (int a = 0; a < 5; ++a) {
    for (int b = 0; b < 5; ++b) {
      planes.push_back(
          {FiniteField::Element(0), FiniteField::Element(a), FiniteField::Element(b)});
      if (a != 0) {
        planes.push_back(
            {FiniteField::Element(a), FiniteField::Element(0), FiniteField::Element(b)});
      }
    }
  }
  CHECK(noether_fiber_audit(planes, f5, 1, 100, 2, "planes").verdict == Verdict::kHolds);
}

TEST_CASE("locus enumeration respects the point cap") {
  Caps tight;
  tight.locus_points = 3;
  auto f3 = FiniteField::prime(3);
  CHECK_THROWS_AS(singular_locus_count(diagonal_form(f3, 2, 3), tight), CapExceeded);
}
