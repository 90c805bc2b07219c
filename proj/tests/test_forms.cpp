#include <doctest.h>

#include <vector>

#include "ranklab/generators.hpp"
#include "ranklab/polarize.hpp"

using namespace ranklab;

namespace {

// Independent oracle: the alternating sum over subset sums,
// T(x_1..x_d) = sum_{S != empty} (-1)^(d-|S|) Q(sum_{i in S} x_i).
Rat difference_oracle(const HomogeneousForm<RationalField>& q,
                      const std::vector<std::vector<Rat>>& xs) {
  const int d = q.degree();
  const int n = q.variables();
  Rat total = 0;
  for (unsigned mask = 1; mask < (1u << d); ++mask) {
    std::vector<Rat> sum(n, Rat(0));
    int bits = 0;
    for (int i = 0; i < d; ++i) {
      if (mask >> i & 1u) {
        ++bits;
        for (int v = 0; v < n; ++v) sum[v] += xs[static_cast<std::size_t>(i)][v];
      }
    }
    const Rat term = q.eval(sum);
    if ((d - bits) % 2) {
      total -= term;
    } else {
      total += term;
    }
  }
  return total;
}

std::vector<Rat> random_point(int n, Rng& rng) {
  std::vector<Rat> x(static_cast<std::size_t>(n));
  for (auto& v : x) v = Rat(random_bounded_int(rng, 5));
  return x;
}

}  // namespace

TEST_CASE("multilinear entries, evaluation, and flat indexing agree") {
  auto f3 = FiniteField::prime(3);
  auto t = diagonal_form(f3, 2, 3);
  CHECK(t.entry({0, 0, 0}) == 1);
  CHECK(t.entry({0, 1, 0}) == 0);
  CHECK(t.entry_flat(t.flat_index({1, 1, 1})) == 1);
  std::vector<FiniteField::Element> x = {1, 2};
  CHECK(t.eval({x, x, x}) == f3.add(1, f3.mul(2, f3.mul(2, 2))));

  Rng rng(5);
  auto m = random_form(f3, {2, 3, 2}, rng);
  CHECK(m.size() == 12);
  // Evaluation is linear in each slot.
  std::vector<FiniteField::Element> a = {1, 2, 0}, b = {2, 2, 1}, u = {1, 0}, w = {0, 2};
  std::vector<FiniteField::Element> ab(3);
  for (int j = 0; j < 3; ++j) ab[static_cast<std::size_t>(j)] = f3.add(a[static_cast<std::size_t>(j)], b[static_cast<std::size_t>(j)]);
  CHECK(m.eval({u, ab, w}) == f3.add(m.eval({u, a, w}), m.eval({u, b, w})));
}

TEST_CASE("contraction, slices, and permutation are evaluation consistent") {
  auto f5 = FiniteField::prime(5);
  Rng rng(9);
  auto m = random_form(f5, {2, 2, 3}, rng);

  std::vector<FiniteField::Element> x0 = {3, 1}, x1 = {2, 4}, x2 = {0, 1, 2};
  auto c = m.contract_first(x0);
  CHECK(c.eval({x1, x2}) == m.eval({x0, x1, x2}));

  auto slice = m.slice_last({x0, x1});
  FiniteField::Element acc = f5.zero();
  for (int j = 0; j < 3; ++j) acc = f5.add(acc, f5.mul(slice[static_cast<std::size_t>(j)], x2[static_cast<std::size_t>(j)]));
  CHECK(acc == m.eval({x0, x1, x2}));

  // perm[i] names the result slot fed by original slot i
  auto perm = m.permuted({2, 0, 1});
  CHECK(perm.eval({x1, x2, x0}) == m.eval({x0, x1, x2}));
}

TEST_CASE("composition with linear maps matches pushforward evaluation") {
  auto f3 = FiniteField::prime(3);
  Rng rng(11);
  auto m = random_form(f3, {2, 2}, rng);
  LinearMapTuple<FiniteField> maps;
  maps.maps.push_back(random_invertible(f3, 2, rng));
  maps.maps.push_back(random_invertible(f3, 2, rng));
  auto comp = m.compose(maps);
  for (int a = 0; a < 9; ++a) {
    std::vector<FiniteField::Element> x = {f3.from_int(a % 3), f3.from_int(a / 3)};
    for (int b = 0; b < 9; ++b) {
      std::vector<FiniteField::Element> y = {f3.from_int(b % 3), f3.from_int(b / 3)};
      CHECK(comp.eval({x, y}) == m.eval({maps.maps[0].apply(x), maps.maps[1].apply(y)}));
    }
  }
}

TEST_CASE("direct sums and collections combine blockwise") {
  auto f3 = FiniteField::prime(3);
  auto ds = direct_sum(diagonal_form(f3, 1, 2), diagonal_form(f3, 1, 2));
  CHECK(ds == diagonal_form(f3, 2, 2));

  auto coll = diagonal_collection(f3, 2, 1, 2);
  CHECK(coll.size() == 2);
  auto comb = coll.combine({1, 2});
  CHECK(comb.entry({0, 0}) == 1);
  CHECK(comb.entry({1, 1}) == 2);
  CHECK(comb.entry({0, 1}) == 0);
  CHECK_THROWS_AS(coll.combine({1}), std::invalid_argument);
}

TEST_CASE("homogeneous term arithmetic merges and drops zeros") {
  IntegerRing z;
  HomogeneousForm<IntegerRing> q(z, 2, 3);
  q.add_term({2, 1}, Int(2));
  q.add_term({2, 1}, Int(-2));
  q.add_term({0, 3}, Int(5));
  CHECK(q.terms().size() == 1);
  CHECK(q.eval({Int(1), Int(2)}) == 40);
  CHECK_THROWS_AS(q.add_term({1, 1}, Int(1)), std::invalid_argument);
}

TEST_CASE("polarization of a monomial spreads factorial weights symmetrically") {
  IntegerRing z;
  HomogeneousForm<IntegerRing> q(z, 2, 3);
  q.add_term({2, 1}, Int(1));
  auto pol = polarize(q);
  CHECK(pol.entry({0, 0, 1}) == 2);
  CHECK(pol.entry({0, 1, 0}) == 2);
  CHECK(pol.entry({1, 0, 0}) == 2);
  CHECK(pol.entry({0, 0, 0}) == 0);
  CHECK(is_symmetric(pol));
  CHECK(restrict_diagonal(pol) == q.scaled(Int(6)));
}

TEST_CASE("polarization equals the alternating difference oracle pointwise") {
  RationalField qf;
  Rng rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + static_cast<int>(uniform_below(rng, 3));
    const int d = 2 + static_cast<int>(uniform_below(rng, 2));
    auto q = random_homogeneous(qf, n, d, rng, 4);
    auto pol = polarize(q);
    CHECK(is_symmetric(pol));
    for (int pt = 0; pt < 5; ++pt) {
      std::vector<std::vector<Rat>> xs;
      for (int i = 0; i < d; ++i) xs.push_back(random_point(n, rng));
      CHECK(pol.eval(xs) == difference_oracle(q, xs));
    }
    // d! Q(x) = T(x,..,x) on the diagonal.
    auto x = random_point(n, rng);
    CHECK(pol.eval(std::vector<std::vector<Rat>>(static_cast<std::size_t>(d), x)) ==
          q.eval(x) * Rat(factorial(d)));
  }
}

TEST_CASE("polarization needs characteristic zero or above the degree") {
  auto f2 = FiniteField::prime(2);
  HomogeneousForm<FiniteField> q(f2, 2, 2);
  q.add_term({1, 1}, f2.one());
  CHECK_THROWS_AS(polarize(q), std::domain_error);
  auto f5 = FiniteField::prime(5);
  HomogeneousForm<FiniteField> c(f5, 2, 3);
  c.add_term({3, 0}, f5.one());
  auto pol = polarize(c);
  CHECK(restrict_diagonal(pol) == c.scaled(f5.from_int(6)));
}

TEST_CASE("flattening shapes follow the slot split") {
  IntegerRing z;
  HomogeneousForm<IntegerRing> q(z, 2, 3);
  q.add_term({2, 1}, Int(1));
  auto pol = polarize(q);
  auto m = pol.flatten({0});
  CHECK(m.rows() == 2);
  CHECK(m.cols() == 4);
}
