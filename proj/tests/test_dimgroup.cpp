#include "doctest.h"
#include "oracles.hpp"

#include "kclass/continued_fraction.hpp"
#include "kclass/dimension_group.hpp"
#include "kclass/error.hpp"
#include "kclass/substitution.hpp"

#include <random>

using namespace kclass;

namespace {

QuadraticIrrational q(long a, long b, long d, long c) { return QuadraticIrrational(a, b, d, c); }

IntVector iv(std::initializer_list<long> xs) {
  IntVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

const IntMatrix kFib{{1, 1}, {1, 0}};
const IntMatrix kScaled5332{{5, 3}, {3, 2}};

}  // namespace

TEST_CASE("quadratic irrationals are canonical") {
  CHECK(q(2, 2, 8, 4) == q(1, 2, 2, 2));  // (2 + 2 sqrt 8)/4 = (1 + 2 sqrt 2)/2
  CHECK(q(1, 1, 5, -2) == q(-1, -1, 5, 2));
  CHECK(q(0, 1, 12, 1) == q(0, 2, 3, 1));
  CHECK_THROWS_AS(q(1, 1, 9, 2), InvalidInput);
  CHECK_THROWS_AS(q(1, 0, 5, 2), InvalidInput);
  CHECK_THROWS_AS(q(1, 1, 5, 0), InvalidInput);
}

TEST_CASE("quadratic irrational literals") {
  CHECK(QuadraticIrrational::parse("(-1+1*sqrt(5))/2") == q(-1, 1, 5, 2));
  CHECK(QuadraticIrrational::parse("( 3 - 1 * sqrt(5) ) / 2") == q(3, -1, 5, 2));
  CHECK(QuadraticIrrational::parse("(-1+1*sqrt(2))") == q(-1, 1, 2, 1));
  CHECK(QuadraticIrrational::parse(q(3, -1, 5, 2).to_string()) == q(3, -1, 5, 2));
  CHECK_THROWS_AS(QuadraticIrrational::parse("sqrt(5)"), ParseError);
  CHECK_THROWS_AS(QuadraticIrrational::parse("(1+1*sqrt(4))/2"), ParseError);
}

TEST_CASE("signs and floors are exact") {
  CHECK(q(-1, 1, 2, 1).sign() == 1);
  CHECK(q(-2, 1, 5, 1).sign() == 1);
  CHECK(q(3, -1, 10, 1).sign() == -1);
  CHECK(q(-1, 1, 5, 2).floor() == 0);
  CHECK(q(-3, 1, 5, 1).floor() == -1);
  CHECK(q(7, -3, 5, 1).floor() == 0);  // 7 - 3 sqrt 5 = 0.29...
  std::mt19937_64 rng(8);
  for (int t = 0; t < 200; ++t) {
    const long a = static_cast<long>(rng() % 41) - 20, b = static_cast<long>(rng() % 9) - 4;
    const long c = static_cast<long>(rng() % 9) + 1;
    const long ds[] = {2, 3, 5, 7, 13, 19};
    const long d = ds[rng() % 6];
    if (b == 0) continue;
    const QuadraticIrrational x(a, b, d, c);
    const auto f = oracle::cf_by_float(a, b, d, c, 1);
    CHECK(x.floor() == f[0]);
  }
}

TEST_CASE("cf_expansion worked examples") {
  CHECK(cf_expansion(q(-1, 1, 2, 1)) == ContinuedFraction{iv({0}), iv({2})});
  CHECK(cf_expansion(q(-1, 1, 5, 2)) == ContinuedFraction{iv({0}), iv({1})});
  CHECK(cf_expansion(q(-2, 1, 5, 1)) == ContinuedFraction{iv({0}), iv({4})});
  CHECK(cf_expansion(q(3, -1, 5, 2)) == ContinuedFraction{iv({0, 2}), iv({1})});
  CHECK(cf_expansion(q(0, 1, 7, 1)) == ContinuedFraction{iv({2}), iv({1, 1, 1, 4})});
}

TEST_CASE("cf_expansion agrees with high-precision iteration and round-trips") {
  std::mt19937_64 rng(1234);
  int done = 0;
  while (done < 150) {
    const long d = 2 + static_cast<long>(rng() % 999);
    const long a = static_cast<long>(rng() % 61) - 30, b = static_cast<long>(rng() % 11) - 5;
    const long c = static_cast<long>(rng() % 15) + 1;
    if (b == 0 || oracle::is_square_long(d)) continue;
    const QuadraticIrrational x(a, b, d, c);
    const ContinuedFraction cf = cf_expansion(x);
    REQUIRE_FALSE(cf.period.empty());
    CHECK(cf_value(cf) == x);
    // unfold and compare with the float oracle
    std::vector<long> unfolded;
    for (const auto& t : cf.preperiod) unfolded.push_back(t.get_si());
    while (unfolded.size() < 25)
      for (const auto& t : cf.period) unfolded.push_back(t.get_si());
    unfolded.resize(25);
    CHECK(unfolded == oracle::cf_by_float(a, b, d, c, 25));
    ++done;
  }
}

TEST_CASE("sturmian_equivalent worked examples") {
  const auto golden = q(-1, 1, 5, 2);
  CHECK(sturmian_equivalent(golden, q(3, -1, 5, 2)));
  CHECK_FALSE(sturmian_equivalent(golden, q(-2, 1, 5, 1)));
  CHECK(sturmian_equivalent(golden, golden));
  const auto w = mobius_equivalence(golden, q(3, -1, 5, 2));
  REQUIRE(w);
  CHECK(golden.mobius(*w) == q(3, -1, 5, 2));
  CHECK(abs(w->determinant()) == 1);
}

TEST_CASE("sturmian_equivalent agrees with the bounded Mobius oracle") {
  std::mt19937_64 rng(777);
  const long ds[] = {2, 3, 5, 7, 13};
  int agree = 0, total = 0, positives = 0;
  while (total < 40) {
    const long d = ds[rng() % 5];
    auto draw = [&] {
      for (;;) {
        const long b = static_cast<long>(rng() % 3) + 1, c = static_cast<long>(rng() % 6) + 1;
        const long a = static_cast<long>(rng() % 13) - 6;
        const QuadraticIrrational x(a, b * (rng() % 2 ? 1 : -1), d, c);
        if (x.to_double() > 0 && x.to_double() < 1) return x;
      }
    };
    const QuadraticIrrational x = draw();
    // half of the pairs are equivalent by construction
    QuadraticIrrational y = draw();
    if (total % 2 == 0) {
      for (;;) {
        IntMatrix m{{static_cast<long>(rng() % 5) - 2, static_cast<long>(rng() % 5) - 2},
                    {static_cast<long>(rng() % 5) - 2, static_cast<long>(rng() % 5) - 2}};
        if (abs(m.determinant()) != 1) continue;
        y = x.mobius(m);
        if (y.to_double() > 0 && y.to_double() < 1) break;
      }
    }
    const oracle::Surd sx = oracle::make_surd(x.a(), x.b(), x.c());
    const oracle::Surd sy = oracle::make_surd(y.a(), y.b(), y.c());
    const bool expected = x.d() == y.d() && oracle::mobius_bruteforce(sx, sy, x.d(), 50);
    const bool got = sturmian_equivalent(x, y);
    if (expected == got) ++agree;
    else MESSAGE("disagreement on " << x.to_string() << " vs " << y.to_string());
    positives += expected;
    ++total;
  }
  CHECK(agree == total);
  CHECK(positives >= 10);
}

TEST_CASE("stabilizer generator fixes the number") {
  for (const auto& x : {q(-1, 1, 5, 2), q(0, 1, 7, 1), q(3, -2, 13, 5)}) {
    const IntMatrix w = stabilizer_generator(x);
    CHECK(x.mobius(w) == x);
    CHECK(w != IntMatrix::identity(2));
  }
}

TEST_CASE("dg_equal") {
  const StationaryDimensionGroup fib(kFib);
  const IntVector v = iv({2, -1});
  CHECK(dg_equal({0, v}, {1, kFib * v}, fib));
  CHECK_FALSE(dg_equal({0, iv({1, 0})}, {0, iv({0, 1})}, fib));
  CHECK(dg_equal({0, iv({0, 0})}, {5, iv({0, 0})}, fib));
  const StationaryDimensionGroup singular(IntMatrix{{1, 1}, {1, 1}});
  CHECK(dg_equal({0, iv({1, -1})}, {0, iv({0, 0})}, singular));
  CHECK(dg_equal({0, iv({1, 0})}, {0, iv({0, 1})}, singular));
  CHECK(dg_equal({2, iv({3, 0})}, {1, iv({0, 3})}, singular) == false);
  CHECK(dg_equal({2, iv({2, 0})}, {1, iv({0, 1})}, singular));
}

TEST_CASE("dg_equal is an equivalence relation") {
  std::mt19937_64 rng(55);
  const std::vector<IntMatrix> mats{kFib, kScaled5332, IntMatrix{{2, 2}, {1, 1}}, IntMatrix{{1, 1, 0}, {0, 0, 1}, {1, 0, 0}}};
  for (const auto& m : mats) {
    const StationaryDimensionGroup g(m);
    auto rand_el = [&] {
      IntVector v(m.rows());
      for (auto& x : v) x = static_cast<long>(rng() % 7) - 3;
      return DGElement{static_cast<std::size_t>(rng() % 3), v};
    };
    for (int t = 0; t < 25; ++t) {
      const DGElement x = rand_el();
      DGElement y{x.stage + 1, m * x.vector};
      const DGElement z{y.stage + 1, m * y.vector};
      const DGElement w = rand_el();
      CHECK(dg_equal(x, x, g));
      CHECK(dg_equal(x, y, g) == dg_equal(y, x, g));
      CHECK(dg_equal(x, w, g) == dg_equal(w, x, g));
      CHECK((dg_equal(x, y, g) && dg_equal(y, z, g)) <= dg_equal(x, z, g));
      CHECK((dg_equal(x, w, g) && dg_equal(w, z, g)) <= dg_equal(x, z, g));
    }
  }
}

TEST_CASE("dg_minimal_stage") {
  const StationaryDimensionGroup fib(kFib);
  const DGElement x{3, kFib.pow(3) * iv({1, 2})};
  const DGElement m = dg_minimal_stage(x, fib);
  CHECK(m.stage == 0);
  CHECK(dg_equal(m, x, fib));
  const StationaryDimensionGroup two(IntMatrix{{2}});
  CHECK(dg_minimal_stage({4, iv({8})}, two).stage == 1);
}

TEST_CASE("dg_positive") {
  const StationaryDimensionGroup fib(kFib);
  CHECK(dg_positive({0, iv({1, -1})}, fib) == Positivity::positive);
  CHECK(dg_positive({0, iv({-1, 1})}, fib) == Positivity::negative);
  CHECK(dg_positive({0, iv({0, 0})}, fib) == Positivity::zero);
  const StationaryDimensionGroup ones(IntMatrix{{1, 1}, {1, 1}});
  CHECK(dg_positive({0, iv({1, -1})}, ones) == Positivity::zero);
  const StationaryDimensionGroup rational(IntMatrix{{2, 1}, {1, 2}});
  CHECK(dg_positive({0, iv({1, -1})}, rational) == Positivity::infinitesimal);
  CHECK_THROWS_AS(dg_positive({0, iv({1, 0})}, StationaryDimensionGroup(IntMatrix{{1, 1}, {0, 1}})),
                  InvalidInput);
  const StationaryDimensionGroup three(IntMatrix{{1, 1, 0}, {0, 0, 1}, {1, 0, 0}});
  CHECK(dg_positive({0, iv({1, 0, 0})}, three) == Positivity::positive);
  CHECK(dg_positive({0, iv({1, -1, 0})}, three, 0) == Positivity::unknown);
}

TEST_CASE("dg_positive in rank two matches long iteration") {
  std::mt19937_64 rng(99);
  const std::vector<IntMatrix> mats{kFib, kScaled5332, IntMatrix{{5, 3}, {3, 3}}, IntMatrix{{1, 2}, {3, 1}},
                                    IntMatrix{{0, 1}, {1, 1}}};
  for (const auto& m : mats) {
    const StationaryDimensionGroup g(m);
    int positives = 0;
    for (int t = 0; t < 40; ++t) {
      const IntVector v = iv({static_cast<long>(rng() % 41) - 20, static_cast<long>(rng() % 41) - 20});
      const Positivity p = dg_positive({0, v}, g);
      const Positivity n = dg_positive({0, -v}, g);
      if (p == Positivity::zero) {
        CHECK(n == Positivity::zero);
        continue;
      }
      CHECK(((p == Positivity::positive && n == Positivity::negative) ||
             (p == Positivity::negative && n == Positivity::positive)));
      // oracle: A^k v becomes sign-definite for large k
      IntVector w = v;
      for (int k = 0; k < 60; ++k) w = m * w;
      const bool pos = w[0] > 0 && w[1] > 0, neg = w[0] < 0 && w[1] < 0;
      CHECK(pos == (p == Positivity::positive));
      CHECK(neg == (p == Positivity::negative));
      positives += p == Positivity::positive;
    }
    CHECK(positives > 0);
  }
}

TEST_CASE("positives are closed under addition") {
  std::mt19937_64 rng(2);
  const StationaryDimensionGroup g(kScaled5332);
  int pairs = 0;
  while (pairs < 50) {
    const IntVector x = iv({static_cast<long>(rng() % 21) - 10, static_cast<long>(rng() % 21) - 10});
    const IntVector y = iv({static_cast<long>(rng() % 21) - 10, static_cast<long>(rng() % 21) - 10});
    if (dg_positive({0, x}, g) != Positivity::positive || dg_positive({0, y}, g) != Positivity::positive)
      continue;
    CHECK(dg_positive({0, x + y}, g) == Positivity::positive);
    CHECK(dg_positive({1, kScaled5332 * x + y}, g) == Positivity::positive);
    ++pairs;
  }
}

TEST_CASE("rank-two order isomorphisms") {
  // [[2,1],[1,1]] = Fib^2, same slope as the Fibonacci matrix
  const auto m = rank2_order_isomorphism(kFib, IntMatrix{{2, 1}, {1, 1}});
  REQUIRE(m);
  CHECK(abs(m->determinant()) == 1);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 30; ++t) {
    const IntVector v = iv({static_cast<long>(rng() % 21) - 10, static_cast<long>(rng() % 21) - 10});
    CHECK(rank2_functional_sign(kFib, v) == rank2_functional_sign(IntMatrix{{2, 1}, {1, 1}}, *m * v));
  }
  const IntMatrix u = rank2_positive_automorphism(kScaled5332);
  CHECK(u != IntMatrix::identity(2));
  for (int t = 0; t < 30; ++t) {
    const IntVector v = iv({static_cast<long>(rng() % 21) - 10, static_cast<long>(rng() % 21) - 10});
    CHECK(rank2_functional_sign(kScaled5332, v) == rank2_functional_sign(kScaled5332, u * v));
  }
  CHECK_FALSE(rank2_order_isomorphism(kFib, IntMatrix{{1, 2}, {1, 1}}));  // sqrt 2 vs sqrt 5
  CHECK_THROWS_AS(rank2_order_isomorphism(kFib, IntMatrix{{5, 3}, {3, 3}}), Unsupported);
}

TEST_CASE("group obstructions") {
  CHECK_FALSE(dg_group_obstruction(kFib, kScaled5332));
  CHECK(dg_group_obstruction(kScaled5332, IntMatrix{{5, 3}, {3, 3}}));
  CHECK(dg_group_obstruction(IntMatrix{{2}}, IntMatrix{{3}}));
  CHECK_FALSE(dg_group_obstruction(IntMatrix{{2}}, IntMatrix{{4}}));
  CHECK(dg_group_obstruction(IntMatrix{{2}}, kFib));
}

TEST_CASE("scaled invariants") {
  const ScaledInvariant base{kScaled5332, {DGElement{0, iv({0, 0})}}};
  CHECK(compare_scaled_invariants(base, base).verdict == Verdict::isomorphic);
  const ScaledInvariant perturbed{IntMatrix{{5, 3}, {3, 3}}, {DGElement{0, iv({0, 0})}}};
  CHECK(compare_scaled_invariants(base, perturbed).verdict == Verdict::not_isomorphic);
  CHECK(compare_scaled_invariants(perturbed, base).verdict == Verdict::not_isomorphic);
  const ScaledInvariant two{kScaled5332, {DGElement{0, iv({0, 0})}, DGElement{0, iv({0, 0})}}};
  CHECK(compare_scaled_invariants(base, two).verdict == Verdict::not_isomorphic);

  SUBCASE("permuted scales") {
    // (1, (1, 0)) is (0, (0, 1)) since Fib (0, 1) = (1, 0)
    const ScaledInvariant a{kFib, {DGElement{0, iv({1, 0})}, DGElement{0, iv({0, 1})}}};
    const ScaledInvariant b{kFib, {DGElement{1, iv({1, 0})}, DGElement{0, iv({1, 0})}}};
    const auto v = compare_scaled_invariants(a, b);
    CHECK(v.verdict == Verdict::isomorphic);
    CHECK(v.permutation == std::vector<std::size_t>{1, 0});
  }
  SUBCASE("scale moved by a positive automorphism") {
    const IntMatrix u = rank2_positive_automorphism(kScaled5332);
    const IntVector x = iv({1, 2});
    const ScaledInvariant a{kScaled5332, {DGElement{0, x}}};
    const ScaledInvariant b{kScaled5332, {DGElement{0, u * (u * x)}}};
    const auto v = compare_scaled_invariants(a, b);
    REQUIRE(v.verdict == Verdict::isomorphic);
    CHECK(*v.order_isomorphism * x == u * (u * x));
    // -x is negative, so no order isomorphism reaches it
    const ScaledInvariant c{kScaled5332, {DGElement{0, -x}}};
    CHECK(compare_scaled_invariants(a, c, 50).verdict != Verdict::isomorphic);
  }
  SUBCASE("rank one") {
    const ScaledInvariant a{IntMatrix{{2, 2}, {1, 1}}, {DGElement{0, iv({1, 0})}}};
    const ScaledInvariant b{IntMatrix{{6}}, {DGElement{0, iv({5})}}};
    CHECK(compare_scaled_invariants(a, b).verdict == Verdict::not_isomorphic);  // Z[1/3] vs Z[1/6]
    // the state (1, 1) sends the scale to 1 in Z[1/3]; 9 and 1/3 are reachable, 4 is not
    const ScaledInvariant c{IntMatrix{{3}}, {DGElement{0, iv({9})}}};
    CHECK(compare_scaled_invariants(a, c).verdict == Verdict::isomorphic);
    CHECK(compare_scaled_invariants(a, ScaledInvariant{IntMatrix{{3}}, {DGElement{1, iv({1})}}})
              .verdict == Verdict::isomorphic);
    CHECK(compare_scaled_invariants(a, ScaledInvariant{IntMatrix{{3}}, {DGElement{0, iv({4})}}})
              .verdict == Verdict::not_isomorphic);
    const ScaledInvariant d{IntMatrix{{3}}, {DGElement{0, iv({-9})}}};
    CHECK(compare_scaled_invariants(a, d).verdict == Verdict::not_isomorphic);
  }
}

TEST_CASE("substitution invariants") {
  // alphabet of two letters, one ideal generator killed by A_tilde
  const SubstitutionInvariant i1{1, iv({1}), kScaled5332, IntMatrix{{5, 3, 0}, {3, 2, 0}, {1, 0, 0}}};
  const SubstitutionInvariant i2{1, iv({1}), kScaled5332, IntMatrix{{5, 3, 0}, {3, 2, 0}, {0, 1, 0}}};
  const ScaledInvariant s1 = scaled_triple(i1);
  CHECK(s1.matrix == kScaled5332);
  REQUIRE(s1.scale.size() == 1);
  CHECK(dg_is_zero(s1.scale[0], StationaryDimensionGroup(kScaled5332)));
  CHECK(dg_is_zero(q_scale(i1)[0], StationaryDimensionGroup(i1.a_tilde)));
  CHECK(compare_substitution_invariants(i1, i1).verdict == Verdict::isomorphic);
  CHECK(compare_substitution_invariants(i1, i2).verdict == Verdict::isomorphic);
  CHECK(compare_substitution_invariants(i2, i1).verdict == Verdict::isomorphic);

  const SubstitutionInvariant i3{2, iv({1, 1}), kScaled5332,
                                 IntMatrix{{5, 3, 0, 0}, {3, 2, 0, 0}, {1, 0, 0, 0}, {0, 1, 0, 0}}};
  CHECK(compare_substitution_invariants(i1, i3).verdict == Verdict::not_isomorphic);
  SubstitutionInvariant i4 = i1;
  i4.p = iv({2});
  CHECK(compare_substitution_invariants(i1, i4).verdict == Verdict::not_isomorphic);
  SubstitutionInvariant bad = i1;
  bad.a_tilde(0, 2) = 1;
  CHECK_THROWS_AS(validate_substitution(bad), InvalidInput);

  SUBCASE("nonvanishing scale, conjugate by a permutation") {
    const SubstitutionInvariant j1{2, iv({1, 2}), kFib,
                                   IntMatrix{{1, 1, 0, 0}, {1, 0, 0, 0}, {1, 0, 1, 0}, {0, 1, 0, 2}}};
    const SubstitutionInvariant j2{2, iv({2, 1}), kFib,
                                   IntMatrix{{1, 1, 0, 0}, {1, 0, 0, 0}, {0, 1, 2, 0}, {1, 0, 0, 1}}};
    const auto v = compare_substitution_invariants(j1, j2);
    CHECK(v.verdict == Verdict::isomorphic);
    CHECK(compare_substitution_invariants(j2, j1).verdict == Verdict::isomorphic);
  }
}
