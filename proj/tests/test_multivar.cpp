#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"

using namespace spmul;
using namespace spmul::testing;

namespace {

const RingSpec kZ = RingSpec::integers();

MultiPoly multi(const RingSpec& ring, std::size_t n, std::initializer_list<std::pair<std::vector<long>, long>> terms) {
  std::vector<MultiTerm> out;
  for (const auto& [e, c] : terms) {
    std::vector<Int> exps;
    for (long x : e) exps.push_back(Int(x));
    out.push_back({exps, ring.from_int(Int(c))});
  }
  return canonicalize(std::move(out), ring, n);
}

const MultiPoly kXPlusY = multi(kZ, 2, {{{1, 0}, 1}, {{0, 1}, 1}});

}  // namespace

TEST(MultiPoly, CanonicalOrder) {
  const MultiPoly f = multi(kZ, 2, {{{0, 1}, 1}, {{1, 0}, 1}, {{0, 1}, 2}, {{2, 2}, 0}});
  ASSERT_EQ(f.sparsity(), 2u);
  EXPECT_EQ(f.terms()[0].exps, (std::vector<Int>{0, 1}));
  EXPECT_EQ(f.terms()[0].coeff, Elem(Int(3)));
  EXPECT_EQ(f.partial_degree(0), 1);
  EXPECT_EQ(f.total_degree(), 1);
  EXPECT_THROW(multi(kZ, 2, {{{1}, 1}}), DomainError);
}

TEST(Kronecker, Examples) {
  EXPECT_EQ(kronecker(kXPlusY, Int(3)), poly_z({{1, 1}, {3, 1}}));
  EXPECT_EQ(kronecker(multi(kZ, 2, {{{2, 1}, 1}}), Int(3)), poly_z({{5, 1}}));
  EXPECT_THROW(kronecker(multi(kZ, 2, {{{3, 0}, 1}}), Int(3)), DomainError);
  EXPECT_THROW(inverse_kronecker(poly_z({{9, 1}}), Int(3), 2), DomainError);
  EXPECT_EQ(inverse_kronecker(poly_z({{5, 1}}), Int(3), 2), multi(kZ, 2, {{{2, 1}, 1}}));
}

TEST(Kronecker, RoundTrip) {
  RandomSource rng(1);
  for (int i = 0; i < 500; ++i) {
    const std::size_t n = 1 + rng.uniform_u64(5);
    const Int d = 1 + rng.uniform(Int(1000));
    const MultiPoly f = random_multi(kZ, rng, n, 20, d - 1);
    const SparsePoly k = kronecker(f, d);
    ASSERT_EQ(k.sparsity(), f.sparsity());
    ASSERT_EQ(k.height(), f.height());
    ASSERT_EQ(inverse_kronecker(k, d, n), f);
  }
}

TEST(RandomizedKronecker, Examples) {
  EXPECT_EQ(randomized_kronecker(kXPlusY, {{Int(2), Int(3)}}), poly_z({{2, 1}, {3, 1}}));
  EXPECT_EQ(randomized_kronecker(kXPlusY, {{Int(2), Int(2)}}), poly_z({{2, 2}}));
  EXPECT_THROW(randomized_kronecker(kXPlusY, {{Int(1)}}), DomainError);
  RandomSource rng(2);
  for (int i = 0; i < 50; ++i) {
    const MultiPoly f = random_multi(kZ, rng, 3, 10, 6);
    EXPECT_EQ(randomized_kronecker(f, {{Int(1), Int(7), Int(49)}}), kronecker(f, Int(7)));
  }
}

TEST(RandomizedKronecker, CollisionBound) {
  RandomSource rng(3);
  double total_mean = 0, total_bound = 0;
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 2 + rng.uniform_u64(3);
    const MultiPoly h = random_multi(kZ, rng, n, 20, 1000);
    const std::size_t t = h.sparsity();
    if (t < 2) continue;
    const Int big_n(static_cast<unsigned long>(4 * t * (t - 1)));
    double collided = 0;
    for (int k = 0; k < 100; ++k) {
      SubstitutionVector sv;
      for (std::size_t j = 0; j < n; ++j) sv.s.push_back(rng.uniform(big_n));
      collided += static_cast<double>(t - randomized_kronecker(h, sv).sparsity());
    }
    const double mean = collided / 100.0;
    const double bound = static_cast<double>(t * (t - 1)) / to_double(big_n) * 1.5;
    EXPECT_LE(mean, bound) << "T=" << t;
    total_mean += mean;
    total_bound += bound;
  }
  EXPECT_LE(total_mean, total_bound);
}

TEST(MultivarProductZ, Examples) {
  RandomSource rng(4);
  const MultiPoly x_minus_y = multi(kZ, 2, {{{1, 0}, 1}, {{0, 1}, -1}});
  EXPECT_EQ(multivar_product_z(kXPlusY, x_minus_y, 0.01, rng), multi(kZ, 2, {{{2, 0}, 1}, {{0, 2}, -1}}));
  const MultiPoly uni = multivar_product_z(to_multi(example_f()), to_multi(example_g()), 0.01, rng);
  EXPECT_EQ(to_univariate(uni), example_fg());
  EXPECT_TRUE(multivar_product_z(kXPlusY, MultiPoly(kZ, 2), 0.01, rng).is_zero());
  EXPECT_THROW(multivar_product_z(kXPlusY, to_multi(example_f()), 0.01, rng), DomainError);
}

TEST(MultivarProductZ, RandomTrivariate) {
  RandomSource rng(5);
  for (int i = 0; i < 200; ++i) {
    const MultiPoly f = random_multi(kZ, rng, 3, 12, 30, Int(1) << 20);
    const MultiPoly g = random_multi(kZ, rng, 3, 12, 30, Int(1) << 20);
    ASSERT_EQ(multivar_product_z(f, g, 0.001, rng), map_product(f, g));
  }
}

TEST(NaiveMulMulti, AgreesWithMapOracle) {
  RandomSource rng(6);
  const RingSpec f9 = RingSpec::ext_field(Int(3), {1, 0, 1});
  for (int i = 0; i < 100; ++i) {
    const MultiPoly f = random_multi(f9, rng, 2, 10, 5);
    const MultiPoly g = random_multi(f9, rng, 2, 10, 5);
    ASSERT_EQ(naive_mul(f, g), map_product(f, g));
  }
}

TEST(SparsityEstimate, SquareOfBinomial) {
  int in_range = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    RandomSource rng(seed);
    const std::size_t t = sparsity_estimate(kXPlusY, kXPlusY, 0.05, 2.0, rng);
    EXPECT_LE(t, 6u);
    in_range += t >= 3 && t <= 6;
  }
  EXPECT_GE(in_range, 95);
}

TEST(SparsityEstimate, SingleTerms) {
  RandomSource rng(7);
  const MultiPoly a = multi(kZ, 2, {{{3, 1}, 5}});
  const MultiPoly b = multi(kZ, 2, {{{0, 4}, -2}});
  EXPECT_EQ(sparsity_estimate(a, b, 0.05, 2.0, rng), 2u);
  EXPECT_EQ(sparsity_estimate(a, b, 0.05, 2.5, rng), 3u);
  EXPECT_EQ(sparsity_estimate(a, MultiPoly(kZ, 2), 0.05, 2.0, rng), 0u);
}

TEST(SparsityEstimate, UnivariateBrackets) {
  RandomSource rng(8);
  int covered = 0;
  for (int i = 0; i < 50; ++i) {
    const SparsePoly f = random_poly(kZ, rng, {8, 60, 3});
    const SparsePoly g = random_poly(kZ, rng, {8, 60, 3});
    const std::size_t exact = naive_mul(f, g).sparsity();
    const std::size_t t = sparsity_estimate(to_multi(f), to_multi(g), 0.05, 2.0, rng);
    EXPECT_LE(t, 2 * exact);
    covered += t >= exact;
  }
  EXPECT_GE(covered, 45);
}

TEST(SparsityEstimate, Errors) {
  RandomSource rng(9);
  EXPECT_THROW(sparsity_estimate(kXPlusY, kXPlusY, 0.05, 1.0, rng), DomainError);
  EXPECT_THROW(sparsity_estimate(kXPlusY, kXPlusY, 0.0, 2.0, rng), DomainError);
  const RingSpec f101 = RingSpec::prime_field(Int(101));
  const MultiPoly big = multi(f101, 2, {{{20, 0}, 1}, {{0, 1}, 1}});
  EXPECT_THROW(sparsity_estimate(big, big, 0.05, 2.0, rng), DomainError);
}

TEST(SmallChar, BinomialSquareOverF2) {
  const RingSpec f2 = RingSpec::prime_field(Int(2));
  RandomSource rng(10);
  const MultiPoly x1 = multi(f2, 1, {{{1}, 1}, {{0}, 1}});
  EXPECT_EQ(multivar_product_smallchar(x1, x1, 0.01, rng), multi(f2, 1, {{{2}, 1}, {{0}, 1}}));
}

TEST(SmallChar, PrimeFieldMatchesReducedIntegerProduct) {
  const RingSpec f101 = RingSpec::prime_field(Int(101));
  RandomSource rng(11);
  for (int i = 0; i < 30; ++i) {
    const MultiPoly f = random_multi(f101, rng, 2, 8, 500);
    const MultiPoly g = random_multi(f101, rng, 2, 8, 500);
    ASSERT_EQ(multivar_product_smallchar(f, g, 0.01, rng), map_product(f, g));
  }
}

TEST(SmallChar, RandomF9Bivariate) {
  const RingSpec f9 = RingSpec::ext_field(Int(3), canonical_irreducible(Int(3), 2));
  RandomSource rng(12);
  for (int i = 0; i < 100; ++i) {
    const MultiPoly f = random_multi(f9, rng, 2, 10, 20);
    const MultiPoly g = random_multi(f9, rng, 2, 10, 20);
    ASSERT_EQ(multivar_product_smallchar(f, g, 0.01, rng), map_product(f, g));
  }
}

TEST(SmallChar, LargerExtensions) {
  RandomSource rng(13);
  const RingSpec rings[] = {RingSpec::ext_field(Int(2), canonical_irreducible(Int(2), 8)),
                            RingSpec::ext_field(Int(7), canonical_irreducible(Int(7), 3))};
  for (const auto& ring : rings)
    for (int i = 0; i < 20; ++i) {
      const MultiPoly f = random_multi(ring, rng, 3, 8, 10);
      const MultiPoly g = random_multi(ring, rng, 3, 8, 10);
      ASSERT_EQ(multivar_product_smallchar(f, g, 0.01, rng), map_product(f, g));
    }
}

TEST(MultivarProduct, DispatchesByRing) {
  RandomSource rng(14);
  const RingSpec rings[] = {kZ, RingSpec::prime_field(Int("4611686018427388039")), RingSpec::prime_field(Int(2)),
                            RingSpec::ext_field(Int(3), {1, 0, 1})};
  for (const auto& ring : rings)
    for (int i = 0; i < 20; ++i) {
      const MultiPoly f = random_multi(ring, rng, 2, 8, 40);
      const MultiPoly g = random_multi(ring, rng, 2, 8, 40);
      ASSERT_EQ(multivar_product(f, g, 0.001, rng), map_product(f, g)) << ring.describe();
    }
}

TEST(VerifyMulti, TrueAndFalseTriples) {
  RandomSource rng(15);
  for (int i = 0; i < 50; ++i) {
    const MultiPoly f = random_multi(kZ, rng, 3, 8, 20);
    const MultiPoly g = random_multi(kZ, rng, 3, 8, 20);
    const MultiPoly h = map_product(f, g);
    EXPECT_TRUE(verify_multi(f, g, h, 0.01, rng));
    std::vector<MultiTerm> bad = h.terms();
    bad.front().coeff = kZ.add(bad.front().coeff, kZ.one());
    EXPECT_FALSE(verify_multi(f, g, canonicalize(bad, kZ, 3), 0.01, rng));
  }
}
