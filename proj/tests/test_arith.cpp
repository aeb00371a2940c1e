#include <gtest/gtest.h>

#include <cmath>
#include <cstdint>
#include <set>

#include "support.hpp"

using namespace spmul;
using spmul::testing::brute_irreducible;
using spmul::testing::trial_division_prime;

TEST(IsPrime, SmallValues) {
  EXPECT_FALSE(is_prime(Int(0)));
  EXPECT_FALSE(is_prime(Int(1)));
  EXPECT_TRUE(is_prime(Int(2)));
  EXPECT_TRUE(is_prime(Int(41)));
  EXPECT_FALSE(is_prime(Int(-7)));
}

TEST(IsPrime, MersenneAgainstTrialDivision) {
  const std::uint64_t m31 = (std::uint64_t{1} << 31) - 1;
  EXPECT_TRUE(trial_division_prime(m31));
  EXPECT_TRUE(is_prime(from_u64(m31)));
}

TEST(IsPrime, AgreesWithTrialDivisionBelow100000) {
  for (std::uint64_t n = 0; n < 100000; ++n) ASSERT_EQ(is_prime(from_u64(n)), trial_division_prime(n)) << n;
}

TEST(IsPrime, StrongPseudoprimesAreRejected) {
  // strong pseudoprimes to several small bases
  EXPECT_FALSE(is_prime(Int("3215031751")));
  EXPECT_FALSE(is_prime(Int("3825123056546413051")));
  EXPECT_FALSE(is_prime(Int("318665857834031151167461")));
  EXPECT_FALSE(is_prime(Int("3317044064679887385961981")));
  // Carmichael numbers
  EXPECT_FALSE(is_prime(Int(561)));
  EXPECT_FALSE(is_prime(Int(41041)));
}

TEST(IsPrime, LargePrimes) {
  EXPECT_TRUE(is_prime(Int("18446744073709551557")));  // largest prime below 2^64
  EXPECT_TRUE(is_prime((Int(1) << 127) - 1));
  EXPECT_FALSE(is_prime(((Int(1) << 127) - 1) * ((Int(1) << 61) - 1)));
  EXPECT_TRUE(is_prime(Int("4611686018427388039")));
}

TEST(RandomPrime, SmallLambdaEnumerations) {
  const std::set<long> allowed21{23, 29, 31, 37, 41};
  const std::set<long> allowed2{2, 3};
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    RandomSource rng(seed);
    EXPECT_TRUE(allowed21.count(random_prime(Int(21), 0.01, rng).get_si()));
    EXPECT_TRUE(allowed2.count(random_prime(Int(2), 0.01, rng).get_si()));
  }
}

TEST(RandomPrime, SmallLambdaReachesEveryPrime) {
  std::set<long> seen;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    RandomSource rng(seed);
    seen.insert(random_prime(Int(21), 0.01, rng).get_si());
  }
  EXPECT_EQ(seen, (std::set<long>{23, 29, 31, 37, 41}));
}

TEST(RandomPrime, DeterministicUnderSeed) {
  RandomSource a(77), b(77);
  EXPECT_EQ(random_prime(Int(100), 0.01, a), random_prime(Int(100), 0.01, b));
}

TEST(RandomPrime, TenThousandDrawsInRangeAndPrime) {
  RandomSource rng(5);
  for (int i = 0; i < 10000; ++i) {
    const Int lambda = rng.uniform_range(Int(2), Int(1) << 32);
    const Int p = random_prime(lambda, 0x1p-20, rng);
    ASSERT_GE(p, lambda);
    ASSERT_LE(p, 2 * lambda);
    ASSERT_TRUE(trial_division_prime(to_u64(p))) << p.get_str();
  }
}

TEST(RandomPrime, HugeLambda) {
  RandomSource rng(9);
  const Int lambda = Int(1) << 200;
  const Int p = random_prime(lambda, 0.01, rng);
  EXPECT_GE(p, lambda);
  EXPECT_LE(p, 2 * lambda);
  EXPECT_TRUE(is_prime(p));
}

TEST(RandomPrime, RejectsBadArguments) {
  RandomSource rng(1);
  EXPECT_THROW(random_prime(Int(1), 0.1, rng), DomainError);
  EXPECT_THROW(random_prime(Int(10), 0.0, rng), DomainError);
  EXPECT_THROW(random_prime(Int(10), 1.0, rng), DomainError);
}

TEST(FirstPrimes, Examples) {
  EXPECT_EQ(first_primes(4), (std::vector<std::uint64_t>{2, 3, 5, 7}));
  EXPECT_EQ(first_primes(1), (std::vector<std::uint64_t>{2}));
  const auto hundred = first_primes(100);
  ASSERT_EQ(hundred.size(), 100u);
  EXPECT_EQ(hundred.back(), 541u);
}

TEST(FirstPrimes, AgreesWithTrialDivisionUpTo10000) {
  std::vector<std::uint64_t> oracle;
  for (std::uint64_t n = 2; oracle.size() < 10000; ++n)
    if (trial_division_prime(n)) oracle.push_back(n);
  for (std::size_t n : {1u, 2u, 5u, 6u, 7u, 100u, 1000u, 9999u, 10000u}) {
    const auto got = first_primes(n);
    ASSERT_EQ(got, std::vector<std::uint64_t>(oracle.begin(), oracle.begin() + n)) << n;
  }
}

TEST(PrimeTable, GrowsIncrementally) {
  PrimeTable table;
  table.ensure(10);
  const auto ten = table.first(10);
  EXPECT_EQ(std::vector<std::uint64_t>(ten.begin(), ten.end()), first_primes(10));
  for (std::size_t count : {50u, 51u, 3000u, 200000u}) {
    table.ensure(count);
    ASSERT_GE(table.size(), count);
    const auto got = table.first(count);
    ASSERT_EQ(std::vector<std::uint64_t>(got.begin(), got.end()), first_primes(count)) << count;
  }
}

TEST(Lambda, NoCollisionExamples) {
  EXPECT_EQ(lambda_no_collision(1, 2, 0.5), 21);
  EXPECT_EQ(lambda_no_collision(10, std::exp(3.0), 0.5), 2000);
  EXPECT_EQ(lambda_no_collision(2, std::exp(1.0), 1.0 / 3.0), 40);
}

TEST(Lambda, NonzeroExamples) {
  EXPECT_EQ(lambda_nonzero(1, 2, 0.5), 21);
  EXPECT_EQ(lambda_nonzero(10, std::exp(3.0), 0.5), 200);
  EXPECT_EQ(lambda_nonzero(100, std::exp(1.0), 1.0 / 3.0), 1000);
}

TEST(Lambda, CoeffExamples) {
  EXPECT_EQ(lambda_coeff(1, 0.5), 21);
  EXPECT_EQ(lambda_coeff(std::exp(30.0), 0.5), 200);
  EXPECT_EQ(lambda_coeff(std::exp(3.0), 1.0 / 3.0), 30);
}

TEST(Lambda, MatchesDirectFormula) {
  RandomSource rng(3);
  for (int i = 0; i < 500; ++i) {
    const double t = 1 + static_cast<double>(rng.uniform_u64(100));
    const double d = 2 + static_cast<double>(rng.uniform_u64(1u << 30));
    const double eps = 0.001 + 0.99 * rng.uniform_real();
    const double k = 10.0 / (3.0 * eps);
    EXPECT_EQ(lambda_no_collision(t, d, eps), std::max(Int(21), ceil_to_int(k * t * t * std::log(d))));
    EXPECT_EQ(lambda_nonzero(t, d, eps), std::max(Int(21), ceil_to_int(k * t * std::log(d))));
    EXPECT_EQ(lambda_coeff(d, eps), std::max(Int(21), ceil_to_int(k * std::log(d))));
  }
}

TEST(Lambda, Monotone) {
  const double epss[] = {0.9, 0.5, 0.1, 0.01, 0.001};
  for (double t = 1; t <= 64; t *= 2)
    for (double d = 2; d < 1e12; d *= 17)
      for (std::size_t i = 0; i + 1 < std::size(epss); ++i) {
        const double e = epss[i], e2 = epss[i + 1];
        EXPECT_LE(lambda_no_collision(t, d, e), lambda_no_collision(2 * t, d, e));
        EXPECT_LE(lambda_no_collision(t, d, e), lambda_no_collision(t, 3 * d, e));
        EXPECT_LE(lambda_no_collision(t, d, e), lambda_no_collision(t, d, e2));
        EXPECT_LE(lambda_nonzero(t, d, e), lambda_nonzero(2 * t, d, e));
        EXPECT_LE(lambda_nonzero(t, d, e), lambda_nonzero(t, 3 * d, e));
        EXPECT_LE(lambda_nonzero(t, d, e), lambda_nonzero(t, d, e2));
        EXPECT_LE(lambda_coeff(d, e), lambda_coeff(3 * d, e));
        EXPECT_LE(lambda_coeff(d, e), lambda_coeff(d, e2));
      }
}

TEST(IrreduciblePoly, QuadraticOverF2IsUnique) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    RandomSource rng(seed);
    EXPECT_EQ(irreducible_poly(Int(2), 2, 0.01, rng), (std::vector<Int>{1, 1, 1}));
  }
}

TEST(IrreduciblePoly, LinearOverF3) {
  RandomSource rng(4);
  const auto f = irreducible_poly(Int(3), 1, 0.01, rng);
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f[1], 1);
  EXPECT_GE(f[0], 0);
  EXPECT_LT(f[0], 3);
}

TEST(IrreduciblePoly, AgreesWithBruteForce) {
  RandomSource rng(8);
  for (unsigned q : {2u, 3u, 5u, 7u})
    for (unsigned s = 2; s <= 6; ++s) {
      if (q == 7 && s > 4) continue;
      for (int rep = 0; rep < 5; ++rep) {
        const auto f = irreducible_poly(Int(q), s, 0.01, rng);
        ASSERT_EQ(f.size(), s + 1);
        EXPECT_EQ(f[s], 1);
        EXPECT_TRUE(brute_irreducible(f, q)) << "q=" << q << " s=" << s;
      }
    }
}

TEST(IrreduciblePoly, NoRootsWhenDegreeAtLeastTwo) {
  RandomSource rng(12);
  for (unsigned q : {2u, 3u, 5u, 11u, 101u})
    for (unsigned s = 2; s <= 5; ++s) {
      const auto f = irreducible_poly(Int(q), s, 0.01, rng);
      for (unsigned x = 0; x < q; ++x) {
        Int v = 0;
        for (std::size_t i = f.size(); i-- > 0;) v = mod_floor(v * x + f[i], Int(q));
        EXPECT_NE(v, 0) << "root " << x << " mod " << q;
      }
    }
}

TEST(IrreducibilityTest, ExhaustiveSmallDegrees) {
  for (unsigned q : {2u, 3u, 5u})
    for (unsigned s = 1; s <= 4; ++s)
      for (const auto& f : spmul::testing::monic_polys(q, s))
        ASSERT_EQ(detail::is_irreducible(f, Int(q)), brute_irreducible(f, q));
}

TEST(IrreduciblePoly, CanonicalChoice) {
  EXPECT_EQ(canonical_irreducible(Int(2), 2), (std::vector<Int>{1, 1, 1}));
  EXPECT_EQ(canonical_irreducible(Int(3), 2), (std::vector<Int>{1, 0, 1}));
  EXPECT_TRUE(brute_irreducible(canonical_irreducible(Int(5), 3), 5));
}
