#pragma once

// Primality, prime sampling, prime lists, irreducible polynomials and the
// parameter formulas that size the random primes used by the algorithms.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "spmul/bigint.hpp"
#include "spmul/detail/fq_poly.hpp"
#include "spmul/error.hpp"
#include "spmul/random.hpp"

namespace spmul {

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod_u64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, b, m);
    b = mulmod_u64(b, b, m);
    e >>= 1;
  }
  return r;
}

// One Miller-Rabin round; n odd > 2, n - 1 = d * 2^r.
inline bool mr_round_u64(std::uint64_t n, std::uint64_t d, unsigned r, std::uint64_t a) {
  a %= n;
  if (a == 0) return true;
  std::uint64_t x = powmod_u64(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned i = 1; i < r; ++i) {
    x = mulmod_u64(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

inline bool mr_round(const Int& n, const Int& d, unsigned long r, const Int& a) {
  Int x;
  const Int nm1 = n - 1;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == nm1) return true;
  for (unsigned long i = 1; i < r; ++i) {
    mpz_powm_ui(x.get_mpz_t(), x.get_mpz_t(), 2, n.get_mpz_t());
    if (x == nm1) return true;
  }
  return false;
}

inline constexpr std::array<unsigned, 12> kSmallPrimes{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

}  // namespace detail

/// Miller-Rabin rounds used above 2^64; error <= 4^-40 = 2^-80.
inline constexpr unsigned kMillerRabinRounds = 40;

/// Primality test with up to `rounds` random-base Miller-Rabin rounds above 2^64.
/// Bases come from a generator seeded by n itself, so the answer is a pure
/// function of (n, rounds).
inline bool is_probable_prime(const Int& n, unsigned rounds) {
  if (n < 2) return false;
  for (unsigned p : detail::kSmallPrimes) {
    if (n == p) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  if (fits_u64(n)) {
    // the first twelve primes are a deterministic witness set below 2^64
    const std::uint64_t m = to_u64(n);
    std::uint64_t d = m - 1;
    unsigned r = 0;
    while ((d & 1) == 0) {
      d >>= 1;
      ++r;
    }
    for (unsigned a : detail::kSmallPrimes)
      if (!detail::mr_round_u64(m, d, r, a)) return false;
    return true;
  }
  const Int nm1 = n - 1;
  const unsigned long r = mpz_scan1(nm1.get_mpz_t(), 0);
  Int d;
  mpz_fdiv_q_2exp(d.get_mpz_t(), nm1.get_mpz_t(), r);
  RandomSource bases(mod_u64(n, 0xffffffffffffffc5ULL));
  const Int span = n - 3;
  for (unsigned i = 0; i < rounds; ++i) {
    const Int a = bases.uniform(span) + 2;  // a in [2, n-2]
    if (!detail::mr_round(n, d, r, a)) return false;
  }
  return true;
}

/// True iff n is prime: exact below 2^64, error <= 2^-80 above.
inline bool is_prime(const Int& n) { return is_probable_prime(n, kMillerRabinRounds); }

/// A random integer in [lambda, 2*lambda] that is prime with probability
/// >= 1 - eps. Candidates are uniform over the odd numbers of the interval
/// (plus 2 when it lies inside), so the result is uniform over its primes.
inline Int random_prime(const Int& lambda, double eps, RandomSource& rng) {
  if (lambda < 2) throw DomainError("random_prime: lambda must be >= 2");
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("random_prime: eps must lie in (0,1)");
  const Int hi = 2 * lambda;
  const bool has_two = lambda <= 2;
  // odd numbers in [lambda, hi]
  Int first_odd = lambda;
  if (mpz_even_p(first_odd.get_mpz_t())) ++first_odd;
  const Int odd_count = (hi - first_odd) / 2 + 1;
  const Int count = odd_count + (has_two ? 1 : 0);

  // above 2^64 the error of each test must also fit in eps
  const unsigned rounds = std::max<unsigned>(
      kMillerRabinRounds, static_cast<unsigned>(std::ceil(std::log(1.0 / eps) / std::log(4.0))) + 1);
  const std::size_t budget = 64 * std::max<std::size_t>(1, bit_length(lambda - 1));
  for (std::size_t attempt = 0; attempt < budget; ++attempt) {
    Int k = rng.uniform(count);
    if (has_two) {
      if (k == 0) return Int(2);
      --k;
    }
    const Int candidate = first_odd + 2 * k;
    if (is_probable_prime(candidate, rounds)) return candidate;
  }
  throw RetryExhausted("random_prime: no prime found within the retry budget");
}

namespace detail {

// Marks primes of [lo, hi) in `out` using the base primes up to sqrt(hi).
inline void sieve_segment(std::uint64_t lo, std::uint64_t hi,
                          const std::vector<std::uint64_t>& base,
                          std::vector<std::uint64_t>& out) {
  if (hi <= lo) return;
  std::vector<char> composite(hi - lo, 0);
  for (std::uint64_t p : base) {
    if (p * p >= hi) break;
    std::uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
    for (std::uint64_t m = start; m < hi; m += p) composite[m - lo] = 1;
  }
  for (std::uint64_t v = std::max<std::uint64_t>(lo, 2); v < hi; ++v)
    if (!composite[v - lo]) out.push_back(v);
}

inline std::vector<std::uint64_t> primes_below(std::uint64_t bound) {
  std::vector<std::uint64_t> small;
  const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(bound))) + 2;
  // trial-divide the base primes; root is tiny
  for (std::uint64_t v = 2; v < root; ++v) {
    bool prime = true;
    for (std::uint64_t p : small) {
      if (p * p > v) break;
      if (v % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) small.push_back(v);
  }
  std::vector<std::uint64_t> out;
  sieve_segment(0, bound, small, out);
  return out;
}

// n(ln n + ln ln n) bounds the n-th prime for n >= 6.
inline std::uint64_t nth_prime_upper(std::size_t n) {
  if (n < 6) return 14;
  const double x = static_cast<double>(n);
  return static_cast<std::uint64_t>(x * (std::log(x) + std::log(std::log(x)))) + 1;
}

}  // namespace detail

/// The first `count` primes in increasing order.
inline std::vector<std::uint64_t> first_primes(std::size_t count) {
  if (count == 0) return {};
  auto primes = detail::primes_below(detail::nth_prime_upper(count));
  primes.resize(count);
  return primes;
}

/// Growable list of the first primes. Extensions sieve only the new
/// segment; earlier entries are never recomputed.
class PrimeTable {
 public:
  /// Ensure at least `count` primes are available.
  void ensure(std::size_t count) {
    if (primes_.size() >= count) return;
    const std::uint64_t target = std::max(detail::nth_prime_upper(count), 2 * sieved_to_);
    if (sieved_to_ == 0) {
      primes_ = detail::primes_below(target);
    } else {
      const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(target))) + 2;
      std::vector<std::uint64_t> base;
      if (root > sieved_to_) {
        base = detail::primes_below(root);
      } else {
        base.assign(primes_.begin(),
                    std::upper_bound(primes_.begin(), primes_.end(), root));
      }
      detail::sieve_segment(sieved_to_, target, base, primes_);
    }
    sieved_to_ = target;
  }

  /// First `count` primes; ensure(count) must have been called.
  std::span<const std::uint64_t> first(std::size_t count) const {
    return std::span<const std::uint64_t>(primes_.data(), std::min(count, primes_.size()));
  }

  std::size_t size() const { return primes_.size(); }

 private:
  std::vector<std::uint64_t> primes_;
  std::uint64_t sieved_to_ = 0;
};

// Parameter formulas. Each returns max(21, ceil(10/(3 eps) * factor * ln(x)));
// numerator and denominator are formed separately so that exact inputs
// produce exact integers.
namespace detail {

inline Int lambda_formula(double factor, double log_value, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("lambda: eps must lie in (0,1)");
  const double v = (10.0 * factor * std::max(log_value, 0.0)) / (3.0 * eps);
  Int r = ceil_to_int(v);
  return r < 21 ? Int(21) : r;
}

}  // namespace detail

/// Prime size for which a T-sparse polynomial of degree <= D keeps all its
/// exponents distinct modulo X^p - 1 with probability >= 1 - eps.
inline Int lambda_no_collision_ln(double T, double ln_D, double eps) {
  return detail::lambda_formula(T * T, ln_D, eps);
}
inline Int lambda_no_collision(double T, double D, double eps) {
  if (D < 2) throw DomainError("lambda: degree bound must be >= 2");
  return lambda_no_collision_ln(T, std::log(D), eps);
}

/// Prime size for which a nonzero T-sparse polynomial of degree <= D stays
/// nonzero modulo X^p - 1 with probability >= 1 - eps.
inline Int lambda_nonzero_ln(double T, double ln_D, double eps) {
  return detail::lambda_formula(T, ln_D, eps);
}
inline Int lambda_nonzero(double T, double D, double eps) {
  if (D < 2) throw DomainError("lambda: degree bound must be >= 2");
  return lambda_nonzero_ln(T, std::log(D), eps);
}

/// Prime size for which an integer polynomial of the given height stays
/// nonzero modulo q with probability >= 1 - eps.
inline Int lambda_coeff_ln(double ln_height, double eps) {
  return detail::lambda_formula(1.0, ln_height, eps);
}
inline Int lambda_coeff(double height, double eps) {
  if (height < 1) throw DomainError("lambda: height must be >= 1");
  return lambda_coeff_ln(std::log(height), eps);
}

/// Monic degree-s irreducible polynomial over F_q, little-endian (s + 1
/// entries). Random monic candidates are tested deterministically, so eps
/// only bounds the chance of running out of candidates.
inline std::vector<Int> irreducible_poly(const Int& q, unsigned s, double eps, RandomSource& rng) {
  if (s < 1) throw DomainError("irreducible_poly: degree must be >= 1");
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("irreducible_poly: eps must lie in (0,1)");
  if (!is_prime(q)) throw DomainError("irreducible_poly: modulus must be prime");
  // a random monic polynomial is irreducible with probability >= 1/(2s)
  const auto budget = static_cast<std::size_t>(std::ceil(2.0 * s * std::log(1.0 / eps))) + 1;
  for (std::size_t attempt = 0; attempt < budget; ++attempt) {
    std::vector<Int> f(s + 1);
    for (unsigned i = 0; i < s; ++i) f[i] = rng.uniform(q);
    f[s] = 1;
    if (detail::is_irreducible(f, q)) return f;
  }
  throw RetryExhausted("irreducible_poly: no irreducible polynomial found within the retry budget");
}

/// Deterministic choice: the first monic irreducible of degree s when the
/// low coefficients are enumerated as base-q digits (c0 fastest).
inline std::vector<Int> canonical_irreducible(const Int& q, unsigned s) {
  if (s < 1) throw DomainError("canonical_irreducible: degree must be >= 1");
  std::vector<Int> f(s + 1);
  f[s] = 1;
  if (s == 1) return f;  // X
  for (;;) {
    if (detail::is_irreducible(f, q)) return f;
    // increment the base-q counter f[0..s-1]
    for (unsigned i = 0; i < s; ++i) {
      if (++f[i] < q) break;
      f[i] = 0;
    }
  }
}

}  // namespace spmul
