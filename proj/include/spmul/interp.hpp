#pragma once

// Sparse interpolation of a sum of sparse products from its residues modulo
// X^p - 1 for small primes p. A term c X^e that does not collide modulo
// X^p - 1 shows up as c X^(e mod p) in H_p and as c e X^((e-1) mod p) in the
// residue of H', so a division recovers e.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "spmul/bigint.hpp"
#include "spmul/error.hpp"
#include "spmul/poly.hpp"
#include "spmul/random.hpp"
#include "spmul/ring.hpp"
#include "spmul/verify.hpp"

namespace spmul {

/// Input of interp_sum_sp. H = sum_i F_i G_i is recovered assuming
/// #H <= T, deg H < D and, over Z, |coefficients| <= C.
struct InterpJob {
  std::vector<PolyPair> pairs;
  std::size_t T = 1;
  Int D = 2;
  Int C = 1;    ///< ignored over fields
  double mu = 0.25;
  std::span<const std::uint64_t> primes;
  CyclicMulPolicy mul_policy = CyclicMulPolicy::automatic;
};

/// Per-round record of an interpolation, for diagnostics and tests.
struct InterpTrace {
  std::vector<std::uint64_t> primes;
  std::vector<SparsePoly> iterates;  ///< H* after each completed round
  bool early_exit = false;
};

/// Size of the candidate prime list used with bounds (T, D): N primes are
/// enough for a random one to separate most terms, and twice that are drawn.
inline std::size_t interp_prime_count(std::size_t T, const Int& D) {
  const double log2_d = std::log2(to_double(D < 2 ? Int(2) : D));
  const double n = std::floor(6.4 * static_cast<double>(T - 1) * log2_d);
  return 2 * static_cast<std::size_t>(std::max(1.0, n));
}

/// Recover the terms of H that do not collide modulo X^p - 1 from
/// H_p = H mod X^p - 1 and H'_p = H' mod X^p - 1. D bounds the degree
/// (inclusive), C the height over Z. Spurious terms may also appear.
inline SparsePoly find_terms(const Int& p, const SparsePoly& hp, const SparsePoly& hprime_p,
                             const Int& D, const Int& C) {
  detail::require_same_ring(hp, hprime_p);
  const RingSpec& ring = hp.ring();
  if (ring.is_field() && ring.q() <= D)
    throw CharTooSmall("find_terms: characteristic " + ring.q().get_str() + " <= degree bound " +
                       D.get_str());
  if (hp.degree() >= p || hprime_p.degree() >= p)
    throw DomainError("find_terms: residues must have degree < p");
  std::vector<Term> out;
  for (const auto& t : hp.terms()) {
    const Int r = t.exp;
    const Int shifted = sgn(r) == 0 ? p - 1 : r - 1;
    const Elem cp = hprime_p.coeff(shifted);
    Int e;
    if (ring.is_integers()) {
      if (abs(t.coeff.value()) > C) continue;
      if (!mpz_divisible_p(cp.value().get_mpz_t(), t.coeff.value().get_mpz_t())) continue;
      e = cp.value() / t.coeff.value();
    } else {
      const Elem ratio = ring.div(cp, t.coeff);
      if (!ring.in_prime_subfield(ratio)) continue;
      e = ratio.value();
    }
    if (sgn(e) < 0 || e > D) continue;
    if (mod_floor(e, p) != r) continue;
    out.push_back({std::move(e), t.coeff});
  }
  return canonicalize(std::move(out), ring);
}

namespace detail {

inline std::size_t ceil_log2(double x) {
  return x <= 1.0 ? 0 : static_cast<std::size_t>(std::ceil(std::log2(x)));
}

// Keep |c| <= C (over Z), degree < D, and at most `keep` lowest-degree terms.
inline SparsePoly trim_shape(const SparsePoly& h, const Int& D, const Int& C, std::size_t keep) {
  std::vector<Term> out;
  for (const auto& t : h.terms()) {
    if (t.exp >= D) break;
    if (h.ring().is_integers() && abs(t.coeff.value()) > C) continue;
    if (out.size() == keep) break;
    out.push_back(t);
  }
  return SparsePoly::from_canonical(h.ring(), std::move(out));
}

}  // namespace detail

/// Number of rounds run by interp_sum_sp.
inline std::size_t interp_rounds(std::size_t T, double mu) {
  return detail::ceil_log2(2.0 * static_cast<double>(T)) + detail::ceil_log2(1.0 / mu) + 2;
}

/// Interpolates H = sum_i F_i G_i; correct with probability >= 1 - mu when
/// T, D, C are true bounds. Whatever happens, the output has at most 2T
/// terms, degree < D and (over Z) height <= C.
inline SparsePoly interp_sum_sp(const InterpJob& job, RandomSource& rng,
                                InterpTrace* trace = nullptr, OpCounter* counter = nullptr) {
  if (job.pairs.empty()) throw DomainError("interp_sum_sp: no products to interpolate");
  if (job.T < 1) throw DomainError("interp_sum_sp: T must be >= 1");
  if (job.D < 2) throw DomainError("interp_sum_sp: D must be >= 2");
  if (!(job.mu > 0.0 && job.mu < 1.0)) throw DomainError("interp_sum_sp: mu must lie in (0,1)");
  if (job.primes.empty()) throw DomainError("interp_sum_sp: empty prime list");
  const RingSpec& ring = job.pairs.front().first.ring();
  for (const auto& [f, g] : job.pairs) {
    if (!(f.ring() == ring) || !(g.ring() == ring)) throw RingMismatch();
  }
  // exponents are < D, so they are distinct residues whenever q >= D
  if (ring.is_field() && ring.q() < job.D)
    throw CharTooSmall("interp_sum_sp: characteristic " + ring.q().get_str() +
                       " is below the degree bound " + job.D.get_str());

  std::vector<PolyPair> derived;  // (F_i', G_i) and (F_i, G_i')
  for (const auto& [f, g] : job.pairs) {
    derived.emplace_back(derivative(f), g);
    derived.emplace_back(f, derivative(g));
  }

  const Int wide_c = 2 * job.C;
  const std::size_t rounds = interp_rounds(job.T, job.mu);
  SparsePoly current(ring);
  for (std::size_t round = 0; round < rounds; ++round) {
    const std::uint64_t p = job.primes[rng.uniform_u64(job.primes.size())];
    const Int pp = from_u64(p);
    SparsePoly a = negate(cyclic_reduce(current, pp));
    for (const auto& [f, g] : job.pairs) a = add(a, cyclic_product(f, g, p, job.mul_policy, counter));
    SparsePoly ad = negate(cyclic_reduce(derivative(current), pp));
    for (const auto& [f, g] : derived) ad = add(ad, cyclic_product(f, g, p, job.mul_policy, counter));
    if (trace) trace->primes.push_back(p);
    if (a.is_zero() && ad.is_zero()) {
      if (trace) trace->early_exit = true;
      break;
    }
    const SparsePoly found = find_terms(pp, a, ad, job.D - 1, wide_c);
    current = detail::trim_shape(add(current, found), job.D, job.C, 2 * job.T);
    if (trace) trace->iterates.push_back(current);
  }
  return current;
}

}  // namespace spmul
