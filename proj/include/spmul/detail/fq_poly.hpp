#pragma once

// Small dense polynomials over a prime field F_q, little-endian coefficient
// vectors with entries in [0, q). The zero polynomial is the empty vector.
// Only used for extension-field arithmetic and irreducibility testing, where
// degrees stay tiny, so everything here is schoolbook.

#include <utility>
#include <vector>

#include "spmul/bigint.hpp"
#include "spmul/error.hpp"

namespace spmul::detail {

using FqPoly = std::vector<Int>;

inline void trim(FqPoly& a) {
  while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
}

inline long degree(const FqPoly& a) { return static_cast<long>(a.size()) - 1; }

inline Int inv_mod(const Int& a, const Int& q) {
  Int r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t()) == 0)
    throw DomainError("element is not invertible");
  return r;
}

inline FqPoly add(const FqPoly& a, const FqPoly& b, const Int& q) {
  FqPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i < a.size()) r[i] += a[i];
    if (i < b.size()) r[i] += b[i];
    if (r[i] >= q) r[i] -= q;
  }
  trim(r);
  return r;
}

inline FqPoly sub(const FqPoly& a, const FqPoly& b, const Int& q) {
  FqPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i < a.size()) r[i] += a[i];
    if (i < b.size()) r[i] -= b[i];
    if (sgn(r[i]) < 0) r[i] += q;
  }
  trim(r);
  return r;
}

inline FqPoly mul(const FqPoly& a, const FqPoly& b, const Int& q) {
  if (a.empty() || b.empty()) return {};
  FqPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  for (auto& c : r) c = mod_floor(c, q);
  trim(r);
  return r;
}

/// Quotient and remainder of a by a nonzero b.
inline std::pair<FqPoly, FqPoly> divrem(FqPoly a, const FqPoly& b, const Int& q) {
  if (b.empty()) throw DomainError("polynomial division by zero");
  trim(a);
  if (a.size() < b.size()) return {{}, a};
  const Int lead_inv = inv_mod(b.back(), q);
  FqPoly quo(a.size() - b.size() + 1);
  for (std::size_t k = a.size(); k-- >= b.size();) {
    if (sgn(a[k]) == 0) continue;
    const Int f = mod_floor(a[k] * lead_inv, q);
    const std::size_t shift = k - (b.size() - 1);
    quo[shift] = f;
    for (std::size_t j = 0; j < b.size(); ++j)
      a[shift + j] = mod_floor(a[shift + j] - f * b[j], q);
  }
  trim(a);
  trim(quo);
  return {quo, a};
}

inline FqPoly rem(const FqPoly& a, const FqPoly& b, const Int& q) {
  return divrem(a, b, q).second;
}

inline FqPoly mulmod(const FqPoly& a, const FqPoly& b, const FqPoly& m, const Int& q) {
  return rem(mul(a, b, q), m, q);
}

/// base^e mod m.
inline FqPoly powmod(const FqPoly& base, const Int& e, const FqPoly& m, const Int& q) {
  FqPoly result{Int(1)};
  result = rem(result, m, q);
  FqPoly b = rem(base, m, q);
  const std::size_t bits = bit_length(e);
  for (std::size_t i = bits; i-- > 0;) {
    result = mulmod(result, result, m, q);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = mulmod(result, b, m, q);
  }
  return result;
}

inline FqPoly make_monic(FqPoly a, const Int& q) {
  trim(a);
  if (a.empty()) return a;
  const Int inv = inv_mod(a.back(), q);
  for (auto& c : a) c = mod_floor(c * inv, q);
  return a;
}

inline FqPoly gcd(FqPoly a, FqPoly b, const Int& q) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    FqPoly r = rem(a, b, q);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(std::move(a), q);
}

/// Inverse of a modulo m (m irreducible, a != 0 mod m).
inline FqPoly invmod(const FqPoly& a, const FqPoly& m, const Int& q) {
  FqPoly r0 = m, r1 = rem(a, m, q);
  FqPoly s0{}, s1{Int(1)};
  while (!r1.empty()) {
    auto [quo, r2] = divrem(r0, r1, q);
    FqPoly s2 = sub(s0, mul(quo, s1, q), q);
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r0.size() != 1) throw DomainError("element is not invertible modulo the field polynomial");
  const Int inv = inv_mod(r0[0], q);
  for (auto& c : s0) c = mod_floor(c * inv, q);
  trim(s0);
  return s0;
}

/// Deterministic irreducibility test: a monic f of degree s has no factor of
/// degree <= s/2 iff gcd(f, X^(q^i) - X) = 1 for every 1 <= i <= s/2.
inline bool is_irreducible(const FqPoly& f_in, const Int& q) {
  FqPoly f = f_in;
  trim(f);
  const long s = degree(f);
  if (s < 1) return false;
  if (s == 1) return true;
  const FqPoly x{Int(0), Int(1)};
  FqPoly xq = x;  // X^(q^i) mod f
  for (long i = 1; 2 * i <= s; ++i) {
    xq = powmod(xq, q, f, q);
    const FqPoly g = gcd(f, sub(xq, x, q), q);
    if (g.size() != 1) return false;
  }
  return true;
}

}  // namespace spmul::detail
