#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

namespace spmul {

/// Arbitrary precision integer used for exponents, coefficients and moduli.
using Int = mpz_class;

inline std::size_t bit_length(const Int& x) {
  return sgn(x) == 0 ? 0 : mpz_sizeinbase(x.get_mpz_t(), 2);
}

inline bool fits_u64(const Int& x) {
  return sgn(x) >= 0 && bit_length(x) <= 64;
}

inline std::uint64_t to_u64(const Int& x) {
  // unsigned long is 64 bits on every supported platform
  static_assert(sizeof(unsigned long) == 8);
  return mpz_get_ui(x.get_mpz_t());
}

inline Int from_u64(std::uint64_t v) {
  return Int(static_cast<unsigned long>(v));
}

/// Remainder in [0, m) for m > 0.
inline Int mod_floor(const Int& a, const Int& m) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline std::uint64_t mod_u64(const Int& a, std::uint64_t m) {
  return mpz_fdiv_ui(a.get_mpz_t(), static_cast<unsigned long>(m));
}

inline Int ceil_div(const Int& a, const Int& b) {
  Int r;
  mpz_cdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Int pow_int(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

/// Natural logarithm of a positive integer, accurate to double precision
/// even past the range of double.
inline double ln(const Int& x) {
  if (sgn(x) <= 0) return -std::numeric_limits<double>::infinity();
  long exp2 = 0;
  double mant = mpz_get_d_2exp(&exp2, x.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
}

/// Upper bound on ln(x) from the bit length: ln x < bits(x) * ln 2.
inline double ln_upper(const Int& x) {
  return static_cast<double>(bit_length(x)) * std::log(2.0);
}

/// Smallest integer >= v (v finite, nonnegative).
inline Int ceil_to_int(double v) {
  Int r;
  mpz_set_d(r.get_mpz_t(), std::ceil(v));
  return r;
}

inline Int floor_to_int(double v) {
  Int r;
  mpz_set_d(r.get_mpz_t(), std::floor(v));
  return r;
}

inline double to_double(const Int& x) { return x.get_d(); }

inline std::string to_string(const Int& x) { return x.get_str(); }

}  // namespace spmul
