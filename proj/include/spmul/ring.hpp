#pragma once

// Coefficient domains: the integers, prime fields F_q and extension fields
// F_{q^s} = F_q[Y]/(m(Y)). A RingSpec is a small runtime value and every
// element operation goes through it.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "spmul/arith.hpp"
#include "spmul/bigint.hpp"
#include "spmul/detail/fq_poly.hpp"
#include "spmul/error.hpp"
#include "spmul/random.hpp"

namespace spmul {

enum class RingKind { integers, prime_field, ext_field };

/// Ring element. One integer for Z and F_q; s residues in [0, q) for
/// F_{q^s}, little-endian in the power basis of the extension.
struct Elem {
  std::vector<Int> residues;

  Elem() : residues(1) {}
  explicit Elem(Int v) { residues.push_back(std::move(v)); }
  explicit Elem(std::vector<Int> r) : residues(std::move(r)) {}

  /// Residue 0: the value itself over Z and F_q.
  const Int& value() const { return residues.front(); }
  Int& value() { return residues.front(); }

  friend bool operator==(const Elem&, const Elem&) = default;
};

using FieldElem = Elem;

/// Counts ring multiplications (squarings included).
struct OpCounter {
  std::uint64_t mults = 0;
};

inline void count_mult(OpCounter* c, std::uint64_t n = 1) {
  if (c) c->mults += n;
}

class RingSpec {
 public:
  RingSpec() = default;

  static RingSpec integers() { return RingSpec(); }

  static RingSpec prime_field(const Int& q) {
    if (!is_prime(q)) throw DomainError("prime_field: q = " + q.get_str() + " is not prime");
    return prime_field_unchecked(q);
  }

  /// Trusted construction for moduli already known to be prime.
  static RingSpec prime_field_unchecked(const Int& q) {
    RingSpec r;
    r.kind_ = RingKind::prime_field;
    r.q_ = q;
    return r;
  }

  /// F_q[Y]/(modulus); modulus is little-endian, monic, irreducible.
  static RingSpec ext_field(const Int& q, std::vector<Int> modulus) {
    if (!is_prime(q)) throw DomainError("ext_field: q = " + q.get_str() + " is not prime");
    detail::FqPoly m = modulus;
    detail::trim(m);
    if (m.size() < 2 || m.back() != 1 || m.size() != modulus.size())
      throw DomainError("ext_field: modulus must be monic of degree >= 1");
    for (const auto& c : m)
      if (sgn(c) < 0 || c >= q) throw DomainError("ext_field: modulus coefficient out of range");
    if (!detail::is_irreducible(m, q)) throw DomainError("ext_field: modulus is reducible");
    return ext_field_unchecked(q, std::move(modulus));
  }

  static RingSpec ext_field_unchecked(const Int& q, std::vector<Int> modulus) {
    RingSpec r;
    r.kind_ = RingKind::ext_field;
    r.q_ = q;
    r.s_ = static_cast<unsigned>(modulus.size() - 1);
    r.modulus_ = std::move(modulus);
    return r;
  }

  RingKind kind() const { return kind_; }
  const Int& q() const { return q_; }
  unsigned s() const { return s_; }
  const std::vector<Int>& modulus() const { return modulus_; }
  bool is_field() const { return kind_ != RingKind::integers; }
  bool is_integers() const { return kind_ == RingKind::integers; }

  /// 0 for the integers.
  Int characteristic() const { return is_field() ? q_ : Int(0); }

  /// Field cardinality q^s.
  Int order() const { return pow_int(q_, s_); }

  std::string describe() const {
    switch (kind_) {
      case RingKind::integers: return "Z";
      case RingKind::prime_field: return "F_" + q_.get_str();
      case RingKind::ext_field: return "F_" + q_.get_str() + "^" + std::to_string(s_);
    }
    return "?";
  }

  friend bool operator==(const RingSpec&, const RingSpec&) = default;

  // -- elements ------------------------------------------------------------

  Elem zero() const { return Elem(std::vector<Int>(s_)); }
  Elem one() const { return from_int(Int(1)); }

  /// Image of an integer (reduced mod q over fields).
  Elem from_int(const Int& v) const {
    Elem e = zero();
    e.value() = is_field() ? mod_floor(v, q_) : v;
    return e;
  }

  bool is_zero(const Elem& a) const {
    for (const auto& r : a.residues)
      if (sgn(r) != 0) return false;
    return true;
  }

  /// Element has the expected shape and residues in range.
  bool is_valid(const Elem& a) const {
    if (a.residues.size() != s_) return false;
    if (!is_field()) return true;
    for (const auto& r : a.residues)
      if (sgn(r) < 0 || r >= q_) return false;
    return true;
  }

  Elem add(const Elem& a, const Elem& b) const {
    Elem r = a;
    for (unsigned i = 0; i < s_; ++i) {
      r.residues[i] += b.residues[i];
      if (is_field() && r.residues[i] >= q_) r.residues[i] -= q_;
    }
    return r;
  }

  Elem sub(const Elem& a, const Elem& b) const {
    Elem r = a;
    for (unsigned i = 0; i < s_; ++i) {
      r.residues[i] -= b.residues[i];
      if (is_field() && sgn(r.residues[i]) < 0) r.residues[i] += q_;
    }
    return r;
  }

  Elem neg(const Elem& a) const {
    Elem r = a;
    for (auto& v : r.residues) {
      if (!is_field()) {
        v = -v;
      } else if (sgn(v) != 0) {
        v = q_ - v;
      }
    }
    return r;
  }

  Elem mul(const Elem& a, const Elem& b, OpCounter* counter = nullptr) const {
    count_mult(counter);
    switch (kind_) {
      case RingKind::integers: return Elem(Int(a.value() * b.value()));
      case RingKind::prime_field: return Elem(mod_floor(a.value() * b.value(), q_));
      case RingKind::ext_field: break;
    }
    return pad(detail::mulmod(trimmed(a), trimmed(b), modulus_, q_));
  }

  /// Multiplication by an integer scalar (not counted as a ring product).
  Elem scale(const Elem& a, const Int& k) const {
    Elem r = a;
    for (auto& v : r.residues) {
      v *= k;
      if (is_field()) v = mod_floor(v, q_);
    }
    return r;
  }

  /// Multiplicative inverse in a field.
  Elem inv(const Elem& a) const {
    if (!is_field()) throw DomainError("inv: the integers are not a field");
    if (is_zero(a)) throw DomainError("inv: division by zero");
    if (kind_ == RingKind::prime_field) return Elem(detail::inv_mod(a.value(), q_));
    return pad(detail::invmod(trimmed(a), modulus_, q_));
  }

  Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }

  /// a^e for e >= 0 by left-to-right square and multiply.
  Elem pow(const Elem& a, const Int& e, OpCounter* counter = nullptr) const {
    if (sgn(e) < 0) throw DomainError("pow: negative exponent");
    const std::size_t bits = bit_length(e);
    if (bits == 0) return one();
    Elem r = a;
    for (std::size_t i = bits - 1; i-- > 0;) {
      r = mul(r, r, counter);
      if (mpz_tstbit(e.get_mpz_t(), i)) r = mul(r, a, counter);
    }
    return r;
  }

  /// Uniform random element (fields only).
  Elem random(RandomSource& rng) const {
    if (!is_field()) throw DomainError("random: the integers have no uniform distribution");
    Elem r = zero();
    for (auto& v : r.residues) v = rng.uniform(q_);
    return r;
  }

  /// True when the element lies in the prime subfield (or is an integer).
  bool in_prime_subfield(const Elem& a) const {
    for (unsigned i = 1; i < s_; ++i)
      if (sgn(a.residues[i]) != 0) return false;
    return true;
  }

  /// Map an element of the prime field F_q into this extension of it.
  Elem embed(const Elem& a) const {
    Elem r = zero();
    r.value() = a.value();
    return r;
  }

  std::string format(const Elem& a) const {
    std::string out;
    for (unsigned i = 0; i < s_; ++i) {
      if (i) out += ',';
      out += a.residues[i].get_str();
    }
    return out;
  }

 private:
  static detail::FqPoly trimmed(const Elem& a) {
    detail::FqPoly p = a.residues;
    detail::trim(p);
    return p;
  }

  Elem pad(detail::FqPoly p) const {
    p.resize(s_);
    return Elem(std::move(p));
  }

  RingKind kind_ = RingKind::integers;
  Int q_ = 0;
  unsigned s_ = 1;
  std::vector<Int> modulus_;
};

}  // namespace spmul
