#pragma once

// Canonical sparse univariate polynomials, dense residues modulo X^p - 1,
// and the basic arithmetic on them. naive_mul is the reference product that
// every faster multiplication path is checked against.

#include <algorithm>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "spmul/bigint.hpp"
#include "spmul/detail/packing.hpp"
#include "spmul/error.hpp"
#include "spmul/ring.hpp"

namespace spmul {

struct Term {
  Int exp;
  Elem coeff;

  friend bool operator==(const Term&, const Term&) = default;
};

/// Degree reported for the zero polynomial.
inline const Int kZeroDegree{-1};

/// Sparse polynomial with strictly increasing exponents and no zero
/// coefficients; the zero polynomial has no terms.
class SparsePoly {
 public:
  explicit SparsePoly(RingSpec ring = RingSpec::integers()) : ring_(std::move(ring)) {}

  /// Terms must already be canonical for `ring`.
  static SparsePoly from_canonical(RingSpec ring, std::vector<Term> terms) {
    SparsePoly f(std::move(ring));
    f.terms_ = std::move(terms);
    return f;
  }

  /// X^e * c over the ring (zero if c is zero).
  static SparsePoly monomial(RingSpec ring, Int e, Elem c) {
    SparsePoly f(std::move(ring));
    if (!f.ring_.is_zero(c)) f.terms_.push_back({std::move(e), std::move(c)});
    return f;
  }

  const RingSpec& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t sparsity() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  /// Degree, or kZeroDegree for the zero polynomial.
  Int degree() const { return terms_.empty() ? kZeroDegree : terms_.back().exp; }

  /// Largest |coefficient| over Z; largest residue over a field.
  Int height() const {
    Int h = 0;
    for (const auto& t : terms_)
      for (const auto& r : t.coeff.residues) {
        Int a = abs(r);
        if (a > h) h = a;
      }
    return h;
  }

  /// Coefficient of X^e (zero when absent).
  Elem coeff(const Int& e) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                               [](const Term& t, const Int& x) { return t.exp < x; });
    if (it != terms_.end() && it->exp == e) return it->coeff;
    return ring_.zero();
  }

  friend bool operator==(const SparsePoly&, const SparsePoly&) = default;

 private:
  RingSpec ring_;
  std::vector<Term> terms_;
};

/// Residue modulo X^p - 1 stored as exactly p coefficients.
struct DenseCyclic {
  RingSpec ring;
  std::vector<Elem> coeffs;

  std::size_t p() const { return coeffs.size(); }
  friend bool operator==(const DenseCyclic&, const DenseCyclic&) = default;
};

namespace detail {

inline void require_same_ring(const SparsePoly& f, const SparsePoly& g) {
  if (!(f.ring() == g.ring())) throw RingMismatch();
}

// Sort by exponent and merge duplicates; coefficients must be reduced.
inline std::vector<Term> merge_terms(const RingSpec& ring, std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.exp < b.exp; });
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().exp == t.exp) {
      out.back().coeff = ring.add(out.back().coeff, t.coeff);
    } else {
      if (!out.empty() && ring.is_zero(out.back().coeff)) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && ring.is_zero(out.back().coeff)) out.pop_back();
  return out;
}

}  // namespace detail

/// Sort, merge equal exponents and drop zero coefficients. Field
/// coefficients are reduced into range.
inline SparsePoly canonicalize(std::vector<Term> terms, const RingSpec& ring) {
  for (auto& t : terms) {
    if (sgn(t.exp) < 0) throw DomainError("canonicalize: negative exponent");
    if (t.coeff.residues.size() != ring.s())
      throw DomainError("canonicalize: coefficient does not match the ring");
    if (ring.is_field())
      for (auto& r : t.coeff.residues) r = mod_floor(r, ring.q());
  }
  return SparsePoly::from_canonical(ring, detail::merge_terms(ring, std::move(terms)));
}

/// Convenience constructor from (exponent, integer coefficient) pairs.
inline SparsePoly make_poly(const RingSpec& ring,
                            std::initializer_list<std::pair<long, long>> terms) {
  std::vector<Term> ts;
  for (auto [e, c] : terms) ts.push_back({Int(e), ring.from_int(Int(c))});
  return canonicalize(std::move(ts), ring);
}

namespace detail {

template <class Combine>
SparsePoly merge_with(const SparsePoly& f, const SparsePoly& g, Combine combine,
                      bool negate_right) {
  require_same_ring(f, g);
  const RingSpec& ring = f.ring();
  std::vector<Term> out;
  out.reserve(f.sparsity() + g.sparsity());
  auto a = f.terms().begin(), ae = f.terms().end();
  auto b = g.terms().begin(), be = g.terms().end();
  while (a != ae || b != be) {
    if (b == be || (a != ae && a->exp < b->exp)) {
      out.push_back(*a++);
    } else if (a == ae || b->exp < a->exp) {
      out.push_back({b->exp, negate_right ? ring.neg(b->coeff) : b->coeff});
      ++b;
    } else {
      Elem c = combine(a->coeff, b->coeff);
      if (!ring.is_zero(c)) out.push_back({a->exp, std::move(c)});
      ++a;
      ++b;
    }
  }
  return SparsePoly::from_canonical(ring, std::move(out));
}

}  // namespace detail

inline SparsePoly add(const SparsePoly& f, const SparsePoly& g) {
  const RingSpec& r = f.ring();
  return detail::merge_with(f, g, [&](const Elem& x, const Elem& y) { return r.add(x, y); }, false);
}

inline SparsePoly sub(const SparsePoly& f, const SparsePoly& g) {
  const RingSpec& r = f.ring();
  return detail::merge_with(f, g, [&](const Elem& x, const Elem& y) { return r.sub(x, y); }, true);
}

inline SparsePoly negate(const SparsePoly& f) {
  std::vector<Term> out = f.terms();
  for (auto& t : out) t.coeff = f.ring().neg(t.coeff);
  return SparsePoly::from_canonical(f.ring(), std::move(out));
}

/// c * F.
inline SparsePoly scale(const SparsePoly& f, const Elem& c) {
  const RingSpec& ring = f.ring();
  std::vector<Term> out;
  out.reserve(f.sparsity());
  for (const auto& t : f.terms()) {
    Elem v = ring.mul(t.coeff, c);
    if (!ring.is_zero(v)) out.push_back({t.exp, std::move(v)});
  }
  return SparsePoly::from_canonical(ring, std::move(out));
}

/// Schoolbook product: all #F * #G monomials, sorted and merged.
inline SparsePoly naive_mul(const SparsePoly& f, const SparsePoly& g, OpCounter* counter = nullptr) {
  detail::require_same_ring(f, g);
  const RingSpec& ring = f.ring();
  std::vector<Term> all;
  all.reserve(f.sparsity() * g.sparsity());
  for (const auto& a : f.terms())
    for (const auto& b : g.terms())
      all.push_back({a.exp + b.exp, ring.mul(a.coeff, b.coeff, counter)});
  return SparsePoly::from_canonical(ring, detail::merge_terms(ring, std::move(all)));
}

inline SparsePoly derivative(const SparsePoly& f) {
  const RingSpec& ring = f.ring();
  std::vector<Term> out;
  out.reserve(f.sparsity());
  for (const auto& t : f.terms()) {
    if (sgn(t.exp) == 0) continue;
    Elem c = ring.scale(t.coeff, t.exp);
    if (!ring.is_zero(c)) out.push_back({t.exp - 1, std::move(c)});
  }
  return SparsePoly::from_canonical(ring, std::move(out));
}

/// F mod X^p - 1: exponents reduced mod p and merged.
inline SparsePoly cyclic_reduce(const SparsePoly& f, const Int& p) {
  if (p < 1) throw DomainError("cyclic_reduce: p must be >= 1");
  if (f.is_zero() || f.degree() < p) return f;
  std::vector<Term> out;
  out.reserve(f.sparsity());
  if (fits_u64(p)) {
    const std::uint64_t pm = to_u64(p);
    for (const auto& t : f.terms()) out.push_back({from_u64(mod_u64(t.exp, pm)), t.coeff});
  } else {
    for (const auto& t : f.terms()) out.push_back({mod_floor(t.exp, p), t.coeff});
  }
  return SparsePoly::from_canonical(f.ring(), detail::merge_terms(f.ring(), std::move(out)));
}

inline DenseCyclic to_dense(const SparsePoly& f, std::size_t p) {
  if (p == 0) throw DomainError("to_dense: p must be >= 1");
  DenseCyclic d{f.ring(), std::vector<Elem>(p, f.ring().zero())};
  for (const auto& t : f.terms()) {
    if (t.exp >= Int(static_cast<unsigned long>(p)))
      throw DomainError("to_dense: exponent " + t.exp.get_str() + " >= p");
    d.coeffs[to_u64(t.exp)] = t.coeff;
  }
  return d;
}

inline SparsePoly from_dense(const DenseCyclic& d) {
  std::vector<Term> out;
  for (std::size_t i = 0; i < d.coeffs.size(); ++i)
    if (!d.ring.is_zero(d.coeffs[i])) out.push_back({from_u64(i), d.coeffs[i]});
  return SparsePoly::from_canonical(d.ring, std::move(out));
}

namespace detail {

// Terms with exponents < p of a polynomial over `ring`, listed as integer
// digits. Extension coefficients c_0 + c_1 Y + ... occupy s-1 extra slots
// per exponent so that Y-products never overlap: slot = e * (2s - 1) + j.
inline IndexedInts to_digits(const RingSpec& ring, const std::vector<Term>& terms) {
  const std::uint64_t stride = 2 * ring.s() - 1;
  IndexedInts out;
  out.reserve(terms.size() * ring.s());
  for (const auto& t : terms) {
    const std::uint64_t e = to_u64(t.exp);
    for (unsigned j = 0; j < ring.s(); ++j)
      if (sgn(t.coeff.residues[j]) != 0) out.emplace_back(e * stride + j, t.coeff.residues[j]);
  }
  return out;
}

// Product modulo X^p - 1 of two residues (exponents < p) via one packed
// big-integer product, then folding of indices >= p.
inline std::vector<Term> packed_cyclic_product(const RingSpec& ring, const std::vector<Term>& a,
                                               const std::vector<Term>& b, std::uint64_t p) {
  const std::uint64_t stride = 2 * ring.s() - 1;
  const IndexedInts prod =
      packed_convolution(to_digits(ring, a), p * stride, to_digits(ring, b), p * stride);
  if (ring.kind() != RingKind::ext_field) {
    std::vector<Term> out;
    out.reserve(prod.size());
    for (const auto& [k, v] : prod) out.push_back({from_u64(k % p), ring.from_int(v)});
    return merge_terms(ring, std::move(out));
  }
  // collect Z[Y] coefficients per folded exponent, then reduce into F_{q^s}
  std::vector<std::pair<std::uint64_t, std::vector<Int>>> acc;
  for (const auto& [k, v] : prod) {
    const std::uint64_t e = (k / stride) % p;
    const std::uint64_t j = k % stride;
    acc.push_back({e, std::vector<Int>(stride)});
    acc.back().second[j] = v;
  }
  std::vector<Term> out;
  out.reserve(acc.size());
  for (auto& [e, ypoly] : acc) {
    for (auto& c : ypoly) c = mod_floor(c, ring.q());
    FqPoly r = rem(ypoly, ring.modulus(), ring.q());
    r.resize(ring.s());
    out.push_back({from_u64(e), Elem(std::move(r))});
  }
  return merge_terms(ring, std::move(out));
}

inline std::vector<Term> schoolbook_cyclic_product(const RingSpec& ring, const std::vector<Term>& a,
                                                   const std::vector<Term>& b, std::uint64_t p,
                                                   OpCounter* counter) {
  std::vector<std::pair<std::uint64_t, Elem>> all;
  all.reserve(a.size() * b.size());
  for (const auto& x : a) {
    const std::uint64_t ex = to_u64(x.exp);
    for (const auto& y : b) {
      std::uint64_t e = ex + to_u64(y.exp);
      if (e >= p) e -= p;
      all.emplace_back(e, ring.mul(x.coeff, y.coeff, counter));
    }
  }
  std::sort(all.begin(), all.end(),
            [](const auto& u, const auto& v) { return u.first < v.first; });
  std::vector<Term> out;
  for (std::size_t i = 0; i < all.size();) {
    Elem c = std::move(all[i].second);
    std::size_t j = i + 1;
    for (; j < all.size() && all[j].first == all[i].first; ++j) c = ring.add(c, all[j].second);
    if (!ring.is_zero(c)) out.push_back({from_u64(all[i].first), std::move(c)});
    i = j;
  }
  return out;
}

}  // namespace detail

/// Cyclic convolution of length p over Z, F_q or F_{q^s}. Coefficients are
/// lifted to integers and multiplied with one packed big-integer product.
inline DenseCyclic dense_cyclic_mul(const DenseCyclic& a, const DenseCyclic& b) {
  if (!(a.ring == b.ring)) throw RingMismatch();
  if (a.p() != b.p()) throw DomainError("dense_cyclic_mul: mismatched lengths");
  const std::uint64_t p = a.p();
  if (p == 0) throw DomainError("dense_cyclic_mul: empty residue");
  const auto prod = detail::packed_cyclic_product(a.ring, from_dense(a).terms(),
                                                  from_dense(b).terms(), p);
  return to_dense(SparsePoly::from_canonical(a.ring, prod), p);
}

/// How cyclic_product multiplies the reduced operands.
enum class CyclicMulPolicy {
  automatic,   ///< schoolbook when #F * #G <= p, packed otherwise
  packed,      ///< always the packed big-integer product
  schoolbook,  ///< always pairwise products
};

/// (F * G) mod X^p - 1 as a sparse polynomial with exponents < p.
inline SparsePoly cyclic_product(const SparsePoly& f, const SparsePoly& g, std::uint64_t p,
                                 CyclicMulPolicy policy = CyclicMulPolicy::automatic,
                                 OpCounter* counter = nullptr) {
  detail::require_same_ring(f, g);
  if (p == 0) throw DomainError("cyclic_product: p must be >= 1");
  const Int pp = from_u64(p);
  const SparsePoly a = cyclic_reduce(f, pp);
  const SparsePoly b = cyclic_reduce(g, pp);
  if (a.is_zero() || b.is_zero()) return SparsePoly(f.ring());
  bool school = policy == CyclicMulPolicy::schoolbook;
  if (policy == CyclicMulPolicy::automatic) {
    const auto pairs = static_cast<unsigned __int128>(a.sparsity()) * b.sparsity();
    school = pairs <= p;
  }
  if (school)
    return SparsePoly::from_canonical(
        f.ring(), detail::schoolbook_cyclic_product(f.ring(), a.terms(), b.terms(), p, counter));
  count_mult(counter, a.sparsity() + b.sparsity());
  return SparsePoly::from_canonical(f.ring(),
                                    detail::packed_cyclic_product(f.ring(), a.terms(), b.terms(), p));
}

/// F(alpha) over a field. Powers of alpha are chained along the sorted
/// exponents: alpha^(e_i) = alpha^(e_{i-1}) * alpha^(e_i - e_{i-1}).
inline Elem eval_sparse(const SparsePoly& f, const Elem& alpha, OpCounter* counter = nullptr) {
  const RingSpec& ring = f.ring();
  if (!ring.is_field())
    throw DomainError("eval_sparse: evaluation is only supported over finite fields");
  Elem acc = ring.zero();
  Elem power = ring.one();
  Int prev = 0;
  for (const auto& t : f.terms()) {
    if (t.exp != prev) power = ring.mul(power, ring.pow(alpha, t.exp - prev, counter), counter);
    prev = t.exp;
    acc = ring.add(acc, ring.mul(t.coeff, power, counter));
  }
  return acc;
}

/// Same, with an already validated target field (must be a prime field).
inline SparsePoly reduce_coeffs_mod_q(const SparsePoly& f, const RingSpec& field) {
  if (!f.ring().is_integers()) throw DomainError("reduce_coeffs_mod_q: input must be over Z");
  if (field.kind() != RingKind::prime_field)
    throw DomainError("reduce_coeffs_mod_q: target must be a prime field");
  std::vector<Term> out;
  out.reserve(f.sparsity());
  for (const auto& t : f.terms()) {
    Elem c = field.from_int(t.coeff.value());
    if (!field.is_zero(c)) out.push_back({t.exp, std::move(c)});
  }
  return SparsePoly::from_canonical(field, std::move(out));
}

/// Image of an integer polynomial in F_q[X], q prime.
inline SparsePoly reduce_coeffs_mod_q(const SparsePoly& f, const Int& q) {
  if (!f.ring().is_integers()) throw DomainError("reduce_coeffs_mod_q: input must be over Z");
  return reduce_coeffs_mod_q(f, RingSpec::prime_field(q));
}

/// F over F_q viewed over an extension F_{q^s} of it.
inline SparsePoly embed_poly(const SparsePoly& f, const RingSpec& ext) {
  if (f.ring().kind() != RingKind::prime_field || ext.q() != f.ring().q())
    throw DomainError("embed_poly: input must be over the prime subfield of the target");
  std::vector<Term> out;
  out.reserve(f.sparsity());
  for (const auto& t : f.terms()) out.push_back({t.exp, ext.embed(t.coeff)});
  return SparsePoly::from_canonical(ext, std::move(out));
}

/// F over F_q with coefficients lifted to [0, q) in Z.
inline SparsePoly lift_to_integers(const SparsePoly& f) {
  if (f.ring().kind() != RingKind::prime_field)
    throw DomainError("lift_to_integers: input must be over a prime field");
  std::vector<Term> out = f.terms();
  return SparsePoly::from_canonical(RingSpec::integers(), std::move(out));
}

}  // namespace spmul
