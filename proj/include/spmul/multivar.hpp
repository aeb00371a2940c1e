#pragma once

// Multivariate products through univariate ones: classical Kronecker
// substitution over Z, randomized substitutions to estimate the sparsity of
// a product, and a lift through Z for fields of small characteristic.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "spmul/bigint.hpp"
#include "spmul/error.hpp"
#include "spmul/poly.hpp"
#include "spmul/product.hpp"
#include "spmul/random.hpp"
#include "spmul/ring.hpp"
#include "spmul/verify.hpp"

namespace spmul {

struct MultiTerm {
  std::vector<Int> exps;
  Elem coeff;

  friend bool operator==(const MultiTerm&, const MultiTerm&) = default;
};

/// Sparse polynomial in n >= 1 variables, terms in strictly increasing
/// lexicographic order of exponent vectors, no zero coefficients.
class MultiPoly {
 public:
  explicit MultiPoly(RingSpec ring = RingSpec::integers(), std::size_t nvars = 1)
      : ring_(std::move(ring)), nvars_(nvars) {
    if (nvars_ == 0) throw DomainError("MultiPoly: at least one variable is required");
  }

  static MultiPoly from_canonical(RingSpec ring, std::size_t nvars, std::vector<MultiTerm> terms) {
    MultiPoly f(std::move(ring), nvars);
    f.terms_ = std::move(terms);
    return f;
  }

  const RingSpec& ring() const { return ring_; }
  std::size_t nvars() const { return nvars_; }
  const std::vector<MultiTerm>& terms() const { return terms_; }
  std::size_t sparsity() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  /// deg_{x_i}; kZeroDegree for the zero polynomial.
  Int partial_degree(std::size_t i) const {
    Int d = kZeroDegree;
    for (const auto& t : terms_)
      if (t.exps[i] > d) d = t.exps[i];
    return d;
  }

  /// Total degree; kZeroDegree for the zero polynomial.
  Int total_degree() const {
    Int d = kZeroDegree;
    for (const auto& t : terms_) {
      Int s = 0;
      for (const auto& e : t.exps) s += e;
      if (s > d) d = s;
    }
    return d;
  }

  Int height() const {
    Int h = 0;
    for (const auto& t : terms_)
      for (const auto& r : t.coeff.residues) {
        Int a = abs(r);
        if (a > h) h = a;
      }
    return h;
  }

  friend bool operator==(const MultiPoly&, const MultiPoly&) = default;

 private:
  RingSpec ring_;
  std::size_t nvars_;
  std::vector<MultiTerm> terms_;
};

/// Sort lexicographically, merge equal exponent vectors, drop zeros.
inline MultiPoly canonicalize(std::vector<MultiTerm> terms, const RingSpec& ring, std::size_t nvars) {
  for (auto& t : terms) {
    if (t.exps.size() != nvars) throw DomainError("canonicalize: exponent vector has the wrong length");
    for (const auto& e : t.exps)
      if (sgn(e) < 0) throw DomainError("canonicalize: negative exponent");
    if (t.coeff.residues.size() != ring.s())
      throw DomainError("canonicalize: coefficient does not match the ring");
    if (ring.is_field())
      for (auto& r : t.coeff.residues) r = mod_floor(r, ring.q());
  }
  std::sort(terms.begin(), terms.end(),
            [](const MultiTerm& a, const MultiTerm& b) { return a.exps < b.exps; });
  std::vector<MultiTerm> out;
  for (auto& t : terms) {
    if (!out.empty() && out.back().exps == t.exps) {
      out.back().coeff = ring.add(out.back().coeff, t.coeff);
      continue;
    }
    if (!out.empty() && ring.is_zero(out.back().coeff)) out.pop_back();
    out.push_back(std::move(t));
  }
  if (!out.empty() && ring.is_zero(out.back().coeff)) out.pop_back();
  return MultiPoly::from_canonical(ring, nvars, std::move(out));
}

/// Schoolbook multivariate product; the reference for every other path.
inline MultiPoly naive_mul(const MultiPoly& f, const MultiPoly& g) {
  if (!(f.ring() == g.ring())) throw RingMismatch();
  if (f.nvars() != g.nvars()) throw DomainError("naive_mul: variable counts differ");
  const RingSpec& ring = f.ring();
  std::vector<MultiTerm> all;
  all.reserve(f.sparsity() * g.sparsity());
  for (const auto& a : f.terms())
    for (const auto& b : g.terms()) {
      MultiTerm t{a.exps, ring.mul(a.coeff, b.coeff)};
      for (std::size_t i = 0; i < t.exps.size(); ++i) t.exps[i] += b.exps[i];
      all.push_back(std::move(t));
    }
  return canonicalize(std::move(all), ring, f.nvars());
}

/// View of a univariate polynomial as a one-variable MultiPoly, and back.
inline MultiPoly to_multi(const SparsePoly& f) {
  std::vector<MultiTerm> terms;
  terms.reserve(f.sparsity());
  for (const auto& t : f.terms()) terms.push_back({{t.exp}, t.coeff});
  return MultiPoly::from_canonical(f.ring(), 1, std::move(terms));
}

inline SparsePoly to_univariate(const MultiPoly& f) {
  if (f.nvars() != 1) throw DomainError("to_univariate: polynomial has more than one variable");
  std::vector<Term> terms;
  terms.reserve(f.sparsity());
  for (const auto& t : f.terms()) terms.push_back({t.exps[0], t.coeff});
  return SparsePoly::from_canonical(f.ring(), std::move(terms));
}

/// (e_1, ..., e_n) -> sum e_i d^(i-1). Every partial degree must be < d.
inline SparsePoly kronecker(const MultiPoly& f, const Int& d) {
  if (d < 1) throw DomainError("kronecker: base must be >= 1");
  std::vector<Term> terms;
  terms.reserve(f.sparsity());
  for (const auto& t : f.terms()) {
    Int e = 0;
    for (std::size_t i = f.nvars(); i-- > 0;) {
      if (t.exps[i] >= d) throw DomainError("kronecker: partial degree >= base");
      e = e * d + t.exps[i];
    }
    terms.push_back({std::move(e), t.coeff});
  }
  // x_n is the most significant digit, so lex order is not preserved
  return canonicalize(std::move(terms), f.ring());
}

/// Base-d decomposition of every exponent into n digits.
inline MultiPoly inverse_kronecker(const SparsePoly& h, const Int& d, std::size_t n) {
  if (d < 1) throw DomainError("inverse_kronecker: base must be >= 1");
  if (n == 0) throw DomainError("inverse_kronecker: at least one variable is required");
  const Int limit = pow_int(d, n);
  std::vector<MultiTerm> terms;
  terms.reserve(h.sparsity());
  for (const auto& t : h.terms()) {
    if (t.exp >= limit && !(d == 1 && sgn(t.exp) == 0))
      throw DomainError("inverse_kronecker: exponent >= d^n");
    MultiTerm m{std::vector<Int>(n), t.coeff};
    Int rest = t.exp;
    for (std::size_t i = 0; i < n; ++i) {
      mpz_fdiv_qr(rest.get_mpz_t(), m.exps[i].get_mpz_t(), rest.get_mpz_t(), d.get_mpz_t());
    }
    terms.push_back(std::move(m));
  }
  return canonicalize(std::move(terms), h.ring(), n);
}

/// Weights s_i of a randomized substitution x_i -> X^(s_i).
struct SubstitutionVector {
  std::vector<Int> s;
};

/// F(X^(s_1), ..., X^(s_n)); colliding images merge.
inline SparsePoly randomized_kronecker(const MultiPoly& f, const SubstitutionVector& sv) {
  if (sv.s.size() != f.nvars()) throw DomainError("randomized_kronecker: dimension mismatch");
  std::vector<Term> terms;
  terms.reserve(f.sparsity());
  for (const auto& t : f.terms()) {
    Int e = 0;
    for (std::size_t i = 0; i < sv.s.size(); ++i) e += t.exps[i] * sv.s[i];
    terms.push_back({std::move(e), t.coeff});
  }
  return canonicalize(std::move(terms), f.ring());
}

/// Smallest strict bound on every partial degree of F * G.
inline Int kronecker_base(const MultiPoly& f, const MultiPoly& g) {
  Int d = 0;
  for (std::size_t i = 0; i < f.nvars(); ++i) {
    Int s = std::max(f.partial_degree(i), Int(0)) + std::max(g.partial_degree(i), Int(0));
    if (s > d) d = s;
  }
  return d + 1;
}

/// F * G over Z via classical Kronecker substitution and sparse_product.
/// Correct with probability >= 1 - eps.
inline MultiPoly multivar_product_z(const MultiPoly& f, const MultiPoly& g, double eps,
                                    RandomSource& rng, ProductStats* stats = nullptr) {
  if (!(f.ring() == g.ring())) throw RingMismatch();
  if (!f.ring().is_integers()) throw DomainError("multivar_product_z: inputs must be over Z");
  if (f.nvars() != g.nvars()) throw DomainError("multivar_product_z: variable counts differ");
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("multivar_product_z: eps must lie in (0,1)");
  if (f.is_zero() || g.is_zero()) return MultiPoly(f.ring(), f.nvars());
  const Int d = kronecker_base(f, g);
  const SparsePoly h = sparse_product(kronecker(f, d), kronecker(g, d), {eps / 2.0, eps / 2.0}, rng, stats);
  return inverse_kronecker(h, d, f.nvars());
}

/// Upper estimate of #(F G): at most lambda * #(F G) always, and at least
/// #(F G) with probability >= 1 - eps.
inline std::size_t sparsity_estimate(const MultiPoly& f, const MultiPoly& g, double eps,
                                     double lambda, RandomSource& rng) {
  if (!(f.ring() == g.ring())) throw RingMismatch();
  if (f.nvars() != g.nvars()) throw DomainError("sparsity_estimate: variable counts differ");
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("sparsity_estimate: eps must lie in (0,1)");
  if (!(lambda > 1.0)) throw DomainError("sparsity_estimate: lambda must be > 1");
  if (f.is_zero() || g.is_zero()) return 0;
  const double shrink = 1.0 - 1.0 / lambda;
  const double pairs = static_cast<double>(f.sparsity()) * static_cast<double>(g.sparsity());
  if (f.ring().is_field()) {
    const double degree = to_double(std::max(f.total_degree(), g.total_degree()));
    if (to_double(f.ring().q()) < 4.0 * degree * pairs / shrink)
      throw DomainError("sparsity_estimate: field too small, need q >= 4 D #F #G / (1 - 1/lambda)");
  }
  const Int n_bound = std::max(Int(1), ceil_to_int(2.0 * (pairs - 1.0) / shrink));
  const auto rounds = static_cast<std::size_t>(std::ceil(std::log2(2.0 / eps)));
  const double mu = eps / (4.0 * static_cast<double>(rounds));
  std::size_t best = 0;
  for (std::size_t r = 0; r < rounds; ++r) {
    SubstitutionVector sv;
    for (std::size_t i = 0; i < f.nvars(); ++i) sv.s.push_back(rng.uniform(n_bound));
    const SparsePoly hs =
        sparse_product(randomized_kronecker(f, sv), randomized_kronecker(g, sv), {mu, mu}, rng);
    best = std::max(best, hs.sparsity());
  }
  return static_cast<std::size_t>(std::ceil(lambda * static_cast<double>(best)));
}

/// F * G over F_q or F_{q^s} of any characteristic, through a product over
/// Z. Coefficients are lifted to Z[Y] (degree < s, entries in [0, q)),
/// evaluated at B = T s q^2, multiplied, and split back into base-B digits.
/// Cost follows the structural sparsity of F G, not #(F G).
inline MultiPoly multivar_product_smallchar(const MultiPoly& f, const MultiPoly& g, double eps,
                                            RandomSource& rng) {
  if (!(f.ring() == g.ring())) throw RingMismatch();
  const RingSpec& ring = f.ring();
  if (!ring.is_field()) throw DomainError("multivar_product_smallchar: inputs must be over a finite field");
  if (f.nvars() != g.nvars()) throw DomainError("multivar_product_smallchar: variable counts differ");
  if (f.is_zero() || g.is_zero()) return MultiPoly(ring, f.nvars());
  const unsigned s = ring.s();
  const Int& q = ring.q();
  const Int base =
      Int(static_cast<unsigned long>(std::max(f.sparsity(), g.sparsity()))) * s * q * q;

  auto lift = [&](const MultiPoly& x) {
    std::vector<MultiTerm> terms;
    terms.reserve(x.sparsity());
    for (const auto& t : x.terms()) {
      Int v = 0;
      for (unsigned j = s; j-- > 0;) v = v * base + t.coeff.residues[j];
      terms.push_back({t.exps, Elem(std::move(v))});
    }
    return MultiPoly::from_canonical(RingSpec::integers(), x.nvars(), std::move(terms));
  };

  const MultiPoly hb = multivar_product_z(lift(f), lift(g), eps, rng);

  std::vector<MultiTerm> out;
  out.reserve(hb.sparsity());
  for (const auto& t : hb.terms()) {
    if (sgn(t.coeff.value()) < 0) throw Error("multivar_product_smallchar: negative packed coefficient");
    detail::FqPoly ypoly(2 * s - 1);
    Int rest = t.coeff.value();
    for (unsigned j = 0; j < 2 * s - 1; ++j) {
      Int digit;
      mpz_fdiv_qr(rest.get_mpz_t(), digit.get_mpz_t(), rest.get_mpz_t(), base.get_mpz_t());
      ypoly[j] = mod_floor(digit, q);
    }
    if (sgn(rest) != 0) throw Error("multivar_product_smallchar: packed coefficient overflows its slots");
    detail::trim(ypoly);
    detail::FqPoly r = s == 1 ? ypoly : detail::rem(ypoly, ring.modulus(), q);
    r.resize(s);
    Elem c(std::move(r));
    if (!ring.is_zero(c)) out.push_back({t.exps, std::move(c)});
  }
  return MultiPoly::from_canonical(ring, f.nvars(), std::move(out));
}

/// F * G in any supported ring: Kronecker substitution and sparse_product
/// over Z or a field of large characteristic, the lift through Z otherwise.
inline MultiPoly multivar_product(const MultiPoly& f, const MultiPoly& g, double eps,
                                  RandomSource& rng, ProductStats* stats = nullptr) {
  if (!(f.ring() == g.ring())) throw RingMismatch();
  if (f.nvars() != g.nvars()) throw DomainError("multivar_product: variable counts differ");
  if (f.is_zero() || g.is_zero()) return MultiPoly(f.ring(), f.nvars());
  if (f.ring().is_integers()) return multivar_product_z(f, g, eps, rng, stats);
  const Int d = kronecker_base(f, g);
  if (f.ring().q() >= pow_int(d, f.nvars())) {
    const SparsePoly h =
        sparse_product(kronecker(f, d), kronecker(g, d), {eps / 2.0, eps / 2.0}, rng, stats);
    return inverse_kronecker(h, d, f.nvars());
  }
  if (stats) *stats = ProductStats{};
  return multivar_product_smallchar(f, g, eps, rng);
}

/// Probabilistic test of F * G = H through the Kronecker images.
inline bool verify_multi(const MultiPoly& f, const MultiPoly& g, const MultiPoly& h, double eps,
                         RandomSource& rng, VerifyStats* stats = nullptr) {
  if (!(f.ring() == g.ring()) || !(f.ring() == h.ring())) throw RingMismatch();
  if (f.nvars() != g.nvars() || f.nvars() != h.nvars())
    throw DomainError("verify_multi: variable counts differ");
  VerifyParams::check_eps(eps);
  const Int d = kronecker_base(f, g);
  for (std::size_t i = 0; i < h.nvars(); ++i)
    if (h.partial_degree(i) >= d) return false;
  return verify_sp(kronecker(f, d), kronecker(g, d), kronecker(h, d), eps, rng, stats);
}

}  // namespace spmul
