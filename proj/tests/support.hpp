#pragma once

// Generators and independent oracles shared by the test suites. Nothing
// here calls into the algorithm under test beyond the representation types.

#include <cstdint>
#include <map>
#include <vector>

#include "spmul/spmul.hpp"

namespace spmul::testing {

inline bool trial_division_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// All monic polynomials of degree k over F_q, enumerated as base-q counters.
inline std::vector<std::vector<Int>> monic_polys(unsigned q, unsigned k) {
  std::vector<std::vector<Int>> out;
  std::vector<unsigned> digits(k, 0);
  for (;;) {
    std::vector<Int> poly(k + 1);
    for (unsigned i = 0; i < k; ++i) poly[i] = digits[i];
    poly[k] = 1;
    out.push_back(poly);
    unsigned i = 0;
    while (i < k && ++digits[i] == q) digits[i++] = 0;
    if (i == k) return out;
  }
}

/// Schoolbook remainder of a by a monic divisor over F_q.
inline std::vector<Int> remainder_by_monic(std::vector<Int> a, const std::vector<Int>& m, unsigned q) {
  const std::size_t k = m.size() - 1;
  for (std::size_t top = a.size(); top-- > k;) {
    const Int c = a[top];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= k; ++j) {
      a[top - k + j] -= c * m[j];
      a[top - k + j] = mod_floor(a[top - k + j], Int(q));
    }
  }
  a.resize(k);
  return a;
}

/// Irreducibility by trying every monic divisor of degree 1..s/2.
inline bool brute_irreducible(const std::vector<Int>& f, unsigned q) {
  const unsigned s = static_cast<unsigned>(f.size()) - 1;
  for (unsigned k = 1; 2 * k <= s; ++k)
    for (const auto& d : monic_polys(q, k)) {
      const auto r = remainder_by_monic(f, d, q);
      bool zero = true;
      for (const auto& c : r) zero = zero && c == 0;
      if (zero) return false;
    }
  return true;
}

struct PolyShape {
  std::size_t max_terms = 10;
  Int max_exp = 1000;
  Int max_coeff = 100;  ///< Z only: coefficients in [-max_coeff, max_coeff]
  bool exact_terms = false;
};

inline Elem random_nonzero(const RingSpec& ring, RandomSource& rng, const Int& max_coeff) {
  for (;;) {
    Elem c = ring.is_integers() ? Elem(rng.uniform_range(-max_coeff, max_coeff)) : ring.random(rng);
    if (!ring.is_zero(c)) return c;
  }
}

/// Random polynomial with distinct exponents in [0, max_exp].
inline SparsePoly random_poly(const RingSpec& ring, RandomSource& rng, const PolyShape& shape) {
  const std::size_t n = shape.exact_terms ? shape.max_terms : 1 + rng.uniform_u64(shape.max_terms);
  std::map<Int, Elem> terms;
  std::size_t guard = 0;
  while (terms.size() < n && guard++ < 100 * n) {
    const Int e = rng.uniform_range(Int(0), shape.max_exp);
    terms.emplace(e, random_nonzero(ring, rng, shape.max_coeff));
  }
  std::vector<Term> out;
  for (auto& [e, c] : terms) out.push_back({e, c});
  return SparsePoly::from_canonical(ring, std::move(out));
}

/// Reference product via an ordered map, independent of canonicalize.
inline SparsePoly map_product(const SparsePoly& f, const SparsePoly& g, const Int* cyclic = nullptr) {
  const RingSpec& ring = f.ring();
  std::map<Int, Elem> acc;
  for (const auto& a : f.terms())
    for (const auto& b : g.terms()) {
      Int e = a.exp + b.exp;
      if (cyclic) e = mod_floor(e, *cyclic);
      auto [it, fresh] = acc.emplace(e, ring.mul(a.coeff, b.coeff));
      if (!fresh) it->second = ring.add(it->second, ring.mul(a.coeff, b.coeff));
    }
  std::vector<Term> out;
  for (auto& [e, c] : acc)
    if (!ring.is_zero(c)) out.push_back({e, c});
  return SparsePoly::from_canonical(ring, std::move(out));
}

/// Sum of c * alpha^e with powers formed by repeated multiplication.
inline Elem direct_eval(const SparsePoly& f, const Elem& alpha) {
  const RingSpec& ring = f.ring();
  Elem sum = ring.zero();
  Elem power = ring.one();
  Int at = 0;
  for (const auto& t : f.terms()) {
    for (; at < t.exp; ++at) power = ring.mul(power, alpha);
    sum = ring.add(sum, ring.mul(t.coeff, power));
  }
  return sum;
}

inline SparsePoly poly_z(std::initializer_list<std::pair<long, long>> terms) {
  std::vector<Term> out;
  for (const auto& [e, c] : terms) out.push_back({Int(e), Elem(Int(c))});
  return canonicalize(std::move(out), RingSpec::integers());
}

inline SparsePoly poly_over(const RingSpec& ring, std::initializer_list<std::pair<long, long>> terms) {
  std::vector<Term> out;
  for (const auto& [e, c] : terms) out.push_back({Int(e), ring.from_int(Int(c))});
  return canonicalize(std::move(out), ring);
}

// Small worked example: F, G, H with FH collapsing to two terms.
inline SparsePoly example_f() { return poly_z({{14, 1}, {7, 2}, {0, 2}}); }
inline SparsePoly example_g() { return poly_z({{13, 3}, {8, 5}, {0, 3}}); }
inline SparsePoly example_h() { return poly_z({{14, 1}, {7, -2}, {0, 2}}); }
inline SparsePoly example_fg() {
  return poly_z({{27, 3}, {22, 5}, {20, 6}, {15, 10}, {14, 3}, {13, 6}, {8, 10}, {7, 6}, {0, 6}});
}
inline SparsePoly example_fh() { return poly_z({{28, 1}, {0, 4}}); }

// Telescoping family: sumset of size T^2 + 1 but FG = X^(T^2) - 1.
inline std::pair<SparsePoly, SparsePoly> example2(long t) {
  std::vector<Term> a, b;
  for (long i = 0; i < t; ++i) {
    a.push_back({Int(i), Elem(Int(1))});
    b.push_back({Int(t * i + 1), Elem(Int(1))});
    b.push_back({Int(t * i), Elem(Int(-1))});
  }
  return {canonicalize(std::move(a), RingSpec::integers()), canonicalize(std::move(b), RingSpec::integers())};
}

/// Schoolbook product of multivariate polynomials via an ordered map.
inline MultiPoly map_product(const MultiPoly& f, const MultiPoly& g) {
  const RingSpec& ring = f.ring();
  std::map<std::vector<Int>, Elem> acc;
  for (const auto& a : f.terms())
    for (const auto& b : g.terms()) {
      std::vector<Int> e = a.exps;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += b.exps[i];
      const Elem c = ring.mul(a.coeff, b.coeff);
      auto [it, fresh] = acc.emplace(e, c);
      if (!fresh) it->second = ring.add(it->second, c);
    }
  std::vector<MultiTerm> out;
  for (auto& [e, c] : acc)
    if (!ring.is_zero(c)) out.push_back({e, c});
  return MultiPoly::from_canonical(ring, f.nvars(), std::move(out));
}

inline MultiPoly random_multi(const RingSpec& ring, RandomSource& rng, std::size_t nvars,
                              std::size_t max_terms, const Int& max_partial, const Int& max_coeff = 100) {
  const std::size_t n = 1 + rng.uniform_u64(max_terms);
  std::map<std::vector<Int>, Elem> terms;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Int> e(nvars);
    for (auto& x : e) x = rng.uniform_range(Int(0), max_partial);
    terms.emplace(e, random_nonzero(ring, rng, max_coeff));
  }
  std::vector<MultiTerm> out;
  for (auto& [e, c] : terms) out.push_back({e, c});
  return MultiPoly::from_canonical(ring, nvars, std::move(out));
}

}  // namespace spmul::testing
