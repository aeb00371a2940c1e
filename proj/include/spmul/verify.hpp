#pragma once

// Probabilistic verification of sparse products. The identity F*G = H is
// tested modulo X^p - 1 for a random prime p, at a random point alpha, and
// the left-hand side is evaluated without ever forming F*G.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "spmul/arith.hpp"
#include "spmul/bigint.hpp"
#include "spmul/error.hpp"
#include "spmul/poly.hpp"
#include "spmul/random.hpp"
#include "spmul/ring.hpp"

namespace spmul {

using PolyPair = std::pair<SparsePoly, SparsePoly>;

/// Constants steering the failure probability of verification.
///
/// Field path: 10/(3 c1) + (1 - 10/(3 c1)) / c2 <= eps.
/// Integer path: 1 - (1 - 10/(3 c1)) (1 - 10/(3 c2)) (1 - 1/c2) <= eps.
/// Extension path: 1 - (1 - 10/(3 c1)) (1 - 1/c2) (1 - 1/c3) <= eps.
struct VerifyParams {
  double eps = 0;
  double c1 = 0;
  double c2 = 0;
  double c3 = 0;

  static VerifyParams for_field(double eps) {
    check_eps(eps);
    return {eps, std::max(4.0, 20.0 / (3.0 * eps)), std::max(2.0, 2.0 / eps), 0.0};
  }

  static VerifyParams for_integers(double eps) {
    check_eps(eps);
    return {eps, 10.0 / eps, 10.0 / eps, 0.0};
  }

  static VerifyParams for_extension(double eps) {
    check_eps(eps);
    return {eps, 10.0 / eps, 3.0 / eps, 3.0 / eps};
  }

  double field_failure() const {
    const double a = 10.0 / (3.0 * c1);
    return a + (1.0 - a) / c2;
  }
  double integer_failure() const {
    return 1.0 - (1.0 - 10.0 / (3.0 * c1)) * (1.0 - 10.0 / (3.0 * c2)) * (1.0 - 1.0 / c2);
  }
  double extension_failure() const {
    return 1.0 - (1.0 - 10.0 / (3.0 * c1)) * (1.0 - 1.0 / c2) * (1.0 - 1.0 / c3);
  }

  static void check_eps(double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw DomainError("verify: eps must lie in (0,1)");
  }
};

enum class VerifyPath { trivial, quick_reject, integers, large_field, extension, exact };

/// What a verification did; filled when requested.
struct VerifyStats {
  VerifyPath path = VerifyPath::trivial;
  Int p = 0;       ///< cyclic prime
  Int q = 0;       ///< coefficient prime on the integer path
  unsigned s = 1;  ///< degree of the evaluation field over F_q
  std::uint64_t ring_mults = 0;
};

/// [(F_p * G_p) mod X^p - 1](alpha) in O((#F_p + #G_p) log p) ring products.
///
/// With c_j = sum_l alpha^l f_{(l - j) mod p}, the result is sum_j c_j g_j and
/// c_0 = F_p(alpha). Between consecutive support points j < j' of G_p,
///   c_j' = alpha^(j' - j) c_j + (1 - alpha^p) sum_{l=j+1}^{j'} alpha^(j' - l) f_{p-l}
/// so every coefficient of F_p enters exactly one such sum.
inline Elem eval_cyclic_product(const SparsePoly& fp, const SparsePoly& gp, const Int& p,
                                const Elem& alpha, OpCounter* counter = nullptr) {
  detail::require_same_ring(fp, gp);
  const RingSpec& ring = fp.ring();
  if (!ring.is_field()) throw DomainError("eval_cyclic_product: ring must be a field");
  if (fp.degree() >= p || gp.degree() >= p)
    throw DomainError("eval_cyclic_product: degree must be < p");
  if (fp.is_zero() || gp.is_zero()) return ring.zero();

  const Elem one_minus_alpha_p = ring.sub(ring.one(), ring.pow(alpha, p, counter));
  Elem c = eval_sparse(fp, alpha, counter);
  Elem result = ring.zero();
  Int prev = 0;

  const auto& fterms = fp.terms();
  // F terms are consumed from the top exponent down: for step (prev, j] the
  // indices t = p - l satisfy p - j <= t <= p - prev - 1.
  std::size_t hi = fterms.size();  // terms [hi, end) are consumed
  for (const auto& g : gp.terms()) {
    const Int& j = g.exp;
    if (j != prev) {
      const Int low = p - j;
      std::size_t lo = hi;
      while (lo > 0 && fterms[lo - 1].exp >= low) --lo;
      // ascending t gives ascending exponents t + j - p
      Elem sum = ring.zero();
      Elem power = ring.one();
      Int cur = 0;
      for (std::size_t k = lo; k < hi; ++k) {
        const Int e = fterms[k].exp + j - p;
        if (e != cur) power = ring.mul(power, ring.pow(alpha, e - cur, counter), counter);
        cur = e;
        sum = ring.add(sum, ring.mul(fterms[k].coeff, power, counter));
      }
      hi = lo;
      c = ring.mul(ring.pow(alpha, j - prev, counter), c, counter);
      if (!ring.is_zero(sum)) c = ring.add(c, ring.mul(one_minus_alpha_p, sum, counter));
      prev = j;
    }
    result = ring.add(result, ring.mul(c, g.coeff, counter));
  }
  return result;
}

namespace detail {

inline Int lambda_for(double c1, std::size_t sparsity_bound, double ln_d) {
  const double v = c1 * static_cast<double>(sparsity_bound) * ln_d;
  Int r = ceil_to_int(v);
  return r < 21 ? Int(21) : r;
}

inline SparsePoly reduce_to(const SparsePoly& f, const RingSpec& target) {
  if (f.ring() == target) return f;
  if (f.ring().is_integers()) return reduce_coeffs_mod_q(f, target);
  return embed_poly(f, target);
}

// Core of verify_sp / verify_sum_sp once trivial cases and quick rejects
// are settled. `sparsity_bound` bounds #(sum F_i G_i - H).
inline bool verify_reduced(const SparsePoly& h, std::span<const PolyPair> pairs,
                           std::size_t sparsity_bound, const Int& degree, double eps,
                           RandomSource& rng, VerifyStats& stats) {
  const RingSpec& ring = h.ring();
  const double ln_d = ln(degree < 2 ? Int(2) : degree);
  OpCounter counter;

  auto pick_p = [&](const VerifyParams& vp) {
    return random_prime(lambda_for(vp.c1, sparsity_bound, ln_d), 5.0 / (3.0 * vp.c1), rng);
  };

  RingSpec eval_ring = ring;
  Int p;
  if (ring.is_integers()) {
    const VerifyParams vp = VerifyParams::for_integers(eps);
    p = pick_p(vp);
    // coefficient prime: Delta mod X^p - 1 must survive reduction mod q
    Int height = h.height();
    std::size_t terms = h.sparsity();
    for (const auto& [f, g] : pairs) {
      height = std::max({height, f.height(), g.height()});
      terms = std::max({terms, f.sparsity(), g.sparsity()});
    }
    const Int delta_height =
        Int(static_cast<unsigned long>(pairs.size())) * height * height *
            Int(static_cast<unsigned long>(terms)) + height;
    const Int mu_bound = ceil_to_int(vp.c2 * std::max(to_double(p), std::ceil(ln_upper(delta_height))));
    const Int q = random_prime(mu_bound, 5.0 / (3.0 * vp.c2), rng);
    eval_ring = RingSpec::prime_field_unchecked(q);
    stats.path = VerifyPath::integers;
    stats.q = q;
  } else {
    const VerifyParams vp = VerifyParams::for_field(eps);
    const Int lambda = lambda_for(vp.c1, sparsity_bound, ln_d);
    // any p <= 2 lambda leaves more than c2 * p evaluation points
    const bool large = to_double(ring.order()) > vp.c2 * 2.0 * to_double(lambda);
    if (large) {
      p = random_prime(lambda, 5.0 / (3.0 * vp.c1), rng);
      stats.path = VerifyPath::large_field;
    } else {
      if (ring.kind() == RingKind::ext_field) {
        // no evaluation field containing F_{q^s} is available here; compare exactly
        SparsePoly acc(ring);
        for (const auto& [f, g] : pairs) acc = add(acc, naive_mul(f, g, &counter));
        stats.path = VerifyPath::exact;
        stats.ring_mults = counter.mults;
        return acc == h;
      }
      const VerifyParams xp = VerifyParams::for_extension(eps);
      p = pick_p(xp);
      // smallest s with q^s > c2 * p
      const double need = xp.c2 * to_double(p);
      unsigned s = 1;
      Int size = ring.q();
      while (to_double(size) <= need) {
        size *= ring.q();
        ++s;
      }
      if (s > 1) {
        auto modulus = irreducible_poly(ring.q(), s, 1.0 / xp.c3, rng);
        eval_ring = RingSpec::ext_field_unchecked(ring.q(), std::move(modulus));
      }
      stats.path = VerifyPath::extension;
      stats.s = s;
    }
  }
  stats.p = p;

  const Elem alpha = eval_ring.random(rng);
  Elem lhs = eval_ring.zero();
  for (const auto& [f, g] : pairs) {
    const SparsePoly fp = reduce_to(cyclic_reduce(f, p), eval_ring);
    const SparsePoly gp = reduce_to(cyclic_reduce(g, p), eval_ring);
    lhs = eval_ring.add(lhs, eval_cyclic_product(fp, gp, p, alpha, &counter));
  }
  const SparsePoly hp = reduce_to(cyclic_reduce(h, p), eval_ring);
  const Elem rhs = eval_sparse(hp, alpha, &counter);
  stats.ring_mults = counter.mults;
  return lhs == rhs;
}

}  // namespace detail

/// Tests F * G = H. Always true when the identity holds; false with
/// probability >= 1 - eps otherwise.
inline bool verify_sp(const SparsePoly& f, const SparsePoly& g, const SparsePoly& h, double eps,
                      RandomSource& rng, VerifyStats* stats = nullptr) {
  VerifyParams::check_eps(eps);
  detail::require_same_ring(f, g);
  detail::require_same_ring(f, h);
  VerifyStats local;
  VerifyStats& st = stats ? *stats : local;
  st = VerifyStats{};
  if (f.is_zero() || g.is_zero()) {
    st.path = VerifyPath::trivial;
    return h.is_zero();
  }
  const Int degree = f.degree() + g.degree();
  if (h.sparsity() > f.sparsity() * g.sparsity() || h.degree() != degree) {
    st.path = VerifyPath::quick_reject;
    return false;
  }
  const PolyPair pair{f, g};
  return detail::verify_reduced(h, std::span<const PolyPair>(&pair, 1),
                                f.sparsity() * g.sparsity() + h.sparsity(), degree, eps, rng, st);
}

/// Tests sum_i F_i * G_i = H with the same guarantees as verify_sp.
inline bool verify_sum_sp(const SparsePoly& h, std::span<const PolyPair> pairs, double eps,
                          RandomSource& rng, VerifyStats* stats = nullptr) {
  VerifyParams::check_eps(eps);
  if (pairs.empty()) throw DomainError("verify_sum_sp: empty list of products");
  for (const auto& [f, g] : pairs) {
    detail::require_same_ring(h, f);
    detail::require_same_ring(h, g);
  }
  VerifyStats local;
  VerifyStats& st = stats ? *stats : local;
  st = VerifyStats{};

  std::vector<PolyPair> live;
  std::size_t products = 0;
  Int degree = h.degree();
  Int max_product_degree = kZeroDegree;
  for (const auto& [f, g] : pairs) {
    if (f.is_zero() || g.is_zero()) continue;
    live.emplace_back(f, g);
    products += f.sparsity() * g.sparsity();
    const Int d = f.degree() + g.degree();
    if (d > max_product_degree) max_product_degree = d;
  }
  if (live.empty()) {
    st.path = VerifyPath::trivial;
    return h.is_zero();
  }
  if (h.sparsity() > products || h.degree() > max_product_degree) {
    st.path = VerifyPath::quick_reject;
    return false;
  }
  if (max_product_degree > degree) degree = max_product_degree;
  return detail::verify_reduced(h, live, products + h.sparsity(), degree, eps, rng, st);
}

inline bool verify_sum_sp(const SparsePoly& h, const std::vector<PolyPair>& pairs, double eps,
                          RandomSource& rng, VerifyStats* stats = nullptr) {
  return verify_sum_sp(h, std::span<const PolyPair>(pairs), eps, rng, stats);
}

}  // namespace spmul
