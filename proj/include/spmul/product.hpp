#pragma once

// Output-sensitive sparse multiplication. F and G are reduced modulo X^p - 1
// for a random prime p; the products F_p G_p and (F_p G'_p + F'_p G_p) are
// interpolated with a doubling sparsity guess until both pass verification,
// and F G is read off their residues with find_terms.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "spmul/arith.hpp"
#include "spmul/bigint.hpp"
#include "spmul/error.hpp"
#include "spmul/interp.hpp"
#include "spmul/poly.hpp"
#include "spmul/random.hpp"
#include "spmul/verify.hpp"

namespace spmul {

/// Failure budgets: mu1 bounds a wrong answer, mu2 a blown running time.
struct ProductParams {
  double mu1 = 0x1p-20;
  double mu2 = 0x1p-20;

  void validate() const {
    if (!(mu1 > 0.0 && mu1 < 1.0) || !(mu2 > 0.0 && mu2 < 1.0))
      throw DomainError("sparse_product: mu1 and mu2 must lie in (0,1)");
    if (mu1 / 2.0 > mu2) throw DomainError("sparse_product: requires mu1/2 <= mu2");
  }

  double mu_star() const { return mu2 - mu1 / 2.0; }
};

struct ProductStats {
  Int p = 0;                  ///< outer cyclic prime (0 when inputs were not reduced)
  std::size_t iterations = 0;  ///< passes of the doubling loop
  std::size_t final_t = 0;     ///< sparsity guess of the accepted pass
  std::uint64_t ring_mults = 0;
};

/// |{a + b : a in supp F, b in supp G}|, by brute force.
inline std::size_t sumset_size(const SparsePoly& f, const SparsePoly& g) {
  std::vector<Int> sums;
  sums.reserve(f.sparsity() * g.sparsity());
  for (const auto& a : f.terms())
    for (const auto& b : g.terms()) sums.push_back(a.exp + b.exp);
  std::sort(sums.begin(), sums.end());
  return static_cast<std::size_t>(std::unique(sums.begin(), sums.end()) - sums.begin());
}

namespace detail {

inline Int max_int(const Int& a, const Int& b) { return a < b ? b : a; }

inline Int count_int(std::size_t n) { return Int(static_cast<unsigned long>(n)); }

}  // namespace detail

/// F * G over Z, or over a field whose characteristic exceeds deg F + deg G.
/// Correct with probability >= 1 - mu1.
inline SparsePoly sparse_product(const SparsePoly& f, const SparsePoly& g,
                                 const ProductParams& params, RandomSource& rng,
                                 ProductStats* stats = nullptr) {
  detail::require_same_ring(f, g);
  params.validate();
  const RingSpec& ring = f.ring();
  ProductStats local;
  ProductStats& st = stats ? *stats : local;
  st = ProductStats{};

  if (f.is_zero() || g.is_zero()) return SparsePoly(ring);
  const Int D = f.degree() + g.degree();
  if (ring.is_field() && ring.q() <= D)
    throw CharTooSmall("sparse_product: characteristic " + ring.q().get_str() +
                       " <= product degree " + D.get_str());
  if (sgn(f.degree()) == 0) return scale(g, f.terms().front().coeff);
  if (sgn(g.degree()) == 0) return scale(f, g.terms().front().coeff);

  OpCounter counter;
  const std::size_t tf = f.sparsity(), tg = g.sparsity();
  std::size_t t = std::max(tf, tg);
  const Int C = detail::count_int(t) * f.height() * g.height();
  const double pairs = static_cast<double>(tf) * static_cast<double>(tg);
  Int lambda = ceil_to_int((20.0 * pairs * pairs * ln(detail::max_int(D, Int(2)))) / (3.0 * params.mu1));
  if (lambda < 21) lambda = 21;
  const double mu_star = params.mu_star();
  const Int p = random_prime(lambda, params.mu1 / 4.0, rng);

  // Over a field the interpolation bound 2p must stay within the
  // characteristic; when it cannot, skip the reduction (F_p = F).
  const bool reduce = !ring.is_field() || 2 * p <= ring.q();
  const SparsePoly fp = reduce ? cyclic_reduce(f, p) : f;
  const SparsePoly gp = reduce ? cyclic_reduce(g, p) : g;
  const SparsePoly dfp = reduce ? cyclic_reduce(derivative(f), p) : derivative(f);
  const SparsePoly dgp = reduce ? cyclic_reduce(derivative(g), p) : derivative(g);
  const Int interp_degree = reduce ? Int(2 * p) : Int(D + 1);

  // Heights: the bounds of the algorithm, widened to exact bounds for the
  // reduced operands so that a merged coefficient can never be filtered out.
  const Int mf = detail::count_int(std::min(fp.sparsity(), gp.sparsity()));
  const Int c1 = detail::max_int(C, mf * fp.height() * gp.height());
  const Int c2 = detail::max_int(C * detail::max_int(D, interp_degree),
                                 mf * (fp.height() * dgp.height() + dfp.height() * gp.height()));
  const std::size_t t_cap = 2 * fp.sparsity() * gp.sparsity();

  const std::vector<PolyPair> first{{fp, gp}};
  const std::vector<PolyPair> second{{fp, dgp}, {dfp, gp}};
  PrimeTable primes;
  SparsePoly h1(ring), h2(ring);
  for (;;) {
    const std::size_t count = interp_prime_count(t, interp_degree);
    primes.ensure(count);
    const auto pool = primes.first(count);
    ++st.iterations;
    st.final_t = t;
    h1 = interp_sum_sp({first, t, interp_degree, c1, mu_star / 2.0, pool}, rng, nullptr, &counter);
    bool ok;
    VerifyStats vs;
    if (reduce) {
      h2 = interp_sum_sp({second, t, interp_degree, c2, mu_star / 2.0, pool}, rng, nullptr, &counter);
      ok = verify_sp(fp, gp, h1, params.mu1 / 2.0, rng, &vs);
      counter.mults += vs.ring_mults;
      if (ok) {
        ok = verify_sum_sp(h2, second, params.mu1 / 2.0, rng, &vs);
        counter.mults += vs.ring_mults;
      }
    } else {
      ok = verify_sp(fp, gp, h1, params.mu1, rng, &vs);
      counter.mults += vs.ring_mults;
    }
    if (ok) break;
    t = std::min(2 * t, std::max(t, t_cap));
  }
  st.ring_mults = counter.mults;
  if (!reduce) return h1;
  st.p = p;
  return find_terms(p, cyclic_reduce(h1, p), cyclic_reduce(h2, p), D, C);
}

}  // namespace spmul
