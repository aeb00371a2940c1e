#pragma once

// Command-line front end: mul, verify, estimate and bench.

#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "spmul/bigint.hpp"
#include "spmul/error.hpp"
#include "spmul/io.hpp"
#include "spmul/multivar.hpp"
#include "spmul/poly.hpp"
#include "spmul/product.hpp"
#include "spmul/random.hpp"
#include "spmul/verify.hpp"

namespace spmul {

inline constexpr double kDefaultEpsilon = 0x1p-20;

/// Usage and I/O failures; the command exits with status 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline AnyPoly read_poly_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  try {
    return parse_poly(in);
  } catch (const ParseError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
  if (!out.flush()) throw UsageError("error writing '" + path + "'");
}

inline void require_compatible(const MultiPoly& a, const MultiPoly& b) {
  if (!(a.ring() == b.ring()))
    throw UsageError("operands are over different rings (" + a.ring().describe() + " vs " +
                     b.ring().describe() + ")");
  if (a.nvars() != b.nvars()) throw UsageError("operands have different variable counts");
}

inline std::string format_as(const MultiPoly& h, bool univariate) {
  return univariate ? format_poly(to_univariate(h)) : format_poly(h);
}

// ---- bench ----

struct BenchRecord {
  std::string family;
  std::size_t T = 0;
  Int D = 0;
  std::string algorithm;
  double millis = 0;
  std::uint64_t ring_mults = 0;
  std::size_t out_terms = 0;
  std::uint64_t seed = 0;
};

struct BenchInstance {
  MultiPoly f, g;
  Int D;
};

inline BenchInstance example2_instance(std::size_t t) {
  const RingSpec z = RingSpec::integers();
  std::vector<MultiTerm> a, b;
  for (std::size_t i = 0; i < t; ++i) {
    const Int ii(static_cast<unsigned long>(i)), tt(static_cast<unsigned long>(t));
    a.push_back({{ii}, Elem(Int(1))});
    b.push_back({{tt * ii + 1}, Elem(Int(1))});
    b.push_back({{tt * ii}, Elem(Int(-1))});
  }
  const Int tt(static_cast<unsigned long>(t));
  return {canonicalize(std::move(a), z, 1), canonicalize(std::move(b), z, 1), tt * tt};
}

inline MultiPoly random_multi(RandomSource& rng, std::size_t terms, std::size_t nvars, const Int& degree_bound) {
  std::vector<MultiTerm> out;
  for (std::size_t i = 0; i < terms; ++i) {
    MultiTerm t{{}, Elem(rng.uniform_range(Int(-1000), Int(1000)))};
    if (sgn(t.coeff.value()) == 0) t.coeff.value() = 1;
    for (std::size_t j = 0; j < nvars; ++j) t.exps.push_back(rng.uniform(degree_bound));
    out.push_back(std::move(t));
  }
  return canonicalize(std::move(out), RingSpec::integers(), nvars);
}

inline BenchInstance bench_instance(const std::string& family, std::size_t t, RandomSource& rng) {
  if (family == "example2") return example2_instance(t);
  if (family == "random") {
    const Int d = Int(1) << 30;
    return {random_multi(rng, t, 1, d), random_multi(rng, t, 1, d), d};
  }
  const Int d(static_cast<unsigned long>(4 * t));
  return {random_multi(rng, t, 3, d), random_multi(rng, t, 3, d), d};
}

inline void write_bench_row(std::ostream& out, const BenchRecord& r) {
  std::ostringstream ms;
  ms.setf(std::ios::fixed);
  ms.precision(3);
  ms << r.millis;
  out << r.family << ',' << r.T << ',' << r.D.get_str() << ',' << r.algorithm << ',' << ms.str()
      << ',' << r.ring_mults << ',' << r.out_terms << ',' << r.seed << '\n';
}

inline void run_bench(const std::string& family, std::size_t tmin, std::size_t tmax, double eps,
                      std::uint64_t seed, std::ostream& csv) {
  using clock = std::chrono::steady_clock;
  csv << "family,T,D,algorithm,millis,ring_mults,out_terms,seed\n";
  std::uint64_t index = 0;
  for (std::size_t t = tmin; t <= tmax; t *= 2, ++index) {
    const std::uint64_t trial_seed = seed ^ index;
    RandomSource rng(trial_seed);
    const BenchInstance inst = bench_instance(family, t, rng);

    auto start = clock::now();
    const MultiPoly naive = naive_mul(inst.f, inst.g);
    const double naive_ms = std::chrono::duration<double, std::milli>(clock::now() - start).count();
    write_bench_row(csv, {family, t, inst.D, "naive", naive_ms,
                          static_cast<std::uint64_t>(inst.f.sparsity() * inst.g.sparsity()),
                          naive.sparsity(), trial_seed});

    ProductStats stats;
    start = clock::now();
    const MultiPoly fast = multivar_product(inst.f, inst.g, eps, rng, &stats);
    const double fast_ms = std::chrono::duration<double, std::milli>(clock::now() - start).count();
    write_bench_row(csv, {family, t, inst.D, "sparse_product", fast_ms, stats.ring_mults,
                          fast.sparsity(), trial_seed});
    if (t > tmax / 2) break;
  }
}

}  // namespace detail

/// Runs one command; args excludes the program name. Returns the exit code.
inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Output-sensitive sparse polynomial multiplication", "spmul"};
  app.require_subcommand(1);

  double eps = kDefaultEpsilon;
  double lambda = 2.0;
  std::uint64_t seed = 0;
  std::string a_path, b_path, h_path, out_path, family;
  bool naive = false;
  std::size_t tmin = 4, tmax = 32;

  auto* mul = app.add_subcommand("mul", "multiply two polynomial files");
  mul->add_option("A", a_path)->required();
  mul->add_option("B", b_path)->required();
  mul->add_option("-o,--output", out_path, "product file")->required();
  mul->add_flag("--naive", naive, "use schoolbook multiplication");
  mul->add_option("--epsilon", eps, "failure probability")->check(CLI::Range(0.0, 1.0));
  mul->add_option("--seed", seed);

  auto* ver = app.add_subcommand("verify", "probabilistically check A * B = H");
  ver->add_option("A", a_path)->required();
  ver->add_option("B", b_path)->required();
  ver->add_option("H", h_path)->required();
  ver->add_option("--epsilon", eps, "failure probability")->check(CLI::Range(0.0, 1.0));
  ver->add_option("--seed", seed);

  auto* est = app.add_subcommand("estimate", "estimate the number of terms of A * B");
  est->add_option("A", a_path)->required();
  est->add_option("B", b_path)->required();
  est->add_option("--lambda", lambda, "overestimation factor (> 1)");
  est->add_option("--epsilon", eps, "failure probability")->check(CLI::Range(0.0, 1.0));
  est->add_option("--seed", seed);

  auto* bench = app.add_subcommand("bench", "time naive against sparse multiplication");
  bench->add_option("--family", family)->required()->check(CLI::IsMember({"example2", "random", "multivar"}));
  bench->add_option("--tmin", tmin)->check(CLI::Range(std::size_t{1}, std::size_t{1} << 20));
  bench->add_option("--tmax", tmax)->check(CLI::Range(std::size_t{1}, std::size_t{1} << 20));
  bench->add_option("--out", out_path, "CSV file")->required();
  bench->add_option("--epsilon", eps, "failure probability")->check(CLI::Range(0.0, 1.0));
  bench->add_option("--seed", seed);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "spmul: " << e.what() << '\n';
    return 2;
  }

  try {
    if (!(eps > 0.0 && eps < 1.0)) throw UsageError("--epsilon must lie in (0,1)");
    RandomSource rng(seed);
    if (*mul) {
      const AnyPoly a = detail::read_poly_file(a_path), b = detail::read_poly_file(b_path);
      const MultiPoly fa = as_multi(a), fb = as_multi(b);
      detail::require_compatible(fa, fb);
      const MultiPoly h = naive ? naive_mul(fa, fb) : multivar_product(fa, fb, eps, rng);
      detail::write_text_file(out_path, detail::format_as(h, std::holds_alternative<SparsePoly>(a)));
      return 0;
    }
    if (*ver) {
      const MultiPoly fa = as_multi(detail::read_poly_file(a_path));
      const MultiPoly fb = as_multi(detail::read_poly_file(b_path));
      const MultiPoly fh = as_multi(detail::read_poly_file(h_path));
      detail::require_compatible(fa, fb);
      detail::require_compatible(fa, fh);
      const bool ok = verify_multi(fa, fb, fh, eps, rng);
      out << (ok ? "OK" : "MISMATCH") << '\n';
      return ok ? 0 : 1;
    }
    if (*est) {
      if (!(lambda > 1.0)) throw UsageError("--lambda must be > 1");
      const MultiPoly fa = as_multi(detail::read_poly_file(a_path));
      const MultiPoly fb = as_multi(detail::read_poly_file(b_path));
      detail::require_compatible(fa, fb);
      out << sparsity_estimate(fa, fb, eps, lambda, rng) << '\n';
      return 0;
    }
    if (tmin > tmax) throw UsageError("--tmin exceeds --tmax");
    std::ostringstream csv;
    detail::run_bench(family, tmin, tmax, eps, seed, csv);
    detail::write_text_file(out_path, csv.str());
    return 0;
  } catch (const Error& e) {
    err << "spmul: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace spmul
