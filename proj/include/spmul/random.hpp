#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "spmul/bigint.hpp"
#include "spmul/error.hpp"

namespace spmul {

/// Seedable randomness threaded through every probabilistic operation.
///
/// Only the raw mt19937_64 stream is used (its output is fixed by the
/// standard); all range reductions are done here by rejection so that a
/// seed reproduces the same outcomes on every platform and standard library.
/// Not thread-safe: give each concurrent task its own source (see split()).
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed = 0) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, bound), bound > 0.
  std::uint64_t uniform_u64(std::uint64_t bound) {
    if (bound == 0) throw DomainError("uniform_u64: empty range");
    if ((bound & (bound - 1)) == 0) return next_u64() & (bound - 1);
    // reject the top partial bucket
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    for (;;) {
      std::uint64_t v = next_u64();
      if (v < limit) return v % bound;
    }
  }

  /// Uniform in [0, bound), bound > 0.
  Int uniform(const Int& bound) {
    if (sgn(bound) <= 0) throw DomainError("uniform: empty range");
    if (fits_u64(bound)) return from_u64(uniform_u64(to_u64(bound)));
    const Int top = bound - 1;
    const std::size_t bits = bit_length(top);
    const std::size_t words = (bits + 63) / 64;
    const std::size_t spare = words * 64 - bits;
    std::vector<std::uint64_t> buf(words);
    Int v;
    for (;;) {
      for (auto& w : buf) w = next_u64();
      buf.back() &= (~std::uint64_t{0}) >> spare;
      // least significant word first, native endianness within words
      mpz_import(v.get_mpz_t(), words, -1, sizeof(std::uint64_t), 0, 0, buf.data());
      if (v < bound) return v;
    }
  }

  /// Uniform in [lo, hi] (inclusive).
  Int uniform_range(const Int& lo, const Int& hi) {
    if (hi < lo) throw DomainError("uniform_range: empty range");
    return lo + uniform(hi - lo + 1);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform_real() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  bool coin(double p_true) { return uniform_real() < p_true; }

  /// Derive an independent child source; advances this source.
  RandomSource split() {
    // splitmix64 finalizer decorrelates the child seed from the parent stream
    std::uint64_t z = next_u64() + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return RandomSource(z ^ (z >> 31));
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace spmul
