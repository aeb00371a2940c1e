#pragma once

// Linear convolution of integer sequences through one big-integer product
// (Kronecker segmentation). Sequences are given sparsely as (index, value)
// pairs; each slot occupies w bits with w large enough that every output
// coefficient fits in w - 2 bits. A per-slot offset of 2^(w-1) makes every
// packed output digit nonnegative, so digits can be read off without borrows.

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "spmul/bigint.hpp"

namespace spmul::detail {

using IndexedInts = std::vector<std::pair<std::uint64_t, Int>>;

inline void or_bits(std::vector<std::uint64_t>& words, std::uint64_t bit_offset,
                    const Int& value, std::vector<std::uint64_t>& scratch) {
  std::size_t count = 0;
  scratch.resize((bit_length(value) + 63) / 64 + 1);
  mpz_export(scratch.data(), &count, -1, sizeof(std::uint64_t), 0, 0, value.get_mpz_t());
  const std::uint64_t base = bit_offset / 64;
  const unsigned shift = bit_offset % 64;
  for (std::size_t k = 0; k < count; ++k) {
    words[base + k] |= scratch[k] << shift;
    if (shift) words[base + k + 1] |= scratch[k] >> (64 - shift);
  }
}

inline Int import_words(const std::vector<std::uint64_t>& words) {
  Int v;
  mpz_import(v.get_mpz_t(), words.size(), -1, sizeof(std::uint64_t), 0, 0, words.data());
  return v;
}

// Packs the entries of one sign; magnitudes must be < 2^(w-2).
inline Int pack(const IndexedInts& seq, std::uint64_t length, std::uint64_t w, int sign) {
  std::vector<std::uint64_t> words((length * w + 63) / 64 + 2, 0);
  std::vector<std::uint64_t> scratch;
  for (const auto& [idx, v] : seq) {
    if (sgn(v) != sign) continue;
    or_bits(words, idx * w, sign > 0 ? v : Int(-v), scratch);
  }
  return import_words(words);
}

inline Int pack_signed(const IndexedInts& seq, std::uint64_t length, std::uint64_t w) {
  return pack(seq, length, w, 1) - pack(seq, length, w, -1);
}

inline Int max_abs(const IndexedInts& seq) {
  Int m = 0;
  for (const auto& [idx, v] : seq) {
    Int a = abs(v);
    if (a > m) m = a;
  }
  return m;
}

/// Nonzero coefficients of the linear convolution of a (length la) and b
/// (length lb), ordered by index.
inline IndexedInts packed_convolution(const IndexedInts& a, std::uint64_t la,
                                      const IndexedInts& b, std::uint64_t lb) {
  if (a.empty() || b.empty()) return {};
  const Int bound = Int(static_cast<unsigned long>(std::min(a.size(), b.size()))) *
                    max_abs(a) * max_abs(b);
  const std::uint64_t w = bit_length(bound) + 2;
  const std::uint64_t len = la + lb - 1;

  Int product = pack_signed(a, la, w) * pack_signed(b, lb, w);

  // offset 2^(w-1) in every output slot
  std::vector<std::uint64_t> offset_words((len * w + 63) / 64 + 2, 0);
  for (std::uint64_t k = 0; k < len; ++k) {
    const std::uint64_t bit = k * w + w - 1;
    offset_words[bit / 64] |= std::uint64_t{1} << (bit % 64);
  }
  product += import_words(offset_words);

  std::vector<std::uint64_t> words((len * w + 63) / 64 + 2, 0);
  std::size_t count = 0;
  mpz_export(words.data(), &count, -1, sizeof(std::uint64_t), 0, 0, product.get_mpz_t());

  IndexedInts out;
  const std::size_t digit_words = (w + 63) / 64;
  std::vector<std::uint64_t> digit(digit_words);
  const Int half = Int(1) << static_cast<mp_bitcnt_t>(w - 1);
  for (std::uint64_t k = 0; k < len; ++k) {
    const std::uint64_t start = k * w;
    // gather w bits starting at `start`
    bool only_offset = true;
    for (std::size_t j = 0; j < digit_words; ++j) {
      const std::uint64_t bit = start + 64 * j;
      const std::uint64_t wi = bit / 64;
      const unsigned sh = bit % 64;
      std::uint64_t v = words[wi] >> sh;
      if (sh) v |= words[wi + 1] << (64 - sh);
      const std::uint64_t remaining = w - 64 * j;
      if (remaining < 64) v &= (std::uint64_t{1} << remaining) - 1;
      digit[j] = v;
    }
    // the offset alone means a zero coefficient
    const std::uint64_t top_bit = w - 1;
    for (std::size_t j = 0; j < digit_words && only_offset; ++j) {
      std::uint64_t expect = (top_bit / 64 == j) ? (std::uint64_t{1} << (top_bit % 64)) : 0;
      if (digit[j] != expect) only_offset = false;
    }
    if (only_offset) continue;
    out.emplace_back(k, import_words(digit) - half);
  }
  return out;
}

}  // namespace spmul::detail
