#pragma once

// Word-level helpers for fixed-width bitset rows stored as spans of uint64_t.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>

namespace dotvc::bits {

using Word = std::uint64_t;
using Row = std::span<const Word>;

constexpr std::size_t words_for(std::size_t n) { return (n + 63) / 64; }

inline bool test(Row r, std::size_t i) { return (r[i >> 6] >> (i & 63)) & 1u; }

inline void set(std::span<Word> r, std::size_t i) { r[i >> 6] |= Word{1} << (i & 63); }

inline std::uint64_t count(Row r) {
  std::uint64_t c = 0;
  for (Word w : r) c += static_cast<std::uint64_t>(std::popcount(w));
  return c;
}

inline std::uint64_t count_and(Row a, Row b) {
  std::uint64_t c = 0;
  for (std::size_t i = 0; i < a.size(); ++i) c += static_cast<std::uint64_t>(std::popcount(a[i] & b[i]));
  return c;
}

// Calls f(index) for every set bit of `word_at(i)` over i in [0, n_words),
// in increasing index order. f may return false to stop early; the return
// value reports whether the scan completed.
template <class WordAt, class F>
bool for_each(std::size_t n_words, WordAt word_at, F&& f) {
  for (std::size_t i = 0; i < n_words; ++i) {
    Word w = word_at(i);
    while (w) {
      const std::size_t bit = static_cast<std::size_t>(std::countr_zero(w));
      if (!f(i * 64 + bit)) return false;
      w &= w - 1;
    }
  }
  return true;
}

template <class F>
bool for_each(Row r, F&& f) {
  return for_each(r.size(), [r](std::size_t i) { return r[i]; }, std::forward<F>(f));
}

// Index of the k-th (0-based) set bit of word_at over [0, n_words), or
// `npos` when there are not enough bits.
inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

template <class WordAt>
std::size_t nth(std::size_t n_words, WordAt word_at, std::uint64_t k) {
  for (std::size_t i = 0; i < n_words; ++i) {
    Word w = word_at(i);
    const auto c = static_cast<std::uint64_t>(std::popcount(w));
    if (k < c) {
      while (k--) w &= w - 1;
      return i * 64 + static_cast<std::size_t>(std::countr_zero(w));
    }
    k -= c;
  }
  return npos;
}

}  // namespace dotvc::bits
