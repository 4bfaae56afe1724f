#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ibg {

using Word = std::uint64_t;

inline std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }

inline bool test_bit(std::span<const Word> row, std::size_t i) {
  return (row[i >> 6] >> (i & 63)) & 1u;
}
inline void set_bit(std::span<Word> row, std::size_t i) { row[i >> 6] |= Word{1} << (i & 63); }
inline void clear_bit(std::span<Word> row, std::size_t i) { row[i >> 6] &= ~(Word{1} << (i & 63)); }

// Calls f(index) for every set bit of w, where w sits at word position base.
template <class F>
inline void for_each_bit_in_word(Word w, std::size_t base, F&& f) {
  while (w) {
    int t = std::countr_zero(w);
    f(base * 64 + static_cast<std::size_t>(t));
    w &= w - 1;
  }
}

template <class F>
inline void for_each_bit(std::span<const Word> row, F&& f) {
  for (std::size_t k = 0; k < row.size(); ++k) for_each_bit_in_word(row[k], k, f);
}

inline std::size_t popcount(std::span<const Word> row) {
  std::size_t c = 0;
  for (Word w : row) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

// Dense square bit matrix; row i is a bitset over columns.
class BitMatrix {
 public:
  BitMatrix() = default;
  explicit BitMatrix(std::size_t n) : n_(n), stride_(words_for(n)), data_(n * stride_, 0) {}

  std::size_t size() const { return n_; }
  std::size_t stride() const { return stride_; }

  std::span<Word> row(std::size_t i) { return {data_.data() + i * stride_, stride_}; }
  std::span<const Word> row(std::size_t i) const { return {data_.data() + i * stride_, stride_}; }

  bool test(std::size_t i, std::size_t j) const { return test_bit(row(i), j); }
  void set(std::size_t i, std::size_t j) { set_bit(row(i), j); }
  void reset(std::size_t i, std::size_t j) { clear_bit(row(i), j); }
  void clear() { std::fill(data_.begin(), data_.end(), 0); }

 private:
  std::size_t n_ = 0;
  std::size_t stride_ = 0;
  std::vector<Word> data_;
};

}  // namespace ibg
