#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "mav/error.hpp"

namespace mav {

/// Fixed-length 0/1 string, word-packed. Position j lives in word j/64 at
/// bit j%64; bits past size() are always zero so popcounts need no masking.
///
/// Ordering is lexicographic over positions 0..m-1 with 0 < 1, i.e. the
/// order of to_string(). Vectors of different lengths compare by length
/// first; in practice they are never mixed.
class BitVector {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  BitVector() = default;
  explicit BitVector(std::size_t size) : size_(size), words_(word_count(size), 0) {}

  static BitVector from_string(std::string_view bits) {
    BitVector v(bits.size());
    for (std::size_t j = 0; j < bits.size(); ++j) {
      if (bits[j] == '1') {
        v.set(j, true);
      } else if (bits[j] != '0') {
        throw InputError("bit string contains '" + std::string(1, bits[j]) + "'");
      }
    }
    return v;
  }

  // Bit j of `mask` becomes position j. Requires size <= 64.
  static BitVector from_mask(Word mask, std::size_t size) {
    if (size > kWordBits) throw InputError("from_mask supports at most 64 positions");
    BitVector v(size);
    if (size > 0) v.words_[0] = size == kWordBits ? mask : (mask & ((Word{1} << size) - 1));
    return v;
  }

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  bool get(std::size_t j) const noexcept { return (words_[j / kWordBits] >> (j % kWordBits)) & 1U; }
  bool operator[](std::size_t j) const noexcept { return get(j); }

  void set(std::size_t j, bool value) noexcept {
    const Word bit = Word{1} << (j % kWordBits);
    if (value) {
      words_[j / kWordBits] |= bit;
    } else {
      words_[j / kWordBits] &= ~bit;
    }
  }

  void flip(std::size_t j) noexcept { words_[j / kWordBits] ^= Word{1} << (j % kWordBits); }

  std::size_t ones_count() const noexcept {
    std::size_t total = 0;
    for (Word w : words_) total += static_cast<std::size_t>(std::popcount(w));
    return total;
  }

  const std::vector<Word>& words() const noexcept { return words_; }

  std::string to_string() const {
    std::string out(size_, '0');
    for (std::size_t j = 0; j < size_; ++j) {
      if (get(j)) out[j] = '1';
    }
    return out;
  }

  // Positions [0, length).
  BitVector prefix(std::size_t length) const { return slice(0, length); }
  // Positions [from, size()).
  BitVector suffix(std::size_t from) const { return slice(from, size_ - from); }

  BitVector slice(std::size_t from, std::size_t length) const {
    if (from + length > size_) throw InputError("slice out of range");
    BitVector out(length);
    for (std::size_t j = 0; j < length; ++j) {
      if (get(from + j)) out.set(j, true);
    }
    return out;
  }

  friend BitVector concat(const BitVector& head, const BitVector& tail) {
    BitVector out(head.size_ + tail.size_);
    std::copy(head.words_.begin(), head.words_.end(), out.words_.begin());
    for (std::size_t j = 0; j < tail.size_; ++j) {
      if (tail.get(j)) out.set(head.size_ + j, true);
    }
    return out;
  }

  friend BitVector operator&(BitVector a, const BitVector& b) {
    a.require_same_size(b);
    for (std::size_t w = 0; w < a.words_.size(); ++w) a.words_[w] &= b.words_[w];
    return a;
  }
  friend BitVector operator|(BitVector a, const BitVector& b) {
    a.require_same_size(b);
    for (std::size_t w = 0; w < a.words_.size(); ++w) a.words_[w] |= b.words_[w];
    return a;
  }
  friend BitVector operator^(BitVector a, const BitVector& b) {
    a.require_same_size(b);
    for (std::size_t w = 0; w < a.words_.size(); ++w) a.words_[w] ^= b.words_[w];
    return a;
  }

  friend bool operator==(const BitVector&, const BitVector&) = default;

  friend std::strong_ordering operator<=>(const BitVector& a, const BitVector& b) noexcept {
    if (a.size_ != b.size_) return a.size_ <=> b.size_;
    for (std::size_t w = 0; w < a.words_.size(); ++w) {
      const Word diff = a.words_[w] ^ b.words_[w];
      if (diff != 0) {
        const int bit = std::countr_zero(diff);
        return ((a.words_[w] >> bit) & 1U) ? std::strong_ordering::greater : std::strong_ordering::less;
      }
    }
    return std::strong_ordering::equal;
  }

  void require_same_size(const BitVector& other) const {
    if (size_ != other.size_) {
      throw InputError("bit vector length mismatch: " + std::to_string(size_) + " vs " +
                       std::to_string(other.size_));
    }
  }

 private:
  static std::size_t word_count(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }

  std::size_t size_ = 0;
  std::vector<Word> words_;
};

inline std::ostream& operator<<(std::ostream& out, const BitVector& x) { return out << x.to_string(); }

inline std::size_t hamming(const BitVector& x, const BitVector& y) {
  x.require_same_size(y);
  const auto& xw = x.words();
  const auto& yw = y.words();
  std::size_t total = 0;
  for (std::size_t w = 0; w < xw.size(); ++w) total += static_cast<std::size_t>(std::popcount(xw[w] ^ yw[w]));
  return total;
}

}  // namespace mav
