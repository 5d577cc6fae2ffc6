#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace biplane {

// Fixed-capacity 0/1 row vector. Capacity covers v = 79 (order 11), the
// largest point count handled anywhere in the library.
class BitRow {
 public:
  static constexpr std::size_t kWords = 2;
  static constexpr std::size_t kCapacity = 64 * kWords;

  BitRow() = default;
  explicit BitRow(std::size_t length) : length_(length) {
    if (length > kCapacity) throw std::invalid_argument("BitRow: length exceeds capacity");
  }

  std::size_t size() const { return length_; }

  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }

  void set(std::size_t i, bool value = true) {
    const std::uint64_t m = std::uint64_t{1} << (i & 63);
    if (value)
      words_[i >> 6] |= m;
    else
      words_[i >> 6] &= ~m;
  }

  int weight() const {
    int w = 0;
    for (auto x : words_) w += std::popcount(x);
    return w;
  }

  std::uint64_t word(std::size_t w) const { return words_[w]; }
  const std::array<std::uint64_t, kWords>& words() const { return words_; }

  BitRow& operator&=(const BitRow& o) {
    for (std::size_t w = 0; w < kWords; ++w) words_[w] &= o.words_[w];
    return *this;
  }
  BitRow& operator|=(const BitRow& o) {
    for (std::size_t w = 0; w < kWords; ++w) words_[w] |= o.words_[w];
    return *this;
  }
  friend BitRow operator&(BitRow a, const BitRow& b) { return a &= b; }
  friend BitRow operator|(BitRow a, const BitRow& b) { return a |= b; }

  bool any() const {
    for (auto x : words_)
      if (x) return true;
    return false;
  }

  friend bool operator==(const BitRow&, const BitRow&) = default;

  // Lexicographic order of the '0'/'1' rendering: at the first differing
  // position the row holding 0 sorts first.
  friend bool operator<(const BitRow& a, const BitRow& b) {
    for (std::size_t w = 0; w < kWords; ++w) {
      const std::uint64_t diff = a.words_[w] ^ b.words_[w];
      if (diff) return (b.words_[w] >> std::countr_zero(diff)) & 1u;
    }
    return a.length_ < b.length_;
  }

  std::string to_string() const {
    std::string s(length_, '0');
    for (std::size_t i = 0; i < length_; ++i)
      if (test(i)) s[i] = '1';
    return s;
  }

  static BitRow from_string(std::string_view bits) {
    BitRow r(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (bits[i] == '1')
        r.set(i);
      else if (bits[i] != '0')
        throw std::invalid_argument("BitRow: expected '0' or '1'");
    }
    return r;
  }

  static BitRow from_positions(std::size_t length, std::initializer_list<std::size_t> ones) {
    BitRow r(length);
    for (auto i : ones) r.set(i);
    return r;
  }

 private:
  std::size_t length_ = 0;
  std::array<std::uint64_t, kWords> words_{};
};

// Scalar product |support(a) ∩ support(b)|.
inline int dot(const BitRow& a, const BitRow& b) {
  int d = 0;
  for (std::size_t w = 0; w < BitRow::kWords; ++w) d += std::popcount(a.word(w) & b.word(w));
  return d;
}

}  // namespace biplane
