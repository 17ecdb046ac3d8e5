// Finite binary words and the natural association between words and integers.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <algorithm>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace aitlab {

using BigInt = boost::multiprecision::cpp_int;

/// A finite binary word. The empty word is valid.
///
/// Bits are kept as the characters '0' and '1' so that words print verbatim
/// and hash cheaply; short words (programs, n-bit strings) stay in the small
/// string buffer.
class BitString {
 public:
  BitString() = default;

  /// Parses a word made of '0' and '1'. The text "-" denotes the empty word.
  static BitString parse(std::string_view text) {
    BitString w;
    if (text == "-") return w;
    w.bits_.reserve(text.size());
    for (char c : text) {
      if (c != '0' && c != '1') throw std::invalid_argument("not a bit string: " + std::string(text));
      w.bits_.push_back(c);
    }
    return w;
  }

  /// Low `width` bits of `value`, most significant first.
  static BitString from_uint(std::uint64_t value, std::size_t width) {
    BitString w;
    w.bits_.resize(width);
    for (std::size_t i = 0; i < width; ++i) w.bits_[width - 1 - i] = ((value >> i) & 1U) ? '1' : '0';
    return w;
  }

  static BitString repeat(bool bit, std::size_t count) {
    BitString w;
    w.bits_.assign(count, bit ? '1' : '0');
    return w;
  }

  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }
  bool operator[](std::size_t i) const noexcept { return bits_[i] == '1'; }

  void push_back(bool bit) { bits_.push_back(bit ? '1' : '0'); }
  void append(const BitString& other) { bits_ += other.bits_; }
  void reserve(std::size_t n) { bits_.reserve(n); }

  BitString prefix(std::size_t len) const {
    BitString w;
    w.bits_ = bits_.substr(0, len);
    return w;
  }
  BitString substr(std::size_t pos, std::size_t len) const {
    BitString w;
    w.bits_ = bits_.substr(pos, len);
    return w;
  }
  bool is_prefix_of(const BitString& other) const noexcept {
    return size() <= other.size() && other.bits_.compare(0, size(), bits_) == 0;
  }

  /// Interprets the word as an unsigned binary numeral (requires size() <= 64).
  std::uint64_t to_uint() const {
    if (size() > 64) throw std::out_of_range("BitString::to_uint: word longer than 64 bits");
    std::uint64_t v = 0;
    for (char c : bits_) v = (v << 1) | (c == '1' ? 1U : 0U);
    return v;
  }

  /// The word itself, or "-" for the empty word (the persisted form).
  std::string str() const { return bits_.empty() ? std::string("-") : bits_; }
  const std::string& raw() const noexcept { return bits_; }

  friend BitString operator+(BitString a, const BitString& b) {
    a.append(b);
    return a;
  }
  friend bool operator==(const BitString&, const BitString&) = default;
  /// Plain lexicographic order (a proper prefix sorts first).
  friend std::strong_ordering operator<=>(const BitString& a, const BitString& b) {
    const int c = a.bits_.compare(b.bits_);
    return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  std::string bits_;
};

/// Length-then-lexicographic order: the order of the natural association.
inline bool shortlex_less(const BitString& a, const BitString& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

/// Natural association: ε → 0, 0 → 1, 1 → 2, 00 → 3, ...
/// The index of w is 2^l(w) - 1 + (w read in binary).
inline BigInt nat_encode(const BitString& w) {
  BigInt v = 1;
  for (std::size_t i = 0; i < w.size(); ++i) v = (v << 1) | (w[i] ? 1 : 0);
  return v - 1;
}

/// Inverse of nat_encode.
inline BitString nat_decode(const BigInt& value) {
  if (value < 0) throw std::domain_error("nat_decode: negative index");
  const BigInt shifted = value + 1;
  const std::size_t len = boost::multiprecision::msb(shifted);  // floor(log2(value+1))
  BitString w;
  w.reserve(len);
  for (std::size_t i = len; i-- > 0;) w.push_back(boost::multiprecision::bit_test(shifted, static_cast<unsigned>(i)));
  return w;
}

inline BitString nat_decode(std::uint64_t value) { return nat_decode(BigInt(value)); }

/// The length convention used for logarithms of integers: log k := l(k),
/// the length of the word associated with k.
inline std::size_t nat_length(std::uint64_t value) { return nat_decode(value).size(); }

/// A pair (u, v) where u is a prefix of v (or equal to it), if the words are
/// not a prefix-free set.
inline std::optional<std::pair<BitString, BitString>> prefix_violation(std::vector<BitString> words) {
  std::sort(words.begin(), words.end());
  // In lexicographic order a word's extensions directly follow it.
  for (std::size_t i = 1; i < words.size(); ++i)
    if (words[i - 1].is_prefix_of(words[i])) return std::make_pair(words[i - 1], words[i]);
  return std::nullopt;
}

}  // namespace aitlab

template <>
struct std::hash<aitlab::BitString> {
  std::size_t operator()(const aitlab::BitString& w) const noexcept { return std::hash<std::string>{}(w.raw()); }
};
