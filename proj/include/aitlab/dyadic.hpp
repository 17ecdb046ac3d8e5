// Exact dyadic rationals num / 2^exp on an unbounded numerator.
#pragma once

#include "aitlab/bitstring.hpp"

#include <compare>
#include <cstdint>
#include <string>

namespace aitlab {

/// value = numerator / 2^exponent, kept canonical: numerator odd, or the pair (0, 0).
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(BigInt numerator, std::int64_t exponent);

  static Dyadic from_int(const BigInt& v) { return Dyadic(v, 0); }
  /// 2^-k (k may be negative).
  static Dyadic pow2_neg(std::int64_t k) { return Dyadic(BigInt(1), k); }

  const BigInt& numerator() const noexcept { return num_; }
  std::int64_t exponent() const noexcept { return exp_; }
  bool is_zero() const noexcept { return num_ == 0; }
  bool is_negative() const noexcept { return num_ < 0; }

  Dyadic operator+(const Dyadic& o) const;
  Dyadic operator-(const Dyadic& o) const;
  Dyadic& operator+=(const Dyadic& o) { return *this = *this + o; }
  Dyadic& operator-=(const Dyadic& o) { return *this = *this - o; }
  /// Multiplication by 2^k.
  Dyadic shifted(std::int64_t k) const { return Dyadic(num_, exp_ - k); }

  friend bool operator==(const Dyadic&, const Dyadic&) = default;
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

  /// First j bits of the binary expansion of a value in [0, 1) (truncation).
  BitString leading_bits(std::size_t j) const;

  /// Smallest integer c with value <= 2^c (value > 0).
  std::int64_t ceil_log2() const;
  /// Largest integer c with 2^c <= value (value > 0).
  std::int64_t floor_log2() const;
  /// floor(value * 2^k) for value >= 0.
  BigInt floor_scaled(std::int64_t k) const;
  /// ceil(value * 2^k) for value >= 0.
  BigInt ceil_scaled(std::int64_t k) const;

  /// "<num>/2^<exp>", the persisted form.
  std::string str() const;
  static Dyadic parse(const std::string& text);
  double to_double() const;

 private:
  void normalize();
  BigInt num_ = 0;
  std::int64_t exp_ = 0;
};

}  // namespace aitlab
