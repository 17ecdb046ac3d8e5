#include "aitlab/dyadic.hpp"

#include <cmath>
#include <stdexcept>

namespace aitlab {

namespace mp = boost::multiprecision;

Dyadic::Dyadic(BigInt numerator, std::int64_t exponent) : num_(std::move(numerator)), exp_(exponent) { normalize(); }

void Dyadic::normalize() {
  if (num_ == 0) {
    exp_ = 0;
    return;
  }
  const BigInt mag = mp::abs(num_);
  const auto tz = static_cast<std::int64_t>(mp::lsb(mag));
  if (tz > 0) {
    num_ >>= static_cast<unsigned>(tz);  // arithmetic shift on the exact multiple
    exp_ -= tz;
  }
}

namespace {
// Brings both operands to the larger exponent.
void align(const Dyadic& a, const Dyadic& b, BigInt& na, BigInt& nb, std::int64_t& e) {
  e = std::max(a.exponent(), b.exponent());
  na = a.numerator();
  nb = b.numerator();
  if (e > a.exponent()) na <<= static_cast<unsigned>(e - a.exponent());
  if (e > b.exponent()) nb <<= static_cast<unsigned>(e - b.exponent());
}
}  // namespace

Dyadic Dyadic::operator+(const Dyadic& o) const {
  BigInt a, b;
  std::int64_t e;
  align(*this, o, a, b, e);
  return Dyadic(a + b, e);
}

Dyadic Dyadic::operator-(const Dyadic& o) const {
  BigInt a, b;
  std::int64_t e;
  align(*this, o, a, b, e);
  return Dyadic(a - b, e);
}

std::strong_ordering operator<=>(const Dyadic& x, const Dyadic& y) {
  BigInt a, b;
  std::int64_t e;
  align(x, y, a, b, e);
  if (a < b) return std::strong_ordering::less;
  if (a > b) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

BigInt Dyadic::floor_scaled(std::int64_t k) const {
  if (num_ < 0) throw std::domain_error("Dyadic::floor_scaled: negative value");
  const std::int64_t shift = k - exp_;
  if (shift >= 0) return num_ << static_cast<unsigned>(shift);
  return num_ >> static_cast<unsigned>(-shift);
}

BitString Dyadic::leading_bits(std::size_t j) const {
  if (num_ < 0 || *this >= Dyadic::from_int(1)) throw std::domain_error("Dyadic::leading_bits: value outside [0, 1)");
  const BigInt scaled = floor_scaled(static_cast<std::int64_t>(j));
  BitString w;
  w.reserve(j);
  for (std::size_t i = j; i-- > 0;) w.push_back(mp::bit_test(scaled, static_cast<unsigned>(i)));
  return w;
}

std::int64_t Dyadic::ceil_log2() const {
  if (num_ <= 0) throw std::domain_error("Dyadic::ceil_log2: non-positive value");
  // num odd (or 1): log2(num) is an integer only for num == 1.
  const auto msb = static_cast<std::int64_t>(mp::msb(num_));
  const std::int64_t ceil_num = (num_ == 1) ? 0 : msb + 1;
  return ceil_num - exp_;
}

std::int64_t Dyadic::floor_log2() const {
  if (num_ <= 0) throw std::domain_error("Dyadic::floor_log2: non-positive value");
  return static_cast<std::int64_t>(mp::msb(num_)) - exp_;
}

BigInt Dyadic::ceil_scaled(std::int64_t k) const {
  const BigInt down = floor_scaled(k);
  return Dyadic(down, k) == *this ? down : down + 1;
}

std::string Dyadic::str() const { return num_.str() + "/2^" + std::to_string(exp_); }

Dyadic Dyadic::parse(const std::string& text) {
  const auto slash = text.find("/2^");
  if (slash == std::string::npos) throw std::invalid_argument("malformed dyadic: " + text);
  try {
    return Dyadic(BigInt(text.substr(0, slash)), std::stoll(text.substr(slash + 3)));
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed dyadic: " + text);
  }
}

double Dyadic::to_double() const { return std::ldexp(num_.convert_to<double>(), static_cast<int>(-exp_)); }

}  // namespace aitlab
