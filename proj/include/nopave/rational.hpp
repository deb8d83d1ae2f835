#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nopave {

/// Exact rational on 64-bit integers, always normalized: positive
/// denominator, gcd(|num|, den) == 1. Arithmetic runs through 128-bit
/// intermediates and throws std::overflow_error if a reduced result does not
/// fit back into 64 bits.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(std::int64_t num, std::int64_t den = 1) {
    normalize(static_cast<__int128>(num), static_cast<__int128>(den));
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  double value() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  /// "num/den", or just "num" for integers.
  std::string str() const {
    std::string s = std::to_string(num_);
    if (den_ != 1) s += "/" + std::to_string(den_);
    return s;
  }

  /// Inverse of str(); accepts "p" and "p/q".
  static Rational parse(std::string_view text);

  friend Rational operator+(const Rational& a, const Rational& b) {
    return make(i128(a.num_) * b.den_ + i128(b.num_) * a.den_,
                i128(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return make(i128(a.num_) * b.den_ - i128(b.num_) * a.den_,
                i128(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return make(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::invalid_argument("Rational: division by zero");
    return make(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }
  Rational operator-() const { return make(-i128(num_), i128(den_)); }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) {
    return !(a == b);
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return !(b < a);
  }
  friend bool operator>=(const Rational& a, const Rational& b) {
    return !(a < b);
  }

 private:
  using i128 = __int128;

  static Rational make(i128 num, i128 den) {
    Rational r;
    r.normalize(num, den);
    return r;
  }

  static i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      i128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  void normalize(i128 num, i128 den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    if (num == 0) {
      den = 1;
    } else {
      i128 g = gcd128(num, den);
      num /= g;
      den /= g;
    }
    constexpr i128 kMax = INT64_MAX;
    constexpr i128 kMin = INT64_MIN;
    if (num > kMax || num < kMin || den > kMax)
      throw std::overflow_error("Rational: value does not fit in 64 bits");
    num_ = static_cast<std::int64_t>(num);
    den_ = static_cast<std::int64_t>(den);
  }

  std::int64_t num_;
  std::int64_t den_;
};

inline Rational Rational::parse(std::string_view text) {
  auto to_int = [](std::string_view s) {
    if (s.empty()) throw std::invalid_argument("Rational: empty integer");
    std::size_t pos = 0;
    long long v = std::stoll(std::string(s), &pos);
    if (pos != s.size())
      throw std::invalid_argument("Rational: trailing characters in '" +
                                  std::string(s) + "'");
    return v;
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(to_int(text));
  return Rational(to_int(text.substr(0, slash)),
                  to_int(text.substr(slash + 1)));
}

}  // namespace nopave
