#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace amal {

// Exact rational with int64 parts. Only what the cancellation parameter
// needs: parsing, normalization and exact comparisons against integers.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  static Rational parse(const std::string& text) {
    const auto slash = text.find('/');
    try {
      if (slash == std::string::npos)
        return Rational(std::stoll(text), 1);
      return Rational(std::stoll(text.substr(0, slash)),
                      std::stoll(text.substr(slash + 1)));
    } catch (const std::exception&) {
      throw std::invalid_argument("Rational: cannot parse '" + text + "'");
    }
  }

  std::string str() const {
    return std::to_string(num) + "/" + std::to_string(den);
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator!=(const Rational& a, const Rational& b) {
    return !(a == b);
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return a.num * b.den < b.num * a.den;
  }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return a.num * b.den <= b.num * a.den;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) {
    return b <= a;
  }
};

}  // namespace amal
