#pragma once

#include <cstdint>
#include <numeric>
#include <string>

namespace nilaw {

// Reduced fraction with a positive denominator. Big enough for every count
// this tool produces (counts are budget-bounded well below 2^63).
struct Rational {
  int64_t num = 0;
  int64_t den = 1;

  Rational() = default;
  Rational(int64_t n, int64_t d) : num(n), den(d) { reduce(); }

  void reduce() {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    if (num == 0) den = 1;
  }

  double value() const { return double(num) / double(den); }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }

  friend Rational operator*(const Rational& a, const Rational& b) {
    Rational r;
    Rational x(a.num, b.den), y(b.num, a.den);
    r.num = x.num * y.num;
    r.den = x.den * y.den;
    r.reduce();
    return r;
  }

  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

}  // namespace nilaw
