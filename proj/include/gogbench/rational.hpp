#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <string>

namespace gogbench {

/// Exact nonnegative-denominator rational for fitted constants.
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Fraction() = default;
  Fraction(std::int64_t n, std::int64_t d = 1) : num(n), den(d) {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }

  friend Fraction operator*(const Fraction& a, const Fraction& b) { return {a.num * b.num, a.den * b.den}; }
  friend Fraction operator-(const Fraction& a, const Fraction& b) {
    return {a.num * b.den - b.num * a.den, a.den * b.den};
  }
  friend Fraction operator+(const Fraction& a, const Fraction& b) {
    return {a.num * b.den + b.num * a.den, a.den * b.den};
  }
  friend bool operator==(const Fraction& a, const Fraction& b) { return a.num == b.num && a.den == b.den; }
  friend std::strong_ordering operator<=>(const Fraction& a, const Fraction& b) {
    return a.num * b.den <=> b.num * a.den;
  }
};

}  // namespace gogbench
