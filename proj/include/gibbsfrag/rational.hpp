#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace gibbsfrag {

using BigInt = mpz_class;
using Rational = mpq_class;

// Canonical text: "p/q", or "p" when the value is an integer.
std::string to_string(const Rational& q);
std::string to_string(const BigInt& z);

// Accepts "p/q", "p", or a finite decimal such as "-0.6" or "1e-3".
Rational parse_rational(std::string_view text);

// num/den reduced to lowest terms. Throws ArgumentError when den == 0.
Rational make_rational(const BigInt& num, const BigInt& den);

BigInt factorial(long n);
BigInt binomial(long n, long k);  // 0 outside 0 <= k <= n
Rational power(const Rational& base, long exponent);
BigInt lcm(const BigInt& a, const BigInt& b);

double to_double(const Rational& q);

// Cached Pascal triangle; rows 0..n_max.
class PascalTriangle {
 public:
  explicit PascalTriangle(int n_max);

  int n_max() const { return static_cast<int>(rows_.size()) - 1; }
  const BigInt& operator()(int n, int k) const;

 private:
  std::vector<std::vector<BigInt>> rows_;
  BigInt zero_{0};
};

}  // namespace gibbsfrag
