#include "gibbsfrag/rational.hpp"

#include <cctype>

#include "gibbsfrag/errors.hpp"

namespace gibbsfrag {

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const BigInt& z) { return z.get_str(); }

Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw ArgumentError("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

namespace {

BigInt parse_integer(std::string_view s) {
  if (s.empty()) throw ArgumentError("empty integer literal");
  std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (i == s.size()) throw ArgumentError("malformed integer literal");
  for (std::size_t j = i; j < s.size(); ++j) {
    if (!std::isdigit(static_cast<unsigned char>(s[j]))) {
      throw ArgumentError("malformed integer literal: " + std::string(s));
    }
  }
  std::string digits(s[0] == '+' ? s.substr(1) : s);
  return BigInt(digits);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw ArgumentError("empty rational literal");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    return make_rational(parse_integer(text.substr(0, slash)), parse_integer(text.substr(slash + 1)));
  }

  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    exponent = parse_integer(text.substr(e + 1)).get_si();
    text = text.substr(0, e);
  }
  std::string mantissa(text);
  if (auto dot = mantissa.find('.'); dot != std::string::npos) {
    exponent -= static_cast<long>(mantissa.size() - dot - 1);
    mantissa.erase(dot, 1);
  }
  Rational value(parse_integer(mantissa));
  return value * power(Rational(10), exponent);
}

BigInt factorial(long n) {
  if (n < 0) throw ArgumentError("factorial of a negative number");
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

BigInt binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

Rational power(const Rational& base, long exponent) {
  if (exponent < 0) {
    if (base == 0) throw ArgumentError("zero to a negative power");
    return power(Rational(1) / base, -exponent);
  }
  BigInt num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(exponent));
  return make_rational(num, den);
}

BigInt lcm(const BigInt& a, const BigInt& b) {
  BigInt r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

double to_double(const Rational& q) { return q.get_d(); }

PascalTriangle::PascalTriangle(int n_max) {
  if (n_max < 0) throw ArgumentError("PascalTriangle: negative size");
  rows_.resize(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) {
    auto& row = rows_[static_cast<std::size_t>(n)];
    row.assign(static_cast<std::size_t>(n) + 1, BigInt(1));
    for (int k = 1; k < n; ++k) {
      row[static_cast<std::size_t>(k)] =
          rows_[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(k - 1)] +
          rows_[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(k)];
    }
  }
}

const BigInt& PascalTriangle::operator()(int n, int k) const {
  if (n < 0 || n > n_max()) throw ArgumentError("PascalTriangle: row out of range");
  if (k < 0 || k > n) return zero_;
  return rows_[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

}  // namespace gibbsfrag
