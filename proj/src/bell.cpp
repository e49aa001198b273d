#include "gibbsfrag/bell.hpp"

#include "gibbsfrag/errors.hpp"

namespace gibbsfrag {

Rational bell_brute(int n, int k, const WeightSequence& w, int cap) {
  if (n > cap) throw CapacityError("bell_brute: n=" + std::to_string(n) + " exceeds cap " + std::to_string(cap));
  if (k < 1 || k > n) return 0;
  Rational total = 0;
  std::vector<int> sizes(static_cast<std::size_t>(k));
  for_each_restricted_growth_string(n, k, [&](const std::vector<int>& a) {
    std::fill(sizes.begin(), sizes.end(), 0);
    for (int label : a) ++sizes[static_cast<std::size_t>(label)];
    Rational prod = 1;
    for (int s : sizes) prod *= w[s];
    total += prod;
  });
  return total;
}

Rational bell_recursive(int n, int k, const WeightSequence& w) {
  if (n < 0 || k < 0) throw ArgumentError("bell_recursive: negative index");
  if (k > n) return 0;
  if (n == 0) return 1;
  if (k == 0) return 0;
  return BellTable(w, n)(n, k);
}

Rational bell_closed_bc(int n, int k, const Rational& b, const Rational& c) {
  if (n < 1 || k < 1 || k > n) throw ArgumentError("bell_closed_bc: need 1 <= k <= n");
  Rational prod(binomial(n - 1, k - 1));
  for (int i = k + 1; i <= n; ++i) prod *= i * c + n * b;
  return prod;
}

Rational bell_n2(int n, const WeightSequence& w) {
  if (n < 2) return 0;
  Rational s = 0;
  for (int l = 1; l <= n - 1; ++l) s += Rational(binomial(n, l)) * w[l] * w[n - l];
  return s / 2;
}

BellTable::BellTable(const WeightSequence& w, int n_max) : w_(w), n_max_(n_max) {
  if (n_max < 0) throw ArgumentError("BellTable: negative size");
  if (n_max - 1 > w.n_max()) {
    throw ArgumentError("BellTable: weights known up to " + std::to_string(w.n_max()) + ", need " +
                        std::to_string(n_max - 1));
  }
  PascalTriangle pascal(std::max(n_max, 1));
  b_.assign(static_cast<std::size_t>(n_max) + 1, {});
  b_[0] = {Rational(1)};
  for (int m = 1; m <= n_max; ++m) {
    auto& row = b_[static_cast<std::size_t>(m)];
    row.assign(static_cast<std::size_t>(m) + 1, Rational(0));
    if (m <= w.n_max()) row[1] = w[m];
    for (int k = 2; k <= m; ++k) {
      Rational s = 0;
      for (int l = 1; l <= m - k + 1; ++l) {
        const Rational& rest = b_[static_cast<std::size_t>(m - l)][static_cast<std::size_t>(k - 1)];
        if (rest == 0) continue;
        s += Rational(pascal(m - 1, l - 1)) * w[l] * rest;
      }
      row[static_cast<std::size_t>(k)] = s;
    }
  }
}

bool BellTable::defined(int n, int k) const {
  if (n < 0 || n > n_max_ || k < 0) return false;
  return !(k == 1 && n > w_.n_max());
}

const Rational& BellTable::operator()(int n, int k) const {
  if (n < 0 || n > n_max_) throw ArgumentError("BellTable: n=" + std::to_string(n) + " outside table");
  if (k < 0 || k > n) return zero_;
  if (!defined(n, k)) throw ArgumentError("BellTable: B_{n,1} needs w_" + std::to_string(n));
  return b_[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

Rational BellTable::complete(int n) const {
  if (n == 0) return 1;
  Rational s = 0;
  for (int k = 1; k <= n; ++k) s += (*this)(n, k);
  return s;
}

Rational ConvolutionFamily::operator()(int n, const Rational& x) const { return conv_poly_bc(n, x, b, c); }

Rational conv_poly_bc(int n, const Rational& x, const Rational& b, const Rational& c) {
  if (n < 0) throw ArgumentError("conv_poly_bc: n must be nonnegative");
  Rational prod = 1;
  for (int j = 0; j < n; ++j) prod *= b * x + c * x - c * j;
  return prod / Rational(factorial(n));
}

Rational weight_from_conv(const ConvolutionFamily& family, int n) {
  if (n < 1) throw ArgumentError("weight_from_conv: n must be positive");
  return Rational(factorial(n - 1)) * family(n - 1, Rational(n));
}

bool check_unique_recursion(const WeightSequence& w, const Rational& b, const Rational& c, int n) {
  if (n > w.n_max()) throw ArgumentError("check_unique_recursion: weights too short");
  for (int m = 2; m <= n; ++m) {
    Rational rhs = (2 * c + m * b) / (m - 1) * bell_n2(m, w);
    if (w[m] != rhs) return false;
  }
  return true;
}

std::optional<std::pair<Rational, Rational>> fit_unique_recursion(const WeightSequence& w, int n) {
  if (n < 3 || w.n_max() < 3) throw ArgumentError("fit_unique_recursion: need weights up to 3");
  // m=2: w_2 = (2c+2b) B_{2,2}      -> b + c = w_2/2
  // m=3: w_3 = (2c+3b)/2 * B_{3,2}  -> 2c + 3b = 2 w_3 / B_{3,2}
  Rational s = w[2] / 2;
  Rational t = 2 * w[3] / bell_n2(3, w);
  Rational b = t - 2 * s;
  Rational c = s - b;
  if (!check_unique_recursion(w, b, c, n)) return std::nullopt;
  return std::make_pair(b, c);
}

}  // namespace gibbsfrag
