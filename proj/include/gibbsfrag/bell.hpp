#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "gibbsfrag/partition.hpp"
#include "gibbsfrag/rational.hpp"
#include "gibbsfrag/weights.hpp"

namespace gibbsfrag {

// Sum over all partitions of [n] into k blocks of prod w_{|block|}.
Rational bell_brute(int n, int k, const WeightSequence& w, int cap = kDefaultEnumerationCap);
// Recursion on the size of the block holding element 1.
Rational bell_recursive(int n, int k, const WeightSequence& w);
// C(n-1,k-1) prod_{i=k+1}^{n} (i c + n b)
Rational bell_closed_bc(int n, int k, const Rational& b, const Rational& c);
// B_{n,2} = 1/2 sum_l C(n,l) w_l w_{n-l}
Rational bell_n2(int n, const WeightSequence& w);

// Triangular table B_{m,k}, 0 <= k <= m <= n_max, built by the recursion.
// B_{m,1} = w_m is only available for m <= w.n_max(); everything with k >= 2
// needs weights up to m-1 only.
class BellTable {
 public:
  BellTable(const WeightSequence& w, int n_max);

  int n_max() const { return n_max_; }
  const WeightSequence& weights() const { return w_; }
  const Rational& operator()(int n, int k) const;
  bool defined(int n, int k) const;
  // Y_n = sum_k B_{n,k}
  Rational complete(int n) const;

 private:
  WeightSequence w_;
  int n_max_;
  std::vector<std::vector<Rational>> b_;
  Rational zero_{0};
};

// C_n(x) = (1/n!) prod_{j=0}^{n-1} (b x + c x - c j)
struct ConvolutionFamily {
  Rational b, c;
  Rational operator()(int n, const Rational& x) const;
};

Rational conv_poly_bc(int n, const Rational& x, const Rational& b, const Rational& c);
// (n-1)! C_{n-1}(n)
Rational weight_from_conv(const ConvolutionFamily& family, int n);

// w_m == (2c + m b)/(m-1) * B_{m,2}(w) for 2 <= m <= n.
bool check_unique_recursion(const WeightSequence& w, const Rational& b, const Rational& c, int n);
// Solves the m = 2,3 cases for (b, c), then checks all m <= n.
std::optional<std::pair<Rational, Rational>> fit_unique_recursion(const WeightSequence& w, int n);

}  // namespace gibbsfrag
