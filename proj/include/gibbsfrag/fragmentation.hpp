#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gibbsfrag/bell.hpp"
#include "gibbsfrag/gibbs.hpp"
#include "gibbsfrag/partition.hpp"
#include "gibbsfrag/rng.hpp"
#include "gibbsfrag/weights.hpp"

namespace gibbsfrag {

// Pi_1 = {[n]}, ..., Pi_n = singletons; each step splits one block in two.
struct FragPath {
  int n = 0;
  std::vector<SetPartition> states;  // states[k-1] = Pi_k

  const SetPartition& at(int k) const { return states.at(static_cast<std::size_t>(k - 1)); }
  // throws ArgumentError describing the first broken invariant
  void validate() const;

  auto operator<=>(const FragPath&) const = default;
};

inline constexpr int kPathLawCap = 7;

// Recursive Gibbs splitting with linear selection.
//
// Needs w_j >= 0 for j < n and B_{m,2}(w) > 0 for 2 <= m <= n (the usual
// case is all w_j > 0).
class FragmentationChain {
 public:
  FragmentationChain(const WeightSequence& w, int n);

  int n() const { return n_; }
  const WeightSequence& weights() const { return w_; }
  const Rational& b2(int m) const { return b2_.at(static_cast<std::size_t>(m)); }

  // unordered two-block split of a block (size >= 2)
  std::pair<std::vector<int>, std::vector<int>> split(const std::vector<int>& block, RandomStream& rng) const;
  // P(split of a size-m block into a part of size l and one of size m-l) for a given labelled split
  Rational split_prob(int l, int m) const;

  FragPath run(RandomStream& rng) const;

 private:
  WeightSequence w_;
  int n_;
  std::vector<Rational> b2_;                 // B_{m,2}, m = 0..n
  std::vector<std::vector<BigInt>> size_w_;  // integer-scaled weights on l for each m
};

std::pair<std::vector<int>, std::vector<int>> gibbs_split(const std::vector<int>& block, const WeightSequence& w,
                                                          RandomStream& rng);
// index of the block to split next; probability proportional to size - 1
int linear_select(const SetPartition& pi, RandomStream& rng);
FragPath run_fragmentation(int n, const WeightSequence& w, RandomStream& rng);

struct PathLaw {
  int n = 0;
  RationalDist<FragPath> paths;

  RationalDist<SetPartition> marginal(int k) const;
  // joint law of (Pi_{k-1}, Pi_k)
  RationalDist<std::pair<SetPartition, SetPartition>> pair_marginal(int k) const;
  // P(Pi_{k-1} = x | Pi_k = y), keyed by (y, x)
  std::map<std::pair<SetPartition, SetPartition>, Rational> reversed_transitions(int k) const;
};

PathLaw exact_path_law(int n, const WeightSequence& w, int cap = kPathLawCap);

// f(m) = (m-1) w_m / B_{m,2},  g(n,k) = (n-k+1) B_{n,k-1} / B_{n,k}
struct SplitFunction {
  int n = 0;
  std::map<int, Rational> f;
  std::map<std::pair<int, int>, Rational> g;
};

SplitFunction split_function(int n, const WeightSequence& w);
// Same, then asserts f(m) = 2c + m b and g(n,k) = (k-1)(kc + nb); NumericError on mismatch.
SplitFunction split_function_bc(int n, const Rational& b, const Rational& c);

struct AffineKernel {
  Rational a, b;  // K(i,j) = a + b (i + j)

  static AffineKernel from_bc(const Rational& b, const Rational& c) { return {2 * c, b}; }
  Rational operator()(int i, int j) const { return a + b * (i + j); }
  bool operator==(const AffineKernel&) const = default;
};

// Result of comparing exact reversed transitions with a kernel.
struct ReversedCheck {
  bool ok = true;
  std::string detail;  // first mismatch, if any
};

ReversedCheck reversed_transition_check(const PathLaw& law, const AffineKernel& kernel);
bool reversed_transition_check(int n, const Rational& b, const Rational& c);

// Looks for (a, b) with reversed merge probabilities proportional to a + b(i+j)
// at every reachable state. Normalized so that a + 2b = 1 (or b = 1 if that
// is impossible). nullopt when the reversed chain is not of that form.
std::optional<AffineKernel> fit_affine_reversed_kernel(const PathLaw& law);

// sum over pairs of f(n_i + n_j), f(m) = 2c + m b, is 2(3c + n b) for every composition of n into 3 parts
bool constant_sum_check(int n, const Rational& b, const Rational& c);

}  // namespace gibbsfrag
