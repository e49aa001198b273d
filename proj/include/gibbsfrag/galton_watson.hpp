#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gibbsfrag/fragmentation.hpp"
#include "gibbsfrag/gibbs.hpp"
#include "gibbsfrag/plane_tree.hpp"
#include "gibbsfrag/real.hpp"
#include "gibbsfrag/rng.hpp"
#include "gibbsfrag/sampling.hpp"

namespace gibbsfrag {

enum class OffspringFamily { poisson, binomial, negbinomial, bc, table };

// Offspring law kept as exact ratios rho_j = p_j / p_0. For families with
// infinite support the ratios are stored for j < n_max, which is all a tree
// with at most n_max nodes can use.
class OffspringDist {
 public:
  static OffspringDist poisson(const Rational& b, int n_max);
  static OffspringDist binomial(int a, const Rational& p);
  static OffspringDist negbinomial(const Rational& r, const Rational& p, int n_max);
  // p_0, p_1, ... up to a common factor; p_0 > 0 and the support must be {0..j_1-1}
  static OffspringDist table(const std::vector<Rational>& p);

  OffspringFamily family() const { return family_; }
  std::string name() const;
  int n_max() const { return n_max_; }
  std::optional<int> j1() const { return j1_; }  // first j with p_j = 0, if any

  Rational rho(int j) const;
  // r_m = (m+1) p_{m+1} / p_m
  Rational r(int m) const;
  // p_0 exactly when it is rational
  std::optional<Rational> p0_exact() const;
  Real p0() const;
  // (b, c) when built from the two-parameter family
  const std::optional<std::pair<Rational, Rational>>& bc_params() const { return bc_; }

 private:
  friend OffspringDist offspring_bc(const Rational& b, const Rational& c, int n);

  OffspringFamily family_ = OffspringFamily::table;
  std::vector<Rational> rho_;
  std::optional<int> j1_;
  int n_max_ = 1;
  Rational param1_, param2_;
  std::optional<std::pair<Rational, Rational>> bc_;
};

// p_j/p_0 = (1/j!) prod_{i=1}^{j} (b - (i-2)c), recognizing Poisson, binomial
// and negative binomial. PreconditionError names the first j <= n-1 where the
// product goes negative.
OffspringDist offspring_bc(const Rational& b, const Rational& c, int n);

// coeff * p0^p0_power
struct P0Scaled {
  Rational coeff;
  int p0_power = 0;

  Real value(const OffspringDist& off) const;
  std::optional<Rational> exact(const OffspringDist& off) const;
};

P0Scaled tree_prob(const PlaneTree& t, const OffspringDist& off);
// P(#T = n) via (1/n)[z^{n-1}] rho(z)^n
P0Scaled q_n(int n, const OffspringDist& off);
// the same coefficient by summing over all plane trees with n nodes
Rational q_n_enumerated(int n, const OffspringDist& off);
// sum_m q(m) q(n-m), p0^n scale
P0Scaled q2_n(int n, const OffspringDist& off);
// P(Y_1 + ... + Y_k = n) = (k/n)[z^{n-k}] rho(z)^n, p0^n scale
P0Scaled total_progeny_pmf(int k, int n, const OffspringDist& off);

// The Gibbs weight sequence attached to the family: w_n = n! q(n) / p0^n.
WeightSequence weights_from_offspring(const OffspringDist& off, int n_max);

// sum over nodes of r_{children}
Rational sigma(const PlaneTree& t, const OffspringDist& off);

// For every ordered pair with n nodes in total, checks
//   pi(t1)pi(t2)(S(t1)+S(t2)) / (2 q(n)(n-1)) == pi(t1)pi(t2) / q_2(n).
bool f2_exact_check(int n, const OffspringDist& off);

// Law of cut_forest(F_1, k) with F_1 the conditioned tree, by enumeration.
RationalDist<PlaneForest> cut_forest_law(int n, int k, const OffspringDist& off);
// Law of k independent copies of T conditioned on total size n.
RationalDist<PlaneForest> independent_forest_law(int n, int k, const OffspringDist& off);

// Partition path obtained by labelling F_1 with a uniform permutation and
// cutting its edges in uniform random order. Exact, n <= 6.
PathLaw labelled_cut_chain_law(int n, const OffspringDist& off);

// Any r on {0..j} with sum_i r(n_i) constant over all (n_1..n_n), n_i in
// {0..j}, sum n_i = n-2, is affine. Exhaustive over r-tables with entries
// from a small rational grid, j = 1..n-2. Returns the number of
// counterexamples found (0 expected).
int lemma_affine_search(int n);

// Exact sampler of T conditioned on #T = n.
class ConditionedTreeSampler {
 public:
  enum class Mode { automatic, rejection, recursive };

  ConditionedTreeSampler(const OffspringDist& off, int n, Mode mode = Mode::automatic);

  PlaneTree operator()(RandomStream& rng) const;
  Mode mode() const { return mode_; }
  // chance that one unconditioned (truncated) draw has n nodes
  double acceptance() const { return acceptance_; }

 private:
  PlaneTree rejection(RandomStream& rng) const;
  PlaneTree recursive(RandomStream& rng) const;

  int n_;
  Mode mode_;
  std::vector<Rational> rho_;                 // truncated at n-1
  std::optional<DiscreteSampler> offspring_;  // for rejection
  std::vector<std::vector<Rational>> forest_; // forest_[m][j]: weight of j-tree forests with m nodes
  double acceptance_ = 0;
};

PlaneTree sample_conditioned_tree(int n, const OffspringDist& off, RandomStream& rng);

}  // namespace gibbsfrag
