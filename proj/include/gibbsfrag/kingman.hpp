#pragma once

#include <functional>
#include <map>
#include <vector>

#include "gibbsfrag/partition.hpp"
#include "gibbsfrag/real.hpp"
#include "gibbsfrag/rng.hpp"

namespace gibbsfrag {

// Binary merger tree of Kingman's n-coalescent. Leaves 0..n-1 are {1}..{n}
// at height 0; vertex n+m is the cluster formed by the m-th merger; the last
// vertex is the root.
struct CoalescentTree {
  struct Vertex {
    std::vector<int> members;
    double time = 0;
    int parent = -1;
    int left = -1, right = -1;
  };

  int n = 0;
  std::vector<Vertex> vertices;
  std::vector<double> t;  // t[k] = T_k, the time at which k clusters remain (t[n] = 0); t[0] unused

  // S_i = (i+1)(T_i - T_{i+1}), i = 1..n-1
  double stratum(int i) const { return (i + 1) * (t[static_cast<std::size_t>(i)] - t[static_cast<std::size_t>(i + 1)]); }
  double total_length() const;
  // length of the edge above vertex v (0 for the root)
  double edge_length(int v) const;
  // stratum index i with T_{i+1} < h < T_i
  int stratum_at(double h) const;
  // states with n, n-1, ..., 1 clusters
  std::vector<SetPartition> skeleton() const;
};

CoalescentTree simulate_kingman_tree(int n, RandomStream& rng);

// Per edge: the theta of its first cut point (2E/length) and where on the
// edge it falls (fraction of the way up). Cuts at level theta are exactly
// the edges with first_cut <= theta, so the family is monotone in theta.
struct CutSchedule {
  std::vector<double> first_cut;
  std::vector<double> position;
};

CutSchedule sample_cuts(const CoalescentTree& tree, RandomStream& rng);
SetPartition allelic_partition(const CoalescentTree& tree, const CutSchedule& cuts, double theta);

struct FirstCut {
  double theta;
  int edge;     // vertex below the cut
  int stratum;  // I
  SetPartition partition;
};
FirstCut first_cut(const CoalescentTree& tree, const CutSchedule& cuts);

// theta^{k-1} / [theta+1]_{n-1} * prod (n_i - 1)!
Rational ewens_pmf(const SetPartition& pi, const Rational& theta);
double ewens_pmf(const SetPartition& pi, double theta);
// E exp(-theta L_n / 2) = (n-1)! / [theta+1]_{n-1}
Rational laplace_transform_length(const Rational& theta, int n);
double laplace_transform_length(double theta, int n);

Real theta_density(const Real& theta, int n);
double theta_density(double theta, int n);
// P(I = i | Theta = theta)
double stratum_given_theta(int i, double theta, int n);
// P(first split = pi | Theta = theta) for pi with block sizes n1, n2
double first_split_given_theta(int n1, int n2, double theta, int n);

struct QuadratureResult {
  double value;
  double error;
};
// integral over (0, inf) after theta = u/(1-u); NumericError when the error
// estimate exceeds tol
QuadratureResult integrate_half_line(const std::function<double(double)>& f, double tol = 1e-10);

QuadratureResult theta_density_integral(int n);
// P(first split = pi) for a fixed pi with block sizes (n1, n2)
QuadratureResult first_split_prob(int n1, int n2, int n);
// law of the first two-block state, over all two-block partitions
std::map<SetPartition, double> first_split_pmf(int n);
// J = size of a fair-coin-chosen block of the first split; index j-1
std::vector<double> j_law_quadrature(int n);

// q + sum_i a_i log i, exact rational coefficients
struct LogLinearForm {
  Rational constant;
  std::map<int, Rational> log_coeffs;
  Real value() const;
};

// P(J = j) by exact partial-fraction integration.
LogLinearForm j_law_exact(int n, int j);
// P(J = 1) as a log-linear form (the general-n closed form).
LogLinearForm j_theta_general(int n);
// The alternative expression (1/2)(n-1)! sum a_{n,i} log i + 1/2 with
// a_{n,i} = (-1)^{i-1} C(n, i-1) / n!, kept for comparison.
LogLinearForm j_theta_alternative(int n);
// The n = 4 expressions P(J=1) = 3(-log 2 + log 3 / 2) + 1/2 and
// P(J=2) = 6 log 2 - 3 log 3.
std::vector<LogLinearForm> first_split_stated_n4();

// Gibbs (n, 2, (j-1)!) reference: P(J=1) = n / (2 (n-1) H_{n-1})
Rational gibbs_first_split_reference(int n);
// full J law of the reference, index j-1
std::vector<Rational> gibbs_j_law(int n);

// Uniform over permutations of [n] with k cycles.
Permutation sample_uniform_perm_with_k_cycles(int n, int k, RandomStream& rng);

}  // namespace gibbsfrag
