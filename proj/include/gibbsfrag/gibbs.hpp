#pragma once

#include <map>
#include <optional>
#include <vector>

#include "gibbsfrag/bell.hpp"
#include "gibbsfrag/errors.hpp"
#include "gibbsfrag/partition.hpp"
#include "gibbsfrag/rng.hpp"
#include "gibbsfrag/sampling.hpp"
#include "gibbsfrag/weights.hpp"

namespace gibbsfrag {

// Exact finite distribution; the map keeps the support in canonical order.
template <typename T>
class RationalDist {
 public:
  using map_type = std::map<T, Rational>;

  void add(const T& x, const Rational& p) {
    if (p == 0) return;
    auto [it, fresh] = probs_.try_emplace(x, p);
    if (!fresh) {
      it->second += p;
      if (it->second == 0) probs_.erase(it);
    }
  }

  Rational operator()(const T& x) const {
    auto it = probs_.find(x);
    return it == probs_.end() ? Rational(0) : it->second;
  }

  Rational total() const {
    Rational s = 0;
    for (const auto& [x, p] : probs_) s += p;
    return s;
  }

  bool is_normalized() const {
    for (const auto& [x, p] : probs_)
      if (p < 0) return false;
    return total() == 1;
  }

  void normalize() {
    Rational t = total();
    if (t <= 0) throw PreconditionError("cannot normalize an empty distribution");
    for (auto& [x, p] : probs_) p /= t;
  }

  template <typename F>
  auto map(F&& f) const {
    RationalDist<std::decay_t<decltype(f(std::declval<const T&>()))>> out;
    for (const auto& [x, p] : probs_) out.add(f(x), p);
    return out;
  }

  std::size_t size() const { return probs_.size(); }
  const map_type& probs() const { return probs_; }
  auto begin() const { return probs_.begin(); }
  auto end() const { return probs_.end(); }

  bool operator==(const RationalDist& o) const { return probs_ == o.probs_; }

 private:
  map_type probs_;
};

struct GibbsSpec {
  int n = 1;
  std::optional<int> k;  // absent: canonical
  WeightSequence w = WeightSequence::uniform(1);
};

// A probability with a flag for "the argument does not fit (n, k)".
struct PmfValue {
  Rational prob;
  bool mismatch = false;
};

// Microcanonical laws for a fixed weight sequence, all sizes up to n_max.
class GibbsModel {
 public:
  GibbsModel(const WeightSequence& w, int n_max);

  int n_max() const { return table_.n_max(); }
  const WeightSequence& weights() const { return table_.weights(); }
  const BellTable& bell() const { return table_; }

  // prod w_{|A_i|} / B_{n,k}
  PmfValue micro_set(const SetPartition& pi, int k) const;
  // (n!/B_{n,k}) prod (1/c_i!) (w_i/i!)^{c_i}
  PmfValue micro_int(const IntegerPartition& lambda, int k) const;
  // the same with Y_n in place of B_{n,k}
  Rational canonical(const IntegerPartition& lambda) const;

  // Unnormalized prod w_{|A_i|}; nonzero only on the support.
  Rational weight_product(const std::vector<int>& sizes) const;

  RationalDist<SetPartition> micro_law_set(int n, int k, int cap = kDefaultEnumerationCap) const;
  RationalDist<IntegerPartition> micro_law_int(int n, int k) const;

 private:
  BellTable table_;
};

Rational micro_pmf_set(const SetPartition& pi, const GibbsSpec& spec, bool* mismatch = nullptr);
Rational micro_pmf_int(const IntegerPartition& lambda, const GibbsSpec& spec, bool* mismatch = nullptr);
Rational canonical_pmf(const IntegerPartition& lambda, int n, const WeightSequence& w);

// Mixture over k of microcanonical laws.
struct MixtureSpec {
  int n = 1;
  WeightSequence w = WeightSequence::uniform(1);
  std::vector<Rational> q;  // q[k-1] = q_{n,k}
};
void validate(const MixtureSpec& m);
Rational mixture_pmf_int(const IntegerPartition& lambda, const MixtureSpec& m);
// q_{n,k} = B_{n,k}/Y_n, the mixture that reproduces the canonical law
MixtureSpec canonical_mixture(int n, const WeightSequence& w);

// Exact sampler: size of the block holding the least unassigned element,
// then a uniform choice of its other members, then recurse.
class MicroSampler {
 public:
  explicit MicroSampler(const GibbsSpec& spec);

  SetPartition operator()(RandomStream& rng) const;
  // Law of the output obtained by summing the probabilities of all
  // branches of the construction (no pmf formula involved).
  RationalDist<SetPartition> exact_law(int cap = 8) const;

  int n() const { return n_; }
  int k() const { return k_; }

 private:
  // law of l for m remaining elements and j remaining blocks
  const DiscreteSampler& size_sampler(int m, int j) const;

  int n_, k_;
  WeightSequence w_;
  BellTable table_;
  std::map<std::pair<int, int>, DiscreteSampler> samplers_;
};

SetPartition sample_micro(const GibbsSpec& spec, RandomStream& rng);

// (Y_1..Y_k) i.i.d. with P(Y=m) ~ w_m xi^m/m!, conditioned on the sum being n.
RationalDist<std::vector<int>> kolchin_block_size_dist(const GibbsSpec& spec, const Rational& xi);
// Block sizes of a Gibbs partition listed in uniformly random order.
RationalDist<std::vector<int>> exchangeable_block_size_dist(const GibbsSpec& spec);

}  // namespace gibbsfrag
