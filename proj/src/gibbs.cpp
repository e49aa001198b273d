#include "gibbsfrag/gibbs.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace gibbsfrag {

GibbsModel::GibbsModel(const WeightSequence& w, int n_max) : table_(w, n_max) {}

Rational GibbsModel::weight_product(const std::vector<int>& sizes) const {
  Rational prod = 1;
  for (int s : sizes) prod *= weights()[s];
  return prod;
}

PmfValue GibbsModel::micro_set(const SetPartition& pi, int k) const {
  if (pi.k() != k) return {Rational(0), true};
  const Rational& z = table_(pi.n(), k);
  if (z == 0) throw PreconditionError("Gibbs law undefined: B_{" + std::to_string(pi.n()) + "," + std::to_string(k) + "} = 0");
  return {weight_product(pi.block_sizes()) / z, false};
}

namespace {

Rational shape_factor(const IntegerPartition& lambda, const WeightSequence& w) {
  Rational prod(factorial(lambda.n()));
  for (auto [j, c] : lambda.counts()) {
    prod *= power(w[j] / Rational(factorial(j)), c) / Rational(factorial(c));
  }
  return prod;
}

}  // namespace

PmfValue GibbsModel::micro_int(const IntegerPartition& lambda, int k) const {
  if (lambda.k() != k) return {Rational(0), true};
  const Rational& z = table_(lambda.n(), k);
  if (z == 0) throw PreconditionError("Gibbs law undefined: B_{n,k} = 0");
  return {shape_factor(lambda, weights()) / z, false};
}

Rational GibbsModel::canonical(const IntegerPartition& lambda) const {
  Rational y = table_.complete(lambda.n());
  if (y == 0) throw PreconditionError("canonical Gibbs law undefined: Y_n = 0");
  return shape_factor(lambda, weights()) / y;
}

RationalDist<SetPartition> GibbsModel::micro_law_set(int n, int k, int cap) const {
  RationalDist<SetPartition> d;
  for_each_set_partition(n, k, [&](const SetPartition& p) { d.add(p, micro_set(p, k).prob); }, cap);
  return d;
}

RationalDist<IntegerPartition> GibbsModel::micro_law_int(int n, int k) const {
  RationalDist<IntegerPartition> d;
  for (const auto& lam : integer_partitions(n, k)) d.add(lam, micro_int(lam, k).prob);
  return d;
}

namespace {

int required_k(const GibbsSpec& spec) {
  if (!spec.k) throw ArgumentError("microcanonical law needs k");
  if (*spec.k < 1 || *spec.k > spec.n) throw ArgumentError("need 1 <= k <= n");
  return *spec.k;
}

// k >= 2 only looks at w_1..w_{n-1}
WeightSequence weights_for(const GibbsSpec& spec) {
  int need = (spec.k && *spec.k >= 2) ? spec.n - 1 : spec.n;
  need = std::max(need, 1);
  if (spec.w.n_max() < need) throw ArgumentError("weights known up to " + std::to_string(spec.w.n_max()) + ", need " + std::to_string(need));
  return spec.w.resized(need);
}

}  // namespace

Rational micro_pmf_set(const SetPartition& pi, const GibbsSpec& spec, bool* mismatch) {
  int k = required_k(spec);
  if (pi.n() != spec.n) throw ArgumentError("partition size does not match n");
  auto v = GibbsModel(weights_for(spec), spec.n).micro_set(pi, k);
  if (mismatch) *mismatch = v.mismatch;
  return v.prob;
}

Rational micro_pmf_int(const IntegerPartition& lambda, const GibbsSpec& spec, bool* mismatch) {
  int k = required_k(spec);
  if (lambda.n() != spec.n) throw ArgumentError("integer partition does not sum to n");
  auto v = GibbsModel(weights_for(spec), spec.n).micro_int(lambda, k);
  if (mismatch) *mismatch = v.mismatch;
  return v.prob;
}

Rational canonical_pmf(const IntegerPartition& lambda, int n, const WeightSequence& w) {
  if (lambda.n() != n) throw ArgumentError("integer partition does not sum to n");
  if (w.n_max() < n) throw ArgumentError("canonical law needs w_n");
  return GibbsModel(w.resized(n), n).canonical(lambda);
}

void validate(const MixtureSpec& m) {
  if (static_cast<int>(m.q.size()) != m.n) throw ArgumentError("mixture: need q_{n,1..n}");
  Rational s = 0;
  for (const auto& q : m.q) {
    if (q < 0) throw ArgumentError("mixture: negative q");
    s += q;
  }
  if (s != 1) throw ArgumentError("mixture: q sums to " + to_string(s));
}

Rational mixture_pmf_int(const IntegerPartition& lambda, const MixtureSpec& m) {
  validate(m);
  GibbsModel model(m.w.resized(std::max(1, std::min(m.n, m.w.n_max()))), m.n);
  int k = lambda.k();
  const Rational& q = m.q[static_cast<std::size_t>(k - 1)];
  if (q == 0) return 0;
  return q * model.micro_int(lambda, k).prob;
}

MixtureSpec canonical_mixture(int n, const WeightSequence& w) {
  BellTable t(w.resized(n), n);
  Rational y = t.complete(n);
  MixtureSpec m{n, w.resized(n), {}};
  for (int k = 1; k <= n; ++k) m.q.push_back(t(n, k) / y);
  return m;
}

MicroSampler::MicroSampler(const GibbsSpec& spec)
    : n_(spec.n), k_(required_k(spec)), w_(weights_for(spec)), table_(w_, spec.n) {
  if (k_ < n_ && !w_.positive_up_to(k_ == 1 ? n_ + 1 : n_)) {
    throw PreconditionError("sampler needs positive weights, w_" + std::to_string(w_.first_nonpositive()) + " is not");
  }
  if (table_(n_, k_) == 0) throw PreconditionError("sampler: B_{n,k} = 0");
  // one size law per (elements left, blocks left)
  for (int j = 2; j <= k_; ++j) {
    for (int m = j; m <= n_ - (k_ - j); ++m) {
      std::vector<Rational> wts;
      Rational total = 0;
      for (int l = 1; l <= m - j + 1; ++l) {
        wts.push_back(Rational(binomial(m - 1, l - 1)) * w_[l] * table_(m - l, j - 1));
        total += wts.back();
      }
      if (total > 0) samplers_.emplace(std::make_pair(m, j), DiscreteSampler(wts));
    }
  }
}

const DiscreteSampler& MicroSampler::size_sampler(int m, int j) const {
  auto it = samplers_.find({m, j});
  if (it == samplers_.end()) throw NumericError("sampler: unreachable state");
  return it->second;
}

SetPartition MicroSampler::operator()(RandomStream& rng) const {
  std::vector<int> rest(static_cast<std::size_t>(n_));
  std::iota(rest.begin(), rest.end(), 1);
  std::vector<std::vector<int>> blocks;
  for (int j = k_; j >= 1; --j) {
    int m = static_cast<int>(rest.size());
    int l = (j == 1) ? m : static_cast<int>(size_sampler(m, j)(rng)) + 1;
    std::vector<int> others(rest.begin() + 1, rest.end());
    auto chosen = uniform_subset(others, static_cast<std::size_t>(l - 1), rng);
    std::vector<int> block{rest.front()};
    block.insert(block.end(), chosen.begin(), chosen.end());
    std::vector<int> left;
    std::set_difference(others.begin(), others.end(), chosen.begin(), chosen.end(), std::back_inserter(left));
    blocks.push_back(std::move(block));
    rest = std::move(left);
  }
  return SetPartition(n_, std::move(blocks));
}

RationalDist<SetPartition> MicroSampler::exact_law(int cap) const {
  if (n_ > cap) throw CapacityError("exact sampler law: n exceeds cap " + std::to_string(cap));
  RationalDist<SetPartition> d;
  std::vector<std::vector<int>> blocks;
  std::function<void(const std::vector<int>&, int, const Rational&)> rec = [&](const std::vector<int>& rest, int j,
                                                                              const Rational& p) {
    if (rest.empty()) {
      if (j == 0) d.add(SetPartition(n_, blocks), p);
      return;
    }
    int m = static_cast<int>(rest.size());
    std::vector<int> others(rest.begin() + 1, rest.end());
    for (int l = 1; l <= m - j + 1; ++l) {
      Rational pl = 1;
      if (j > 1) {
        const auto& s = size_sampler(m, j);
        pl = s.probability(static_cast<std::size_t>(l - 1));
      } else if (l != m) {
        continue;
      }
      if (pl == 0) continue;
      Rational each = p * pl / Rational(binomial(m - 1, l - 1));
      // every (l-1)-subset of the others, by bitmask
      for (unsigned mask = 0; mask < (1u << others.size()); ++mask) {
        if (__builtin_popcount(mask) != l - 1) continue;
        std::vector<int> block{rest.front()}, left;
        for (std::size_t t = 0; t < others.size(); ++t) ((mask >> t) & 1u ? block : left).push_back(others[t]);
        blocks.push_back(block);
        rec(left, j - 1, each);
        blocks.pop_back();
      }
    }
  };
  std::vector<int> all(static_cast<std::size_t>(n_));
  std::iota(all.begin(), all.end(), 1);
  rec(all, k_, Rational(1));
  return d;
}

SetPartition sample_micro(const GibbsSpec& spec, RandomStream& rng) { return MicroSampler(spec)(rng); }

RationalDist<std::vector<int>> kolchin_block_size_dist(const GibbsSpec& spec, const Rational& xi) {
  if (xi <= 0) throw ArgumentError("kolchin: xi must be positive");
  int k = required_k(spec);
  int n = spec.n;
  auto w = weights_for(spec);
  RationalDist<std::vector<int>> d;
  std::vector<int> y;
  std::function<void(int, int, const Rational&)> rec = [&](int left, int parts, const Rational& p) {
    if (parts == 0) {
      if (left == 0) d.add(y, p);
      return;
    }
    for (int m = 1; m <= left - (parts - 1); ++m) {
      Rational pm = w[m] * power(xi, m) / Rational(factorial(m));
      y.push_back(m);
      rec(left - m, parts - 1, p * pm);
      y.pop_back();
    }
  };
  rec(n, k, Rational(1));
  d.normalize();
  return d;
}

RationalDist<std::vector<int>> exchangeable_block_size_dist(const GibbsSpec& spec) {
  int k = required_k(spec);
  GibbsModel model(weights_for(spec), spec.n);
  RationalDist<std::vector<int>> d;
  Rational kfact(factorial(k));
  std::vector<int> order(static_cast<std::size_t>(k));
  for_each_set_partition(spec.n, k, [&](const SetPartition& p) {
    Rational each = model.micro_set(p, k).prob / kfact;
    auto sizes = p.block_sizes();
    std::iota(order.begin(), order.end(), 0);
    do {
      std::vector<int> y;
      for (int i : order) y.push_back(sizes[static_cast<std::size_t>(i)]);
      d.add(y, each);
    } while (std::next_permutation(order.begin(), order.end()));
  });
  return d;
}

}  // namespace gibbsfrag
