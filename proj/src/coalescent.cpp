#include "gibbsfrag/coalescent.hpp"

#include <algorithm>

#include "gibbsfrag/errors.hpp"
#include "gibbsfrag/sampling.hpp"

namespace gibbsfrag {

namespace {

struct MergeDraw {
  int i, j;
};

// Pair (i < j) drawn with probability K(s_i, s_j) / sum K. Exact.
MergeDraw draw_pair(const std::vector<int>& sizes, const AffineKernel& kernel, RandomStream& rng) {
  int k = static_cast<int>(sizes.size());
  int n = 0;
  for (int s : sizes) n += s;
  if (kernel.a >= 0 && kernel.b >= 0) {
    // sum K = a C(k,2) + b (k-1) n: uniform pair, or a size-biased block plus a uniform partner
    Rational uniform_part = kernel.a * (k * (k - 1) / 2);
    Rational size_part = kernel.b * (k - 1) * n;
    if (uniform_part + size_part <= 0) throw PreconditionError("coalescent: kernel vanishes on every pair");
    auto which = sample_index(scale_to_integers({uniform_part, size_part}), rng);
    int i, j;
    if (which == 0) {
      i = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(k)));
      j = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(k - 1)));
      if (j >= i) ++j;
    } else {
      std::vector<std::uint64_t> sw(sizes.begin(), sizes.end());
      i = static_cast<int>(sample_index(sw, rng));
      j = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(k - 1)));
      if (j >= i) ++j;
    }
    return {std::min(i, j), std::max(i, j)};
  }
  // general sign pattern: enumerate pairs
  std::vector<Rational> kw;
  std::vector<MergeDraw> pairs;
  Rational total = 0;
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      kw.push_back(kernel(sizes[static_cast<std::size_t>(i)], sizes[static_cast<std::size_t>(j)]));
      total += kw.back();
      pairs.push_back({i, j});
    }
  }
  if (total == 0) throw PreconditionError("coalescent: kernel sums to zero");
  for (auto& x : kw) {
    x /= total;
    if (x < 0) throw PreconditionError("coalescent: kernel gives a negative merge probability");
  }
  return pairs[sample_index(kw, rng)];
}

}  // namespace

std::vector<SetPartition> ml_discrete_coalescent(int n, const AffineKernel& kernel, RandomStream& rng) {
  if (n < 1) throw ArgumentError("coalescent: n must be positive");
  std::vector<SetPartition> states{SetPartition::singletons(n)};
  while (states.back().k() > 1) {
    const auto& cur = states.back();
    auto [i, j] = draw_pair(cur.block_sizes(), kernel, rng);
    states.push_back(cur.merge(i, j));
  }
  return states;
}

FragPath as_frag_path(const std::vector<SetPartition>& coalescent_states) {
  FragPath p;
  p.n = coalescent_states.empty() ? 0 : coalescent_states.front().n();
  p.states.assign(coalescent_states.rbegin(), coalescent_states.rend());
  return p;
}

int ContinuousPath::blocks_at(double t) const {
  int k = n;
  for (double tj : jump_times) {
    if (tj <= t) --k;
    else break;
  }
  return k;
}

const SetPartition& ContinuousPath::state_at(double t) const {
  return skeleton.at(static_cast<std::size_t>(n - blocks_at(t)));
}

ContinuousPath ml_continuous(int n, const AffineKernel& kernel, const std::vector<double>& t_grid, RandomStream& rng) {
  if (n < 1) throw ArgumentError("coalescent: n must be positive");
  ContinuousPath path;
  path.n = n;
  path.grid = t_grid;
  path.skeleton.push_back(SetPartition::singletons(n));
  double t = 0;
  const double a = kernel.a.get_d(), b = kernel.b.get_d();
  while (path.skeleton.back().k() > 1) {
    const auto& cur = path.skeleton.back();
    int k = cur.k();
    // total rate: sum over pairs of a + b(s_i + s_j)
    double rate = a * k * (k - 1) / 2.0 + b * (k - 1) * n;
    if (!(rate > 0)) throw PreconditionError("coalescent: total merge rate is not positive");
    t += rng.exponential(rate);
    auto [i, j] = draw_pair(cur.block_sizes(), kernel, rng);
    path.jump_times.push_back(t);
    path.skeleton.push_back(cur.merge(i, j));
  }
  for (double g : t_grid) path.at_grid.push_back(path.state_at(g));
  return path;
}

}  // namespace gibbsfrag
