#include "gibbsfrag/fragmentation.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "gibbsfrag/errors.hpp"
#include "gibbsfrag/sampling.hpp"

namespace gibbsfrag {

void FragPath::validate() const {
  if (static_cast<int>(states.size()) != n) throw ArgumentError("path: expected n states");
  for (int k = 1; k <= n; ++k) {
    const auto& s = at(k);
    if (s.n() != n || s.k() != k) throw ArgumentError("path: state " + std::to_string(k) + " has the wrong block count");
    if (k > 1) {
      if (!refines(s, at(k - 1))) throw ArgumentError("path: state " + std::to_string(k) + " does not refine its predecessor");
    }
  }
}

FragmentationChain::FragmentationChain(const WeightSequence& w, int n) : n_(n) {
  if (n < 1) throw ArgumentError("fragmentation: n must be positive");
  int need = std::max(1, n - 1);
  if (w.n_max() < need) throw ArgumentError("fragmentation: weights known up to " + std::to_string(w.n_max()));
  w_ = w.resized(need);
  for (int j = 1; j <= need; ++j) {
    if (w_[j] < 0) throw PreconditionError("fragmentation: w_" + std::to_string(j) + " is negative");
  }
  b2_.assign(static_cast<std::size_t>(n) + 1, Rational(0));
  size_w_.assign(static_cast<std::size_t>(n) + 1, {});
  for (int m = 2; m <= n; ++m) {
    std::vector<Rational> wl;
    for (int l = 1; l <= m - 1; ++l) wl.push_back(Rational(binomial(m - 1, l - 1)) * w_[l] * w_[m - l]);
    Rational total = std::accumulate(wl.begin(), wl.end(), Rational(0));
    if (total <= 0) {
      throw PreconditionError("fragmentation: B_{" + std::to_string(m) + ",2}(w) = " + to_string(total) +
                              ", two-block law undefined");
    }
    b2_[static_cast<std::size_t>(m)] = total;
    size_w_[static_cast<std::size_t>(m)] = scale_to_integers(wl);
  }
}

Rational FragmentationChain::split_prob(int l, int m) const { return w_[l] * w_[m - l] / b2(m); }

std::pair<std::vector<int>, std::vector<int>> FragmentationChain::split(const std::vector<int>& block,
                                                                        RandomStream& rng) const {
  int m = static_cast<int>(block.size());
  if (m < 2) throw PreconditionError("gibbs split: block of size " + std::to_string(m));
  if (m > n_) throw ArgumentError("gibbs split: block larger than n");
  std::vector<int> sorted(block);
  std::sort(sorted.begin(), sorted.end());
  // size of the part that holds the least element
  int l = static_cast<int>(sample_index(size_w_[static_cast<std::size_t>(m)], rng)) + 1;
  std::vector<int> others(sorted.begin() + 1, sorted.end());
  auto chosen = uniform_subset(others, static_cast<std::size_t>(l - 1), rng);
  std::vector<int> a{sorted.front()}, rest;
  a.insert(a.end(), chosen.begin(), chosen.end());
  std::set_difference(others.begin(), others.end(), chosen.begin(), chosen.end(), std::back_inserter(rest));
  return {a, rest};
}

FragPath FragmentationChain::run(RandomStream& rng) const {
  FragPath path{n_, {SetPartition::single_block(n_)}};
  while (path.states.back().k() < n_) {
    const auto& cur = path.states.back();
    int i = cur.k() == 1 ? 0 : linear_select(cur, rng);
    auto [a, rest] = split(cur.block(i), rng);
    path.states.push_back(cur.split(i, a));
  }
  return path;
}

std::pair<std::vector<int>, std::vector<int>> gibbs_split(const std::vector<int>& block, const WeightSequence& w,
                                                          RandomStream& rng) {
  int m = static_cast<int>(block.size());
  if (m < 2) throw PreconditionError("gibbs split: singleton block");
  return FragmentationChain(w, m).split(block, rng);
}

int linear_select(const SetPartition& pi, RandomStream& rng) {
  if (pi.k() == pi.n()) throw PreconditionError("linear selection: all blocks are singletons");
  std::vector<std::uint64_t> wts;
  std::uint64_t sum = 0;
  for (int s : pi.block_sizes()) {
    wts.push_back(static_cast<std::uint64_t>(s - 1));
    sum += static_cast<std::uint64_t>(s - 1);
  }
  // with k-1 blocks the normalizer is n-k+1, i.e. n - #blocks
  if (sum != static_cast<std::uint64_t>(pi.n() - pi.k())) {
    throw NumericError("linear selection: sum of (size-1) is " + std::to_string(sum) + ", expected n - #blocks");
  }
  return static_cast<int>(sample_index(wts, rng));
}

FragPath run_fragmentation(int n, const WeightSequence& w, RandomStream& rng) {
  return FragmentationChain(w, n).run(rng);
}

RationalDist<SetPartition> PathLaw::marginal(int k) const {
  RationalDist<SetPartition> d;
  for (const auto& [path, p] : paths) d.add(path.at(k), p);
  return d;
}

RationalDist<std::pair<SetPartition, SetPartition>> PathLaw::pair_marginal(int k) const {
  RationalDist<std::pair<SetPartition, SetPartition>> d;
  for (const auto& [path, p] : paths) d.add({path.at(k - 1), path.at(k)}, p);
  return d;
}

std::map<std::pair<SetPartition, SetPartition>, Rational> PathLaw::reversed_transitions(int k) const {
  auto joint = pair_marginal(k);
  auto mk = marginal(k);
  std::map<std::pair<SetPartition, SetPartition>, Rational> out;
  for (const auto& [xy, p] : joint) out[{xy.second, xy.first}] = p / mk(xy.second);
  return out;
}

PathLaw exact_path_law(int n, const WeightSequence& w, int cap) {
  if (n > cap) throw CapacityError("exact path law: n=" + std::to_string(n) + " exceeds cap " + std::to_string(cap));
  FragmentationChain chain(w, n);
  PathLaw law{n, {}};
  std::vector<SetPartition> states{SetPartition::single_block(n)};

  std::function<void(const Rational&)> rec = [&](const Rational& p) {
    const SetPartition cur = states.back();  // copy: states grows below
    int k = cur.k();
    if (k == n) {
      law.paths.add(FragPath{n, states}, p);
      return;
    }
    for (int i = 0; i < k; ++i) {
      const auto& blk = cur.block(i);
      int m = static_cast<int>(blk.size());
      if (m < 2) continue;
      Rational sel = make_rational(m - 1, n - k);
      // parts holding the least element of the block
      unsigned full = (1u << (m - 1));
      for (unsigned mask = 0; mask + 1 < full; ++mask) {
        std::vector<int> a{blk.front()};
        for (int t = 0; t < m - 1; ++t)
          if ((mask >> t) & 1u) a.push_back(blk[static_cast<std::size_t>(t + 1)]);
        int l = static_cast<int>(a.size());
        Rational ps = chain.split_prob(l, m);
        if (ps == 0) continue;
        states.push_back(cur.split(i, a));
        rec(p * sel * ps);
        states.pop_back();
      }
    }
  };
  rec(Rational(1));
  return law;
}

SplitFunction split_function(int n, const WeightSequence& w) {
  SplitFunction sf;
  sf.n = n;
  BellTable t(w.resized(std::max(1, n - 1)), n);
  for (int m = 2; m <= n - 1; ++m) {
    const Rational& b2 = t(m, 2);
    if (b2 == 0) throw PreconditionError("split function: B_{" + std::to_string(m) + ",2} = 0");
    sf.f[m] = (m - 1) * w[m] / b2;
  }
  for (int k = 2; k <= n; ++k) {
    const Rational& bk = t(n, k);
    if (bk == 0) throw PreconditionError("split function: B_{n," + std::to_string(k) + "} = 0");
    if (k - 1 == 1 && !t.defined(n, 1)) continue;  // g(n,2) needs w_n
    sf.g[{n, k}] = (n - k + 1) * t(n, k - 1) / bk;
  }
  return sf;
}

SplitFunction split_function_bc(int n, const Rational& b, const Rational& c) {
  auto w = weights_bc(b, c, n);
  auto sf = split_function(n, w);
  for (const auto& [m, f] : sf.f) {
    if (f != 2 * c + m * b) {
      throw NumericError("split function: f(" + std::to_string(m) + ") = " + to_string(f) + ", expected 2c + m b");
    }
  }
  for (const auto& [nk, g] : sf.g) {
    int k = nk.second;
    if (g != (k - 1) * (k * c + n * b)) {
      throw NumericError("split function: g(n," + std::to_string(k) + ") = " + to_string(g) + ", expected (k-1)(kc+nb)");
    }
  }
  return sf;
}

ReversedCheck reversed_transition_check(const PathLaw& law, const AffineKernel& kernel) {
  for (int k = 2; k <= law.n; ++k) {
    auto rev = law.reversed_transitions(k);
    for (const auto& [y, py] : law.marginal(k)) {
      auto sizes = y.block_sizes();
      Rational total = 0;
      for (int i = 0; i < y.k(); ++i)
        for (int j = i + 1; j < y.k(); ++j) total += kernel(sizes[static_cast<std::size_t>(i)], sizes[static_cast<std::size_t>(j)]);
      if (total == 0 && y.k() == 2) {
        // a single possible merge: forced, whatever the kernel says (bc(-1,2) at n = 4)
        auto it = rev.find({y, y.merge(0, 1)});
        if (it == rev.end() || it->second != 1) return {false, "forced merge at " + y.to_string() + " is not certain"};
        continue;
      }
      if (total == 0) return {false, "kernel sums to zero at " + y.to_string()};
      for (int i = 0; i < y.k(); ++i) {
        for (int j = i + 1; j < y.k(); ++j) {
          auto x = y.merge(i, j);
          auto it = rev.find({y, x});
          Rational got = it == rev.end() ? Rational(0) : it->second;
          Rational want = kernel(sizes[static_cast<std::size_t>(i)], sizes[static_cast<std::size_t>(j)]) / total;
          if (got != want) {
            return {false, "P(" + x.to_string() + " | " + y.to_string() + ") = " + to_string(got) + ", kernel gives " +
                               to_string(want)};
          }
        }
      }
    }
  }
  return {true, {}};
}

bool reversed_transition_check(int n, const Rational& b, const Rational& c) {
  auto law = exact_path_law(n, weights_bc(b, c, std::max(1, n - 1)));
  return reversed_transition_check(law, AffineKernel::from_bc(b, c)).ok;
}

std::optional<AffineKernel> fit_affine_reversed_kernel(const PathLaw& law) {
  // find two merges in one state with different size sums to pin down a:b
  std::optional<AffineKernel> cand;
  for (int k = 2; k <= law.n && !cand; ++k) {
    auto rev = law.reversed_transitions(k);
    for (const auto& [y, py] : law.marginal(k)) {
      auto sizes = y.block_sizes();
      std::optional<std::pair<int, Rational>> first;
      for (int i = 0; i < y.k() && !cand; ++i) {
        for (int j = i + 1; j < y.k() && !cand; ++j) {
          auto it = rev.find({y, y.merge(i, j)});
          Rational p = it == rev.end() ? Rational(0) : it->second;
          int s = sizes[static_cast<std::size_t>(i)] + sizes[static_cast<std::size_t>(j)];
          if (!first) {
            first = {s, p};
          } else if (first->first != s) {
            // (p2 - p1) a + (p2 s1 - p1 s2) b = 0
            auto [s1, p1] = *first;
            Rational ca = p - p1, cb = p * s1 - p1 * s;
            AffineKernel kern;
            if (ca == 0 && cb == 0) continue;
            kern.a = -cb;
            kern.b = ca;
            Rational norm = kern.a + 2 * kern.b;
            if (norm != 0) {
              kern.a /= norm;
              kern.b /= norm;
            } else {
              kern.a /= kern.b;
              kern.b = 1;
            }
            cand = kern;
          }
        }
      }
      if (cand) break;
    }
  }
  if (!cand) cand = AffineKernel{Rational(1), Rational(0)};  // no state can tell kernels apart
  if (!reversed_transition_check(law, *cand).ok) return std::nullopt;
  return cand;
}

bool constant_sum_check(int n, const Rational& b, const Rational& c) {
  auto f = [&](int m) -> Rational { return 2 * c + m * b; };
  for (int n1 = 1; n1 <= n - 2; ++n1) {
    for (int n2 = 1; n1 + n2 <= n - 1; ++n2) {
      int n3 = n - n1 - n2;
      if (f(n1 + n2) + f(n1 + n3) + f(n2 + n3) != 2 * (3 * c + n * b)) return false;
    }
  }
  return true;
}

}  // namespace gibbsfrag
