#include "gibbsfrag/galton_watson.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <unordered_map>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "gibbsfrag/errors.hpp"

namespace gibbsfrag {

namespace {

// [z^deg] of f(z)^power, all series truncated at deg
Rational power_coeff(const std::function<Rational(int)>& f, int power, int deg) {
  if (deg < 0) return 0;
  std::vector<Rational> base(static_cast<std::size_t>(deg) + 1), acc(static_cast<std::size_t>(deg) + 1, Rational(0));
  for (int j = 0; j <= deg; ++j) base[static_cast<std::size_t>(j)] = f(j);
  acc[0] = 1;
  auto mul = [deg](const std::vector<Rational>& x, const std::vector<Rational>& y) {
    std::vector<Rational> z(static_cast<std::size_t>(deg) + 1, Rational(0));
    for (int i = 0; i <= deg; ++i) {
      if (x[static_cast<std::size_t>(i)] == 0) continue;
      for (int j = 0; i + j <= deg; ++j) z[static_cast<std::size_t>(i + j)] += x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)];
    }
    return z;
  };
  for (int e = power; e > 0; e >>= 1) {
    if (e & 1) acc = mul(acc, base);
    if (e > 1) base = mul(base, base);
  }
  return acc[static_cast<std::size_t>(deg)];
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

}  // namespace

OffspringDist OffspringDist::poisson(const Rational& b, int n_max) {
  if (b <= 0) throw ArgumentError("poisson offspring: mean must be positive");
  OffspringDist d;
  d.family_ = OffspringFamily::poisson;
  d.n_max_ = std::max(n_max, 1);
  d.param1_ = b;
  Rational r = 1;
  for (int j = 0; j < d.n_max_; ++j) {
    if (j > 0) r *= b / j;
    d.rho_.push_back(r);
  }
  d.bc_ = std::make_pair(b, Rational(0));
  return d;
}

OffspringDist OffspringDist::binomial(int a, const Rational& p) {
  if (a < 1) throw ArgumentError("binomial offspring: a must be positive");
  if (p <= 0 || p >= 1) throw ArgumentError("binomial offspring: need 0 < p < 1");
  OffspringDist d;
  d.family_ = OffspringFamily::binomial;
  d.param1_ = a;
  d.param2_ = p;
  Rational odds = p / (1 - p);
  for (int j = 0; j <= a; ++j) d.rho_.push_back(Rational(gibbsfrag::binomial(a, j)) * power(odds, j));
  d.j1_ = a + 1;
  d.n_max_ = std::numeric_limits<int>::max();
  // c = p/(1-p) = odds, b = (a-1)c
  d.bc_ = std::make_pair((a - 1) * odds, odds);
  return d;
}

OffspringDist OffspringDist::negbinomial(const Rational& r, const Rational& p, int n_max) {
  if (r <= 0) throw ArgumentError("negative binomial offspring: r must be positive");
  if (p <= 0 || p >= 1) throw ArgumentError("negative binomial offspring: need 0 < p < 1");
  OffspringDist d;
  d.family_ = OffspringFamily::negbinomial;
  d.n_max_ = std::max(n_max, 1);
  d.param1_ = r;
  d.param2_ = p;
  Rational x = 1;
  for (int j = 0; j < d.n_max_; ++j) {
    if (j > 0) x *= (r + (j - 1)) * (1 - p) / j;
    d.rho_.push_back(x);
  }
  // c = p - 1, b = (a-1)c with a = -r
  Rational c = p - 1;
  d.bc_ = std::make_pair((-r - 1) * c, c);
  return d;
}

OffspringDist OffspringDist::table(const std::vector<Rational>& p) {
  if (p.empty() || p[0] <= 0) throw PreconditionError("offspring table: p_0 must be positive");
  OffspringDist d;
  d.family_ = OffspringFamily::table;
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (p[j] < 0) throw PreconditionError("offspring table: negative entry");
    if (p[j] == 0 && !d.j1_) d.j1_ = static_cast<int>(j);
    if (p[j] > 0 && d.j1_) throw PreconditionError("offspring table: support must be an initial segment {0..j_1-1}");
    if (!d.j1_) d.rho_.push_back(p[j] / p[0]);
  }
  if (!d.j1_) d.j1_ = static_cast<int>(p.size());
  d.n_max_ = std::numeric_limits<int>::max();
  return d;
}

std::string OffspringDist::name() const {
  switch (family_) {
    case OffspringFamily::poisson: return "poisson(" + to_string(param1_) + ")";
    case OffspringFamily::binomial: return "binomial(" + to_string(param1_) + "," + to_string(param2_) + ")";
    case OffspringFamily::negbinomial: return "negbinomial(" + to_string(param1_) + "," + to_string(param2_) + ")";
    case OffspringFamily::bc: return "bc(" + to_string(bc_->first) + "," + to_string(bc_->second) + ")";
    case OffspringFamily::table: {
      std::string s = "table(";
      for (std::size_t j = 0; j < rho_.size(); ++j) s += (j ? "," : "") + to_string(rho_[j]);
      return s + ")";
    }
  }
  return "?";
}

Rational OffspringDist::rho(int j) const {
  if (j < 0) return 0;
  if (j1_ && j >= *j1_) return 0;
  if (j < static_cast<int>(rho_.size())) return rho_[static_cast<std::size_t>(j)];
  throw ArgumentError("offspring ratio p_" + std::to_string(j) + "/p_0 beyond the stored range (n_max=" +
                      std::to_string(n_max_) + ")");
}

Rational OffspringDist::r(int m) const {
  Rational pm = rho(m);
  if (pm == 0) throw ArgumentError("r_" + std::to_string(m) + " undefined: p_" + std::to_string(m) + " = 0");
  return (m + 1) * rho(m + 1) / pm;
}

std::optional<Rational> OffspringDist::p0_exact() const {
  switch (family_) {
    case OffspringFamily::poisson: return std::nullopt;
    case OffspringFamily::binomial: return power(1 - param2_, param1_.get_num().get_si());
    case OffspringFamily::negbinomial:
      if (is_integer(param1_)) return power(param2_, param1_.get_num().get_si());
      return std::nullopt;
    case OffspringFamily::bc:
    case OffspringFamily::table: {
      // renormalized over the stored support
      Rational s = 0;
      for (const auto& x : rho_) s += x;
      return 1 / s;
    }
  }
  return std::nullopt;
}

Real OffspringDist::p0() const {
  if (auto e = p0_exact()) return to_real(*e);
  if (family_ == OffspringFamily::poisson) return exp(-to_real(param1_));
  return pow(to_real(param2_), to_real(param1_));  // negative binomial, non-integer r
}

OffspringDist offspring_bc(const Rational& b, const Rational& c, int n) {
  if (b + c <= 0) throw PreconditionError("offspring_bc: need b + c > 0");
  if (n < 1) throw ArgumentError("offspring_bc: n must be positive");
  Rational prod = 1;
  std::optional<int> first_zero;
  for (int j = 1; j <= n - 1; ++j) {
    prod *= b - (j - 2) * c;
    if (prod < 0) throw PreconditionError("offspring_bc: product negative at j=" + std::to_string(j));
    if (prod == 0 && !first_zero) first_zero = j;
  }
  OffspringDist d;
  if (c == 0) {
    d = OffspringDist::poisson(b, n);
  } else if (Rational a = b / c + 1; c > 0 && is_integer(a) && a >= 1) {
    d = OffspringDist::binomial(static_cast<int>(a.get_num().get_si()), c / (c + 1));
  } else if (c > -1 && c < 0) {
    d = OffspringDist::negbinomial(-(b / c + 1), c + 1, n);
  } else {
    d.family_ = OffspringFamily::bc;
    d.n_max_ = n;
    Rational x = 1;
    for (int j = 0; j < n; ++j) {
      if (j > 0) x *= (b - (j - 2) * c) / j;
      d.rho_.push_back(x);
    }
    if (first_zero) {
      d.j1_ = *first_zero;
      d.rho_.resize(static_cast<std::size_t>(*first_zero));
    }
  }
  d.bc_ = std::make_pair(b, c);
  return d;
}

Real P0Scaled::value(const OffspringDist& off) const {
  return to_real(coeff) * pow(off.p0(), p0_power);
}

std::optional<Rational> P0Scaled::exact(const OffspringDist& off) const {
  auto p0 = off.p0_exact();
  if (!p0) return std::nullopt;
  return coeff * power(*p0, p0_power);
}

P0Scaled tree_prob(const PlaneTree& t, const OffspringDist& off) {
  Rational prod = 1;
  for (int d : t.degrees()) {
    prod *= off.rho(d);
    if (prod == 0) break;
  }
  return {prod, t.size()};
}

P0Scaled q_n(int n, const OffspringDist& off) {
  if (n < 1) throw ArgumentError("q_n: n must be positive");
  Rational c = power_coeff([&](int j) { return off.rho(j); }, n, n - 1) / n;
  return {c, n};
}

Rational q_n_enumerated(int n, const OffspringDist& off) {
  if (n > 14) throw CapacityError("q_n_enumerated: n exceeds plane-tree enumeration cap 14");
  Rational s = 0;
  for (const auto& t : enumerate_plane_trees(n)) s += tree_prob(t, off).coeff;
  return s;
}

P0Scaled q2_n(int n, const OffspringDist& off) {
  Rational s = 0;
  for (int m = 1; m <= n - 1; ++m) s += q_n(m, off).coeff * q_n(n - m, off).coeff;
  return {s, n};
}

P0Scaled total_progeny_pmf(int k, int n, const OffspringDist& off) {
  if (k < 1) throw ArgumentError("total_progeny_pmf: k must be positive");
  if (n < k) return {Rational(0), n};
  Rational c = make_rational(k, n) * power_coeff([&](int j) { return off.rho(j); }, n, n - k);
  return {c, n};
}

WeightSequence weights_from_offspring(const OffspringDist& off, int n_max) {
  std::vector<Rational> w;
  for (int m = 1; m <= n_max; ++m) w.push_back(Rational(factorial(m)) * q_n(m, off).coeff);
  return WeightSequence::explicit_values(std::move(w));
}

Rational sigma(const PlaneTree& t, const OffspringDist& off) {
  Rational s = 0;
  for (int d : t.degrees()) s += off.r(d);
  return s;
}

bool f2_exact_check(int n, const OffspringDist& off) {
  if (n < 2) throw ArgumentError("f2_exact_check: need n >= 2");
  if (n > 10) throw CapacityError("f2_exact_check: n exceeds enumeration cap 10");
  Rational qn = q_n(n, off).coeff, q2 = q2_n(n, off).coeff;
  if (qn == 0 || q2 == 0) throw PreconditionError("f2_exact_check: q(n) = 0");
  for (int m = 1; m <= n - 1; ++m) {
    auto left = enumerate_plane_trees(m);
    auto right = enumerate_plane_trees(n - m);
    for (const auto& t1 : left) {
      Rational p1 = tree_prob(t1, off).coeff;
      if (p1 == 0) continue;
      Rational s1 = sigma(t1, off);
      for (const auto& t2 : right) {
        Rational p2 = tree_prob(t2, off).coeff;
        if (p2 == 0) continue;
        Rational lhs = p1 * p2 * (s1 + sigma(t2, off)) / (2 * qn * (n - 1));
        if (lhs != p1 * p2 / q2) return false;
      }
    }
  }
  return true;
}

RationalDist<PlaneForest> cut_forest_law(int n, int k, const OffspringDist& off) {
  if (n > 9) throw CapacityError("cut_forest_law: n exceeds enumeration cap 9");
  if (k < 1 || k > n) throw ArgumentError("cut_forest_law: need 1 <= k <= n");
  auto trees = enumerate_plane_trees(n);
  Rational total = 0;
  for (const auto& t : trees) total += tree_prob(t, off).coeff;
  if (total == 0) throw PreconditionError("cut_forest_law: q(n) = 0");
  Rational per_cut = Rational(1) / Rational(binomial(n - 1, k - 1)) / Rational(factorial(k));
  RationalDist<PlaneForest> law;
  std::vector<int> order(static_cast<std::size_t>(k));
  for (const auto& t : trees) {
    Rational pt = tree_prob(t, off).coeff;
    if (pt == 0) continue;
    Rational each = pt / total * per_cut;
    for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
      if (__builtin_popcount(mask) != k - 1) continue;
      std::vector<int> cuts;
      for (int e = 0; e < n - 1; ++e)
        if ((mask >> e) & 1u) cuts.push_back(e + 1);
      auto f = cut_edges(t, cuts);
      std::iota(order.begin(), order.end(), 0);
      do {
        PlaneForest g;
        for (int i : order) g.trees.push_back(f.trees[static_cast<std::size_t>(i)]);
        law.add(g, each);
      } while (std::next_permutation(order.begin(), order.end()));
    }
  }
  return law;
}

RationalDist<PlaneForest> independent_forest_law(int n, int k, const OffspringDist& off) {
  RationalDist<PlaneForest> law;
  for (const auto& f : enumerate_plane_forests(n, k)) {
    Rational p = 1;
    for (const auto& t : f.trees) p *= tree_prob(t, off).coeff;
    law.add(f, p);
  }
  law.normalize();
  return law;
}

namespace {

constexpr int kBits = 3;

// Canonical labels of an element -> component map, packed into 3-bit fields
// (element 1 is always label 0 and is skipped).
std::uint64_t pack_stage(const std::vector<int>& comp_of_element, int n) {
  int map[8];
  std::fill(std::begin(map), std::end(map), -1);
  int next = 0;
  std::uint64_t key = 0;
  for (int e = 0; e < n; ++e) {
    int& m = map[comp_of_element[static_cast<std::size_t>(e)]];
    if (m < 0) m = next++;
    if (e > 0) key = (key << kBits) | static_cast<std::uint64_t>(m);
  }
  return key;
}

FragPath unpack_path(std::uint64_t key, int n) {
  FragPath p{n, {}};
  p.states.push_back(SetPartition::single_block(n));
  std::vector<SetPartition> middle;
  const int width = (n - 1) * kBits;
  for (int s = n - 1; s >= 2; --s) {
    std::uint64_t part = key & ((std::uint64_t{1} << width) - 1);
    key >>= width;
    std::vector<int> labels(static_cast<std::size_t>(n), 0);
    for (int e = n - 1; e >= 1; --e) {
      labels[static_cast<std::size_t>(e)] = static_cast<int>(part & ((1u << kBits) - 1));
      part >>= kBits;
    }
    middle.push_back(SetPartition::from_labels(labels));
  }
  p.states.insert(p.states.end(), middle.rbegin(), middle.rend());
  if (n > 1) p.states.push_back(SetPartition::singletons(n));
  return p;
}

}  // namespace

PathLaw labelled_cut_chain_law(int n, const OffspringDist& off) {
  if (n < 1 || n > 6) throw CapacityError("labelled_cut_chain_law: n must be in 1..6");
  PathLaw law{n, {}};
  if (n == 1) {
    law.paths.add(FragPath{1, {SetPartition::single_block(1)}}, Rational(1));
    return law;
  }
  auto trees = enumerate_plane_trees(n);
  Rational total = 0;
  for (const auto& t : trees) total += tree_prob(t, off).coeff;
  if (total == 0) throw PreconditionError("labelled_cut_chain_law: q(n) = 0");
  Rational per = Rational(1) / Rational(factorial(n - 1) * factorial(n));

  std::map<std::uint64_t, Rational> acc;
  for (const auto& t : trees) {
    Rational pt = tree_prob(t, off).coeff;
    if (pt == 0) continue;
    std::unordered_map<std::uint64_t, std::uint64_t> counts;
    std::vector<int> edges(static_cast<std::size_t>(n - 1));
    std::iota(edges.begin(), edges.end(), 1);
    do {
      // node -> component after each prefix of cuts, stages 2..n-1
      std::vector<std::vector<int>> stage_comp;
      for (int j = 1; j <= n - 2; ++j) {
        stage_comp.push_back(cut_components(t, std::vector<int>(edges.begin(), edges.begin() + j)));
      }
      std::vector<int> node_of(static_cast<std::size_t>(n));  // element e sits on node node_of[e]
      std::iota(node_of.begin(), node_of.end(), 0);
      std::vector<int> comp_of_element(static_cast<std::size_t>(n));
      do {
        std::uint64_t key = 0;
        for (const auto& comp : stage_comp) {
          for (int e = 0; e < n; ++e) comp_of_element[static_cast<std::size_t>(e)] = comp[static_cast<std::size_t>(node_of[static_cast<std::size_t>(e)])];
          key = (key << ((n - 1) * kBits)) | pack_stage(comp_of_element, n);
        }
        ++counts[key];
      } while (std::next_permutation(node_of.begin(), node_of.end()));
    } while (std::next_permutation(edges.begin(), edges.end()));
    Rational w = pt / total * per;
    for (auto [key, cnt] : counts) acc[key] += w * Rational(BigInt(static_cast<unsigned long>(cnt)));
  }
  for (const auto& [key, p] : acc) law.paths.add(unpack_path(key, n), p);
  return law;
}

int lemma_affine_search(int n) {
  if (n < 3 || n > 7) throw ArgumentError("lemma_affine_search: n must be in 3..7");
  const std::vector<Rational> grid = {-2, -1, Rational(-1, 2), 0, Rational(1, 2), 1, 2};
  int counterexamples = 0;
  for (int j = 1; j <= n - 2; ++j) {
    // multiplicity vectors (c_0..c_j): sum c = n, sum m c_m = n-2
    std::vector<std::vector<int>> shapes;
    std::vector<int> c(static_cast<std::size_t>(j) + 1, 0);
    std::function<void(int, int, int)> rec = [&](int m, int slots, int mass) {
      if (m == 0) {
        if (mass == 0) {
          c[0] = slots;
          shapes.push_back(c);
        }
        return;
      }
      for (int cnt = 0; cnt <= slots && cnt * m <= mass; ++cnt) {
        c[static_cast<std::size_t>(m)] = cnt;
        rec(m - 1, slots - cnt, mass - cnt * m);
      }
      c[static_cast<std::size_t>(m)] = 0;
    };
    rec(j, n, n - 2);

    std::vector<std::size_t> idx(static_cast<std::size_t>(j) + 1, 0);
    for (;;) {
      std::vector<Rational> r;
      for (auto i : idx) r.push_back(grid[i]);
      bool constant = true;
      Rational first;
      for (std::size_t s = 0; s < shapes.size() && constant; ++s) {
        Rational sum = 0;
        for (int m = 0; m <= j; ++m) sum += shapes[s][static_cast<std::size_t>(m)] * r[static_cast<std::size_t>(m)];
        if (s == 0) first = sum;
        else if (sum != first) constant = false;
      }
      if (constant) {
        for (int m = 0; m <= j; ++m) {
          if (r[static_cast<std::size_t>(m)] - r[0] != m * (r[1] - r[0])) {
            ++counterexamples;
            break;
          }
        }
      }
      std::size_t pos = 0;
      while (pos < idx.size() && ++idx[pos] == grid.size()) idx[pos++] = 0;
      if (pos == idx.size()) break;
    }
  }
  return counterexamples;
}

ConditionedTreeSampler::ConditionedTreeSampler(const OffspringDist& off, int n, Mode mode) : n_(n), mode_(mode) {
  if (n < 1) throw ArgumentError("conditioned tree: n must be positive");
  for (int j = 0; j < n; ++j) rho_.push_back(off.rho(j));
  Rational qt = q_n(n, off).coeff;
  if (qt == 0) throw PreconditionError("conditioned tree: q(n) = 0");
  Rational z = std::accumulate(rho_.begin(), rho_.end(), Rational(0));
  acceptance_ = Rational(qt / power(z, n)).get_d();
  if (mode_ == Mode::automatic) mode_ = (n <= 50 && acceptance_ >= 1e-3) ? Mode::rejection : Mode::recursive;
  if (mode_ == Mode::rejection) {
    offspring_.emplace(rho_);
  } else {
    forest_.assign(static_cast<std::size_t>(n) + 1, std::vector<Rational>(static_cast<std::size_t>(n) + 2, Rational(0)));
    forest_[0][0] = 1;
    for (int m = 1; m <= n; ++m) {
      for (int j = 1; j <= m; ++j) {
        Rational s = 0;
        for (int d = 0; j - 1 + d <= m - 1 && d < n; ++d) {
          const Rational& f = forest_[static_cast<std::size_t>(m - 1)][static_cast<std::size_t>(j - 1 + d)];
          if (f != 0 && rho_[static_cast<std::size_t>(d)] != 0) s += rho_[static_cast<std::size_t>(d)] * f;
        }
        forest_[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)] = s;
      }
    }
  }
}

PlaneTree ConditionedTreeSampler::rejection(RandomStream& rng) const {
  std::vector<int> deg;
  deg.reserve(static_cast<std::size_t>(n_));
  for (;;) {
    deg.clear();
    long open = 1;
    while (open > 0 && static_cast<int>(deg.size()) < n_) {
      int d = static_cast<int>((*offspring_)(rng));
      deg.push_back(d);
      open += d - 1;
    }
    if (open == 0 && static_cast<int>(deg.size()) == n_) return PlaneTree(deg);
  }
}

PlaneTree ConditionedTreeSampler::recursive(RandomStream& rng) const {
  std::vector<int> deg;
  int m = n_, j = 1;
  while (m > 0) {
    std::vector<Rational> wts;
    for (int d = 0; j - 1 + d <= m - 1 && d < n_; ++d) {
      wts.push_back(rho_[static_cast<std::size_t>(d)] * forest_[static_cast<std::size_t>(m - 1)][static_cast<std::size_t>(j - 1 + d)]);
    }
    int d = static_cast<int>(sample_index(scale_to_integers(wts), rng));
    deg.push_back(d);
    j += d - 1;
    --m;
  }
  return PlaneTree(deg);
}

PlaneTree ConditionedTreeSampler::operator()(RandomStream& rng) const {
  return mode_ == Mode::rejection ? rejection(rng) : recursive(rng);
}

PlaneTree sample_conditioned_tree(int n, const OffspringDist& off, RandomStream& rng) {
  return ConditionedTreeSampler(off, n)(rng);
}

}  // namespace gibbsfrag
