#include "gibbsfrag/kingman.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "gibbsfrag/errors.hpp"
#include "gibbsfrag/sampling.hpp"

namespace gibbsfrag {

double CoalescentTree::total_length() const {
  double s = 0;
  for (int i = 1; i <= n - 1; ++i) s += stratum(i);
  return s;
}

double CoalescentTree::edge_length(int v) const {
  const auto& x = vertices.at(static_cast<std::size_t>(v));
  if (x.parent < 0) return 0;
  return vertices[static_cast<std::size_t>(x.parent)].time - x.time;
}

int CoalescentTree::stratum_at(double h) const {
  for (int i = 1; i <= n - 1; ++i) {
    if (h > t[static_cast<std::size_t>(i + 1)] && h <= t[static_cast<std::size_t>(i)]) return i;
  }
  throw ArgumentError("stratum_at: height outside the tree");
}

std::vector<SetPartition> CoalescentTree::skeleton() const {
  std::vector<int> label(static_cast<std::size_t>(n));
  std::iota(label.begin(), label.end(), 0);
  std::vector<SetPartition> out{SetPartition::from_labels(label)};
  for (int v = n; v < static_cast<int>(vertices.size()); ++v) {
    for (int x : vertices[static_cast<std::size_t>(v)].members) label[static_cast<std::size_t>(x - 1)] = v;
    out.push_back(SetPartition::from_labels(label));
  }
  return out;
}

CoalescentTree simulate_kingman_tree(int n, RandomStream& rng) {
  if (n < 2) throw ArgumentError("kingman tree: n must be at least 2");
  CoalescentTree tree;
  tree.n = n;
  tree.t.assign(static_cast<std::size_t>(n) + 1, 0.0);
  for (int i = 1; i <= n; ++i) tree.vertices.push_back({{i}, 0.0, -1, -1, -1});
  std::vector<int> active(static_cast<std::size_t>(n));
  std::iota(active.begin(), active.end(), 0);
  double time = 0;
  for (int k = n; k >= 2; --k) {
    time += rng.exponential(k * (k - 1) / 2.0);
    tree.t[static_cast<std::size_t>(k - 1)] = time;
    auto a = rng.uniform_below(static_cast<std::uint64_t>(k));
    auto b = rng.uniform_below(static_cast<std::uint64_t>(k - 1));
    if (b >= a) ++b;
    int va = active[a], vb = active[b];
    CoalescentTree::Vertex v;
    v.members = tree.vertices[static_cast<std::size_t>(va)].members;
    const auto& mb = tree.vertices[static_cast<std::size_t>(vb)].members;
    v.members.insert(v.members.end(), mb.begin(), mb.end());
    std::sort(v.members.begin(), v.members.end());
    v.time = time;
    v.left = std::min(va, vb);
    v.right = std::max(va, vb);
    int id = static_cast<int>(tree.vertices.size());
    tree.vertices[static_cast<std::size_t>(va)].parent = id;
    tree.vertices[static_cast<std::size_t>(vb)].parent = id;
    tree.vertices.push_back(std::move(v));
    // remove b then a (indices) and append the new cluster
    active.erase(active.begin() + static_cast<long>(std::max(a, b)));
    active.erase(active.begin() + static_cast<long>(std::min(a, b)));
    active.push_back(id);
  }
  return tree;
}

CutSchedule sample_cuts(const CoalescentTree& tree, RandomStream& rng) {
  CutSchedule c;
  for (int v = 0; v < static_cast<int>(tree.vertices.size()); ++v) {
    double len = tree.edge_length(v);
    if (len <= 0) {
      c.first_cut.push_back(std::numeric_limits<double>::infinity());
      c.position.push_back(0);
      continue;
    }
    c.first_cut.push_back(2.0 * rng.exponential(1.0) / len);
    c.position.push_back(rng.uniform_open01());
  }
  return c;
}

SetPartition allelic_partition(const CoalescentTree& tree, const CutSchedule& cuts, double theta) {
  if (theta < 0) throw ArgumentError("allelic partition: theta must be nonnegative");
  std::vector<int> up(tree.vertices.size());
  std::iota(up.begin(), up.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (up[static_cast<std::size_t>(x)] != x) x = up[static_cast<std::size_t>(x)] = up[static_cast<std::size_t>(up[static_cast<std::size_t>(x)])];
    return x;
  };
  for (int v = 0; v < static_cast<int>(tree.vertices.size()); ++v) {
    int p = tree.vertices[static_cast<std::size_t>(v)].parent;
    if (p >= 0 && cuts.first_cut[static_cast<std::size_t>(v)] > theta) up[static_cast<std::size_t>(find(v))] = find(p);
  }
  std::vector<int> labels;
  for (int leaf = 0; leaf < tree.n; ++leaf) labels.push_back(find(leaf));
  return SetPartition::from_labels(labels);
}

FirstCut first_cut(const CoalescentTree& tree, const CutSchedule& cuts) {
  auto it = std::min_element(cuts.first_cut.begin(), cuts.first_cut.end());
  int v = static_cast<int>(it - cuts.first_cut.begin());
  const auto& vx = tree.vertices[static_cast<std::size_t>(v)];
  double h = vx.time + cuts.position[static_cast<std::size_t>(v)] * tree.edge_length(v);
  std::vector<int> labels(static_cast<std::size_t>(tree.n), 0);
  for (int x : vx.members) labels[static_cast<std::size_t>(x - 1)] = 1;
  return {*it, v, tree.stratum_at(h), SetPartition::from_labels(labels)};
}

Rational ewens_pmf(const SetPartition& pi, const Rational& theta) {
  if (theta <= 0) throw ArgumentError("ewens: theta must be positive");
  Rational num = power(theta, pi.k() - 1);
  for (int s : pi.block_sizes()) num *= Rational(factorial(s - 1));
  Rational den = 1;
  for (int i = 1; i <= pi.n() - 1; ++i) den *= theta + i;
  return num / den;
}

double ewens_pmf(const SetPartition& pi, double theta) {
  if (!(theta > 0)) throw ArgumentError("ewens: theta must be positive");
  double lp = (pi.k() - 1) * std::log(theta);
  for (int s : pi.block_sizes()) lp += std::lgamma(s);
  for (int i = 1; i <= pi.n() - 1; ++i) lp -= std::log(theta + i);
  return std::exp(lp);
}

Rational laplace_transform_length(const Rational& theta, int n) {
  Rational den = 1;
  for (int i = 1; i <= n - 1; ++i) den *= theta + i;
  return Rational(factorial(n - 1)) / den;
}

double laplace_transform_length(double theta, int n) {
  double v = 1;
  for (int i = 1; i <= n - 1; ++i) v *= i / (theta + i);
  return v;
}

Real theta_density(const Real& theta, int n) {
  Real v = 1, s = 0;
  for (int i = 1; i <= n - 1; ++i) {
    v *= Real(i) / (theta + i);
    s += 1 / (theta + i);
  }
  return v * s;
}

double theta_density(double theta, int n) {
  double v = 1, s = 0;
  for (int i = 1; i <= n - 1; ++i) {
    v *= i / (theta + i);
    s += 1 / (theta + i);
  }
  return v * s;
}

double stratum_given_theta(int i, double theta, int n) {
  double s = 0;
  for (int j = 1; j <= n - 1; ++j) s += 1 / (j + theta);
  return (1 / (i + theta)) / s;
}

namespace {

double split_coefficient(int n1, int n2, int i, int n) {
  return BigInt(binomial(n1 - 1, i - 1) + binomial(n2 - 1, i - 1)).get_d() / binomial(n - 1, i).get_d();
}

}  // namespace

double first_split_given_theta(int n1, int n2, double theta, int n) {
  double num = 0, den = 0;
  for (int i = 1; i <= n - 1; ++i) {
    num += split_coefficient(n1, n2, i, n) / (i + theta);
    den += 1 / (i + theta);
  }
  return num / (binomial(n, n1).get_d() * den);
}

QuadratureResult integrate_half_line(const std::function<double(double)>& f, double tol) {
  auto g = [&](double u) {
    double one_minus = 1 - u;
    double theta = u / one_minus;
    return f(theta) / (one_minus * one_minus);
  };
  double err = 0;
  double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(g, 0.0, 1.0, 20, tol, &err);
  if (!(err <= std::max(tol, 1e-9))) {
    throw NumericError("quadrature did not converge: error estimate " + std::to_string(err));
  }
  return {v, err};
}

QuadratureResult theta_density_integral(int n) {
  return integrate_half_line([n](double th) { return theta_density(th, n); });
}

QuadratureResult first_split_prob(int n1, int n2, int n) {
  if (n1 < 1 || n2 < 1 || n1 + n2 != n) throw ArgumentError("first split: block sizes must be positive and sum to n");
  std::vector<double> coef;
  for (int i = 1; i <= n - 1; ++i) coef.push_back(split_coefficient(n1, n2, i, n));
  auto r = integrate_half_line([&](double th) {
    double inv = 1, s = 0;
    for (int i = 1; i <= n - 1; ++i) {
      inv /= th + i;
      s += coef[static_cast<std::size_t>(i - 1)] / (i + th);
    }
    return inv * s;
  });
  double scale = factorial(n - 1).get_d() / binomial(n, n1).get_d();
  return {r.value * scale, r.error * scale};
}

std::map<SetPartition, double> first_split_pmf(int n) {
  if (n < 2) throw ArgumentError("first split: n must be at least 2");
  std::map<std::pair<int, int>, double> by_sizes;
  std::map<SetPartition, double> out;
  for (const auto& p : enumerate_set_partitions(n, 2)) {
    int a = p.block_sizes()[0], b = p.block_sizes()[1];
    auto key = std::minmax(a, b);
    auto it = by_sizes.find(key);
    if (it == by_sizes.end()) it = by_sizes.emplace(key, first_split_prob(key.first, key.second, n).value).first;
    out[p] = it->second;
  }
  return out;
}

std::vector<double> j_law_quadrature(int n) {
  std::vector<double> out;
  for (int j = 1; j <= n - 1; ++j) out.push_back(0.5 * binomial(n, j).get_d() * first_split_prob(j, n - j, n).value);
  return out;
}

Real LogLinearForm::value() const {
  Real v = to_real(constant);
  for (const auto& [i, a] : log_coeffs) {
    if (i != 1 && a != 0) v += to_real(a) * log(Real(i));
  }
  return v;
}

LogLinearForm j_law_exact(int n, int j) {
  if (n < 2 || j < 1 || j > n - 1) throw ArgumentError("j_law_exact: need 1 <= j <= n-1");
  const int m_max = n - 1;
  std::vector<Rational> c(static_cast<std::size_t>(m_max) + 1), A(static_cast<std::size_t>(m_max) + 1);
  for (int i = 1; i <= m_max; ++i) {
    c[static_cast<std::size_t>(i)] = Rational(binomial(j - 1, i - 1) + binomial(n - j - 1, i - 1)) / Rational(binomial(n - 1, i));
    // 1/prod_{l != i} (l - i)
    Rational a(factorial(i - 1) * factorial(m_max - i));
    A[static_cast<std::size_t>(i)] = ((i - 1) % 2 == 0 ? Rational(1) : Rational(-1)) / a;
  }
  // integrand = sum_i c_i / ((theta+i) prod_m (theta+m))
  Rational rational_part = 0;
  std::vector<Rational> beta(static_cast<std::size_t>(m_max) + 1, Rational(0));
  for (int i = 1; i <= m_max; ++i) {
    const Rational& ci = c[static_cast<std::size_t>(i)];
    rational_part += ci * A[static_cast<std::size_t>(i)] / i;  // double pole at -i
    for (int m = 1; m <= m_max; ++m) {
      if (m == i) continue;
      Rational k = ci * A[static_cast<std::size_t>(m)] / (m - i);
      beta[static_cast<std::size_t>(i)] += k;
      beta[static_cast<std::size_t>(m)] -= k;
    }
  }
  Rational scale = Rational(factorial(n - 1)) / 2;
  LogLinearForm f;
  f.constant = scale * rational_part;
  for (int p = 1; p <= m_max; ++p) f.log_coeffs[p] = -scale * beta[static_cast<std::size_t>(p)];
  return f;
}

LogLinearForm j_theta_general(int n) {
  if (n < 3) throw ArgumentError("j_theta_general: n must be at least 3");
  return j_law_exact(n, 1);
}

LogLinearForm j_theta_alternative(int n) {
  if (n < 3) throw ArgumentError("j_theta_alternative: n must be at least 3");
  LogLinearForm f;
  f.constant = Rational(1, 2);
  Rational scale = Rational(factorial(n - 1)) / 2 / Rational(factorial(n));
  for (int i = 1; i <= n - 1; ++i) {
    f.log_coeffs[i] = scale * Rational(binomial(n, i - 1)) * ((i - 1) % 2 == 0 ? 1 : -1);
  }
  return f;
}

std::vector<LogLinearForm> first_split_stated_n4() {
  LogLinearForm j1{Rational(1, 2), {{2, Rational(-3)}, {3, Rational(3, 2)}}};
  LogLinearForm j2{Rational(0), {{2, Rational(6)}, {3, Rational(-3)}}};
  return {j1, j2, j1};
}

Rational gibbs_first_split_reference(int n) {
  if (n < 3) throw ArgumentError("gibbs reference: n must be at least 3");
  Rational h = 0;
  for (int i = 1; i <= n - 1; ++i) h += Rational(1, i);
  return Rational(n) / (2 * (n - 1) * h);
}

std::vector<Rational> gibbs_j_law(int n) {
  Rational h = 0;
  for (int i = 1; i <= n - 1; ++i) h += Rational(1, i);
  Rational b2 = Rational(factorial(n - 1)) * h;
  std::vector<Rational> out;
  for (int j = 1; j <= n - 1; ++j) {
    out.push_back(Rational(binomial(n, j) * factorial(j - 1) * factorial(n - j - 1)) / (2 * b2));
  }
  return out;
}

Permutation sample_uniform_perm_with_k_cycles(int n, int k, RandomStream& rng) {
  if (k < 1 || k > n) throw ArgumentError("permutation with k cycles: need 1 <= k <= n");
  // decide, from n down, whether element m opens its own cycle
  std::vector<char> opens(static_cast<std::size_t>(n) + 1, 0);
  int kk = k;
  for (int m = n; m >= 1; --m) {
    if (kk == m) {
      for (int x = m; x >= 1; --x) opens[static_cast<std::size_t>(x)] = 1;
      break;
    }
    BigInt fresh = stirling1_unsigned(m - 1, kk - 1);
    BigInt insert = (m - 1) * stirling1_unsigned(m - 1, kk);
    if (sample_index(std::vector<BigInt>{fresh, insert}, rng) == 0) {
      opens[static_cast<std::size_t>(m)] = 1;
      --kk;
    }
  }
  std::vector<int> im(static_cast<std::size_t>(n) + 1, 0);
  for (int m = 1; m <= n; ++m) {
    if (opens[static_cast<std::size_t>(m)]) {
      im[static_cast<std::size_t>(m)] = m;
    } else {
      int x = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(m - 1))) + 1;
      im[static_cast<std::size_t>(m)] = im[static_cast<std::size_t>(x)];
      im[static_cast<std::size_t>(x)] = m;
    }
  }
  return Permutation(std::vector<int>(im.begin() + 1, im.end()));
}

}  // namespace gibbsfrag
