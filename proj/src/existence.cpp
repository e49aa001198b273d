#include "gibbsfrag/existence.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "gibbsfrag/errors.hpp"
#include "gibbsfrag/max_flow.hpp"

namespace gibbsfrag {

RefinementGraph refinement_graph(int n, int k) {
  if (k < 1 || k >= n) throw ArgumentError("refinement graph: need 1 <= k <= n-1");
  RefinementGraph g;
  g.level_k = integer_partitions(n, k);
  g.level_k1 = integer_partitions(n, k + 1);
  std::map<IntegerPartition, int> index;
  for (std::size_t i = 0; i < g.level_k1.size(); ++i) index[g.level_k1[i]] = static_cast<int>(i);
  for (std::size_t i = 0; i < g.level_k.size(); ++i) {
    const auto& parts = g.level_k[i].parts();
    std::set<int> targets;
    for (std::size_t p = 0; p < parts.size(); ++p) {
      if (p > 0 && parts[p] == parts[p - 1]) continue;
      for (int a = 1; a <= parts[p] / 2; ++a) {
        std::vector<int> q(parts);
        q[p] = a;
        q.push_back(parts[p] - a);
        targets.insert(index.at(IntegerPartition(q)));
      }
    }
    for (int t : targets) g.edges.push_back({static_cast<int>(i), t});
  }
  return g;
}

std::vector<int> neighbourhood(const RefinementGraph& g, const std::vector<int>& lambdas) {
  std::set<int> in(lambdas.begin(), lambdas.end()), out;
  for (auto [a, b] : g.edges)
    if (in.count(a)) out.insert(b);
  return {out.begin(), out.end()};
}

namespace {

Rational level_mass(const GibbsModel& model, const IntegerPartition& lam) {
  // p_{n,1} is a point mass whatever w_n is
  if (lam.k() == 1) return 1;
  return model.micro_int(lam, lam.k()).prob;
}

// Network: source -> level k -> level k+1 -> sink; middle arcs capacity 2.
template <typename Node>
StepVerdict solve(const std::vector<Node>& left, const std::vector<Rational>& p_left, const std::vector<Node>& right,
                  const std::vector<Rational>& p_right, const std::vector<std::pair<int, int>>& edges, int k,
                  const std::function<IntegerPartition(const Node&)>& as_shape) {
  FlowNetwork net;
  int s = net.add_node(), t = net.add_node();
  int base_l = net.num_nodes();
  for (std::size_t i = 0; i < left.size(); ++i) net.add_node();
  int base_r = net.num_nodes();
  for (std::size_t i = 0; i < right.size(); ++i) net.add_node();
  for (std::size_t i = 0; i < left.size(); ++i) net.add_arc(s, base_l + static_cast<int>(i), p_left[i]);
  for (auto [a, b] : edges) net.add_arc(base_l + a, base_r + b, Rational(2));
  for (std::size_t i = 0; i < right.size(); ++i) net.add_arc(base_r + static_cast<int>(i), t, p_right[i]);

  auto r = max_flow(net, s, t);
  StepVerdict v;
  v.k = k;
  v.flow = r.value;
  v.feasible = (r.value == 1);
  if (!v.feasible) {
    Certificate c;
    c.mass_a = 0;
    c.mass_image = 0;
    std::set<int> a_idx;
    for (std::size_t i = 0; i < left.size(); ++i) {
      if (r.source_side[static_cast<std::size_t>(base_l) + i]) {
        a_idx.insert(static_cast<int>(i));
        c.a.push_back(as_shape(left[i]));
        c.mass_a += p_left[i];
      }
    }
    std::set<int> img;
    for (auto [a, b] : edges)
      if (a_idx.count(a)) img.insert(b);
    for (int b : img) {
      c.image.push_back(as_shape(right[static_cast<std::size_t>(b)]));
      c.mass_image += p_right[static_cast<std::size_t>(b)];
    }
    if (!(c.mass_a > c.mass_image)) throw NumericError("max-flow cut does not yield a violating set");
    v.certificate = std::move(c);
  }
  return v;
}

void check_weights(int n, const WeightSequence& w) {
  if (w.n_max() < n - 1) throw ArgumentError("existence: weights known up to " + std::to_string(w.n_max()));
  if (!w.positive_up_to(n)) throw PreconditionError("existence: weights must be positive up to n-1");
}

}  // namespace

StepVerdict one_step_feasible(const GibbsModel& model, int n, int k) {
  auto g = refinement_graph(n, k);
  std::vector<Rational> pl, pr;
  for (const auto& lam : g.level_k) pl.push_back(level_mass(model, lam));
  for (const auto& mu : g.level_k1) pr.push_back(level_mass(model, mu));
  return solve<IntegerPartition>(g.level_k, pl, g.level_k1, pr, g.edges, k, [](const IntegerPartition& x) { return x; });
}

StepVerdict one_step_feasible(int n, int k, const WeightSequence& w) {
  check_weights(n, w);
  return one_step_feasible(GibbsModel(w.resized(std::max(1, n - 1)), n), n, k);
}

StepVerdict one_step_feasible_set_partitions(int n, int k, const WeightSequence& w) {
  if (n > 7) throw CapacityError("set-partition feasibility: n exceeds cap 7");
  if (k < 1 || k >= n) throw ArgumentError("need 1 <= k <= n-1");
  check_weights(n, w);
  GibbsModel model(w.resized(std::max(1, n - 1)), n);
  auto left = enumerate_set_partitions(n, k);
  auto right = enumerate_set_partitions(n, k + 1);
  std::vector<Rational> pl, pr;
  for (const auto& p : left) pl.push_back(k == 1 ? Rational(1) : model.micro_set(p, k).prob);
  for (const auto& p : right) pr.push_back(model.micro_set(p, k + 1).prob);
  std::vector<std::pair<int, int>> edges;
  for (std::size_t i = 0; i < left.size(); ++i)
    for (std::size_t j = 0; j < right.size(); ++j)
      if (refines(right[j], left[i])) edges.push_back({static_cast<int>(i), static_cast<int>(j)});
  return solve<SetPartition>(left, pl, right, pr, edges, k, [](const SetPartition& p) { return shape(p); });
}

bool certificate_valid(int n, int k, const WeightSequence& w, const Certificate& c) {
  GibbsModel model(w.resized(std::max(1, n - 1)), n);
  auto g = refinement_graph(n, k);
  std::vector<int> a_idx;
  Rational mass_a = 0;
  for (const auto& lam : c.a) {
    auto it = std::find(g.level_k.begin(), g.level_k.end(), lam);
    if (it == g.level_k.end()) return false;
    a_idx.push_back(static_cast<int>(it - g.level_k.begin()));
    mass_a += level_mass(model, lam);
  }
  Rational mass_img = 0;
  std::vector<IntegerPartition> img;
  for (int b : neighbourhood(g, a_idx)) {
    img.push_back(g.level_k1[static_cast<std::size_t>(b)]);
    mass_img += level_mass(model, img.back());
  }
  // the recorded image and masses have to be the true ones
  auto listed = c.image;
  std::sort(listed.begin(), listed.end());
  std::sort(img.begin(), img.end());
  if (listed != img || mass_a != c.mass_a || mass_img != c.mass_image) return false;
  return mass_a > mass_img;
}

ExistenceReport exists_gibbs_frag(int n, const WeightSequence& w) {
  if (n < 1) throw ArgumentError("existence: n must be positive");
  ExistenceReport rep;
  rep.n = n;
  rep.weights = w.family_name();
  if (n <= 1) return rep;
  check_weights(n, w);
  GibbsModel model(w.resized(std::max(1, n - 1)), n);
  for (int k = 1; k <= n - 1; ++k) {
    rep.per_k.push_back(one_step_feasible(model, n, k));
    rep.verdict = rep.verdict && rep.per_k.back().feasible;
  }
  return rep;
}

ExistenceScan scan_existence(int n_max, const WeightSequence& w, bool keep_going) {
  ExistenceScan scan;
  scan.n_max = n_max;
  for (int n = 1; n <= n_max; ++n) {
    auto rep = exists_gibbs_frag(n, w.resized(std::max(1, std::min(n_max, w.n_max()))));
    scan.verdicts.push_back({n, rep.verdict});
    if (!rep.verdict && !scan.first_failing_n) {
      scan.first_failing_n = n;
      scan.failing_report = rep;
      if (!keep_going) break;
    }
  }
  return scan;
}

}  // namespace gibbsfrag
