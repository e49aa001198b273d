#include "gibbsfrag/plane_tree.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "gibbsfrag/errors.hpp"
#include "gibbsfrag/sampling.hpp"

namespace gibbsfrag {

PlaneTree::PlaneTree(std::vector<int> preorder_degrees) : degrees_(std::move(preorder_degrees)) {
  // Lukasiewicz: the running count of open slots hits zero exactly at the end
  long open = 1;
  for (std::size_t i = 0; i < degrees_.size(); ++i) {
    if (degrees_[i] < 0) throw ArgumentError("plane tree: negative child count");
    if (open <= 0) throw ArgumentError("plane tree: degree sequence closes early");
    open += degrees_[i] - 1;
  }
  if (degrees_.empty() || open != 0) throw ArgumentError("plane tree: degree sequence does not close");
}

PlaneTree PlaneTree::parse(std::string_view s) {
  std::vector<int> deg;
  std::vector<std::size_t> stack;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char ch = s[i];
    if (ch == '(') {
      if (!stack.empty()) ++deg[stack.back()];
      else if (!deg.empty()) throw ArgumentError("plane tree: more than one root in " + std::string(s));
      stack.push_back(deg.size());
      deg.push_back(0);
    } else if (ch == ')') {
      if (stack.empty()) throw ArgumentError("plane tree: unbalanced parentheses");
      stack.pop_back();
    } else if (ch != ' ') {
      throw ArgumentError("plane tree: unexpected character");
    }
  }
  if (!stack.empty() || deg.empty()) throw ArgumentError("plane tree: unbalanced parentheses");
  return PlaneTree(std::move(deg));
}

PlaneTree PlaneTree::path(int n) {
  if (n < 1) throw ArgumentError("plane tree: n must be positive");
  std::vector<int> d(static_cast<std::size_t>(n), 1);
  d.back() = 0;
  return PlaneTree(std::move(d));
}

std::vector<int> PlaneTree::parents() const {
  std::vector<int> par(degrees_.size(), -1);
  std::vector<std::pair<int, int>> stack;  // (node, children still to attach)
  for (int v = 0; v < size(); ++v) {
    while (!stack.empty() && stack.back().second == 0) stack.pop_back();
    if (!stack.empty()) {
      par[static_cast<std::size_t>(v)] = stack.back().first;
      --stack.back().second;
    }
    stack.push_back({v, degree(v)});
  }
  return par;
}

std::vector<int> PlaneTree::subtree_sizes() const {
  auto par = parents();
  std::vector<int> sz(degrees_.size(), 1);
  for (int v = size() - 1; v > 0; --v) sz[static_cast<std::size_t>(par[static_cast<std::size_t>(v)])] += sz[static_cast<std::size_t>(v)];
  return sz;
}

std::string PlaneTree::to_string() const {
  std::string s;
  std::vector<int> pending;
  for (int d : degrees_) {
    s += '(';
    pending.push_back(d);
    while (!pending.empty() && pending.back() == 0) {
      s += ')';
      pending.pop_back();
      if (!pending.empty()) --pending.back();
    }
  }
  return s;
}

int PlaneForest::size() const {
  int s = 0;
  for (const auto& t : trees) s += t.size();
  return s;
}

std::string PlaneForest::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < trees.size(); ++i) {
    if (i) s += '|';
    s += trees[i].to_string();
  }
  return s;
}

PlaneForest PlaneForest::parse(std::string_view text) {
  PlaneForest f;
  std::size_t start = 0;
  for (;;) {
    auto bar = text.find('|', start);
    f.trees.push_back(PlaneTree::parse(text.substr(start, bar == std::string_view::npos ? text.npos : bar - start)));
    if (bar == std::string_view::npos) break;
    start = bar + 1;
  }
  return f;
}

namespace {

// Dyck words on `pairs` pairs in lex order, handed out as strings
void dyck_words(int pairs, const std::function<void(const std::string&)>& visit) {
  std::string w;
  std::function<void(int, int)> rec = [&](int open, int close) {
    if (open == pairs && close == pairs) {
      visit(w);
      return;
    }
    if (open < pairs) {
      w.push_back('(');
      rec(open + 1, close);
      w.pop_back();
    }
    if (close < open) {
      w.push_back(')');
      rec(open, close + 1);
      w.pop_back();
    }
  };
  rec(0, 0);
}

}  // namespace

std::vector<PlaneTree> enumerate_plane_trees(int n) {
  if (n < 1) throw ArgumentError("plane trees: n must be positive");
  std::vector<PlaneTree> out;
  dyck_words(n - 1, [&](const std::string& inner) { out.push_back(PlaneTree::parse("(" + inner + ")")); });
  return out;
}

std::vector<PlaneForest> enumerate_plane_forests(int n, int k) {
  if (k < 1 || k > n) throw ArgumentError("plane forests: need 1 <= k <= n");
  std::vector<std::vector<PlaneTree>> by_size(static_cast<std::size_t>(n) + 1);
  for (int m = 1; m <= n - k + 1; ++m) by_size[static_cast<std::size_t>(m)] = enumerate_plane_trees(m);
  std::vector<PlaneForest> out;
  PlaneForest cur;
  std::function<void(int, int)> rec = [&](int left, int parts) {
    if (parts == 0) {
      if (left == 0) out.push_back(cur);
      return;
    }
    for (int m = 1; m <= left - (parts - 1); ++m) {
      for (const auto& t : by_size[static_cast<std::size_t>(m)]) {
        cur.trees.push_back(t);
        rec(left - m, parts - 1);
        cur.trees.pop_back();
      }
    }
  };
  rec(n, k);
  return out;
}

BigInt plane_forest_count(int n, int k) {
  if (k < 1 || k > n) throw ArgumentError("plane_forest_count: need 1 <= k <= n");
  // k/n * C(2n-k-1, n-k) is always an integer
  BigInt num = BigInt(k) * binomial(2 * n - k - 1, n - k);
  if (num % n != 0) throw NumericError("plane_forest_count: non-integer result");
  return num / n;
}

BigInt catalan(int n) { return binomial(2 * n, n) / (n + 1); }

std::vector<int> cut_components(const PlaneTree& t, const std::vector<int>& cut_nodes) {
  std::vector<char> is_cut(static_cast<std::size_t>(t.size()), 0);
  for (int v : cut_nodes) {
    if (v <= 0 || v >= t.size()) throw ArgumentError("cut: node index must name a non-root node");
    if (is_cut[static_cast<std::size_t>(v)]) throw ArgumentError("cut: edge listed twice");
    is_cut[static_cast<std::size_t>(v)] = 1;
  }
  auto par = t.parents();
  std::vector<int> comp(static_cast<std::size_t>(t.size()), 0);
  int next = 1;
  for (int v = 1; v < t.size(); ++v) {
    comp[static_cast<std::size_t>(v)] = is_cut[static_cast<std::size_t>(v)] ? next++ : comp[static_cast<std::size_t>(par[static_cast<std::size_t>(v)])];
  }
  return comp;
}

PlaneForest cut_edges(const PlaneTree& t, const std::vector<int>& cut_nodes) {
  auto comp = cut_components(t, cut_nodes);
  auto par = t.parents();
  int k = static_cast<int>(cut_nodes.size()) + 1;
  std::vector<std::vector<int>> deg(static_cast<std::size_t>(k));
  std::vector<int> pos(static_cast<std::size_t>(t.size()));
  for (int v = 0; v < t.size(); ++v) {
    auto& d = deg[static_cast<std::size_t>(comp[static_cast<std::size_t>(v)])];
    pos[static_cast<std::size_t>(v)] = static_cast<int>(d.size());
    d.push_back(0);
    int p = par[static_cast<std::size_t>(v)];
    if (p >= 0 && comp[static_cast<std::size_t>(p)] == comp[static_cast<std::size_t>(v)]) ++d[static_cast<std::size_t>(pos[static_cast<std::size_t>(p)])];
  }
  PlaneForest f;
  for (auto& d : deg) f.trees.emplace_back(std::move(d));
  return f;
}

PlaneForest cut_forest(const PlaneTree& t, int k, RandomStream& rng) {
  int n = t.size();
  if (k < 1 || k > n) throw ArgumentError("cut_forest: need 1 <= k <= #t");
  std::vector<int> edges(static_cast<std::size_t>(n - 1));
  std::iota(edges.begin(), edges.end(), 1);
  auto chosen = uniform_subset(edges, static_cast<std::size_t>(k - 1), rng);
  auto f = cut_edges(t, chosen);
  rng.shuffle(f.trees.begin(), f.trees.end());
  return f;
}

}  // namespace gibbsfrag
