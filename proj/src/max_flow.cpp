#include "gibbsfrag/max_flow.hpp"

#include <deque>
#include <functional>

#include "gibbsfrag/errors.hpp"

namespace gibbsfrag {

int FlowNetwork::add_arc(int from, int to, const Rational& capacity) {
  if (from < 0 || to < 0 || from >= nodes_ || to >= nodes_) throw ArgumentError("flow network: arc endpoint out of range");
  if (capacity < 0) throw ArgumentError("flow network: negative capacity");
  arcs_.push_back({from, to, capacity});
  return static_cast<int>(arcs_.size()) - 1;
}

namespace {

struct Edge {
  int to;
  int rev;  // index of the paired edge in adj[to]
  BigInt cap;
};

class Dinic {
 public:
  explicit Dinic(int n) : adj_(static_cast<std::size_t>(n)), level_(static_cast<std::size_t>(n)), it_(static_cast<std::size_t>(n)) {}

  std::pair<int, int> add(int u, int v, const BigInt& c) {
    auto& au = adj_[static_cast<std::size_t>(u)];
    auto& av = adj_[static_cast<std::size_t>(v)];
    au.push_back({v, static_cast<int>(av.size()) + (u == v ? 1 : 0), c});
    av.push_back({u, static_cast<int>(au.size()) - 1, BigInt(0)});
    return {u, static_cast<int>(au.size()) - 1};
  }

  BigInt run(int s, int t) {
    BigInt total = 0;
    while (bfs(s, t)) {
      std::fill(it_.begin(), it_.end(), 0);
      for (;;) {
        BigInt f = dfs(s, t, BigInt(-1));
        if (f == 0) break;
        total += f;
      }
    }
    return total;
  }

  std::vector<char> reachable(int s) const {
    std::vector<char> seen(adj_.size(), 0);
    std::deque<int> q{s};
    seen[static_cast<std::size_t>(s)] = 1;
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      for (const auto& e : adj_[static_cast<std::size_t>(u)]) {
        if (e.cap > 0 && !seen[static_cast<std::size_t>(e.to)]) {
          seen[static_cast<std::size_t>(e.to)] = 1;
          q.push_back(e.to);
        }
      }
    }
    return seen;
  }

  const Edge& edge(std::pair<int, int> id) const { return adj_[static_cast<std::size_t>(id.first)][static_cast<std::size_t>(id.second)]; }

 private:
  bool bfs(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::deque<int> q{s};
    level_[static_cast<std::size_t>(s)] = 0;
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      for (const auto& e : adj_[static_cast<std::size_t>(u)]) {
        if (e.cap > 0 && level_[static_cast<std::size_t>(e.to)] < 0) {
          level_[static_cast<std::size_t>(e.to)] = level_[static_cast<std::size_t>(u)] + 1;
          q.push_back(e.to);
        }
      }
    }
    return level_[static_cast<std::size_t>(t)] >= 0;
  }

  // limit < 0 means unbounded
  BigInt dfs(int u, int t, const BigInt& limit) {
    if (u == t) return limit;
    auto& edges = adj_[static_cast<std::size_t>(u)];
    for (int& i = it_[static_cast<std::size_t>(u)]; i < static_cast<int>(edges.size()); ++i) {
      Edge& e = edges[static_cast<std::size_t>(i)];
      if (e.cap <= 0 || level_[static_cast<std::size_t>(e.to)] != level_[static_cast<std::size_t>(u)] + 1) continue;
      BigInt want = (limit < 0 || e.cap < limit) ? e.cap : limit;
      BigInt got = dfs(e.to, t, want);
      if (got > 0) {
        e.cap -= got;
        adj_[static_cast<std::size_t>(e.to)][static_cast<std::size_t>(e.rev)].cap += got;
        return got;
      }
    }
    return 0;
  }

  std::vector<std::vector<Edge>> adj_;
  std::vector<int> level_;
  std::vector<int> it_;
};

}  // namespace

MaxFlowResult max_flow(const FlowNetwork& net, int source, int sink) {
  if (source == sink) throw ArgumentError("max_flow: source equals sink");
  BigInt scale = 1;
  for (const auto& a : net.arcs()) scale = lcm(scale, a.capacity.get_den());
  Dinic d(net.num_nodes());
  std::vector<std::pair<int, int>> ids;
  std::vector<BigInt> caps;
  for (const auto& a : net.arcs()) {
    caps.push_back(a.capacity.get_num() * (scale / a.capacity.get_den()));
    ids.push_back(d.add(a.from, a.to, caps.back()));
  }
  BigInt value = d.run(source, sink);
  MaxFlowResult r;
  r.value = make_rational(value, scale);
  for (std::size_t i = 0; i < ids.size(); ++i) r.flow.push_back(make_rational(caps[i] - d.edge(ids[i]).cap, scale));
  r.source_side = d.reachable(source);
  return r;
}

}  // namespace gibbsfrag
