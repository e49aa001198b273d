#pragma once

#include <vector>

#include "gibbsfrag/rational.hpp"

namespace gibbsfrag {

// Directed network with exact rational capacities.
class FlowNetwork {
 public:
  explicit FlowNetwork(int nodes = 0) : nodes_(nodes) {}

  int add_node() { return nodes_++; }
  int add_arc(int from, int to, const Rational& capacity);

  int num_nodes() const { return nodes_; }
  struct Arc {
    int from, to;
    Rational capacity;
  };
  const std::vector<Arc>& arcs() const { return arcs_; }

 private:
  int nodes_;
  std::vector<Arc> arcs_;
};

struct MaxFlowResult {
  Rational value;
  std::vector<Rational> flow;      // per arc, in insertion order
  std::vector<char> source_side;   // residual reachability from the source after the flow
};

// Dinic on capacities scaled to integers by the lcm of their denominators.
// Deterministic: arcs are scanned in insertion order.
MaxFlowResult max_flow(const FlowNetwork& net, int source, int sink);

}  // namespace gibbsfrag
