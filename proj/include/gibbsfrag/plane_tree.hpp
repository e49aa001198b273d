#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "gibbsfrag/partition.hpp"
#include "gibbsfrag/rng.hpp"

namespace gibbsfrag {

// Rooted ordered tree stored as the child counts of its nodes in preorder.
class PlaneTree {
 public:
  PlaneTree() : degrees_{0} {}
  explicit PlaneTree(std::vector<int> preorder_degrees);
  static PlaneTree parse(std::string_view parens);  // "(()())"
  static PlaneTree path(int n);                      // each node has one child except the last

  int size() const { return static_cast<int>(degrees_.size()); }
  const std::vector<int>& degrees() const { return degrees_; }
  int degree(int v) const { return degrees_.at(static_cast<std::size_t>(v)); }

  // parent[v] in preorder indexing, -1 for the root
  std::vector<int> parents() const;
  std::vector<int> subtree_sizes() const;

  std::string to_string() const;  // balanced parentheses

  auto operator<=>(const PlaneTree&) const = default;

 private:
  std::vector<int> degrees_;
};

struct PlaneForest {
  std::vector<PlaneTree> trees;

  int size() const;
  std::string to_string() const;  // trees joined by '|'
  static PlaneForest parse(std::string_view text);

  auto operator<=>(const PlaneForest&) const = default;
};

// All plane trees with n nodes, in lexicographic order of their
// parenthesis strings with '(' < ')'.
std::vector<PlaneTree> enumerate_plane_trees(int n);
// Ordered forests of k trees with n nodes in total.
std::vector<PlaneForest> enumerate_plane_forests(int n, int k);

// (k/n) C(2n-k-1, n-k)
BigInt plane_forest_count(int n, int k);
BigInt catalan(int n);

// Delete the edges above the given non-root nodes (preorder indices); the
// components come back in preorder of their roots.
PlaneForest cut_edges(const PlaneTree& t, const std::vector<int>& cut_nodes);
// Which component (index into cut_edges' output) each node lands in.
std::vector<int> cut_components(const PlaneTree& t, const std::vector<int>& cut_nodes);

// k-1 uniformly chosen edges removed, then the k trees put in uniform random order.
PlaneForest cut_forest(const PlaneTree& t, int k, RandomStream& rng);

}  // namespace gibbsfrag
