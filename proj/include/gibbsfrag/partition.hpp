#pragma once

#include <compare>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "gibbsfrag/rational.hpp"

namespace gibbsfrag {

inline constexpr int kDefaultEnumerationCap = 12;

// Partition of [n] = {1..n}. Blocks are sorted ascending internally and
// ordered by least element, so equal partitions are equal as values.
class SetPartition {
 public:
  SetPartition() = default;
  SetPartition(int n, std::vector<std::vector<int>> blocks);

  static SetPartition from_labels(const std::vector<int>& labels);  // labels[x-1] = block id of x
  static SetPartition parse(std::string_view text);                 // "{1,3}{2}{4}"
  static SetPartition singletons(int n);
  static SetPartition single_block(int n);

  int n() const { return n_; }
  int k() const { return static_cast<int>(blocks_.size()); }
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }
  const std::vector<int>& block(int i) const { return blocks_.at(static_cast<std::size_t>(i)); }
  std::vector<int> block_sizes() const;  // in canonical block order
  int block_of(int x) const;             // index of the block containing x

  SetPartition merge(int i, int j) const;
  // Replaces block i by `part` and its complement within block i.
  SetPartition split(int i, const std::vector<int>& part) const;

  std::string to_string() const;

  auto operator<=>(const SetPartition&) const = default;

 private:
  int n_ = 0;
  std::vector<std::vector<int>> blocks_;
};

// Parts kept in nonincreasing order.
class IntegerPartition {
 public:
  IntegerPartition() = default;
  explicit IntegerPartition(std::vector<int> parts);
  static IntegerPartition from_counts(const std::map<int, int>& counts);
  static IntegerPartition parse(std::string_view text);  // "3^1 1^2"

  int n() const { return n_; }
  int k() const { return static_cast<int>(parts_.size()); }
  const std::vector<int>& parts() const { return parts_; }
  std::map<int, int> counts() const;
  int count(int j) const;

  std::string to_string() const;

  auto operator<=>(const IntegerPartition&) const = default;

 private:
  int n_ = 0;
  std::vector<int> parts_;
};

// All partitions of n with exactly k parts (k == 0: all of them), in
// reverse-lexicographic order of the part vectors.
std::vector<IntegerPartition> integer_partitions(int n, int k = 0);

class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images);  // images[i-1] = sigma(i)
  static Permutation identity(int n);
  static Permutation from_cycles(int n, const std::vector<std::vector<int>>& cycles);

  int n() const { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_.at(static_cast<std::size_t>(i - 1)); }
  const std::vector<int>& images() const { return images_; }

  // Each cycle starts at its least element; cycles ordered by that element.
  std::vector<std::vector<int>> cycles() const;
  int num_cycles() const;
  SetPartition cycle_partition() const;
  std::string to_string() const;  // "(1 2)(3 4)"

  auto operator<=>(const Permutation&) const = default;

 private:
  std::vector<int> images_;
};

bool refines(const SetPartition& finer, const SetPartition& coarser);
IntegerPartition shape(const SetPartition& p);
BigInt count_set_partitions_of_shape(const IntegerPartition& lambda);

// Restricted growth strings a[0..n-1] (a[0] = 0) with exactly k distinct
// values, in lexicographic order. k == 0 means any number of blocks.
void for_each_restricted_growth_string(int n, int k, const std::function<void(const std::vector<int>&)>& visit);

std::vector<SetPartition> enumerate_set_partitions(int n, int k, int cap = kDefaultEnumerationCap);
void for_each_set_partition(int n, int k, const std::function<void(const SetPartition&)>& visit,
                            int cap = kDefaultEnumerationCap);

BigInt stirling2(int n, int k);
BigInt stirling1_unsigned(int n, int k);

// (x y) composed after sigma.
Permutation apply_transposition(const Permutation& sigma, int x, int y);
int cayley_distance(const Permutation& sigma);

}  // namespace gibbsfrag
