#include "gibbsfrag/partition.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "gibbsfrag/errors.hpp"

namespace gibbsfrag {

namespace {

void canonicalize(std::vector<std::vector<int>>& blocks) {
  for (auto& b : blocks) std::sort(b.begin(), b.end());
  std::sort(blocks.begin(), blocks.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
}

}  // namespace

SetPartition::SetPartition(int n, std::vector<std::vector<int>> blocks) : n_(n), blocks_(std::move(blocks)) {
  if (n < 1) throw ArgumentError("set partition: n must be positive");
  std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
  int covered = 0;
  for (const auto& b : blocks_) {
    if (b.empty()) throw ArgumentError("set partition: empty block");
    for (int x : b) {
      if (x < 1 || x > n) throw ArgumentError("set partition: element " + std::to_string(x) + " outside [n]");
      if (seen[static_cast<std::size_t>(x)]) throw ArgumentError("set partition: element repeated");
      seen[static_cast<std::size_t>(x)] = 1;
      ++covered;
    }
  }
  if (covered != n) throw ArgumentError("set partition: blocks do not cover [n]");
  canonicalize(blocks_);
}

SetPartition SetPartition::from_labels(const std::vector<int>& labels) {
  std::map<int, std::vector<int>> by_label;
  for (std::size_t i = 0; i < labels.size(); ++i) by_label[labels[i]].push_back(static_cast<int>(i) + 1);
  std::vector<std::vector<int>> blocks;
  blocks.reserve(by_label.size());
  for (auto& [label, b] : by_label) blocks.push_back(std::move(b));
  return SetPartition(static_cast<int>(labels.size()), std::move(blocks));
}

SetPartition SetPartition::parse(std::string_view text) {
  std::vector<std::vector<int>> blocks;
  int n = 0;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '{') throw ArgumentError("set partition: expected '{' in " + std::string(text));
    ++i;
    std::vector<int> block;
    for (;;) {
      skip_ws();
      std::size_t start = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (start == i) throw ArgumentError("set partition: expected element in " + std::string(text));
      int x = std::stoi(std::string(text.substr(start, i - start)));
      block.push_back(x);
      n = std::max(n, x);
      skip_ws();
      if (i < text.size() && text[i] == ',') {
        ++i;
        continue;
      }
      if (i < text.size() && text[i] == '}') {
        ++i;
        break;
      }
      throw ArgumentError("set partition: unterminated block in " + std::string(text));
    }
    blocks.push_back(std::move(block));
    skip_ws();
  }
  if (blocks.empty()) throw ArgumentError("set partition: empty text");
  return SetPartition(n, std::move(blocks));
}

SetPartition SetPartition::singletons(int n) {
  std::vector<std::vector<int>> blocks;
  for (int x = 1; x <= n; ++x) blocks.push_back({x});
  return SetPartition(n, std::move(blocks));
}

SetPartition SetPartition::single_block(int n) {
  std::vector<int> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 1);
  return SetPartition(n, {all});
}

std::vector<int> SetPartition::block_sizes() const {
  std::vector<int> out;
  out.reserve(blocks_.size());
  for (const auto& b : blocks_) out.push_back(static_cast<int>(b.size()));
  return out;
}

int SetPartition::block_of(int x) const {
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (std::binary_search(blocks_[i].begin(), blocks_[i].end(), x)) return static_cast<int>(i);
  }
  throw ArgumentError("set partition: element not in ground set");
}

SetPartition SetPartition::merge(int i, int j) const {
  if (i == j || i < 0 || j < 0 || i >= k() || j >= k()) throw ArgumentError("merge: bad block indices");
  auto blocks = blocks_;
  auto& a = blocks[static_cast<std::size_t>(i)];
  const auto& b = blocks[static_cast<std::size_t>(j)];
  a.insert(a.end(), b.begin(), b.end());
  blocks.erase(blocks.begin() + j);
  return SetPartition(n_, std::move(blocks));
}

SetPartition SetPartition::split(int i, const std::vector<int>& part) const {
  const auto& b = block(i);
  std::vector<int> a(part), rest;
  std::sort(a.begin(), a.end());
  if (a.empty() || a.size() >= b.size()) throw ArgumentError("split: part must be a proper nonempty subset");
  std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(rest));
  if (rest.size() + a.size() != b.size()) throw ArgumentError("split: part is not a subset of the block");
  auto blocks = blocks_;
  blocks[static_cast<std::size_t>(i)] = std::move(a);
  blocks.push_back(std::move(rest));
  return SetPartition(n_, std::move(blocks));
}

std::string SetPartition::to_string() const {
  std::string s;
  for (const auto& b : blocks_) {
    s += '{';
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (j) s += ',';
      s += std::to_string(b[j]);
    }
    s += '}';
  }
  return s;
}

IntegerPartition::IntegerPartition(std::vector<int> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw ArgumentError("integer partition: no parts");
  for (int p : parts_) {
    if (p < 1) throw ArgumentError("integer partition: parts must be positive");
    n_ += p;
  }
  std::sort(parts_.begin(), parts_.end(), std::greater<>());
}

IntegerPartition IntegerPartition::from_counts(const std::map<int, int>& counts) {
  std::vector<int> parts;
  for (auto [j, c] : counts) {
    if (c < 0) throw ArgumentError("integer partition: negative multiplicity");
    parts.insert(parts.end(), static_cast<std::size_t>(c), j);
  }
  return IntegerPartition(std::move(parts));
}

IntegerPartition IntegerPartition::parse(std::string_view text) {
  std::map<int, int> counts;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    auto caret = tok.find('^');
    try {
      if (caret == std::string::npos) {
        counts[std::stoi(tok)] += 1;
      } else {
        counts[std::stoi(tok.substr(0, caret))] += std::stoi(tok.substr(caret + 1));
      }
    } catch (const std::logic_error&) {
      throw ArgumentError("integer partition: bad token '" + tok + "'");
    }
  }
  return from_counts(counts);
}

std::map<int, int> IntegerPartition::counts() const {
  std::map<int, int> c;
  for (int p : parts_) ++c[p];
  return c;
}

int IntegerPartition::count(int j) const { return static_cast<int>(std::count(parts_.begin(), parts_.end(), j)); }

std::string IntegerPartition::to_string() const {
  std::string s;
  auto c = counts();
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    if (!s.empty()) s += ' ';
    s += std::to_string(it->first) + "^" + std::to_string(it->second);
  }
  return s;
}

namespace {

void partitions_rec(int remaining, int max_part, int parts_left, std::vector<int>& cur,
                    std::vector<IntegerPartition>& out) {
  if (remaining == 0) {
    if (parts_left <= 0) out.emplace_back(cur);
    return;
  }
  if (parts_left == 0) return;
  for (int p = std::min(remaining, max_part); p >= 1; --p) {
    // with a fixed part count, the rest must still fit under p
    if (parts_left > 0 && (remaining - p < parts_left - 1 || remaining - p > p * (parts_left - 1))) continue;
    cur.push_back(p);
    partitions_rec(remaining - p, p, parts_left > 0 ? parts_left - 1 : -1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<IntegerPartition> integer_partitions(int n, int k) {
  if (n < 1 || k < 0 || k > n) throw ArgumentError("integer_partitions: need 0 <= k <= n, n >= 1");
  std::vector<IntegerPartition> out;
  std::vector<int> cur;
  partitions_rec(n, n, k == 0 ? -1 : k, cur, out);
  return out;
}

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<char> hit(images_.size() + 1, 0);
  for (int v : images_) {
    if (v < 1 || v > n() || hit[static_cast<std::size_t>(v)]) throw ArgumentError("permutation: not a bijection on [n]");
    hit[static_cast<std::size_t>(v)] = 1;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> im(static_cast<std::size_t>(n));
  std::iota(im.begin(), im.end(), 1);
  return Permutation(std::move(im));
}

Permutation Permutation::from_cycles(int n, const std::vector<std::vector<int>>& cycles) {
  std::vector<int> im(static_cast<std::size_t>(n));
  std::iota(im.begin(), im.end(), 1);
  std::vector<char> used(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& c : cycles) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      int x = c[i];
      if (x < 1 || x > n || used[static_cast<std::size_t>(x)]) throw ArgumentError("permutation: bad cycle list");
      used[static_cast<std::size_t>(x)] = 1;
      im[static_cast<std::size_t>(x - 1)] = c[(i + 1) % c.size()];
    }
  }
  return Permutation(std::move(im));
}

std::vector<std::vector<int>> Permutation::cycles() const {
  std::vector<std::vector<int>> out;
  std::vector<char> seen(images_.size() + 1, 0);
  for (int start = 1; start <= n(); ++start) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    std::vector<int> cyc;
    for (int x = start; !seen[static_cast<std::size_t>(x)]; x = (*this)(x)) {
      seen[static_cast<std::size_t>(x)] = 1;
      cyc.push_back(x);
    }
    out.push_back(std::move(cyc));
  }
  return out;
}

int Permutation::num_cycles() const { return static_cast<int>(cycles().size()); }

SetPartition Permutation::cycle_partition() const { return SetPartition(n(), cycles()); }

std::string Permutation::to_string() const {
  std::string s;
  for (const auto& c : cycles()) {
    s += '(';
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) s += ' ';
      s += std::to_string(c[i]);
    }
    s += ')';
  }
  return s;
}

bool refines(const SetPartition& finer, const SetPartition& coarser) {
  if (finer.n() != coarser.n()) throw ArgumentError("refines: partitions of different ground sets");
  for (const auto& b : finer.blocks()) {
    int target = coarser.block_of(b.front());
    const auto& big = coarser.block(target);
    if (!std::includes(big.begin(), big.end(), b.begin(), b.end())) return false;
  }
  return true;
}

IntegerPartition shape(const SetPartition& p) { return IntegerPartition(p.block_sizes()); }

BigInt count_set_partitions_of_shape(const IntegerPartition& lambda) {
  BigInt den = 1;
  for (auto [j, c] : lambda.counts()) {
    BigInt fj = factorial(j), pw;
    mpz_pow_ui(pw.get_mpz_t(), fj.get_mpz_t(), static_cast<unsigned long>(c));
    den *= factorial(c) * pw;
  }
  return factorial(lambda.n()) / den;
}

void for_each_restricted_growth_string(int n, int k, const std::function<void(const std::vector<int>&)>& visit) {
  if (n < 1 || k < 0 || k > n) throw ArgumentError("restricted growth strings: need 0 <= k <= n");
  std::vector<int> a(static_cast<std::size_t>(n), 0);
  // pos: next index to fill, used: number of distinct labels so far
  std::function<void(int, int)> rec = [&](int pos, int used) {
    if (pos == n) {
      if (k == 0 || used == k) visit(a);
      return;
    }
    int limit = used;  // may open label `used`
    for (int v = 0; v <= limit; ++v) {
      int now = std::max(used, v + 1);
      if (k > 0 && (now > k || now + (n - pos - 1) < k)) continue;
      a[static_cast<std::size_t>(pos)] = v;
      rec(pos + 1, now);
    }
  };
  a[0] = 0;
  rec(1, 1);
}

void for_each_set_partition(int n, int k, const std::function<void(const SetPartition&)>& visit, int cap) {
  if (n > cap) throw CapacityError("set partition enumeration: n=" + std::to_string(n) + " exceeds cap " + std::to_string(cap));
  if (k < 1 || k > n) throw ArgumentError("set partition enumeration: need 1 <= k <= n");
  for_each_restricted_growth_string(n, k, [&](const std::vector<int>& a) { visit(SetPartition::from_labels(a)); });
}

std::vector<SetPartition> enumerate_set_partitions(int n, int k, int cap) {
  std::vector<SetPartition> out;
  for_each_set_partition(n, k, [&](const SetPartition& p) { out.push_back(p); }, cap);
  return out;
}

BigInt stirling2(int n, int k) {
  if (n < 0 || k < 0) return 0;
  std::vector<std::vector<BigInt>> s(static_cast<std::size_t>(n) + 1, std::vector<BigInt>(static_cast<std::size_t>(k) + 1, 0));
  s[0][0] = 1;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= std::min(i, k); ++j)
      s[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          j * s[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)] + s[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
  return s[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

BigInt stirling1_unsigned(int n, int k) {
  if (n < 0 || k < 0) return 0;
  std::vector<std::vector<BigInt>> s(static_cast<std::size_t>(n) + 1, std::vector<BigInt>(static_cast<std::size_t>(k) + 1, 0));
  s[0][0] = 1;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= std::min(i, k); ++j)
      s[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          (i - 1) * s[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)] + s[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
  return s[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

Permutation apply_transposition(const Permutation& sigma, int x, int y) {
  if (x == y) throw ArgumentError("apply_transposition: x == y");
  if (x < 1 || y < 1 || x > sigma.n() || y > sigma.n()) throw ArgumentError("apply_transposition: element outside [n]");
  auto im = sigma.images();
  for (auto& v : im) {
    if (v == x) v = y;
    else if (v == y) v = x;
  }
  return Permutation(std::move(im));
}

int cayley_distance(const Permutation& sigma) { return sigma.n() - sigma.num_cycles(); }

}  // namespace gibbsfrag
