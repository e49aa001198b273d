#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "gibbsfrag/rational.hpp"
#include "gibbsfrag/rng.hpp"

namespace gibbsfrag {

// Exact categorical draw from nonnegative rational weights.
//
// A 64-bit uniform word is compared against double copies of the cumulative
// thresholds; the answer is taken only if the word sits more than 2^-40 away
// from both edges of its cell. Otherwise the draw is treated as a dyadic
// interval that is refined 64 bits at a time against the exact rational
// thresholds until it fits inside a single cell. The result is exactly
// distributed, not merely close.
class DiscreteSampler {
 public:
  explicit DiscreteSampler(const std::vector<Rational>& weights);

  std::size_t operator()(RandomStream& rng) const;

  std::size_t size() const { return cum_.size(); }
  const Rational& total() const { return total_; }
  // P(i), exact
  Rational probability(std::size_t i) const;

 private:
  std::size_t locate_exact(const BigInt& numer, unsigned long bits) const;

  std::vector<Rational> cum_;      // normalized cumulative sums, last == 1
  std::vector<double> cum_d_;
  Rational total_;
};

// Multiplies by the lcm of the denominators; ratios are preserved exactly.
std::vector<BigInt> scale_to_integers(const std::vector<Rational>& weights);

// One-shot helpers.
std::size_t sample_index(const std::vector<Rational>& weights, RandomStream& rng);
std::size_t sample_index(const std::vector<BigInt>& weights, RandomStream& rng);
std::size_t sample_index(const std::vector<std::uint64_t>& weights, RandomStream& rng);

// Uniform (k)-subset of the given items, returned in input order.
template <typename T>
std::vector<T> uniform_subset(const std::vector<T>& items, std::size_t k, RandomStream& rng) {
  // selection sampling (Knuth S): each item kept with prob needed/remaining
  std::vector<T> out;
  out.reserve(k);
  std::size_t remaining = items.size();
  for (const auto& x : items) {
    if (out.size() == k) break;
    if (rng.uniform_below(remaining) < k - out.size()) out.push_back(x);
    --remaining;
  }
  return out;
}

}  // namespace gibbsfrag
