#pragma once

#include <array>
#include <cstdint>
#include <utility>

#include "gibbsfrag/rational.hpp"

namespace gibbsfrag {

// Seed every acceptance run uses unless told otherwise.
inline constexpr std::uint64_t kFixtureSeed = 0xC0FFEE;

using PhiloxBlock = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

// Philox4x32 with 10 rounds.
PhiloxBlock philox4x32_10(PhiloxBlock ctr, PhiloxKey key);

// Counter-based stream: key = seed, counter = (block index, stream id).
// Two streams with different ids never share a counter, so they are
// independent by construction. Satisfies UniformRandomBitGenerator.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  RandomStream(std::uint64_t seed, std::uint64_t stream_id);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()();

  double uniform01();       // [0,1), 53 bits
  double uniform_open01();  // (0,1)
  double exponential(double rate);

  // Uniform on {0..bound-1}; exact (Lemire with rejection).
  std::uint64_t uniform_below(std::uint64_t bound);
  BigInt uniform_below(const BigInt& bound);

  template <typename It>
  void shuffle(It first, It last) {
    auto n = last - first;
    for (decltype(n) i = n - 1; i > 0; --i) {
      auto j = static_cast<decltype(n)>(uniform_below(static_cast<std::uint64_t>(i) + 1));
      using std::swap;
      swap(first[i], first[j]);
    }
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_; }

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buf_{};
  int pos_ = 2;
};

inline RandomStream rng_stream(std::uint64_t seed, std::uint64_t stream_id) {
  return RandomStream(seed, stream_id);
}

}  // namespace gibbsfrag
