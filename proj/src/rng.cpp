#include "gibbsfrag/rng.hpp"

#include <cmath>

#include "gibbsfrag/errors.hpp"

namespace gibbsfrag {

namespace {

constexpr std::uint32_t kM0 = 0xD2511F53;
constexpr std::uint32_t kM1 = 0xCD9E8D57;
constexpr std::uint32_t kW0 = 0x9E3779B9;
constexpr std::uint32_t kW1 = 0xBB67AE85;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

}  // namespace

PhiloxBlock philox4x32_10(PhiloxBlock c, PhiloxKey k) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      k[0] += kW0;
      k[1] += kW1;
    }
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kM0, c[0], hi0, lo0);
    mulhilo(kM1, c[2], hi1, lo1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
  }
  return c;
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_id) : seed_(seed), stream_(stream_id) {}

void RandomStream::refill() {
  PhiloxBlock ctr = {static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
                     static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)};
  PhiloxKey key = {static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32)};
  auto out = philox4x32_10(ctr, key);
  buf_[0] = (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
  buf_[1] = (static_cast<std::uint64_t>(out[3]) << 32) | out[2];
  ++block_;
  pos_ = 0;
}

RandomStream::result_type RandomStream::operator()() {
  if (pos_ == 2) refill();
  return buf_[static_cast<std::size_t>(pos_++)];
}

double RandomStream::uniform01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

double RandomStream::uniform_open01() {
  // midpoint of a 2^-53 cell, never 0 or 1
  return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
}

double RandomStream::exponential(double rate) {
  if (!(rate > 0)) throw ArgumentError("exponential: rate must be positive");
  return -std::log(uniform_open01()) / rate;
}

std::uint64_t RandomStream::uniform_below(std::uint64_t bound) {
  if (bound == 0) throw ArgumentError("uniform_below: empty range");
  unsigned __int128 m = static_cast<unsigned __int128>((*this)()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<unsigned __int128>((*this)()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

BigInt RandomStream::uniform_below(const BigInt& bound) {
  if (bound <= 0) throw ArgumentError("uniform_below: empty range");
  if (mpz_fits_ulong_p(bound.get_mpz_t())) {
    return BigInt(static_cast<unsigned long>(uniform_below(static_cast<std::uint64_t>(bound.get_ui()))));
  }
  // rejection on the smallest covering power of two
  std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  for (;;) {
    BigInt r = 0;
    std::size_t have = 0;
    while (have < bits) {
      std::uint64_t word = (*this)();
      std::size_t take = std::min<std::size_t>(64, bits - have);
      if (take < 64) word >>= (64 - take);
      r <<= static_cast<mp_bitcnt_t>(take);
      r += BigInt(static_cast<unsigned long>(word));
      have += take;
    }
    if (r < bound) return r;
  }
}

}  // namespace gibbsfrag
