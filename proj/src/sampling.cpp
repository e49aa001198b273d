#include "gibbsfrag/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "gibbsfrag/errors.hpp"

namespace gibbsfrag {

DiscreteSampler::DiscreteSampler(const std::vector<Rational>& weights) {
  if (weights.empty()) throw PreconditionError("sampler: empty support");
  total_ = 0;
  for (const auto& w : weights) {
    if (w < 0) throw PreconditionError("sampler: negative weight " + to_string(w));
    total_ += w;
  }
  if (total_ <= 0) throw PreconditionError("sampler: all weights are zero");
  cum_.reserve(weights.size());
  cum_d_.reserve(weights.size());
  Rational run = 0;
  for (const auto& w : weights) {
    run += w;
    cum_.push_back(run / total_);
    cum_d_.push_back(cum_.back().get_d());
  }
}

Rational DiscreteSampler::probability(std::size_t i) const {
  if (i >= cum_.size()) throw ArgumentError("sampler: index out of range");
  return i == 0 ? cum_[0] : cum_[i] - cum_[i - 1];
}

// Cell that contains the whole interval [numer, numer+1) / 2^bits, or size() if it straddles.
std::size_t DiscreteSampler::locate_exact(const BigInt& numer, unsigned long bits) const {
  BigInt den = 1;
  den <<= bits;
  Rational lo = make_rational(numer, den);
  Rational hi = make_rational(numer + 1, den);
  // first cell whose upper threshold is > lo
  auto it = std::upper_bound(cum_.begin(), cum_.end(), lo);
  if (it == cum_.end()) return cum_.size();
  return hi <= *it ? static_cast<std::size_t>(it - cum_.begin()) : cum_.size();
}

std::size_t DiscreteSampler::operator()(RandomStream& rng) const {
  if (cum_.size() == 1) return 0;
  const std::uint64_t word = rng();
  const double u = std::ldexp(static_cast<double>(word), -64);
  constexpr double guard = 0x1.0p-40;

  auto it = std::upper_bound(cum_d_.begin(), cum_d_.end(), u);
  if (it != cum_d_.end()) {
    std::size_t i = static_cast<std::size_t>(it - cum_d_.begin());
    double lo = i == 0 ? 0.0 : cum_d_[i - 1];
    if (u - lo > guard && *it - u > guard) return i;
  }

  BigInt numer(static_cast<unsigned long>(word));
  unsigned long bits = 64;
  for (;;) {
    std::size_t i = locate_exact(numer, bits);
    if (i < cum_.size()) return i;
    numer <<= 64;
    numer += BigInt(static_cast<unsigned long>(rng()));
    bits += 64;
  }
}

std::vector<BigInt> scale_to_integers(const std::vector<Rational>& weights) {
  BigInt l = 1;
  for (const auto& w : weights) l = lcm(l, w.get_den());
  std::vector<BigInt> out;
  out.reserve(weights.size());
  for (const auto& w : weights) out.push_back(w.get_num() * (l / w.get_den()));
  return out;
}

std::size_t sample_index(const std::vector<Rational>& weights, RandomStream& rng) {
  return DiscreteSampler(weights)(rng);
}

std::size_t sample_index(const std::vector<BigInt>& weights, RandomStream& rng) {
  BigInt total = 0;
  for (const auto& w : weights) {
    if (w < 0) throw PreconditionError("sampler: negative weight");
    total += w;
  }
  if (total <= 0) throw PreconditionError("sampler: all weights are zero");
  BigInt r = rng.uniform_below(total);
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (r < weights[i]) return i;
    r -= weights[i];
  }
  throw NumericError("sampler: fell off the end");  // unreachable
}

std::size_t sample_index(const std::vector<std::uint64_t>& weights, RandomStream& rng) {
  unsigned __int128 total = 0;
  for (auto w : weights) total += w;
  if (total == 0) throw PreconditionError("sampler: all weights are zero");
  if (total >> 64) {
    std::vector<BigInt> big(weights.begin(), weights.end());
    return sample_index(big, rng);
  }
  std::uint64_t r = rng.uniform_below(static_cast<std::uint64_t>(total));
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (r < weights[i]) return i;
    r -= weights[i];
  }
  throw NumericError("sampler: fell off the end");
}

}  // namespace gibbsfrag
