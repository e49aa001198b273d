#include "gibbsfrag/weights.hpp"

#include <filesystem>
#include <fstream>

#include "gibbsfrag/errors.hpp"

namespace gibbsfrag {

WeightSequence::WeightSequence(WeightFamily f, std::vector<Rational> w) : family_(f), w_(std::move(w)) {
  if (w_.empty()) throw ArgumentError("weight sequence: empty");
  if (w_[0] != 1) throw ArgumentError("weight sequence: w_1 must be 1, got " + to_string(w_[0]));
  for (std::size_t j = 0; j < w_.size(); ++j) {
    if (w_[j] <= 0) {
      first_nonpositive_ = static_cast<int>(j) + 1;
      break;
    }
  }
}

WeightSequence WeightSequence::uniform(int n_max) {
  if (n_max < 1) throw ArgumentError("weight sequence: n_max must be positive");
  return WeightSequence(WeightFamily::uniform, std::vector<Rational>(static_cast<std::size_t>(n_max), Rational(1)));
}

WeightSequence WeightSequence::cycles(int n_max) {
  if (n_max < 1) throw ArgumentError("weight sequence: n_max must be positive");
  std::vector<Rational> w;
  for (int j = 1; j <= n_max; ++j) w.emplace_back(factorial(j - 1));
  return WeightSequence(WeightFamily::cycles, std::move(w));
}

WeightSequence WeightSequence::segments(int n_max) {
  if (n_max < 1) throw ArgumentError("weight sequence: n_max must be positive");
  std::vector<Rational> w;
  for (int j = 1; j <= n_max; ++j) w.emplace_back(factorial(j));
  return WeightSequence(WeightFamily::segments, std::move(w));
}

WeightSequence WeightSequence::trees(int n_max) {
  if (n_max < 1) throw ArgumentError("weight sequence: n_max must be positive");
  std::vector<Rational> w;
  for (int j = 1; j <= n_max; ++j) w.push_back(power(Rational(j), j - 1));
  return WeightSequence(WeightFamily::trees, std::move(w));
}

WeightSequence WeightSequence::bc(const Rational& b, const Rational& c, int n_max) {
  if (n_max < 1) throw ArgumentError("weight sequence: n_max must be positive");
  std::vector<Rational> w;
  for (int j = 1; j <= n_max; ++j) {
    Rational prod = 1;
    for (int i = 2; i <= j; ++i) prod *= i * c + j * b;
    w.push_back(prod);
  }
  WeightSequence s(WeightFamily::bc, std::move(w));
  s.b_ = b;
  s.c_ = c;
  s.bc_condition_ = gibbsfrag::bc_condition(b, c, n_max);
  return s;
}

WeightSequence WeightSequence::explicit_values(std::vector<Rational> w) {
  return WeightSequence(WeightFamily::explicit_values, std::move(w));
}

const Rational& WeightSequence::operator[](int j) const {
  if (j < 1 || j > n_max()) {
    throw ArgumentError("weight w_" + std::to_string(j) + " not defined (n_max=" + std::to_string(n_max()) + ")");
  }
  return w_[static_cast<std::size_t>(j - 1)];
}

std::string WeightSequence::family_name() const {
  switch (family_) {
    case WeightFamily::uniform: return "uniform";
    case WeightFamily::cycles: return "cycles";
    case WeightFamily::segments: return "segments";
    case WeightFamily::trees: return "trees";
    case WeightFamily::bc: return "bc(" + to_string(*b_) + "," + to_string(*c_) + ")";
    case WeightFamily::explicit_values: return "explicit";
  }
  return "explicit";
}

WeightSequence WeightSequence::resized(int n_max) const {
  switch (family_) {
    case WeightFamily::uniform: return uniform(n_max);
    case WeightFamily::cycles: return cycles(n_max);
    case WeightFamily::segments: return segments(n_max);
    case WeightFamily::trees: return trees(n_max);
    case WeightFamily::bc: return bc(*b_, *c_, n_max);
    case WeightFamily::explicit_values:
      if (n_max > this->n_max()) {
        throw ArgumentError("explicit weight table has only " + std::to_string(this->n_max()) + " entries");
      }
      return explicit_values(std::vector<Rational>(w_.begin(), w_.begin() + n_max));
  }
  return *this;
}

bool WeightSequence::positive_up_to(int n) const {
  if (n - 1 > n_max()) return false;
  return first_nonpositive_ == 0 || first_nonpositive_ > n - 1;
}

bool bc_condition(const Rational& b, const Rational& c, int n) {
  if (b + c <= 0) return false;
  return b >= 0 || c > -(n - 1) * b / 2;
}

WeightSequence weights_bc(const Rational& b, const Rational& c, int n_max) { return WeightSequence::bc(b, c, n_max); }

WeightSequence weights_by_name(const std::string& name, int n_max, const std::optional<Rational>& b,
                               const std::optional<Rational>& c) {
  if (name == "uniform") return WeightSequence::uniform(n_max);
  if (name == "cycles") return WeightSequence::cycles(n_max);
  if (name == "segments" || name == "lah") return WeightSequence::segments(n_max);
  if (name == "trees" || name == "cayley") return WeightSequence::trees(n_max);
  if (name == "bc") {
    if (!b || !c) throw ArgumentError("weight family bc needs both b and c");
    return WeightSequence::bc(*b, *c, n_max);
  }
  throw ArgumentError("unknown weight family '" + name + "'");
}

WeightSequence weights_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot read weight file " + path);
  std::vector<Rational> w;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    w.push_back(parse_rational(line));
  }
  return WeightSequence::explicit_values(std::move(w));
}

WeightSequence weights_from_spec(const std::string& spec, int n_max, const std::optional<Rational>& b,
                                 const std::optional<Rational>& c) {
  static const char* names[] = {"uniform", "cycles", "segments", "lah", "trees", "cayley", "bc"};
  for (const char* nm : names) {
    if (spec == nm) return weights_by_name(spec, n_max, b, c);
  }
  if (std::filesystem::exists(spec)) return weights_from_file(spec);
  throw ArgumentError("unknown weight family '" + spec + "'");
}

}  // namespace gibbsfrag
