#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gibbsfrag/rational.hpp"

namespace gibbsfrag {

enum class WeightFamily { uniform, cycles, segments, trees, bc, explicit_values };

// w_1..w_{n_max} with w_1 = 1.
class WeightSequence {
 public:
  WeightSequence() : WeightSequence(WeightFamily::uniform, {Rational(1)}) {}
  static WeightSequence uniform(int n_max);   // w_j = 1
  static WeightSequence cycles(int n_max);    // (j-1)!
  static WeightSequence segments(int n_max);  // j!
  static WeightSequence trees(int n_max);     // j^(j-1)
  static WeightSequence bc(const Rational& b, const Rational& c, int n_max);
  static WeightSequence explicit_values(std::vector<Rational> w);  // w[0] is w_1

  int n_max() const { return static_cast<int>(w_.size()); }
  const Rational& operator[](int j) const;  // 1-based
  const std::vector<Rational>& values() const { return w_; }

  WeightFamily family() const { return family_; }
  std::string family_name() const;
  const std::optional<Rational>& b() const { return b_; }
  const std::optional<Rational>& c() const { return c_; }

  // Same family regenerated (or truncated) to a new length. Explicit tables
  // can only be truncated.
  WeightSequence resized(int n_max) const;

  // All w_j > 0 for j <= n-1.
  bool positive_up_to(int n) const;
  // Recorded at construction for bc weights: b + c > 0 and
  // (b >= 0 or c > -(n_max-1) b / 2). Always true for the other families.
  bool bc_condition() const { return bc_condition_; }
  // First j <= n_max with w_j <= 0, or 0 if none.
  int first_nonpositive() const { return first_nonpositive_; }

 private:
  WeightSequence(WeightFamily f, std::vector<Rational> w);

  WeightFamily family_ = WeightFamily::explicit_values;
  std::vector<Rational> w_;
  std::optional<Rational> b_, c_;
  bool bc_condition_ = true;
  int first_nonpositive_ = 0;
};

// w_j = prod_{i=2}^{j} (i c + j b)
WeightSequence weights_bc(const Rational& b, const Rational& c, int n_max);

// The (b,c) inequality at size n.
bool bc_condition(const Rational& b, const Rational& c, int n);

// uniform | cycles | segments | lah | trees | cayley | bc (needs b, c).
WeightSequence weights_by_name(const std::string& name, int n_max, const std::optional<Rational>& b = {},
                               const std::optional<Rational>& c = {});

// One rational per line; blank lines and '#' comments ignored.
WeightSequence weights_from_file(const std::string& path);

// Accepts a family name, or a path to a file of rationals.
WeightSequence weights_from_spec(const std::string& spec, int n_max, const std::optional<Rational>& b = {},
                                 const std::optional<Rational>& c = {});

}  // namespace gibbsfrag
