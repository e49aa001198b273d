#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gibbsfrag/rng.hpp"

namespace gibbsfrag {

struct CriterionResult {
  std::string id;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

struct AcceptanceOptions {
  std::uint64_t seed = kFixtureSeed;
};

// "1", "2", ..., "6", "7a".."7d", "8"
const std::vector<std::string>& acceptance_ids();
std::string acceptance_title(const std::string& id);
// Unknown id: ArgumentError. "7" runs 7a..7d.
std::vector<CriterionResult> run_acceptance(const std::string& id, const AcceptanceOptions& opt = {});
CriterionResult run_criterion(const std::string& id, const AcceptanceOptions& opt = {});

// Number of ways to go from {[n]} to singletons by splitting one block in
// two at each step, counted by walking the tree of choices.
BigInt count_refining_sequences(int n);

}  // namespace gibbsfrag
