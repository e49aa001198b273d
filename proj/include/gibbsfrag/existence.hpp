#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gibbsfrag/gibbs.hpp"
#include "gibbsfrag/partition.hpp"
#include "gibbsfrag/weights.hpp"

namespace gibbsfrag {

// Integer partitions with k and k+1 parts; mu is joined to lambda when it
// comes from lambda by splitting one part.
struct RefinementGraph {
  std::vector<IntegerPartition> level_k, level_k1;
  std::vector<std::pair<int, int>> edges;  // (index in level_k, index in level_k1)
};
RefinementGraph refinement_graph(int n, int k);
// mu reachable from some lambda in the set
std::vector<int> neighbourhood(const RefinementGraph& g, const std::vector<int>& lambdas);

// A set A at level k whose mass exceeds that of its one-split image A'.
struct Certificate {
  std::vector<IntegerPartition> a;
  std::vector<IntegerPartition> image;
  Rational mass_a, mass_image;
};

struct StepVerdict {
  int k = 0;
  bool feasible = true;
  Rational flow;
  std::optional<Certificate> certificate;
};

StepVerdict one_step_feasible(int n, int k, const WeightSequence& w);
StepVerdict one_step_feasible(const GibbsModel& model, int n, int k);
// Same question on the full set-partition graph; n <= 7.
StepVerdict one_step_feasible_set_partitions(int n, int k, const WeightSequence& w);

// Exact check of a certificate against the Gibbs marginals.
bool certificate_valid(int n, int k, const WeightSequence& w, const Certificate& c);

struct ExistenceReport {
  int n = 0;
  std::string weights;
  bool verdict = true;
  std::vector<StepVerdict> per_k;
};

ExistenceReport exists_gibbs_frag(int n, const WeightSequence& w);

struct ExistenceScan {
  int n_max = 0;
  std::vector<std::pair<int, bool>> verdicts;  // (n, verdict)
  std::optional<int> first_failing_n;
  std::optional<ExistenceReport> failing_report;
};

// n = 1..n_max; stops at the first failure unless keep_going
ExistenceScan scan_existence(int n_max, const WeightSequence& w, bool keep_going = false);

}  // namespace gibbsfrag
