#pragma once

#include <vector>

#include "gibbsfrag/fragmentation.hpp"
#include "gibbsfrag/partition.hpp"
#include "gibbsfrag/rng.hpp"

namespace gibbsfrag {

// Discrete Marcus-Lushnikov chain from singletons; merges blocks of sizes i, j
// with probability K(i,j) / sum over pairs. Returned states run Pi_n .. Pi_1.
std::vector<SetPartition> ml_discrete_coalescent(int n, const AffineKernel& kernel, RandomStream& rng);

// Same path read as a fragmentation (Pi_1 first).
FragPath as_frag_path(const std::vector<SetPartition>& coalescent_states);

struct ContinuousPath {
  int n = 0;
  std::vector<double> jump_times;         // time at which the block count became n-1, n-2, ..., 1
  std::vector<SetPartition> skeleton;     // Pi_n .. Pi_1
  std::vector<double> grid;
  std::vector<SetPartition> at_grid;      // state at each grid time

  // number of blocks at time t
  int blocks_at(double t) const;
  const SetPartition& state_at(double t) const;
};

// Continuous-time version: every pair merges at rate K(i,j).
ContinuousPath ml_continuous(int n, const AffineKernel& kernel, const std::vector<double>& t_grid, RandomStream& rng);

}  // namespace gibbsfrag
