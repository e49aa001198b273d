#include <cmath>

#include "doctest.h"
#include "gibbsfrag/acceptance.hpp"
#include "gibbsfrag/coalescent.hpp"
#include "gibbsfrag/errors.hpp"
#include "gibbsfrag/fragmentation.hpp"
#include "gibbsfrag/json_io.hpp"
#include "gibbsfrag/stats.hpp"

using namespace gibbsfrag;

TEST_CASE("split probabilities") {
  FragmentationChain chain(WeightSequence::segments(5), 5);
  // a 4-block into {1,x} + rest: 1! 3! / B_{4,2}, B_{4,2} = 36 for j!
  CHECK(chain.b2(4) == 36);
  CHECK(chain.split_prob(1, 4) == make_rational(6, 36));
  CHECK(chain.split_prob(2, 4) == make_rational(4, 36));
  // labelled splits of a 4-set: 4 of type 1+3, 3 of type 2+2
  CHECK(4 * chain.split_prob(1, 4) + 3 * chain.split_prob(2, 4) == 1);
  CHECK_THROWS_AS(FragmentationChain(weights_bc(-1, 2, 6), 6), PreconditionError);
}

TEST_CASE("simulated paths are valid and follow the exact law") {
  auto w = WeightSequence::uniform(4);
  FragmentationChain chain(w, 4);
  auto law = exact_path_law(4, w);
  CHECK(law.paths.is_normalized());
  auto r = rng_stream(kFixtureSeed, 31);
  EmpiricalDist<FragPath> emp;
  for (int i = 0; i < 40000; ++i) {
    auto p = chain.run(r);
    p.validate();
    emp.add(p);
  }
  CHECK_FALSE(chi_square(emp, law.paths).rejected);

  FragPath bad{3, {SetPartition::single_block(3), SetPartition::singletons(3), SetPartition::singletons(3)}};
  CHECK_THROWS_AS(bad.validate(), ArgumentError);
}

TEST_CASE("segments: every refining sequence equally likely") {
  for (int n = 2; n <= 5; ++n) {
    auto law = exact_path_law(n, WeightSequence::segments(n));
    CHECK(Rational(BigInt(static_cast<unsigned long>(law.paths.size()))) == Rational(count_refining_sequences(n)));
    Rational each = Rational(1) / Rational(count_refining_sequences(n));
    for (const auto& [p, pr] : law.paths) CHECK(pr == each);
  }
  CHECK(count_refining_sequences(6) == 2700);
}

TEST_CASE("split function for the bc family") {
  auto sf = split_function_bc(6, 1, 1);
  CHECK(sf.f.at(4) == 2 + 4);
  CHECK(sf.g.at({6, 3}) == 2 * (3 + 6));
  CHECK(constant_sum_check(7, 2, Rational(-1, 3)));
  // uniform weights are not bc
  auto u = split_function(6, WeightSequence::uniform(6));
  CHECK(u.f.at(3) == make_rational(2, 3));
}

TEST_CASE("reversed kernel fit") {
  auto law = exact_path_law(5, weights_bc(1, 1, 5));
  auto k = fit_affine_reversed_kernel(law);
  REQUIRE(k.has_value());
  // 2c + b(i+j) = 2 + (i+j), scaled so that a + 2b = 1
  CHECK(k->a == make_rational(1, 2));
  CHECK(k->b == make_rational(1, 4));
  CHECK(reversed_transition_check(5, 0, 1));
  CHECK_FALSE(fit_affine_reversed_kernel(exact_path_law(5, WeightSequence::uniform(5))).has_value());
}

TEST_CASE("coalescent and fragmentation give the same path law") {
  // (b, c) = (1, 0): Cayley trees, additive kernel
  const int n = 4;
  auto law = exact_path_law(n, weights_bc(1, 0, n));
  auto kernel = AffineKernel::from_bc(1, 0);
  auto r = rng_stream(kFixtureSeed, 32);
  EmpiricalDist<FragPath> emp;
  for (int i = 0; i < 40000; ++i) emp.add(as_frag_path(ml_discrete_coalescent(n, kernel, r)));
  CHECK_FALSE(chi_square(emp, law.paths).rejected);
}

TEST_CASE("continuous coalescent") {
  auto r = rng_stream(kFixtureSeed, 33);
  std::vector<double> grid = {0.1, 0.5, 2.0};
  auto p = ml_continuous(6, AffineKernel{2, 0}, grid, r);
  CHECK(p.skeleton.size() == 6);
  CHECK(p.jump_times.size() == 5);
  for (std::size_t i = 1; i < p.jump_times.size(); ++i) CHECK(p.jump_times[i] > p.jump_times[i - 1]);
  CHECK(p.blocks_at(0) == 6);
  CHECK(p.blocks_at(p.jump_times.back() + 1) == 1);
  for (std::size_t i = 0; i < grid.size(); ++i) CHECK(p.at_grid[i].k() == p.blocks_at(grid[i]));

  // Kingman (K = 2): mean time to one block is 2(1 - 1/n) with a = 2 => 1 - 1/n
  double s = 0;
  const int N = 20000;
  for (int i = 0; i < N; ++i) s += ml_continuous(6, AffineKernel{2, 0}, {}, r).jump_times.back();
  // variance of sum of Exp(k(k-1)): sum 1/(k(k-1))^2
  double var = 0;
  for (int k = 2; k <= 6; ++k) var += 1.0 / (k * (k - 1.0) * k * (k - 1.0));
  CHECK(within_sigma(s / N, 1 - 1.0 / 6, std::sqrt(var / N)));
}

TEST_CASE("path serialization") {
  FragPath p{3, {SetPartition::single_block(3), SetPartition::parse("{1,3}{2}"), SetPartition::singletons(3)}};
  CHECK(path_to_jsonl(p) ==
        "{\"step\":0,\"blocks\":1,\"partition\":\"{1,2,3}\"}\n"
        "{\"step\":1,\"blocks\":2,\"partition\":\"{1,3}{2}\"}\n"
        "{\"step\":2,\"blocks\":3,\"partition\":\"{1}{2}{3}\"}\n");
  CHECK(path_to_csv(p) == "k,block_sizes\n1,3\n2,2 1\n3,1 1 1\n");
}
