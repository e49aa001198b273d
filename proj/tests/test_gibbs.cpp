#include "doctest.h"
#include "gibbsfrag/bell.hpp"
#include "gibbsfrag/errors.hpp"
#include "gibbsfrag/gibbs.hpp"
#include "gibbsfrag/json_io.hpp"
#include "gibbsfrag/stats.hpp"
#include "gibbsfrag/weights.hpp"

using namespace gibbsfrag;

TEST_CASE("weight families") {
  auto w = weights_by_name("trees", 5);
  CHECK(w[4] == 64);
  CHECK(w[5] == 625);
  CHECK(weights_by_name("cycles", 5)[5] == 24);
  CHECK(weights_by_name("lah", 5)[5] == 120);
  // prod_{i=2}^{j} (i c + j b)
  auto bc = weights_bc(-1, 2, 6);
  CHECK(bc.values() == std::vector<Rational>{1, 2, 3, 0, -15, 0});
  CHECK(bc.first_nonpositive() == 4);
  CHECK_FALSE(bc.bc_condition());
  CHECK(weights_bc(1, 1, 4)[4] == (2 + 4) * (3 + 4) * (4 + 4));
  CHECK_THROWS_AS(weights_by_name("fibonacci", 4), ArgumentError);
  CHECK_THROWS_AS(weights_by_name("bc", 4), ArgumentError);
}

TEST_CASE("Bell polynomials against classical numbers") {
  for (int n = 1; n <= 9; ++n)
    for (int k = 1; k <= n; ++k) {
      // w = 1: Stirling numbers of the second kind
      CHECK(bell_recursive(n, k, WeightSequence::uniform(n)) == Rational(stirling2(n, k)));
      // w = (j-1)!: unsigned Stirling numbers of the first kind
      CHECK(bell_recursive(n, k, WeightSequence::cycles(n)) == Rational(stirling1_unsigned(n, k)));
      // w = j!: Lah numbers C(n-1,k-1) n!/k!
      CHECK(bell_recursive(n, k, WeightSequence::segments(n)) ==
            Rational(binomial(n - 1, k - 1) * factorial(n) / factorial(k)));
      // w = j^{j-1}: rooted forests, C(n-1,k-1) n^{n-k}
      BigInt forests = binomial(n - 1, k - 1);
      for (int i = 0; i < n - k; ++i) forests *= n;
      CHECK(bell_recursive(n, k, WeightSequence::trees(n)) == Rational(forests));
    }
  CHECK(bell_brute(4, 2, weights_by_name("lah", 4)) == 36);
  CHECK(bell_n2(6, weights_bc(-1, 2, 6)) == 0);
  CHECK(bell_closed_bc(6, 2, -1, 2) == 0);
}

TEST_CASE("Bell table and JSON") {
  BellTable t(WeightSequence::cycles(6), 6);
  CHECK(t(6, 3) == 225);
  CHECK(t.complete(6) == 720);
  auto j = to_json(t);
  CHECK(j["n_max"] == 6);
  CHECK(j["bell"][6][3] == "225");
  auto back = bell_table_from_json(j);
  CHECK(back(5, 2) == 50);
  j["bell"][6][3] = "226";
  CHECK_THROWS_AS(bell_table_from_json(j), ArgumentError);

  // B_{m,1} = w_m needs w_m; k >= 2 only needs w up to m-1
  BellTable short_w(WeightSequence::uniform(3), 4);
  CHECK(short_w.defined(4, 2));
  CHECK_FALSE(short_w.defined(4, 1));
  CHECK(short_w(4, 2) == 7);
}

TEST_CASE("convolution polynomials and the unique recursion") {
  ConvolutionFamily f{1, 1};
  for (int n = 1; n <= 7; ++n) CHECK(weight_from_conv(f, n) == weights_bc(1, 1, n)[n]);
  CHECK(check_unique_recursion(weights_bc(2, Rational(1, 3), 8), 2, Rational(1, 3), 8));
  auto fit = fit_unique_recursion(WeightSequence::cycles(7), 7);
  CHECK_FALSE(fit.has_value());
  auto fit2 = fit_unique_recursion(WeightSequence::trees(7), 7);
  REQUIRE(fit2.has_value());
  CHECK(fit2->first == 1);
  CHECK(fit2->second == 0);
}

TEST_CASE("microcanonical pmf") {
  GibbsSpec spec{5, 2, WeightSequence::segments(5)};
  // {1,2}{3,4,5}: 2! 3! / B_{5,2} = 12/240
  CHECK(micro_pmf_set(SetPartition::parse("{1,2}{3,4,5}"), spec) == make_rational(1, 20));
  bool mismatch = false;
  CHECK(micro_pmf_set(SetPartition::parse("{1}{2}{3,4,5}"), spec, &mismatch) == 0);
  CHECK(mismatch);

  GibbsModel model(WeightSequence::cycles(6), 6);
  for (int k = 1; k <= 6; ++k) {
    auto law = model.micro_law_set(6, k);
    CHECK(law.is_normalized());
    auto by_shape = law.map([](const SetPartition& p) { return shape(p); });
    CHECK(by_shape == model.micro_law_int(6, k));
  }
  // Ewens at theta = 1 is the canonical law for (j-1)!
  for (const auto& lam : integer_partitions(6)) {
    Rational ewens = 1;
    for (auto [j, c] : lam.counts()) ewens *= Rational(1) / (power(Rational(j), c) * Rational(factorial(c)));
    CHECK(canonical_pmf(lam, 6, WeightSequence::cycles(6)) == ewens);
  }
}

TEST_CASE("canonical law as a mixture") {
  auto w = WeightSequence::trees(6);
  auto mix = canonical_mixture(6, w);
  for (const auto& lam : integer_partitions(6)) CHECK(mixture_pmf_int(lam, mix) == canonical_pmf(lam, 6, w));
  MixtureSpec bad{6, w, {1, 1}};
  CHECK_THROWS(validate(bad));
}

TEST_CASE("micro sampler is exact") {
  GibbsSpec spec{5, 3, weights_bc(1, 1, 5)};
  MicroSampler s(spec);
  GibbsModel model(spec.w, 5);
  CHECK(s.exact_law() == model.micro_law_set(5, 3));

  auto r = rng_stream(kFixtureSeed, 21);
  EmpiricalDist<SetPartition> emp;
  for (int i = 0; i < 50000; ++i) emp.add(s(r));
  CHECK_FALSE(chi_square(emp, model.micro_law_set(5, 3)).rejected);
}

TEST_CASE("Kolchin representation") {
  GibbsSpec spec{6, 3, WeightSequence::cycles(6)};
  // the conditioned law does not depend on xi, and matches the exchangeable sizes
  auto a = kolchin_block_size_dist(spec, 1);
  auto b = kolchin_block_size_dist(spec, make_rational(7, 3));
  CHECK(a == b);
  CHECK(a == exchangeable_block_size_dist(spec));
  CHECK(a.is_normalized());
}
