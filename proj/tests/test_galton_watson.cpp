#include "doctest.h"
#include "gibbsfrag/errors.hpp"
#include "gibbsfrag/galton_watson.hpp"
#include "gibbsfrag/json_io.hpp"
#include "gibbsfrag/plane_tree.hpp"
#include "gibbsfrag/stats.hpp"

using namespace gibbsfrag;

TEST_CASE("plane trees") {
  auto t = PlaneTree::parse("(()(()))");
  CHECK(t.size() == 4);
  CHECK(t.degrees() == std::vector<int>{2, 0, 1, 0});
  CHECK(t.parents() == std::vector<int>{-1, 0, 0, 2});
  CHECK(t.subtree_sizes() == std::vector<int>{4, 1, 2, 1});
  CHECK(t.to_string() == "(()(()))");
  CHECK_THROWS_AS(PlaneTree({1, 0, 0}), ArgumentError);
  CHECK_THROWS_AS(PlaneTree::parse("(()"), ArgumentError);

  auto all = enumerate_plane_trees(4);
  REQUIRE(all.size() == 5);
  CHECK(all.front().to_string() == "(((())))");
  CHECK(all.back().to_string() == "(()()())");
  for (int n = 1; n <= 8; ++n)
    for (int k = 1; k <= n; ++k)
      CHECK(BigInt(static_cast<unsigned long>(enumerate_plane_forests(n, k).size())) == plane_forest_count(n, k));
  CHECK(catalan(10) == 16796);

  auto f = cut_edges(t, {2});
  CHECK(f.to_string() == "(())|(())");
  CHECK(PlaneForest::parse(f.to_string()) == f);
  CHECK(to_json(t)["degrees"] == Json::array({2, 0, 1, 0}));
}

TEST_CASE("offspring families from (b, c)") {
  CHECK(offspring_bc(1, 0, 6).family() == OffspringFamily::poisson);
  auto bin = offspring_bc(1, 1, 6);  // a = 2, p = 1/2
  CHECK(bin.family() == OffspringFamily::binomial);
  CHECK(bin.rho(1) == 2);
  CHECK(bin.rho(2) == 1);
  CHECK(bin.rho(3) == 0);
  auto nb = offspring_bc(Rational(-2, 5) * Rational(-2), Rational(-2, 5), 6);
  CHECK(nb.family() == OffspringFamily::negbinomial);
  auto p = OffspringDist::poisson(1, 8);
  CHECK(p.rho(3) == make_rational(1, 6));
  CHECK(p.r(2) == 1);
}

TEST_CASE("tree size laws") {
  for (const auto& off : {OffspringDist::poisson(1, 9), OffspringDist::binomial(2, make_rational(1, 2)),
                          OffspringDist::negbinomial(1, make_rational(3, 5), 9), OffspringDist::table({1, 1, 1})}) {
    for (int n = 1; n <= 8; ++n) CHECK(q_n(n, off).coeff == q_n_enumerated(n, off));
  }
  // geometric offspring: every plane tree with n nodes has weight (1-p)^{n-1} p0^n
  auto geo = OffspringDist::negbinomial(1, make_rational(1, 2), 7);
  CHECK(q_n(5, geo).coeff == Rational(catalan(4)) / 16);
  // binary trees with p = (1/4, 1/2, 1/4): q(3) = 3 * 2 * 1/4 * 1/4 ...
  auto bin = OffspringDist::binomial(2, make_rational(1, 2));
  CHECK(*q_n(3, bin).exact(bin) == make_rational(5, 64));
  CHECK(weights_from_offspring(OffspringDist::poisson(1, 7), 6)[5] == 625);
}

TEST_CASE("conditioned tree sampler") {
  // geometric offspring: conditioned tree uniform over all plane trees
  auto geo = OffspringDist::negbinomial(1, make_rational(1, 2), 6);
  RationalDist<PlaneTree> uniform;
  auto all = enumerate_plane_trees(6);
  for (const auto& t : all) uniform.add(t, Rational(1) / Rational(all.size()));
  for (auto mode : {ConditionedTreeSampler::Mode::rejection, ConditionedTreeSampler::Mode::recursive}) {
    ConditionedTreeSampler s(geo, 6, mode);
    auto r = rng_stream(kFixtureSeed, 41);
    EmpiricalDist<PlaneTree> emp;
    for (int i = 0; i < 20000; ++i) emp.add(s(r));
    CHECK_FALSE(chi_square(emp, uniform).rejected);
  }
  // Poisson at n = 200 is out of reach for rejection
  ConditionedTreeSampler big(OffspringDist::poisson(1, 200), 200);
  CHECK(big.mode() == ConditionedTreeSampler::Mode::recursive);
  auto r = rng_stream(kFixtureSeed, 42);
  CHECK(big(r).size() == 200);
}

TEST_CASE("cut forests") {
  auto off = OffspringDist::poisson(1, 6);
  CHECK(f2_exact_check(5, off));
  CHECK_FALSE(f2_exact_check(4, OffspringDist::table({1, 1, 1})));
  auto law = cut_forest_law(5, 2, off);
  CHECK(law.is_normalized());
  CHECK(law == independent_forest_law(5, 2, off));

  auto t = PlaneTree::parse("((())())");
  auto r = rng_stream(kFixtureSeed, 43);
  auto f = cut_forest(t, 3, r);
  CHECK(f.trees.size() == 3);
  CHECK(f.size() == 4);
}

TEST_CASE("labelled cut chain is Gibbs") {
  // Cayley weights come from Poisson offspring
  auto off = OffspringDist::poisson(1, 5);
  auto law = labelled_cut_chain_law(5, off);
  GibbsModel model(weights_from_offspring(off, 5), 5);
  for (int k = 1; k <= 5; ++k) CHECK(law.marginal(k) == model.micro_law_set(5, k));
}

TEST_CASE("affine lemma search") { CHECK(lemma_affine_search(5) == 0); }
