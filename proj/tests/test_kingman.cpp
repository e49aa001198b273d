#include <cmath>

#include "doctest.h"
#include "gibbsfrag/errors.hpp"
#include "gibbsfrag/kingman.hpp"
#include "gibbsfrag/stats.hpp"

using namespace gibbsfrag;

TEST_CASE("tree structure") {
  auto r = rng_stream(kFixtureSeed, 51);
  auto t = simulate_kingman_tree(6, r);
  CHECK(t.vertices.size() == 11);
  CHECK(t.vertices.back().members.size() == 6);
  CHECK(t.t[6] == 0);
  for (int k = 1; k < 6; ++k) CHECK(t.t[static_cast<std::size_t>(k)] > t.t[static_cast<std::size_t>(k + 1)]);
  double edges = 0;
  for (int v = 0; v < 11; ++v) edges += t.edge_length(v);
  CHECK(edges == doctest::Approx(t.total_length()).epsilon(1e-12));
  auto sk = t.skeleton();
  CHECK(sk.front() == SetPartition::singletons(6));
  CHECK(sk.back() == SetPartition::single_block(6));
}

TEST_CASE("Kingman skeleton is uniform over refining sequences") {
  auto r = rng_stream(kFixtureSeed, 52);
  EmpiricalDist<std::vector<SetPartition>> emp;
  for (int i = 0; i < 36000; ++i) emp.add(simulate_kingman_tree(4, r).skeleton());
  // 4! 3! / 2^3 = 18 sequences
  CHECK(emp.counts.size() == 18);
  RationalDist<std::vector<SetPartition>> exact;
  for (const auto& [s, c] : emp.counts) exact.add(s, make_rational(1, 18));
  CHECK_FALSE(chi_square(emp, exact).rejected);
}

TEST_CASE("allelic partitions are monotone in theta") {
  auto r = rng_stream(kFixtureSeed, 53);
  for (int i = 0; i < 200; ++i) {
    auto t = simulate_kingman_tree(7, r);
    auto c = sample_cuts(t, r);
    CHECK(allelic_partition(t, c, 0) == SetPartition::single_block(7));
    CHECK(allelic_partition(t, c, 1e300) == SetPartition::singletons(7));
    CHECK(refines(allelic_partition(t, c, 2.0), allelic_partition(t, c, 0.5)));
    auto fc = first_cut(t, c);
    CHECK(allelic_partition(t, c, fc.theta) == fc.partition);
    CHECK(fc.stratum >= 1);
    CHECK(fc.stratum <= 6);
  }
}

TEST_CASE("Ewens formula") {
  for (int n = 2; n <= 6; ++n)
    for (const Rational& th : {make_rational(1, 2), Rational(3)}) {
      Rational s = 0;
      for (int k = 1; k <= n; ++k)
        for (const auto& p : enumerate_set_partitions(n, k)) s += ewens_pmf(p, th);
      CHECK(s == 1);
    }
  CHECK(ewens_pmf(SetPartition::parse("{1,2}{3}"), Rational(1)) == make_rational(1, 6));
  CHECK(ewens_pmf(SetPartition::parse("{1,2}{3}"), 1.0) == doctest::Approx(1.0 / 6));
  CHECK(laplace_transform_length(Rational(1), 4) == make_rational(1, 4));
}

TEST_CASE("theta density and quadrature") {
  for (int n = 2; n <= 8; ++n) CHECK(theta_density_integral(n).value == doctest::Approx(1).epsilon(1e-10));
  double s = 0;
  for (int i = 1; i <= 4; ++i) s += stratum_given_theta(i, 0.7, 5);
  CHECK(s == doctest::Approx(1));
  auto pmf = first_split_pmf(5);
  double total = 0;
  for (const auto& [p, pr] : pmf) total += pr;
  CHECK(pmf.size() == 15);
  CHECK(total == doctest::Approx(1).epsilon(1e-9));
}

TEST_CASE("exact first-split law") {
  auto f = j_law_exact(4, 1);
  CHECK(f.constant == make_rational(1, 2));
  CHECK(f.log_coeffs.at(2) == 1);
  CHECK(f.log_coeffs.at(3) == make_rational(-3, 4));
  // frozen from an independent high-precision evaluation
  const double p1[] = {0, 0, 0, 0, 0.3691879625, 0.3080379, 0.2719168, 0.2477113, 0.2301651};
  for (int n = 4; n <= 8; ++n) {
    CHECK(j_law_exact(n, 1).value().convert_to<double>() == doctest::Approx(p1[n]).epsilon(1e-6));
    auto quad = j_law_quadrature(n);
    double sum = 0;
    for (int j = 1; j <= n - 1; ++j) {
      double e = j_law_exact(n, j).value().convert_to<double>();
      CHECK(std::abs(e - quad[static_cast<std::size_t>(j - 1)]) < 1e-9);
      sum += e;
    }
    CHECK(sum == doctest::Approx(1).epsilon(1e-12));
  }
  CHECK(j_theta_general(4).value() == j_law_exact(4, 1).value());
}

TEST_CASE("n = 4 closed-form expressions and the alternative formula") {
  auto st = first_split_stated_n4();
  CHECK(st[0].value().convert_to<double>() == doctest::Approx(0.068477).epsilon(1e-5));
  CHECK(st[1].value().convert_to<double>() == doctest::Approx(0.863046).epsilon(1e-5));
  CHECK(j_theta_alternative(4).value().convert_to<double>() == doctest::Approx(0.9771).epsilon(1e-3));
}

TEST_CASE("Gibbs reference") {
  CHECK(gibbs_first_split_reference(4) == make_rational(4, 11));
  CHECK(gibbs_j_law(4) == std::vector<Rational>{make_rational(4, 11), make_rational(3, 11), make_rational(4, 11)});
  for (int n = 3; n <= 9; ++n) CHECK(gibbs_j_law(n).front() == gibbs_first_split_reference(n));
}

TEST_CASE("uniform permutation with k cycles") {
  auto r = rng_stream(kFixtureSeed, 54);
  EmpiricalDist<Permutation> emp;
  for (int i = 0; i < 22000; ++i) {
    auto p = sample_uniform_perm_with_k_cycles(4, 2, r);
    CHECK(p.num_cycles() == 2);
    emp.add(p);
  }
  // |s(4,2)| = 11
  CHECK(emp.counts.size() == 11);
  RationalDist<Permutation> exact;
  for (const auto& [p, c] : emp.counts) exact.add(p, make_rational(1, 11));
  CHECK_FALSE(chi_square(emp, exact).rejected);
  CHECK_THROWS_AS(sample_uniform_perm_with_k_cycles(4, 5, r), ArgumentError);
}
