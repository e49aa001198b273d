#include <cmath>

#include "doctest.h"
#include "gibbsfrag/json_io.hpp"
#include "gibbsfrag/sampling.hpp"
#include "gibbsfrag/stats.hpp"

using namespace gibbsfrag;

TEST_CASE("chi-square edge cases") {
  RationalDist<int> exact;
  exact.add(0, make_rational(1, 4));
  exact.add(1, make_rational(3, 4));
  EmpiricalDist<int> emp;
  emp.add(0, 25);
  emp.add(1, 75);
  auto r = chi_square(emp, exact);
  CHECK(r.statistic == 0);
  CHECK(r.dof == 1);
  CHECK(r.p_value == 1);
  CHECK(r.tv == 0);

  EmpiricalDist<int> off;
  off.add(2, 1);
  off.add(0, 99);
  CHECK(chi_square(off, exact).rejected);
  CHECK_THROWS(chi_square(emp, RationalDist<int>{}));
  CHECK_THROWS(chi_square(EmpiricalDist<int>{}, exact));
}

TEST_CASE("pooling merges small cells") {
  RationalDist<int> exact;
  exact.add(0, make_rational(997, 1000));
  exact.add(1, make_rational(1, 1000));
  exact.add(2, make_rational(1, 1000));
  exact.add(3, make_rational(1, 1000));
  EmpiricalDist<int> emp;
  emp.add(0, 997);
  emp.add(3, 3);
  auto r = chi_square(emp, exact, 5.0);
  CHECK(r.cells == 4);
  CHECK(r.pooled_cells == 1);
  CHECK(r.dof == 0);
}

TEST_CASE("chi-square p-values") {
  CHECK(chi_square_sf(3.841458820694124, 1) == doctest::Approx(0.05).epsilon(1e-9));
  CHECK(chi_square_sf(11.070497693516351, 5) == doctest::Approx(0.05).epsilon(1e-9));
}

TEST_CASE("rejection rate is calibrated") {
  RationalDist<int> exact;
  std::vector<Rational> w = {make_rational(1, 10), make_rational(2, 10), make_rational(3, 10), make_rational(4, 10)};
  for (int i = 0; i < 4; ++i) exact.add(i, w[static_cast<std::size_t>(i)]);
  DiscreteSampler s(w);
  auto rng = rng_stream(kFixtureSeed, 61);
  const int trials = 2000;
  int rejected = 0;
  for (int t = 0; t < trials; ++t) {
    EmpiricalDist<int> emp;
    for (int i = 0; i < 500; ++i) emp.add(static_cast<int>(s(rng)));
    if (chi_square(emp, exact, 5.0, 0.05).rejected) ++rejected;
  }
  double rate = static_cast<double>(rejected) / trials;
  CHECK(within_sigma(rate, 0.05, std::sqrt(0.05 * 0.95 / trials), 4.0));
}

TEST_CASE("total variation") {
  RationalDist<int> p, q, d;
  p.add(0, make_rational(1, 2));
  p.add(1, make_rational(1, 2));
  q.add(0, make_rational(1, 3));
  q.add(1, make_rational(2, 3));
  d.add(5, 1);
  CHECK(tv_distance(p, p) == 0);
  CHECK(tv_distance(p, q) == make_rational(1, 6));
  CHECK(tv_distance(p, d) == 1);
  std::map<int, double> a{{0, 0.25}, {1, 0.75}}, b{{2, 1.0}};
  CHECK(tv_distance(a, b) == 1.0);
}

TEST_CASE("report JSON round trip") {
  GofReport r;
  r.statistic = 1.5;
  r.dof = 3;
  r.p_value = 0.6823;
  r.tv = 0.01;
  r.samples = 1000;
  auto back = gof_report_from_json(to_json(r));
  CHECK(back.statistic == r.statistic);
  CHECK(back.p_value == r.p_value);
  CHECK(back.dof == 3);
  CHECK(back.samples == 1000);
  CHECK(format_real(0.1) == "0.1");
  CHECK(rational_from_json(Json("7/3")) == make_rational(7, 3));
}
