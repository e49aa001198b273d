#include <cmath>
#include <map>
#include <set>

#include "doctest.h"
#include "gibbsfrag/errors.hpp"
#include "gibbsfrag/partition.hpp"
#include "gibbsfrag/rational.hpp"
#include "gibbsfrag/rng.hpp"
#include "gibbsfrag/sampling.hpp"
#include "gibbsfrag/stats.hpp"

using namespace gibbsfrag;

TEST_CASE("rational text round trip") {
  CHECK(to_string(Rational(36)) == "36");
  CHECK(to_string(make_rational(-6, 4)) == "-3/2");
  CHECK(parse_rational("10/4") == make_rational(5, 2));
  CHECK(parse_rational("-0.6") == make_rational(-3, 5));
  CHECK(parse_rational("1e-3") == make_rational(1, 1000));
  CHECK(parse_rational("2.5e1") == Rational(25));
  CHECK_THROWS_AS(parse_rational("1/0"), ArgumentError);
  CHECK_THROWS_AS(parse_rational("abc"), ArgumentError);
  CHECK(binomial(10, 3) == 120);
  CHECK(binomial(3, 5) == 0);
  CHECK(factorial(20) == BigInt("2432902008176640000"));
  CHECK(power(make_rational(2, 3), -2) == make_rational(9, 4));
}

// Known-answer vectors published with Random123.
TEST_CASE("philox4x32-10 known answers") {
  auto a = philox4x32_10({0, 0, 0, 0}, {0, 0});
  CHECK(a == PhiloxBlock{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  auto b = philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff});
  CHECK(b == PhiloxBlock{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  auto c = philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0});
  CHECK(c == PhiloxBlock{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are reproducible and distinct") {
  auto r1 = rng_stream(kFixtureSeed, 7);
  auto r2 = rng_stream(kFixtureSeed, 7);
  auto r3 = rng_stream(kFixtureSeed, 8);
  int same13 = 0;
  for (int i = 0; i < 1000; ++i) {
    auto x = r1(), y = r2(), z = r3();
    CHECK(x == y);
    if (x == z) ++same13;
  }
  CHECK(same13 == 0);

  // correlation smoke test between neighbouring streams
  auto s = rng_stream(1, 0), t = rng_stream(1, 1);
  std::vector<double> xs, ys;
  for (int i = 0; i < 20000; ++i) {
    xs.push_back(s.uniform01());
    ys.push_back(t.uniform01());
  }
  CHECK(std::abs(correlation(xs, ys)) < 4.0 / std::sqrt(20000.0));
}

TEST_CASE("frozen first draws of the fixture stream") {
  // these pin the generator output; any change to the stream layout breaks them
  auto r = rng_stream(kFixtureSeed, 0);
  auto first = r();
  auto again = rng_stream(kFixtureSeed, 0)();
  CHECK(first == again);
  auto block = philox4x32_10({0, 0, 0, 0}, {static_cast<std::uint32_t>(kFixtureSeed), 0});
  CHECK(first == ((static_cast<std::uint64_t>(block[1]) << 32) | block[0]));
}

TEST_CASE("bounded integers are uniform") {
  auto r = rng_stream(3, 0);
  std::map<int, std::uint64_t> counts;
  const int N = 60000;
  for (int i = 0; i < N; ++i) counts[static_cast<int>(r.uniform_below(std::uint64_t{6}))]++;
  EmpiricalDist<int> emp;
  for (auto [k, c] : counts) emp.add(k, c);
  RationalDist<int> exact;
  for (int k = 0; k < 6; ++k) exact.add(k, make_rational(1, 6));
  CHECK_FALSE(chi_square(emp, exact).rejected);

  BigInt big("1000000000000000000000000000000");
  for (int i = 0; i < 100; ++i) {
    BigInt x = r.uniform_below(big);
    CHECK(x >= 0);
    CHECK(x < big);
  }
}

TEST_CASE("discrete sampler hits exact probabilities") {
  // 1/3 is not dyadic, so the double fast path and the refinement both matter
  std::vector<Rational> w = {make_rational(1, 3), make_rational(1, 6), Rational(0), make_rational(1, 2)};
  DiscreteSampler s(w);
  CHECK(s.probability(0) == make_rational(1, 3));
  CHECK(s.probability(2) == 0);
  auto r = rng_stream(11, 0);
  EmpiricalDist<std::size_t> emp;
  for (int i = 0; i < 60000; ++i) emp.add(s(r));
  CHECK(emp.counts.count(2) == 0);
  RationalDist<std::size_t> exact;
  for (std::size_t i = 0; i < w.size(); ++i) exact.add(i, s.probability(i));
  CHECK_FALSE(chi_square(emp, exact).rejected);

  auto scaled = scale_to_integers({make_rational(1, 4), make_rational(2, 3)});
  CHECK(scaled == std::vector<BigInt>{3, 8});
  CHECK_THROWS(DiscreteSampler({Rational(0)}));
  CHECK_THROWS(DiscreteSampler({Rational(1), Rational(-1)}));
}

TEST_CASE("set partition basics") {
  auto p = SetPartition::parse("{3,1}{2}{4}");
  CHECK(p.to_string() == "{1,3}{2}{4}");
  CHECK(p.k() == 3);
  CHECK(p.block_of(3) == 0);
  CHECK(p.merge(1, 2).to_string() == "{1,3}{2,4}");
  CHECK(p.merge(0, 1).split(0, {1, 2}).to_string() == "{1,2}{3}{4}");
  CHECK(refines(SetPartition::singletons(4), p));
  CHECK_FALSE(refines(SetPartition::single_block(4), p));
  CHECK(SetPartition::from_labels({5, 2, 5, 9}) == p);
  CHECK_THROWS_AS(SetPartition::parse("{1,2}{2}"), ArgumentError);
  CHECK_THROWS_AS(SetPartition(3, {{1}, {3}}), ArgumentError);
  CHECK(shape(p).to_string() == "2^1 1^2");
  CHECK(IntegerPartition::parse("3^1 1^2").parts() == std::vector<int>{3, 1, 1});
}

TEST_CASE("partition counts") {
  // Bell numbers and Stirling triangles, hand tabulated
  const long bell[] = {1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975};
  for (int n = 1; n <= 10; ++n) {
    long total = 0;
    for (int k = 1; k <= n; ++k) total += static_cast<long>(enumerate_set_partitions(n, k).size());
    CHECK(total == bell[n]);
  }
  CHECK(stirling2(10, 3) == 9330);
  CHECK(stirling2(7, 4) == 350);
  CHECK(stirling1_unsigned(6, 2) == 274);
  CHECK(stirling1_unsigned(7, 3) == 1624);
  CHECK(integer_partitions(10).size() == 42);
  CHECK(integer_partitions(10, 3).size() == 8);
  for (const auto& lam : integer_partitions(7)) {
    long direct = 0;
    for (const auto& p : enumerate_set_partitions(7, lam.k()))
      if (shape(p) == lam) ++direct;
    CHECK(count_set_partitions_of_shape(lam) == direct);
  }
  CHECK_THROWS_AS(enumerate_set_partitions(13, 2), CapacityError);
}

TEST_CASE("permutations and Cayley distance") {
  auto s = Permutation::from_cycles(5, {{1, 3}, {2, 5, 4}});
  CHECK(s.to_string() == "(1 3)(2 5 4)");
  CHECK(s.num_cycles() == 2);
  CHECK(cayley_distance(s) == 3);
  CHECK(s.cycle_partition().to_string() == "{1,3}{2,4,5}");
  // a transposition joining two cycles merges them, one inside a cycle splits it
  CHECK(apply_transposition(s, 1, 2).num_cycles() == 1);
  CHECK(apply_transposition(s, 2, 4).num_cycles() == 3);
  CHECK(cayley_distance(Permutation::identity(6)) == 0);
}
