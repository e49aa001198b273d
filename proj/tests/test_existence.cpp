#include "doctest.h"
#include "gibbsfrag/existence.hpp"
#include "gibbsfrag/json_io.hpp"
#include "gibbsfrag/max_flow.hpp"

using namespace gibbsfrag;

TEST_CASE("max flow on small networks") {
  // textbook example, value 23
  FlowNetwork net(6);
  net.add_arc(0, 1, 16);
  net.add_arc(0, 2, 13);
  net.add_arc(1, 2, 10);
  net.add_arc(2, 1, 4);
  net.add_arc(1, 3, 12);
  net.add_arc(3, 2, 9);
  net.add_arc(2, 4, 14);
  net.add_arc(4, 3, 7);
  net.add_arc(3, 5, 20);
  net.add_arc(4, 5, 4);
  auto r = max_flow(net, 0, 5);
  CHECK(r.value == 23);
  CHECK(r.source_side[0]);
  CHECK_FALSE(r.source_side[5]);

  FlowNetwork q(4);
  q.add_arc(0, 1, make_rational(1, 3));
  q.add_arc(0, 2, make_rational(1, 6));
  q.add_arc(1, 3, make_rational(1, 4));
  q.add_arc(2, 3, 1);
  auto rq = max_flow(q, 0, 3);
  CHECK(rq.value == make_rational(5, 12));
  CHECK(rq.flow[2] == make_rational(1, 4));
}

TEST_CASE("refinement graph") {
  auto g = refinement_graph(6, 2);
  // level 2: 5+1, 4+2, 3+3; level 3: 4+1+1, 3+2+1, 2+2+2
  CHECK(g.level_k.size() == 3);
  CHECK(g.level_k1.size() == 3);
  CHECK(g.edges.size() == 6);
}

TEST_CASE("one-step feasibility") {
  for (int n = 2; n <= 7; ++n)
    for (int k = 1; k < n; ++k) {
      // integer-partition and set-partition versions agree
      for (const auto& w : {WeightSequence::uniform(n), WeightSequence::cycles(n), WeightSequence::segments(n)}) {
        auto a = one_step_feasible(n, k, w);
        auto b = one_step_feasible_set_partitions(n, k, w);
        CHECK(a.feasible == b.feasible);
      }
      // bc weights come with an explicit chain, so they are always feasible
      CHECK(one_step_feasible(n, k, weights_bc(1, 1, n)).feasible);
    }
  CHECK(exists_gibbs_frag(12, WeightSequence::uniform(12)).verdict);
}

TEST_CASE("uniform weights fail first at n = 20") {
  auto scan = scan_existence(20, WeightSequence::uniform(20));
  REQUIRE(scan.first_failing_n.has_value());
  CHECK(*scan.first_failing_n == 20);
  REQUIRE(scan.failing_report.has_value());
  const StepVerdict* bad = nullptr;
  for (const auto& v : scan.failing_report->per_k)
    if (!v.feasible) {
      bad = &v;
      break;
    }
  REQUIRE(bad != nullptr);
  CHECK(bad->k == 2);
  REQUIRE(bad->certificate.has_value());
  CHECK(bad->certificate->mass_a > bad->certificate->mass_image);
  CHECK(certificate_valid(20, 2, WeightSequence::uniform(20), *bad->certificate));
  // tamper: dropping part of the image breaks nothing, adding to it breaks validity
  auto c = *bad->certificate;
  c.mass_a = c.mass_image;
  CHECK_FALSE(certificate_valid(20, 2, WeightSequence::uniform(20), c));
  auto j = to_json(scan);
  CHECK(j["first_failing_n"] == 20);
}
