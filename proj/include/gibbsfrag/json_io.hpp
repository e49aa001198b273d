#pragma once

#include <string>

#include "json.hpp"

#include "gibbsfrag/bell.hpp"
#include "gibbsfrag/existence.hpp"
#include "gibbsfrag/fragmentation.hpp"
#include "gibbsfrag/plane_tree.hpp"
#include "gibbsfrag/stats.hpp"

namespace gibbsfrag {

using Json = nlohmann::ordered_json;

// Shortest decimal that reads back to the same double.
std::string format_real(double x);
Json real_json(double x);
Json rational_json(const Rational& q);  // "p/q" string
Rational rational_from_json(const Json& j);  // string or integer

// {"n_max": N, "weights": [...], "bell": [[B_{n,0..n}], ...]}
Json to_json(const BellTable& t);
// weights and table entries read back; the table is checked against the recursion
BellTable bell_table_from_json(const Json& j);

Json to_json(const GofReport& r);
GofReport gof_report_from_json(const Json& j);

Json to_json(const Certificate& c);
Json to_json(const StepVerdict& v);
Json to_json(const ExistenceReport& r);
Json to_json(const ExistenceScan& s);

// one object per state: {"step": k, "blocks": k, "partition": "..."}
std::string path_to_jsonl(const FragPath& p);
// k,block sizes (descending, space separated)
std::string path_to_csv(const FragPath& p);

Json to_json(const PlaneTree& t);
Json to_json(const PlaneForest& f);

}  // namespace gibbsfrag
