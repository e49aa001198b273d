#include "gibbsfrag/json_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "gibbsfrag/errors.hpp"

namespace gibbsfrag {

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

// JSON has no infinities; those go out as strings.
Json real_json(double x) {
  if (!std::isfinite(x)) return format_real(x);
  return x;
}

Json rational_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(BigInt(std::to_string(j.get<long long>())));
  throw ArgumentError("expected a rational string, got " + j.dump());
}

Json to_json(const BellTable& t) {
  Json w = Json::array();
  for (const auto& x : t.weights().values()) w.push_back(rational_json(x));
  Json rows = Json::array();
  for (int n = 0; n <= t.n_max(); ++n) {
    Json row = Json::array();
    for (int k = 0; k <= n; ++k) row.push_back(t.defined(n, k) ? rational_json(t(n, k)) : Json(nullptr));
    rows.push_back(row);
  }
  return Json{{"n_max", t.n_max()}, {"weights", w}, {"bell", rows}};
}

BellTable bell_table_from_json(const Json& j) {
  try {
    int n_max = j.at("n_max").get<int>();
    std::vector<Rational> w;
    for (const auto& x : j.at("weights")) w.push_back(rational_from_json(x));
    BellTable t(WeightSequence::explicit_values(w), n_max);
    const auto& rows = j.at("bell");
    if (static_cast<int>(rows.size()) != n_max + 1) throw ArgumentError("bell table: wrong number of rows");
    for (int n = 0; n <= n_max; ++n) {
      const auto& row = rows.at(static_cast<std::size_t>(n));
      for (int k = 0; k <= n; ++k) {
        const auto& cell = row.at(static_cast<std::size_t>(k));
        if (cell.is_null()) continue;
        if (!t.defined(n, k) || rational_from_json(cell) != t(n, k))
          throw ArgumentError("bell table: entry (" + std::to_string(n) + "," + std::to_string(k) +
                              ") disagrees with the recursion");
      }
    }
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError(std::string("bell table: ") + e.what());
  }
}

Json to_json(const GofReport& r) {
  return Json{{"statistic", real_json(r.statistic)}, {"dof", r.dof},          {"p_value", real_json(r.p_value)},
              {"tv", real_json(r.tv)},               {"alpha", real_json(r.alpha)}, {"rejected", r.rejected},
              {"cells", r.cells},                    {"pooled_cells", r.pooled_cells}, {"samples", r.samples}};
}

namespace {
double real_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  auto s = j.get<std::string>();
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  if (s == "nan") return NAN;
  return std::stod(s);
}
}  // namespace

GofReport gof_report_from_json(const Json& j) {
  GofReport r;
  r.statistic = real_from_json(j.at("statistic"));
  r.dof = j.at("dof").get<int>();
  r.p_value = real_from_json(j.at("p_value"));
  r.tv = real_from_json(j.at("tv"));
  r.alpha = real_from_json(j.at("alpha"));
  r.rejected = j.at("rejected").get<bool>();
  r.cells = j.at("cells").get<int>();
  r.pooled_cells = j.at("pooled_cells").get<int>();
  r.samples = j.at("samples").get<std::uint64_t>();
  return r;
}

Json to_json(const Certificate& c) {
  Json a = Json::array(), im = Json::array();
  for (const auto& l : c.a) a.push_back(l.to_string());
  for (const auto& l : c.image) im.push_back(l.to_string());
  return Json{{"set", a}, {"image", im}, {"mass_set", rational_json(c.mass_a)}, {"mass_image", rational_json(c.mass_image)}};
}

Json to_json(const StepVerdict& v) {
  Json j{{"k", v.k}, {"feasible", v.feasible}, {"flow", rational_json(v.flow)}};
  if (v.certificate) j["certificate"] = to_json(*v.certificate);
  return j;
}

Json to_json(const ExistenceReport& r) {
  Json per = Json::array();
  for (const auto& v : r.per_k) per.push_back(to_json(v));
  Json j{{"n", r.n}, {"weights", r.weights}, {"verdict", r.verdict}, {"per_k", per}};
  for (const auto& v : r.per_k)
    if (v.certificate) {
      j["certificate"] = to_json(*v.certificate);
      j["certificate"]["k"] = v.k;
      break;
    }
  return j;
}

Json to_json(const ExistenceScan& s) {
  Json verdicts = Json::array();
  for (const auto& [n, ok] : s.verdicts) verdicts.push_back(Json{{"n", n}, {"verdict", ok}});
  Json j{{"n_max", s.n_max}, {"verdict", !s.first_failing_n.has_value()}, {"verdicts", verdicts}};
  j["first_failing_n"] = s.first_failing_n ? Json(*s.first_failing_n) : Json(nullptr);
  if (s.failing_report) j["failing_report"] = to_json(*s.failing_report);
  return j;
}

std::string path_to_jsonl(const FragPath& p) {
  std::ostringstream out;
  for (int k = 1; k <= p.n; ++k) {
    out << Json{{"step", k - 1}, {"blocks", p.at(k).k()}, {"partition", p.at(k).to_string()}}.dump() << '\n';
  }
  return out.str();
}

std::string path_to_csv(const FragPath& p) {
  std::ostringstream out;
  out << "k,block_sizes\n";
  for (int k = 1; k <= p.n; ++k) {
    auto sizes = p.at(k).block_sizes();
    std::sort(sizes.rbegin(), sizes.rend());
    out << k << ',';
    for (std::size_t i = 0; i < sizes.size(); ++i) out << (i ? " " : "") << sizes[i];
    out << '\n';
  }
  return out.str();
}

Json to_json(const PlaneTree& t) { return Json{{"tree", t.to_string()}, {"degrees", t.degrees()}}; }

Json to_json(const PlaneForest& f) {
  Json trees = Json::array();
  for (const auto& t : f.trees) trees.push_back(to_json(t));
  return Json{{"forest", f.to_string()}, {"trees", trees}};
}

}  // namespace gibbsfrag
