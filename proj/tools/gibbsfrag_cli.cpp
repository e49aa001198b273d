// gibbsfrag command line.
//
// Every JSON object written by a subcommand carries a "command" entry with
// the arguments that produced it, so `verify --replay FILE` can rerun them
// and compare byte for byte.
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gibbsfrag/acceptance.hpp"
#include "gibbsfrag/bell.hpp"
#include "gibbsfrag/coalescent.hpp"
#include "gibbsfrag/errors.hpp"
#include "gibbsfrag/existence.hpp"
#include "gibbsfrag/fragmentation.hpp"
#include "gibbsfrag/galton_watson.hpp"
#include "gibbsfrag/gibbs.hpp"
#include "gibbsfrag/json_io.hpp"
#include "gibbsfrag/kingman.hpp"
#include "gibbsfrag/stats.hpp"

using namespace gibbsfrag;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;  // verify: some criterion or replay did not match
constexpr int kExitInvalid = 2;
constexpr int kExitNumeric = 3;

struct Shared {
  int n = 4;
  std::optional<int> k;
  std::string weights = "uniform";
  std::optional<std::string> b, c;
  std::uint64_t seed = kFixtureSeed;
  std::uint64_t samples = 0;
  std::string format = "json";
  std::string out;
};

std::optional<Rational> opt_rational(const std::optional<std::string>& s) {
  if (!s) return std::nullopt;
  return parse_rational(*s);
}

void add_shared(CLI::App* sub, Shared& s, bool with_k = true) {
  sub->add_option("--n", s.n, "number of elements")->check(CLI::Range(1, 100000));
  if (with_k) sub->add_option("--k", s.k, "number of blocks");
  sub->add_option("--weights", s.weights, "uniform|cycles|segments|lah|trees|cayley|bc, or a file of rationals");
  sub->add_option("--b", s.b, "b parameter (rational)");
  sub->add_option("--c", s.c, "c parameter (rational)");
  sub->add_option("--seed", s.seed, "64-bit seed");
  sub->add_option("--samples", s.samples, "number of Monte Carlo samples");
  sub->add_option("--format", s.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--out", s.out, "write to this file instead of stdout");
}

WeightSequence weights_of(const Shared& s, int n_max) {
  return weights_from_spec(s.weights, std::max(1, n_max), opt_rational(s.b), opt_rational(s.c));
}

Json command_json(const std::vector<std::string>& args) {
  // --out only says where the bytes go; leave it out so replays compare equal
  Json a = Json::array();
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--out") {
      ++i;
      continue;
    }
    if (args[i].rfind("--out=", 0) == 0) continue;
    a.push_back(args[i]);
  }
  return a;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// --------------------------------------------------------------------------

std::string cmd_bell(const Shared& s, bool brute, const Json& cmd) {
  auto w = weights_of(s, s.n);
  if (s.k) {
    int k = *s.k;
    if (k < 1 || k > s.n) throw ArgumentError("bell: need 1 <= k <= n");
    Rational v = brute ? bell_brute(s.n, k, w) : bell_recursive(s.n, k, w);
    if (s.format == "csv") return "n,k,value\n" + std::to_string(s.n) + "," + std::to_string(k) + "," + to_string(v) + "\n";
    return Json(to_string(v)).dump() + "\n";
  }
  BellTable t(w, s.n);
  if (s.format == "csv") {
    std::string out = "n,k,value\n";
    for (int n = 1; n <= s.n; ++n)
      for (int k = 1; k <= n; ++k) out += std::to_string(n) + "," + std::to_string(k) + "," + to_string(t(n, k)) + "\n";
    return out;
  }
  Json j = to_json(t);
  j["command"] = cmd;
  return dump(j);
}

std::string cmd_weights(const Shared& s, const Json& cmd) {
  auto w = weights_of(s, s.n);
  if (s.format == "csv") {
    std::string out = "j,w\n";
    for (int j = 1; j <= w.n_max(); ++j) out += std::to_string(j) + "," + to_string(w[j]) + "\n";
    return out;
  }
  Json vals = Json::array();
  for (const auto& x : w.values()) vals.push_back(rational_json(x));
  Json j{{"family", w.family_name()}, {"weights", vals}, {"bc_condition", w.bc_condition()},
         {"first_nonpositive", w.first_nonpositive() ? Json(w.first_nonpositive()) : Json(nullptr)}};
  if (w.n_max() >= 3) {
    auto fit = fit_unique_recursion(w, w.n_max());
    j["bc_fit"] = fit ? Json{{"b", rational_json(fit->first)}, {"c", rational_json(fit->second)}} : Json(nullptr);
  }
  j["command"] = cmd;
  return dump(j);
}

std::string cmd_gibbs(const Shared& s, const std::optional<std::string>& partition, const Json& cmd) {
  auto w = weights_of(s, s.n);
  GibbsModel model(w, s.n);
  auto canonical_prob = [&](const SetPartition& p) {
    return Rational(model.micro_set(p, p.k()).prob * model.bell()(s.n, p.k()) / model.bell().complete(s.n));
  };
  auto prob_of = [&](const SetPartition& p) {
    if (p.n() != s.n) throw ArgumentError("gibbs: partition is not of [n]");
    if (s.k) return micro_pmf_set(p, GibbsSpec{s.n, s.k, w});
    return canonical_prob(p);
  };
  Json records = Json::array();
  if (partition) {
    auto p = SetPartition::parse(*partition);
    records.push_back(Json{{"partition", p.to_string()}, {"prob", rational_json(prob_of(p))}});
  } else if (s.samples > 0) {
    if (!s.k) throw ArgumentError("gibbs: sampling needs --k");
    MicroSampler sampler(GibbsSpec{s.n, s.k, w});
    auto rng = rng_stream(s.seed, 0);
    for (std::uint64_t i = 0; i < s.samples; ++i) {
      auto p = sampler(rng);
      records.push_back(Json{{"partition", p.to_string()}, {"prob", rational_json(prob_of(p))}});
    }
  } else {
    for (int k = 1; k <= s.n; ++k) {
      if (s.k && k != *s.k) continue;
      for (const auto& p : enumerate_set_partitions(s.n, k)) {
        Rational pr = prob_of(p);
        if (pr != 0) records.push_back(Json{{"partition", p.to_string()}, {"prob", rational_json(pr)}});
      }
    }
  }
  if (s.format == "csv") {
    std::string out = "partition,prob\n";
    for (const auto& r : records) out += "\"" + r["partition"].get<std::string>() + "\"," + r["prob"].get<std::string>() + "\n";
    return out;
  }
  Json j{{"n", s.n}, {"k", s.k ? Json(*s.k) : Json(nullptr)}, {"weights", w.family_name()}, {"records", records}};
  j["command"] = cmd;
  return dump(j);
}

std::string cmd_fragment(const Shared& s, bool check, const Json& cmd) {
  auto w = weights_of(s, s.n);
  if (check) {
    auto law = exact_path_law(s.n, w);
    GibbsModel model(w.resized(s.n), s.n);
    Json per_k = Json::array();
    for (int k = 1; k <= s.n; ++k) {
      bool equal = k == 1 ? law.marginal(1)(SetPartition::single_block(s.n)) == 1
                          : law.marginal(k) == model.micro_law_set(s.n, k);
      per_k.push_back(Json{{"k", k}, {"marginal_is_gibbs", equal},
                           {"tv", rational_json(k == 1 ? Rational(0) : tv_distance(law.marginal(k), model.micro_law_set(s.n, k)))}});
    }
    auto kern = fit_affine_reversed_kernel(law);
    Json j{{"n", s.n}, {"weights", w.family_name()}, {"paths", law.paths.size()}, {"per_k", per_k}};
    j["reversed_kernel"] = kern ? Json{{"a", rational_json(kern->a)}, {"b", rational_json(kern->b)}} : Json(nullptr);
    j["command"] = cmd;
    return dump(j);
  }
  FragmentationChain chain(w, s.n);
  auto rng = rng_stream(s.seed, 0);
  std::uint64_t runs = std::max<std::uint64_t>(1, s.samples);
  std::string out;
  if (s.format == "csv") {
    out = "path,k,block_sizes\n";
    for (std::uint64_t i = 0; i < runs; ++i) {
      std::istringstream rows(path_to_csv(chain.run(rng)));
      std::string line;
      std::getline(rows, line);  // header
      while (std::getline(rows, line)) out += std::to_string(i) + "," + line + "\n";
    }
    return out;
  }
  // JSON lines: a header record, then one state per line
  out = Json{{"n", s.n}, {"weights", w.family_name()}, {"paths", runs}, {"command", cmd}}.dump() + "\n";
  for (std::uint64_t i = 0; i < runs; ++i) {
    auto p = chain.run(rng);
    for (int k = 1; k <= p.n; ++k)
      out += Json{{"path", i}, {"step", k - 1}, {"blocks", k}, {"partition", p.at(k).to_string()}}.dump() + "\n";
  }
  return out;
}

std::string cmd_coalesce(const Shared& s, const std::vector<double>& grid, const Json& cmd) {
  if (!s.b || !s.c) throw ArgumentError("coalesce: the kernel 2c + b(i+j) needs --b and --c");
  auto kernel = AffineKernel::from_bc(parse_rational(*s.b), parse_rational(*s.c));
  auto rng = rng_stream(s.seed, 0);
  std::uint64_t runs = std::max<std::uint64_t>(1, s.samples);
  Json paths = Json::array();
  std::string csv = "path,time,blocks,partition\n";
  for (std::uint64_t i = 0; i < runs; ++i) {
    auto p = ml_continuous(s.n, kernel, grid, rng);
    Json states = Json::array();
    for (std::size_t m = 0; m < p.skeleton.size(); ++m) {
      double t = m == 0 ? 0.0 : p.jump_times[m - 1];
      states.push_back(Json{{"time", real_json(t)}, {"blocks", p.skeleton[m].k()}, {"partition", p.skeleton[m].to_string()}});
      csv += std::to_string(i) + "," + format_real(t) + "," + std::to_string(p.skeleton[m].k()) + ",\"" +
             p.skeleton[m].to_string() + "\"\n";
    }
    Json at_grid = Json::array();
    for (std::size_t g = 0; g < grid.size(); ++g)
      at_grid.push_back(Json{{"time", real_json(grid[g])}, {"partition", p.at_grid[g].to_string()}});
    paths.push_back(Json{{"states", states}, {"grid", at_grid}});
  }
  if (s.format == "csv") return csv;
  Json j{{"n", s.n}, {"kernel", {{"a", rational_json(kernel.a)}, {"b", rational_json(kernel.b)}}}, {"paths", paths}};
  j["command"] = cmd;
  return dump(j);
}

struct GwFlags {
  std::string offspring = "poisson";
  std::string mean = "1", a = "2", p = "1/2", r = "1", table;
  bool check = false, progeny = false;
};

OffspringDist offspring_of(const Shared& s, const GwFlags& g, int n_max) {
  if (g.offspring == "poisson") return OffspringDist::poisson(parse_rational(g.mean), n_max);
  if (g.offspring == "binomial") {
    Rational a = parse_rational(g.a);
    if (a.get_den() != 1 || a < 1) throw ArgumentError("binomial offspring: --a must be a positive integer");
    return OffspringDist::binomial(static_cast<int>(a.get_num().get_si()), parse_rational(g.p));
  }
  if (g.offspring == "negbinomial") return OffspringDist::negbinomial(parse_rational(g.r), parse_rational(g.p), n_max);
  if (g.offspring == "bc") {
    if (!s.b || !s.c) throw ArgumentError("bc offspring needs --b and --c");
    return offspring_bc(parse_rational(*s.b), parse_rational(*s.c), n_max);
  }
  if (g.offspring == "table") {
    std::vector<Rational> p;
    std::stringstream in(g.table);
    std::string item;
    while (std::getline(in, item, ',')) p.push_back(parse_rational(item));
    if (p.empty()) throw ArgumentError("table offspring needs --table p0,p1,...");
    return OffspringDist::table(p);
  }
  throw ArgumentError("unknown offspring family '" + g.offspring + "'");
}

std::string cmd_gw(const Shared& s, const GwFlags& g, const Json& cmd) {
  auto off = offspring_of(s, g, std::max(s.n, 2));
  Json j{{"offspring", off.name()}, {"n", s.n}};
  if (g.progeny) {
    int k = s.k.value_or(1);
    Json rows = Json::array();
    std::string csv = "m,prob\n";
    for (int m = k; m <= s.n; ++m) {
      auto v = total_progeny_pmf(k, m, off);
      auto exact = v.exact(off);
      std::ostringstream val;
      val.precision(30);
      val << v.value(off);
      rows.push_back(Json{{"m", m}, {"coeff", rational_json(v.coeff)}, {"p0_power", v.p0_power}, {"value", val.str()},
                          {"exact", exact ? Json(to_string(*exact)) : Json(nullptr)}});
      csv += std::to_string(m) + "," + val.str() + "\n";
    }
    if (s.format == "csv") return csv;
    j["k"] = k;
    j["total_progeny"] = rows;
  } else if (g.check) {
    Json rows = Json::array();
    for (int m = 2; m <= s.n; ++m) rows.push_back(Json{{"n", m}, {"f2_exact", f2_exact_check(m, off)}});
    j["f2"] = rows;
    if (s.k) j["cut_forest_equals_independent"] = cut_forest_law(s.n, *s.k, off) == independent_forest_law(s.n, *s.k, off);
  } else {
    ConditionedTreeSampler sampler(off, s.n);
    auto rng = rng_stream(s.seed, 0);
    std::uint64_t runs = std::max<std::uint64_t>(1, s.samples);
    Json items = Json::array();
    std::string csv = s.k ? "sample,forest\n" : "sample,tree\n";
    for (std::uint64_t i = 0; i < runs; ++i) {
      auto t = sampler(rng);
      if (s.k) {
        auto f = cut_forest(t, *s.k, rng);
        items.push_back(to_json(f));
        csv += std::to_string(i) + "," + f.to_string() + "\n";
      } else {
        items.push_back(to_json(t));
        csv += std::to_string(i) + "," + t.to_string() + "\n";
      }
    }
    if (s.format == "csv") return csv;
    j["sampler"] = sampler.mode() == ConditionedTreeSampler::Mode::rejection ? "rejection" : "recursive";
    j[s.k ? "forests" : "trees"] = items;
  }
  j["command"] = cmd;
  return dump(j);
}

std::string cmd_existence(const Shared& s, std::optional<int> scan_to, bool keep_going, const Json& cmd) {
  Json j;
  if (scan_to) {
    auto w = weights_of(s, *scan_to);
    j = to_json(scan_existence(*scan_to, w, keep_going));
    j["weights"] = w.family_name();
  } else {
    j = to_json(exists_gibbs_frag(s.n, weights_of(s, s.n)));
  }
  if (s.format == "csv") {
    std::string out = "n,verdict\n";
    if (j.contains("verdicts"))
      for (const auto& v : j["verdicts"]) out += std::to_string(v["n"].get<int>()) + "," + (v["verdict"].get<bool>() ? "1" : "0") + "\n";
    else
      out += std::to_string(s.n) + "," + (j["verdict"].get<bool>() ? "1" : "0") + "\n";
    return out;
  }
  j["command"] = cmd;
  return dump(j);
}

Json real_array(const std::vector<double>& xs) {
  Json a = Json::array();
  for (double x : xs) a.push_back(real_json(x));
  return a;
}

std::string cmd_kingman(const Shared& s, const std::string& theta_text, bool first_split_only, const Json& cmd) {
  const int n = s.n;
  if (n < 2) throw ArgumentError("kingman: n must be at least 2");
  Json j{{"n", n}};
  if (n == 4) {
    Json stated = Json::array();
    for (const auto& f : first_split_stated_n4()) stated.push_back(real_json(f.value().convert_to<double>()));
    j["closed_form"] = stated;
  }
  std::vector<double> exact;
  for (int q = 1; q <= n - 1; ++q) exact.push_back(j_law_exact(n, q).value().convert_to<double>());
  Json gibbs = Json::array();
  for (const auto& g : gibbs_j_law(n)) gibbs.push_back(rational_json(g));
  j["first_split"] = Json{{"exact", real_array(exact)}, {"quadrature", real_array(j_law_quadrature(n))}, {"gibbs_reference", gibbs}};
  if (!first_split_only) {
    Rational theta = parse_rational(theta_text);
    if (theta <= 0) throw ArgumentError("kingman: theta must be positive");
    j["theta"] = rational_json(theta);
    std::uint64_t N = s.samples ? s.samples : 100000;
    RationalDist<SetPartition> law;
    for (int k = 1; k <= n; ++k)
      for (const auto& p : enumerate_set_partitions(n, k)) law.add(p, ewens_pmf(p, theta));
    auto rng = rng_stream(s.seed, 0);
    EmpiricalDist<SetPartition> emp;
    emp.seed = s.seed;
    std::vector<std::uint64_t> j_counts(static_cast<std::size_t>(n - 1), 0);
    for (std::uint64_t i = 0; i < N; ++i) {
      auto tree = simulate_kingman_tree(n, rng);
      auto cuts = sample_cuts(tree, rng);
      emp.add(allelic_partition(tree, cuts, theta.get_d()));
      auto fc = first_cut(tree, cuts);
      auto sizes = fc.partition.block_sizes();
      ++j_counts[static_cast<std::size_t>(sizes[rng.uniform_below(std::uint64_t{2})] - 1)];
    }
    j["ewens_chi2"] = to_json(chi_square(emp, law));
    std::vector<double> freq;
    for (auto c : j_counts) freq.push_back(static_cast<double>(c) / static_cast<double>(N));
    j["first_split"]["monte_carlo"] = real_array(freq);
    j["samples"] = N;
    j["seed"] = s.seed;
  }
  if (s.format == "csv") {
    std::string out = "j,exact,quadrature,gibbs_reference\n";
    auto quad = j_law_quadrature(n);
    for (int q = 1; q <= n - 1; ++q)
      out += std::to_string(q) + "," + format_real(exact[static_cast<std::size_t>(q - 1)]) + "," +
             format_real(quad[static_cast<std::size_t>(q - 1)]) + "," + to_string(gibbs_j_law(n)[static_cast<std::size_t>(q - 1)]) + "\n";
    return out;
  }
  j["command"] = cmd;
  return dump(j);
}

int run(const std::vector<std::string>& args, std::string& out, std::string& err);

int cmd_verify(const std::vector<std::string>& suites, const std::optional<std::string>& replay, const Shared& s,
               std::string& out, std::string& err) {
  if (replay) {
    std::ifstream in(*replay);
    if (!in) throw ArgumentError("verify: cannot read " + *replay);
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    Json j;
    try {
      // a JSON document, or JSON lines whose first record is the header
      if (Json::accept(text)) j = Json::parse(text);
      else j = Json::parse(text.substr(0, text.find('\n')));
    } catch (const nlohmann::json::exception& e) {
      throw ArgumentError("verify: " + *replay + " is not JSON: " + e.what());
    }
    if (!j.is_object() || !j.contains("command")) throw ArgumentError("verify: no embedded command in " + *replay);
    std::vector<std::string> args = j["command"].get<std::vector<std::string>>();
    std::string again, again_err;
    int code = run(args, again, again_err);
    if (code != 0) {
      err += again_err;
      return code;
    }
    bool same = again == text;
    out += Json{{"replay", *replay}, {"match", same}}.dump() + "\n";
    return same ? kExitOk : kExitFailed;
  }
  std::vector<CriterionResult> results;
  for (const auto& id : suites.empty() ? std::vector<std::string>{"all"} : suites) {
    auto r = run_acceptance(id, AcceptanceOptions{s.seed});
    results.insert(results.end(), r.begin(), r.end());
  }
  bool all = true;
  if (s.format == "json") {
    Json rows = Json::array();
    for (const auto& r : results) {
      rows.push_back(Json{{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail}});
      all = all && r.pass;
    }
    out += dump(Json{{"criteria", rows}, {"seed", s.seed}});
  } else {
    out += "criterion,result,title,detail\n";
    for (const auto& r : results) {
      std::string detail = r.detail;
      for (auto& ch : detail)
        if (ch == '"') ch = '\'';
      out += r.id + "," + (r.pass ? "PASS" : "FAIL") + "," + r.title + ",\"" + detail + "\"\n";
      all = all && r.pass;
    }
  }
  // human-readable table on stderr
  for (const auto& r : results) {
    char line[160];
    std::snprintf(line, sizeof line, "%-4s %-4s %-48s %7.1fs\n", r.id.c_str(), r.pass ? "PASS" : "FAIL", r.title.c_str(),
                  r.seconds);
    err += line;
  }
  return all ? kExitOk : kExitFailed;
}

int run(const std::vector<std::string>& args, std::string& out, std::string& err) {
  CLI::App app{"Gibbs partitions, fragmentations and coalescents"};
  app.require_subcommand(1);
  Shared s;
  Json cmd = command_json(args);

  auto* bell = app.add_subcommand("bell", "partial Bell polynomials B_{n,k}(w)");
  add_shared(bell, s);
  bool brute = false;
  bell->add_flag("--brute", brute, "sum over all set partitions instead of the recursion");

  auto* weights = app.add_subcommand("weights", "list a weight sequence");
  add_shared(weights, s, false);

  auto* gibbs = app.add_subcommand("gibbs", "Gibbs partition laws and samples");
  add_shared(gibbs, s);
  std::optional<std::string> partition;
  gibbs->add_option("--partition", partition, "probability of one partition, e.g. {1,3}{2}");

  auto* fragment = app.add_subcommand("fragment", "recursive Gibbs fragmentation paths");
  add_shared(fragment, s, false);
  bool check = false;
  fragment->add_flag("--check", check, "exact path law: marginals against Gibbs, reversed kernel fit");

  auto* coalesce = app.add_subcommand("coalesce", "Marcus-Lushnikov coalescent with kernel 2c + b(i+j)");
  add_shared(coalesce, s, false);
  std::vector<double> grid;
  coalesce->add_option("--grid", grid, "times at which to record the state");

  auto* gw = app.add_subcommand("gw", "conditioned Galton-Watson trees and forests");
  add_shared(gw, s);
  GwFlags g;
  gw->add_option("--offspring", g.offspring, "poisson|binomial|negbinomial|bc|table");
  gw->add_option("--mean", g.mean, "Poisson mean");
  gw->add_option("--a", g.a, "binomial number of trials");
  gw->add_option("--p", g.p, "binomial / negative binomial p");
  gw->add_option("--r", g.r, "negative binomial r");
  gw->add_option("--table", g.table, "p0,p1,... up to a common factor");
  gw->add_flag("--check", g.check, "f2 identity for sizes up to n; with --k also the cut-forest law");
  gw->add_flag("--progeny", g.progeny, "total progeny law from k ancestors, m = k..n");

  auto* existence = app.add_subcommand("existence", "max-flow test for a Gibbs fragmentation");
  add_shared(existence, s, false);
  std::optional<int> scan_to;
  bool keep_going = false;
  existence->add_option("--scan-to", scan_to, "check every n up to this value");
  existence->add_flag("--keep-going", keep_going, "do not stop at the first failure");

  auto* kingman = app.add_subcommand("kingman", "Kingman coalescent with mutations");
  add_shared(kingman, s, false);
  std::string theta = "1";
  bool first_split = false;
  kingman->add_option("--theta", theta, "mutation rate");
  kingman->add_flag("--first-split", first_split, "only the first-split law (no simulation)");

  auto* verify = app.add_subcommand("verify", "acceptance suites, or replay of a saved JSON output");
  verify->add_option("--seed", s.seed, "64-bit seed");
  verify->add_option("--format", s.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  verify->add_option("--out", s.out, "write to this file instead of stdout");
  std::vector<std::string> suites;
  std::optional<std::string> replay;
  verify->add_option("--suite", suites, "criteria to run: all, 1..8, 7a..7d");
  verify->add_option("--replay", replay, "rerun the command embedded in a JSON output and compare");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out += app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out += app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err += std::string(e.what()) + "\n";
    return kExitInvalid;
  }

  int code = kExitOk;
  try {
    std::string text;
    if (bell->parsed()) text = cmd_bell(s, brute, cmd);
    else if (weights->parsed()) text = cmd_weights(s, cmd);
    else if (gibbs->parsed()) text = cmd_gibbs(s, partition, cmd);
    else if (fragment->parsed()) text = cmd_fragment(s, check, cmd);
    else if (coalesce->parsed()) text = cmd_coalesce(s, grid, cmd);
    else if (gw->parsed()) text = cmd_gw(s, g, cmd);
    else if (existence->parsed()) text = cmd_existence(s, scan_to, keep_going, cmd);
    else if (kingman->parsed()) text = cmd_kingman(s, theta, first_split, cmd);
    else code = cmd_verify(suites, replay, s, text, err);

    if (!s.out.empty()) {
      std::ofstream f(s.out, std::ios::binary);
      if (!f) throw ArgumentError("cannot write " + s.out);
      f << text;
    } else {
      out += text;
    }
  } catch (const NumericError& e) {
    err += std::string("numeric failure: ") + e.what() + "\n";
    return kExitNumeric;
  } catch (const std::invalid_argument& e) {  // ArgumentError
    err += std::string("error: ") + e.what() + "\n";
    return kExitInvalid;
  } catch (const std::domain_error& e) {  // PreconditionError
    err += std::string("error: ") + e.what() + "\n";
    return kExitInvalid;
  } catch (const std::length_error& e) {  // CapacityError
    err += std::string("error: ") + e.what() + "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    err += std::string("numeric failure: ") + e.what() + "\n";
    return kExitNumeric;
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string out, err;
  int code = run(args, out, err);
  std::cout << out;
  std::cerr << err;
  return code;
}
