#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gibbsfrag/errors.hpp"
#include "gibbsfrag/gibbs.hpp"
#include "gibbsfrag/rational.hpp"

namespace gibbsfrag {

// Two-sided 3 sigma tail of a standard normal.
inline constexpr double kThreeSigmaAlpha = 0.0026997960632601866;

template <typename T>
struct EmpiricalDist {
  std::map<T, std::uint64_t> counts;
  std::uint64_t total = 0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  void add(const T& x, std::uint64_t c = 1) {
    counts[x] += c;
    total += c;
  }
  double freq(const T& x) const {
    auto it = counts.find(x);
    return it == counts.end() || total == 0 ? 0.0 : static_cast<double>(it->second) / static_cast<double>(total);
  }
};

struct GofReport {
  double statistic = 0;
  int dof = 0;
  double p_value = 1;
  double tv = 0;  // empirical vs exact
  double alpha = kThreeSigmaAlpha;
  bool rejected = false;
  int cells = 0;         // support size of the exact law
  int pooled_cells = 0;  // after pooling
  std::uint64_t samples = 0;
};

// Upper tail of chi-square with dof degrees of freedom.
double chi_square_sf(double x, int dof);

namespace detail {
// Pearson test on cells listed in canonical order; cells with expected count
// below min_expected are merged into their successor (the last one backwards).
GofReport pearson(const std::vector<double>& expected_prob, const std::vector<std::uint64_t>& observed,
                  std::uint64_t extra_observed, double min_expected, double alpha);
}  // namespace detail

// Outcomes the exact law gives probability 0 to are counted as an extra
// cell with expectation 0: any such hit makes the statistic infinite.
template <typename T>
GofReport chi_square(const EmpiricalDist<T>& emp, const RationalDist<T>& exact, double min_expected = 5.0,
                     double alpha = kThreeSigmaAlpha) {
  if (exact.size() == 0) throw ArgumentError("chi_square: empty support");
  if (emp.total == 0) throw ArgumentError("chi_square: no samples");
  std::vector<double> prob;
  std::vector<std::uint64_t> obs;
  std::uint64_t seen = 0;
  for (const auto& [x, p] : exact) {
    prob.push_back(Rational(p).get_d());
    auto it = emp.counts.find(x);
    std::uint64_t c = it == emp.counts.end() ? 0 : it->second;
    obs.push_back(c);
    seen += c;
  }
  return detail::pearson(prob, obs, emp.total - seen, min_expected, alpha);
}

// Same, against a floating-point law.
template <typename T>
GofReport chi_square(const EmpiricalDist<T>& emp, const std::map<T, double>& exact, double min_expected = 5.0,
                     double alpha = kThreeSigmaAlpha) {
  if (exact.empty()) throw ArgumentError("chi_square: empty support");
  if (emp.total == 0) throw ArgumentError("chi_square: no samples");
  std::vector<double> prob;
  std::vector<std::uint64_t> obs;
  std::uint64_t seen = 0;
  for (const auto& [x, p] : exact) {
    prob.push_back(p);
    auto it = emp.counts.find(x);
    std::uint64_t c = it == emp.counts.end() ? 0 : it->second;
    obs.push_back(c);
    seen += c;
  }
  return detail::pearson(prob, obs, emp.total - seen, min_expected, alpha);
}

// (1/2) sum |p - q|, exact.
template <typename T>
Rational tv_distance(const RationalDist<T>& p, const RationalDist<T>& q) {
  Rational s = 0;
  for (const auto& [x, px] : p) s += abs(Rational(px - q(x)));
  for (const auto& [x, qx] : q)
    if (p(x) == 0) s += abs(qx);
  return s / 2;
}

template <typename T>
double tv_distance(const std::map<T, double>& p, const std::map<T, double>& q) {
  double s = 0;
  for (const auto& [x, px] : p) {
    auto it = q.find(x);
    s += std::abs(px - (it == q.end() ? 0.0 : it->second));
  }
  for (const auto& [x, qx] : q)
    if (!p.count(x)) s += std::abs(qx);
  return s / 2;
}

// Mean with a standard error, for 3 sigma bands.
struct MeanEstimate {
  double mean = 0;
  double std_error = 0;
  std::uint64_t n = 0;
};
MeanEstimate mean_estimate(const std::vector<double>& xs);

// |observed - expected| <= 3 sd
bool within_sigma(double observed, double expected, double sd, double k = 3.0);

// Sample Pearson correlation.
double correlation(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace gibbsfrag
