#include "gibbsfrag/stats.hpp"

#include <cmath>
#include <limits>

#include <boost/math/distributions/chi_squared.hpp>

namespace gibbsfrag {

double chi_square_sf(double x, int dof) {
  if (dof <= 0) return x > 0 ? 0.0 : 1.0;
  if (std::isinf(x)) return 0.0;
  boost::math::chi_squared_distribution<double> d(dof);
  return boost::math::cdf(boost::math::complement(d, x));
}

namespace detail {

GofReport pearson(const std::vector<double>& expected_prob, const std::vector<std::uint64_t>& observed,
                  std::uint64_t extra_observed, double min_expected, double alpha) {
  GofReport r;
  r.alpha = alpha;
  r.cells = static_cast<int>(expected_prob.size());
  std::uint64_t n = extra_observed;
  for (auto c : observed) n += c;
  r.samples = n;
  const double N = static_cast<double>(n);

  double tv = static_cast<double>(extra_observed) / N;
  for (std::size_t i = 0; i < observed.size(); ++i) tv += std::abs(static_cast<double>(observed[i]) / N - expected_prob[i]);
  r.tv = tv / 2;

  // greedy pooling in canonical order
  std::vector<double> pe;
  std::vector<double> po;
  double acc_e = 0, acc_o = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    acc_e += expected_prob[i] * N;
    acc_o += static_cast<double>(observed[i]);
    if (acc_e >= min_expected) {
      pe.push_back(acc_e);
      po.push_back(acc_o);
      acc_e = acc_o = 0;
    }
  }
  if (acc_e > 0 || acc_o > 0) {
    if (pe.empty()) {
      pe.push_back(acc_e);
      po.push_back(acc_o);
    } else {
      pe.back() += acc_e;
      po.back() += acc_o;
    }
  }
  r.pooled_cells = static_cast<int>(pe.size());
  r.dof = r.pooled_cells - 1;
  if (extra_observed > 0) {
    r.statistic = std::numeric_limits<double>::infinity();
    r.p_value = 0;
    r.rejected = true;
    return r;
  }
  double s = 0;
  for (std::size_t i = 0; i < pe.size(); ++i) {
    double d = po[i] - pe[i];
    s += d * d / pe[i];
  }
  r.statistic = s;
  r.p_value = chi_square_sf(s, r.dof);
  r.rejected = r.p_value < alpha;
  return r;
}

}  // namespace detail

MeanEstimate mean_estimate(const std::vector<double>& xs) {
  MeanEstimate m;
  m.n = xs.size();
  if (xs.empty()) return m;
  double s = 0;
  for (double x : xs) s += x;
  m.mean = s / static_cast<double>(xs.size());
  if (xs.size() < 2) return m;
  double v = 0;
  for (double x : xs) v += (x - m.mean) * (x - m.mean);
  v /= static_cast<double>(xs.size() - 1);
  m.std_error = std::sqrt(v / static_cast<double>(xs.size()));
  return m;
}

bool within_sigma(double observed, double expected, double sd, double k) {
  return std::abs(observed - expected) <= k * sd;
}

double correlation(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw ArgumentError("correlation: need two equal-length samples");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(y.size());
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace gibbsfrag
