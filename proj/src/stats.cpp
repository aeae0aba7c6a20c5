#include "mlabm/stats.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

namespace mlabm::stats {

double geometric_mean(std::span<const double> xs) {
  if (xs.empty()) throw StatsError("geometric mean of an empty sample");
  double log_sum = 0.0;
  for (double x : xs) {
    if (!(x > 0.0)) throw StatsError("geometric mean needs positive values");
    log_sum += std::log(x);
  }
  return std::exp(log_sum / static_cast<double>(xs.size()));
}

std::optional<double> sdlm(std::span<const double> prices) {
  if (prices.empty()) return std::nullopt;
  double sum = 0.0;
  for (double p : prices) {
    if (!(p > 0.0)) throw StatsError("prices must be positive");
    sum += std::log(p);
  }
  const double m = sum / static_cast<double>(prices.size());
  double ss = 0.0;
  for (double p : prices) {
    const double d = std::log(p) - m;
    ss += d * d;
  }
  return std::sqrt(ss / static_cast<double>(prices.size()));
}

double mean(std::span<const double> xs) {
  if (xs.empty()) throw StatsError("mean of an empty sample");
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

double variance(std::span<const double> xs) {
  if (xs.size() < 2) throw StatsError("variance needs at least two values");
  const double m = mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return ss / static_cast<double>(xs.size() - 1);
}

TTest welch_t(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() < 2 || ys.size() < 2) throw StatsError("welch_t needs at least two values per sample");
  const double nx = static_cast<double>(xs.size());
  const double ny = static_cast<double>(ys.size());
  const double se_x = variance(xs) / nx;
  const double se_y = variance(ys) / ny;
  const double se = se_x + se_y;
  if (!(se > 0.0)) throw StatsError("welch_t: both samples are constant");

  const double t = (mean(xs) - mean(ys)) / std::sqrt(se);
  const double df = se * se / (se_x * se_x / (nx - 1.0) + se_y * se_y / (ny - 1.0));
  const boost::math::students_t_distribution<double> dist(df);
  const double p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(t)));
  return {t, df, std::min(1.0, p)};
}

double kolmogorov_q(double lambda) {
  if (lambda < 0.2) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 200; ++k) {
    const double term = sign * std::exp(-2.0 * k * k * lambda * lambda);
    sum += term;
    if (std::fabs(term) < 1e-16 * std::fabs(sum)) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsTest ks_test(std::span<const double> xs, std::span<const double> ys) {
  if (xs.empty() || ys.empty()) throw StatsError("ks_test needs two non-empty samples");
  std::vector<double> a(xs.begin(), xs.end());
  std::vector<double> b(ys.begin(), ys.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());

  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }

  const double en = std::sqrt(na * nb / (na + nb));
  return {d, kolmogorov_q((en + 0.12 + 0.11 / en) * d)};
}

}  // namespace mlabm::stats
