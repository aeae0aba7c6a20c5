#pragma once

#include <optional>
#include <span>
#include <stdexcept>

namespace mlabm::stats {

class StatsError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// exp(mean(ln x)). Throws on empty input or any x <= 0.
double geometric_mean(std::span<const double> xs);

/// Population standard deviation of ln(price). nullopt marks a step without
/// trades; it is never reported as zero.
std::optional<double> sdlm(std::span<const double> prices);

double mean(std::span<const double> xs);
/// Sample variance (n - 1 denominator).
double variance(std::span<const double> xs);

struct TTest {
  double t;
  double df;
  double p;  // two-sided
};

/// Welch's unequal-variance t test with Welch-Satterthwaite degrees of
/// freedom. Needs two samples of size >= 2, not both constant.
TTest welch_t(std::span<const double> xs, std::span<const double> ys);

struct KsTest {
  double d;
  double p;  // asymptotic
};

/// Two-sample Kolmogorov-Smirnov statistic with the asymptotic Kolmogorov
/// p-value (Stephens' small-sample correction on the effective size).
KsTest ks_test(std::span<const double> xs, std::span<const double> ys);

/// Survival function of the Kolmogorov distribution, Q(lambda).
double kolmogorov_q(double lambda);

}  // namespace mlabm::stats
