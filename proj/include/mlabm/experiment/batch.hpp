#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "mlabm/experiment/config.hpp"
#include "mlabm/metrics.hpp"

namespace mlabm::experiment {

/// A replicate failed. Maps to exit code 2.
class BatchError : public std::runtime_error {
 public:
  BatchError(const std::string& what, std::size_t replicate, std::uint64_t seed)
      : std::runtime_error(what), replicate_(replicate), seed_(seed) {}
  std::size_t replicate() const noexcept { return replicate_; }
  std::uint64_t seed() const noexcept { return seed_; }

 private:
  std::size_t replicate_;
  std::uint64_t seed_;
};

struct MetricSummary {
  double mean = 0.0;
  double sd = 0.0;  // sample sd, 0 for a single run
  std::size_t n = 0;
};

struct BatchResult {
  RunConfig config;
  std::vector<RunMetrics> runs;  // ordered by replicate index
  std::map<std::string, MetricSummary> summary;

  std::vector<double> survivors() const;
  /// One final-epoch price per run that traded in its last 100 steps.
  std::vector<double> final_prices(std::size_t window = 100) const;
  std::vector<double> final_sdlms(std::size_t window = 100) const;
};

/// Runs one replicate end to end.
RunMetrics run_replicate(const RunConfig& cfg, std::size_t index);

/// cfg.runs replicates with seeds seed + i on up to cfg.jobs threads.
BatchResult run_batch(const RunConfig& cfg);

std::map<std::string, MetricSummary> summarize(const std::vector<RunMetrics>& runs);

}  // namespace mlabm::experiment
