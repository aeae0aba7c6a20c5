#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mlabm/experiment/batch.hpp"
#include "mlabm/stats.hpp"

namespace mlabm::experiment {

inline constexpr double kSignificanceLevel = 0.05;

struct CompareReport {
  double survivors_mean_a = 0.0;
  double survivors_mean_b = 0.0;
  std::optional<stats::TTest> survivors_test;
  std::optional<stats::KsTest> price_test;
  std::optional<bool> significant;  // empty when the survivor test was impossible
  std::vector<std::string> notes;

  std::string verdict() const;
  std::string to_text() const;
};

/// Welch t on survivors and two-sample KS on the runs' final-epoch prices.
/// Degenerate samples are noted in the report, never thrown.
CompareReport compare(const BatchResult& a, const BatchResult& b);

}  // namespace mlabm::experiment
