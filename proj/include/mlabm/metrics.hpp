#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mlabm/scheduler.hpp"

namespace mlabm {

struct StepMetrics {
  std::uint64_t step = 0;
  std::optional<double> geo_mean_price;  // empty on a no-trade step
  std::optional<double> sdlm;            // empty on a no-trade step
  std::size_t trade_volume = 0;
  std::size_t live_agents = 0;
  std::size_t group_count = 0;
  std::size_t max_depth = 1;
  std::size_t prices_near_par = 0;  // trades priced in [0.95, 1.05]
};

struct RunMetrics {
  std::size_t run_index = 0;
  std::uint64_t seed = 0;
  std::vector<StepMetrics> steps;
  std::size_t survivors = 0;
  double wall_time_seconds = 0.0;
  std::string config_digest;

  std::size_t total_trades() const;
  std::size_t max_depth() const;
  std::size_t prices_near_par() const;
  /// Mean SDLM over the trading steps among the last `window` steps.
  std::optional<double> final_sdlm(std::size_t window = 100) const;
  /// Geometric mean of the per-step prices over the last `window` steps.
  std::optional<double> final_price(std::size_t window = 100) const;
  /// Mean SDLM over the trading steps among the first `window` steps.
  std::optional<double> early_sdlm(std::size_t window = 100) const;
};

inline constexpr double kParBandLow = 0.95;
inline constexpr double kParBandHigh = 1.05;

/// Longest membership chain agent < group < ... counting every tier. 1 when
/// no group exists. Throws std::logic_error on a membership cycle.
std::size_t hierarchy_depth(const Scheduler& s);

}  // namespace mlabm
