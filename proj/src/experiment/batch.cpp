#include "mlabm/experiment/batch.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>

#include "mlabm/sugarscape/model.hpp"

namespace mlabm::experiment {

std::vector<double> BatchResult::survivors() const {
  std::vector<double> out;
  out.reserve(runs.size());
  for (const auto& r : runs) out.push_back(static_cast<double>(r.survivors));
  return out;
}

std::vector<double> BatchResult::final_prices(std::size_t window) const {
  std::vector<double> out;
  for (const auto& r : runs) {
    if (auto p = r.final_price(window)) out.push_back(*p);
  }
  return out;
}

std::vector<double> BatchResult::final_sdlms(std::size_t window) const {
  std::vector<double> out;
  for (const auto& r : runs) {
    if (auto s = r.final_sdlm(window)) out.push_back(*s);
  }
  return out;
}

RunMetrics run_replicate(const RunConfig& cfg, std::size_t index) {
  sugarscape::SugarscapeModel model(cfg.model_config(index));
  RunMetrics m = model.run(cfg.steps);
  m.run_index = index;
  m.seed = cfg.replicate_seed(index);
  m.config_digest = cfg.digest();
  return m;
}

namespace {

MetricSummary describe(const std::vector<double>& xs) {
  MetricSummary s;
  s.n = xs.size();
  if (xs.empty()) return s;
  double sum = 0.0;
  for (double x : xs) sum += x;
  s.mean = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  }
  return s;
}

}  // namespace

std::map<std::string, MetricSummary> summarize(const std::vector<RunMetrics>& runs) {
  std::vector<double> survivors, sdlm, trades, depth, wall;
  for (const auto& r : runs) {
    survivors.push_back(static_cast<double>(r.survivors));
    if (auto s = r.final_sdlm()) sdlm.push_back(*s);
    trades.push_back(static_cast<double>(r.total_trades()));
    depth.push_back(static_cast<double>(r.max_depth()));
    wall.push_back(r.wall_time_seconds);
  }
  return {{"survivors", describe(survivors)},
          {"final_sdlm", describe(sdlm)},
          {"total_trades", describe(trades)},
          {"max_depth", describe(depth)},
          {"wall_s", describe(wall)}};
}

BatchResult run_batch(const RunConfig& cfg) {
  cfg.validate();
  BatchResult result;
  result.config = cfg;
  result.runs.resize(cfg.runs);

  std::atomic<std::size_t> next{0};
  std::mutex failure_mutex;
  std::optional<std::pair<std::size_t, std::string>> failure;

  auto worker = [&] {
    for (;;) {
      {
        std::lock_guard lock(failure_mutex);
        if (failure) return;
      }
      const std::size_t i = next.fetch_add(1);
      if (i >= cfg.runs) return;
      try {
        result.runs[i] = run_replicate(cfg, i);
      } catch (const std::exception& e) {
        std::lock_guard lock(failure_mutex);
        if (!failure || failure->first > i) failure.emplace(i, e.what());
      }
    }
  };

  const std::size_t threads = std::min<std::size_t>(cfg.jobs, cfg.runs);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  if (failure) {
    const auto [index, what] = *failure;
    throw BatchError("replicate " + std::to_string(index) + " (seed " +
                         std::to_string(cfg.replicate_seed(index)) + ") failed: " + what,
                     index, cfg.replicate_seed(index));
  }
  result.summary = summarize(result.runs);
  return result;
}

}  // namespace mlabm::experiment
