#include "mlabm/metrics.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <unordered_map>

#include "mlabm/stats.hpp"

namespace mlabm {

std::size_t RunMetrics::total_trades() const {
  std::size_t n = 0;
  for (const auto& s : steps) n += s.trade_volume;
  return n;
}

std::size_t RunMetrics::max_depth() const {
  std::size_t d = 1;
  for (const auto& s : steps) d = std::max(d, s.max_depth);
  return d;
}

std::size_t RunMetrics::prices_near_par() const {
  std::size_t n = 0;
  for (const auto& s : steps) n += s.prices_near_par;
  return n;
}

namespace {

template <typename It>
std::optional<double> mean_sdlm(It first, It last) {
  double sum = 0.0;
  std::size_t n = 0;
  for (; first != last; ++first) {
    if (first->sdlm) {
      sum += *first->sdlm;
      ++n;
    }
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

}  // namespace

std::optional<double> RunMetrics::final_sdlm(std::size_t window) const {
  const std::size_t k = std::min(window, steps.size());
  return mean_sdlm(steps.end() - static_cast<std::ptrdiff_t>(k), steps.end());
}

std::optional<double> RunMetrics::early_sdlm(std::size_t window) const {
  const std::size_t k = std::min(window, steps.size());
  return mean_sdlm(steps.begin(), steps.begin() + static_cast<std::ptrdiff_t>(k));
}

std::optional<double> RunMetrics::final_price(std::size_t window) const {
  const std::size_t k = std::min(window, steps.size());
  std::vector<double> prices;
  for (auto it = steps.end() - static_cast<std::ptrdiff_t>(k); it != steps.end(); ++it) {
    if (it->geo_mean_price) prices.push_back(*it->geo_mean_price);
  }
  if (prices.empty()) return std::nullopt;
  return stats::geometric_mean(prices);
}

std::size_t hierarchy_depth(const Scheduler& s) {
  std::unordered_map<EntityId, std::size_t> memo;
  std::unordered_map<EntityId, bool> on_path;

  std::function<std::size_t(const EntityId&)> depth = [&](const EntityId& id) -> std::size_t {
    GroupPtr g = s.group(id);
    if (!g) return 1;
    if (auto it = memo.find(id); it != memo.end()) return it->second;
    if (on_path[id]) throw std::logic_error("membership cycle through " + id.str());
    on_path[id] = true;
    std::size_t deepest = 1;
    g->sub_agents().for_each([&](const EntityId& m, const AgentPtr&) { deepest = std::max(deepest, depth(m)); });
    on_path[id] = false;
    memo[id] = deepest + 1;
    return deepest + 1;
  };

  std::size_t best = 1;
  s.groups().for_each([&](const EntityId& id, const GroupPtr&) { best = std::max(best, depth(id)); });
  return best;
}

}  // namespace mlabm
