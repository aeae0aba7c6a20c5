#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "mlabm/metrics.hpp"
#include "mlabm/scheduler.hpp"
#include "mlabm/sugarscape/economics.hpp"
#include "mlabm/sugarscape/landscape.hpp"

namespace mlabm::sugarscape {

/// How the engine wraps the plain agent loop.
enum class Wiring {
  kStandard,  // agents scheduled directly
  kExplicit,  // groups built with form_group / reassess_group
  kNetwork,   // groups built from links with net_group / reassess_net_group
};

enum class Phase {
  kBaseline,        // no trade groups
  kTradeGroups,     // groups at a trade threshold, no policy
  kPolicy,          // groups get a random min/max/geo-mean perception policy
  kCommonResource,  // groups pool their members' wealth
  kMultiLevel,      // pooled groups that join the network and nest
};

struct ModelConfig {
  Wiring wiring = Wiring::kStandard;
  Phase phase = Phase::kBaseline;
  int trade_threshold = 10;
  int width = 50;
  int height = 50;
  int n_agents = 200;
  std::uint64_t seed = 0;
  std::optional<int> fixed_vision;
  /// Inside groups: everyone moves and harvests first, then everyone eats
  /// and trades. Default is one full cycle per member.
  bool staged_group_actions = false;
  double ring_width = 0.0;  // 0 = landscape default
};

struct TradeRecord {
  std::uint64_t step = 0;
  EntityId buyer_of_sugar;
  EntityId seller;
  double price = 0.0;  // spice per sugar
  double qty_sugar = 0.0;
  double qty_spice = 0.0;
};

class SugarscapeModel;

class Trader final : public Agent {
 public:
  static constexpr const char* kTypeTag = "trader";

  Trader(EntityId id, SugarscapeModel& model, Position pos, int vision, Metabolism metabolism, Wealth wealth);

  Position position() const noexcept { return pos_; }
  int vision() const noexcept { return vision_; }
  const Metabolism& metabolism() const noexcept { return metabolism_; }
  /// The agent's own holdings. Inside a pooled group this is its share of the
  /// ledger and may be negative; the pool total is what keeps it alive.
  const Wealth& wealth() const noexcept { return wealth_; }

  void step(StepContext& ctx) override;

 private:
  friend class SugarscapeModel;

  SugarscapeModel* model_;
  Position pos_;
  int vision_;
  Metabolism metabolism_;
  Wealth wealth_;
  std::uint64_t harvested_at_ = UINT64_MAX;
};

/// Group behaviour for the trade phases.
class SugarPolicy final : public PolicyHandle {
 public:
  SugarPolicy(PolicyKind kind, SugarscapeModel& model) : kind_(kind), model_(&model) {}
  PolicyKind kind() const noexcept { return kind_; }
  void pre_step(Group& group, StepContext& ctx) override;

 private:
  PolicyKind kind_;
  SugarscapeModel* model_;
};

class SugarscapeModel {
 public:
  explicit SugarscapeModel(const ModelConfig& config);
  /// Uses the given landscape and places config.n_agents random traders.
  SugarscapeModel(const ModelConfig& config, Landscape landscape);

  SugarscapeModel(const SugarscapeModel&) = delete;
  SugarscapeModel& operator=(const SugarscapeModel&) = delete;

  const ModelConfig& config() const noexcept { return config_; }
  Scheduler& scheduler() noexcept { return scheduler_; }
  const Scheduler& scheduler() const noexcept { return scheduler_; }
  Landscape& landscape() noexcept { return landscape_; }
  const Landscape& landscape() const noexcept { return landscape_; }

  /// Group type of the trade groups, e.g. "trades_10".
  const std::string& trade_group_type() const noexcept { return trade_group_type_; }

  std::shared_ptr<Trader> add_trader(Position pos, int vision, Metabolism metabolism, Wealth wealth);
  Trader* trader(const EntityId& id) const;
  std::vector<Trader*> traders() const;
  std::size_t live_agents() const noexcept { return traders_.size(); }

  StepMetrics step();
  RunMetrics run(std::size_t steps);

  // Agent rules, public so they can be exercised one at a time.
  void move(Trader& t);
  /// Harvests the current cell and pays metabolism. Returns false if the
  /// trader died.
  bool collect_and_metabolize(Trader& t);
  std::vector<TradeRecord> trade(Trader& a, Trader& b);
  void kill(Trader& t);

  /// What the trader believes it holds when choosing a cell.
  Wealth perceived_wealth(const Trader& t) const;
  /// What the trader survives on: the pool if pooled, else its own.
  Wealth effective_wealth(const Trader& t) const;
  /// The trader's own group, when that group pools its members' wealth.
  std::optional<EntityId> pool_of(const EntityId& id) const;
  /// Traders in the subtree under `id`.
  std::vector<Trader*> leaf_traders(const EntityId& id) const;

  const std::vector<TradeRecord>& step_trades() const noexcept { return step_trades_; }

 private:
  friend class Trader;
  friend class SugarPolicy;

  void populate();
  void activate(Trader& t);
  void harvest(Trader& t);
  bool metabolize(Trader& t);
  void trade_round(Trader& t);
  std::vector<EntityId> ancestors(const EntityId& id) const;
  void record_trades(const EntityId& a, const EntityId& b, double count);

  void before_step();
  void after_step();
  void sweep_dead();
  void assign_policies(const std::vector<EntityId>& groups);

  ModelConfig config_;
  Scheduler scheduler_;
  Landscape landscape_;
  std::string trade_group_type_;
  std::map<EntityId, std::shared_ptr<Trader>> traders_;
  std::map<std::pair<EntityId, EntityId>, double> trade_counts_;
  std::vector<TradeRecord> step_trades_;
  int next_trader_ = 0;
};

const char* to_string(Wiring w);
const char* to_string(Phase p);

}  // namespace mlabm::sugarscape
