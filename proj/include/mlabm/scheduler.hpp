#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "mlabm/agent.hpp"
#include "mlabm/graph.hpp"
#include "mlabm/group.hpp"
#include "mlabm/ranked_map.hpp"

namespace mlabm {

struct SchedulerOptions {
  int min_for_group = 2;
  bool group_to_net = false;
  std::uint64_t seed = 0;
};

/// member id -> group type -> ids of the groups holding it.
using ReverseGroups = std::unordered_map<EntityId, std::map<std::string, std::set<EntityId>>>;

/// Multi-level schedule. Owns six coordinated managers:
///   agents          every agent ever added and not yet removed
///   net             the interaction network
///   agents_by_type  type tag -> agents (groups live under "group")
///   schedule        what `step` activates, in insertion order
///   groups          every live group
///   reverse_groups  membership index, see ReverseGroups
///
/// Every structural change goes through this class so the managers never
/// disagree; `audit()` checks that they don't.
class Scheduler {
 public:
  explicit Scheduler(SchedulerOptions options = {});

  int min_for_group() const noexcept { return options_.min_for_group; }
  bool group_to_net() const noexcept { return options_.group_to_net; }
  std::uint64_t id_counter() const noexcept { return id_counter_; }
  std::mt19937_64& rng() noexcept { return rng_; }
  std::uint64_t steps_taken() const noexcept { return steps_; }

  void add(const AgentPtr& agent, bool schedule = true, bool net = true);
  /// Removes an agent (or dissolves a group) from every manager. Groups that
  /// fall below min_for_group as a result are dissolved.
  void remove(const EntityId& id);
  void step(const StepOptions& options = {});

  /// prefix + "_" + counter; the counter never repeats.
  EntityId next_group_id(std::string_view prefix = "group");

  const RankedMap<AgentPtr>& agents() const noexcept { return agents_; }
  Graph& net() noexcept { return net_; }
  const Graph& net() const noexcept { return net_; }
  const std::map<std::string, RankedMap<AgentPtr>>& agents_by_type() const noexcept { return by_type_; }
  const RankedMap<AgentPtr>& schedule() const noexcept { return schedule_; }
  const RankedMap<GroupPtr>& groups() const noexcept { return groups_; }
  const ReverseGroups& reverse_groups() const noexcept { return reverse_groups_; }

  bool knows(const EntityId& id) const { return agents_.contains(id) || groups_.contains(id); }
  AgentPtr entity(const EntityId& id) const;
  GroupPtr group(const EntityId& id) const;
  std::optional<EntityId> group_of(const EntityId& member, const std::string& group_type) const;
  /// Every group directly holding `id`, across group types.
  std::vector<EntityId> parents(const EntityId& id) const;
  /// True iff `ancestor` transitively contains `id`.
  bool is_ancestor(const EntityId& ancestor, const EntityId& id) const;
  /// Member of at least one group that took it off the schedule.
  bool is_held(const EntityId& id) const;

  // Membership primitives for the formation/dissolution routines.
  GroupPtr create_group(const EntityId& id, std::string group_type, bool double_scheduled,
                        PolicyPtr policy);
  void attach(const EntityId& group_id, const EntityId& member);
  void detach(const EntityId& group_id, const EntityId& member, bool reintroduce);
  void dissolve(const EntityId& group_id, bool reintroduce);
  /// Dissolves the group if it holds fewer than min_for_group members.
  bool enforce_minimum(const EntityId& group_id, bool reintroduce);

  void warn(std::string message) { warnings_.push_back(std::move(message)); }
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

  /// Cross-manager consistency check. Empty means consistent.
  std::vector<std::string> audit() const;

 private:
  // Membership bookkeeping only; no schedule side effects.
  void unlink(Group& g, const EntityId& member);
  // Puts a freed entity back on the schedule, or parks it for good.
  void release(const EntityId& id, bool reintroduce);

  SchedulerOptions options_;
  std::mt19937_64 rng_;
  std::uint64_t id_counter_ = 0;
  std::uint64_t steps_ = 0;

  RankedMap<AgentPtr> agents_;
  Graph net_;
  std::map<std::string, RankedMap<AgentPtr>> by_type_;
  RankedMap<AgentPtr> schedule_;
  RankedMap<GroupPtr> groups_;
  ReverseGroups reverse_groups_;

  // Entities whose home is the schedule: they return to it when released.
  std::unordered_set<EntityId> schedulable_;
  std::vector<std::string> warnings_;
};

}  // namespace mlabm
