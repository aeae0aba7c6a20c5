#pragma once

#include <map>
#include <ostream>
#include <set>
#include <string>

#include "mlabm/agent.hpp"
#include "mlabm/graph.hpp"
#include "mlabm/ranked_map.hpp"

namespace mlabm {

/// A schedulable container of agents and/or other groups. Membership is
/// mutated only by the owning Scheduler so its managers stay in sync.
class Group final : public Agent {
 public:
  static constexpr const char* kTypeTag = "group";

  Group(EntityId id, std::string group_type, bool double_scheduled, PolicyPtr policy);

  const std::string& group_type() const noexcept { return group_type_; }
  bool double_scheduled() const noexcept { return double_scheduled_; }

  const RankedMap<AgentPtr>& sub_agents() const noexcept { return sub_agents_; }
  const std::map<std::string, std::map<EntityId, AgentPtr>>& agents_by_type() const noexcept {
    return by_type_;
  }
  bool contains(const EntityId& id) const { return sub_agents_.contains(id); }
  std::size_t size() const noexcept { return sub_agents_.size(); }

  Graph& net() noexcept { return net_; }
  const Graph& net() const noexcept { return net_; }

  const PolicyPtr& policy() const noexcept { return policy_; }
  void set_policy(PolicyPtr policy) { policy_ = std::move(policy); }

  bool active() const noexcept { return active_; }
  void set_active(bool active) noexcept { active_ = active; }

  StepOptions& member_order() noexcept { return member_order_; }

  /// Policy pre-step, then every member in this group's activation order.
  void step(StepContext& ctx) override;

  friend std::ostream& operator<<(std::ostream& os, const Group&) { return os << kTypeTag; }

 private:
  friend class Scheduler;

  void add_member(const AgentPtr& member);
  void remove_member(const EntityId& id);

  std::string group_type_;
  bool double_scheduled_;
  PolicyPtr policy_;
  bool active_ = true;
  RankedMap<AgentPtr> sub_agents_;
  std::map<std::string, std::map<EntityId, AgentPtr>> by_type_;
  Graph net_;
  StepOptions member_order_;
};

using GroupPtr = std::shared_ptr<Group>;

}  // namespace mlabm
