#include "mlabm/group.hpp"

#include <algorithm>

#include "mlabm/scheduler.hpp"

namespace mlabm {

Agent::Agent(EntityId id, std::string type_tag) : id_(std::move(id)), type_tag_(std::move(type_tag)) {
  if (id_.empty()) throw std::invalid_argument("agent id must not be empty");
  if (type_tag_.empty()) throw std::invalid_argument("agent type tag must not be empty");
}

std::vector<EntityId> activation_order(const std::vector<std::pair<EntityId, std::string>>& entries,
                                       const StepOptions& options, std::mt19937_64& rng) {
  std::vector<std::pair<EntityId, std::string>> live;
  live.reserve(entries.size());
  for (const auto& e : entries) {
    if (!options.const_update || e.second != *options.const_update) live.push_back(e);
  }

  std::vector<EntityId> order;
  order.reserve(live.size());
  auto emit_stage = [&](std::vector<EntityId> stage) {
    if (options.shuffled) std::shuffle(stage.begin(), stage.end(), rng);
    order.insert(order.end(), stage.begin(), stage.end());
  };

  if (!options.by_type) {
    std::vector<EntityId> all;
    all.reserve(live.size());
    for (const auto& e : live) all.push_back(e.first);
    emit_stage(std::move(all));
    return order;
  }

  const auto& stages = *options.by_type;
  for (const auto& tag : stages) {
    std::vector<EntityId> stage;
    for (const auto& e : live) {
      if (e.second == tag) stage.push_back(e.first);
    }
    emit_stage(std::move(stage));
  }
  std::vector<EntityId> rest;
  for (const auto& e : live) {
    if (std::find(stages.begin(), stages.end(), e.second) == stages.end()) rest.push_back(e.first);
  }
  emit_stage(std::move(rest));
  return order;
}

Group::Group(EntityId id, std::string group_type, bool double_scheduled, PolicyPtr policy)
    : Agent(std::move(id), kTypeTag),
      group_type_(std::move(group_type)),
      double_scheduled_(double_scheduled),
      policy_(std::move(policy)) {}

void Group::add_member(const AgentPtr& member) {
  sub_agents_.insert(member->unique_id(), member);
  by_type_[member->type_tag()][member->unique_id()] = member;
  net_.add_node(member->unique_id());
}

void Group::remove_member(const EntityId& id) {
  const AgentPtr* member = sub_agents_.find(id);
  if (!member) return;
  auto it = by_type_.find((*member)->type_tag());
  if (it != by_type_.end()) {
    it->second.erase(id);
    if (it->second.empty()) by_type_.erase(it);
  }
  sub_agents_.forget(id);
  net_.remove_node(id);
}

void Group::step(StepContext& ctx) {
  if (!active_) return;
  if (policy_) policy_->pre_step(*this, ctx);
  if (!active_) return;

  std::vector<std::pair<EntityId, std::string>> entries;
  entries.reserve(sub_agents_.size());
  sub_agents_.for_each([&](const EntityId& id, const AgentPtr& a) { entries.emplace_back(id, a->type_tag()); });

  StepOptions opts = member_order_;
  opts.const_update = ctx.const_update;
  for (const auto& id : activation_order(entries, opts, ctx.scheduler.rng())) {
    if (!active_) break;
    const AgentPtr* member = sub_agents_.find(id);
    if (!member) continue;
    AgentPtr hold = *member;
    hold->step(ctx);
  }
}

}  // namespace mlabm
