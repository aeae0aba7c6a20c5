#include "mlabm/scheduler.hpp"

#include <functional>
#include <sstream>
#include <stdexcept>

namespace mlabm {

Scheduler::Scheduler(SchedulerOptions options) : options_(options), rng_(options.seed) {
  if (options_.min_for_group < 2) {
    throw std::invalid_argument("min_for_group must be at least 2");
  }
}

void Scheduler::add(const AgentPtr& agent, bool schedule, bool net) {
  if (!agent) throw std::invalid_argument("null agent");
  const EntityId& id = agent->unique_id();
  if (knows(id)) throw std::invalid_argument("duplicate id: " + id.str());
  agents_.insert(id, agent);
  by_type_[agent->type_tag()].insert(id, agent);
  if (schedule) {
    schedulable_.insert(id);
    schedule_.insert(id, agent);
  }
  if (net) net_.add_node(id);
}

void Scheduler::remove(const EntityId& id) {
  if (groups_.contains(id)) {
    dissolve(id, true);
    return;
  }
  const AgentPtr* found = agents_.find(id);
  if (!found) throw std::out_of_range("unknown agent: " + id.str());
  const std::string tag = (*found)->type_tag();

  const auto holders = parents(id);
  for (const auto& g : holders) unlink(*group(g), id);

  agents_.forget(id);
  by_type_[tag].forget(id);
  schedule_.forget(id);
  net_.remove_node(id);
  reverse_groups_.erase(id);
  schedulable_.erase(id);

  for (const auto& g : holders) enforce_minimum(g, true);
}

void Scheduler::step(const StepOptions& options) {
  if (options.by_type) {
    for (const auto& tag : *options.by_type) {
      if (!by_type_.count(tag)) throw std::invalid_argument("unknown agent type in by_type: " + tag);
    }
  }

  std::vector<std::pair<EntityId, std::string>> entries;
  entries.reserve(schedule_.size());
  schedule_.for_each([&](const EntityId& id, const AgentPtr& a) { entries.emplace_back(id, a->type_tag()); });

  StepContext ctx{*this, options.const_update};
  for (const auto& id : activation_order(entries, options, rng_)) {
    const AgentPtr* a = schedule_.find(id);
    if (!a) continue;
    AgentPtr hold = *a;
    hold->step(ctx);
  }

  if (options.const_update) {
    if (auto it = by_type_.find(*options.const_update); it != by_type_.end()) {
      for (const auto& id : it->second.keys()) {
        AgentPtr hold = entity(id);
        if (hold) hold->step(ctx);
      }
    }
  }
  ++steps_;
}

EntityId Scheduler::next_group_id(std::string_view prefix) {
  std::string id(prefix);
  id += '_';
  id += std::to_string(id_counter_++);
  return EntityId(std::move(id));
}

AgentPtr Scheduler::entity(const EntityId& id) const {
  if (const AgentPtr* a = agents_.find(id)) return *a;
  if (const GroupPtr* g = groups_.find(id)) return *g;
  return nullptr;
}

GroupPtr Scheduler::group(const EntityId& id) const {
  const GroupPtr* g = groups_.find(id);
  return g ? *g : nullptr;
}

std::optional<EntityId> Scheduler::group_of(const EntityId& member, const std::string& group_type) const {
  auto it = reverse_groups_.find(member);
  if (it == reverse_groups_.end()) return std::nullopt;
  auto jt = it->second.find(group_type);
  if (jt == it->second.end() || jt->second.empty()) return std::nullopt;
  return *jt->second.begin();
}

std::vector<EntityId> Scheduler::parents(const EntityId& id) const {
  std::vector<EntityId> out;
  auto it = reverse_groups_.find(id);
  if (it == reverse_groups_.end()) return out;
  for (const auto& [type, ids] : it->second) out.insert(out.end(), ids.begin(), ids.end());
  return out;
}

bool Scheduler::is_ancestor(const EntityId& ancestor, const EntityId& id) const {
  for (const auto& p : parents(id)) {
    if (p == ancestor || is_ancestor(ancestor, p)) return true;
  }
  return false;
}

bool Scheduler::is_held(const EntityId& id) const {
  for (const auto& p : parents(id)) {
    const GroupPtr* g = groups_.find(p);
    if (g && !(*g)->double_scheduled()) return true;
  }
  return false;
}

GroupPtr Scheduler::create_group(const EntityId& id, std::string group_type, bool double_scheduled,
                                 PolicyPtr policy) {
  if (knows(id)) throw std::invalid_argument("group id already in use: " + id.str());
  auto g = std::make_shared<Group>(id, std::move(group_type), double_scheduled, std::move(policy));
  groups_.insert(id, g);
  by_type_[Group::kTypeTag].insert(id, g);
  schedulable_.insert(id);
  schedule_.insert(id, g);
  if (options_.group_to_net) net_.add_node(id);
  return g;
}

void Scheduler::attach(const EntityId& group_id, const EntityId& member) {
  GroupPtr g = group(group_id);
  if (!g) throw std::out_of_range("unknown group: " + group_id.str());
  AgentPtr ent = entity(member);
  if (!ent) throw std::out_of_range("unknown agent: " + member.str());
  if (g->contains(member)) return;
  if (member == group_id || is_ancestor(member, group_id)) {
    throw std::invalid_argument("membership cycle: " + member.str() + " contains " + group_id.str());
  }
  g->add_member(ent);
  reverse_groups_[member][g->group_type()].insert(group_id);
  if (!g->double_scheduled()) schedule_.erase(member);
}

void Scheduler::detach(const EntityId& group_id, const EntityId& member, bool reintroduce_member) {
  GroupPtr g = group(group_id);
  if (!g) throw std::out_of_range("unknown group: " + group_id.str());
  if (!g->contains(member)) {
    warn("detach: " + member.str() + " is not a member of " + group_id.str());
    return;
  }
  unlink(*g, member);
  release(member, reintroduce_member);
}

void Scheduler::unlink(Group& g, const EntityId& member) {
  g.remove_member(member);
  if (auto it = reverse_groups_.find(member); it != reverse_groups_.end()) {
    auto jt = it->second.find(g.group_type());
    if (jt != it->second.end()) {
      jt->second.erase(g.unique_id());
      if (jt->second.empty()) it->second.erase(jt);
    }
    if (it->second.empty()) reverse_groups_.erase(it);
  }
}

void Scheduler::dissolve(const EntityId& group_id, bool reintroduce_members) {
  GroupPtr g = group(group_id);
  if (!g) throw std::out_of_range("unknown group: " + group_id.str());
  g->set_active(false);

  const auto holders = parents(group_id);
  for (const auto& p : holders) unlink(*group(p), group_id);

  const auto members = g->sub_agents().keys();
  for (const auto& m : members) unlink(*g, m);

  groups_.forget(group_id);
  by_type_[Group::kTypeTag].forget(group_id);
  schedule_.forget(group_id);
  net_.remove_node(group_id);
  reverse_groups_.erase(group_id);
  schedulable_.erase(group_id);

  for (const auto& m : members) release(m, reintroduce_members);
  for (const auto& p : holders) enforce_minimum(p, true);
}

bool Scheduler::enforce_minimum(const EntityId& group_id, bool reintroduce_members) {
  GroupPtr g = group(group_id);
  if (!g || static_cast<int>(g->size()) >= options_.min_for_group) return false;
  dissolve(group_id, reintroduce_members);
  return true;
}

void Scheduler::release(const EntityId& id, bool reintroduce) {
  if (is_held(id)) return;
  if (!reintroduce) {
    // Not sent back: it stays off the schedule for good.
    if (!schedule_.contains(id)) schedulable_.erase(id);
    return;
  }
  if (!schedulable_.count(id)) return;
  if (AgentPtr ent = entity(id)) schedule_.insert(id, ent);
}

std::vector<std::string> Scheduler::audit() const {
  std::vector<std::string> issues;
  auto fail = [&](const std::string& what) { issues.push_back(what); };

  schedule_.for_each([&](const EntityId& id, const AgentPtr&) {
    if (!knows(id)) fail("schedule holds unknown " + id.str());
    if (is_held(id)) fail("schedule holds grouped " + id.str());
    if (!schedulable_.count(id)) fail("schedule holds unschedulable " + id.str());
  });
  // Everything is scheduled, held by a group, or was never (or is no longer)
  // meant for the schedule.
  for (const auto& id : schedulable_) {
    if (!knows(id)) fail("schedulable set holds unknown " + id.str());
    else if (!is_held(id) && !schedule_.contains(id)) fail("stranded " + id.str());
  }
  for (const auto& [tag, ids] : by_type_) {
    ids.for_each([&](const EntityId& id, const AgentPtr& a) {
      if (!knows(id)) fail("agents_by_type holds unknown " + id.str());
      if (a->type_tag() != tag) fail("agents_by_type misfiles " + id.str());
    });
  }
  for (const auto& id : net_.nodes()) {
    if (!knows(id)) fail("net holds unknown " + id.str());
  }

  std::set<std::pair<EntityId, std::string>> seen_membership;
  groups_.for_each([&](const EntityId& gid, const GroupPtr& g) {
    if (!g->active()) fail("registered group inactive " + gid.str());
    if (static_cast<int>(g->size()) < options_.min_for_group) fail("undersized group " + gid.str());
    std::size_t by_type_count = 0;
    for (const auto& [tag, members] : g->agents_by_type()) by_type_count += members.size();
    if (by_type_count != g->size()) fail("group by-type index disagrees " + gid.str());
    for (const auto& n : g->net().nodes()) {
      if (!g->contains(n)) fail("group net holds non-member " + n.str());
    }
    g->sub_agents().for_each([&](const EntityId& m, const AgentPtr&) {
      if (!knows(m)) fail("group " + gid.str() + " holds unknown " + m.str());
      auto it = reverse_groups_.find(m);
      bool indexed = false;
      if (it != reverse_groups_.end()) {
        auto jt = it->second.find(g->group_type());
        indexed = jt != it->second.end() && jt->second.count(gid);
      }
      if (!indexed) fail("reverse_groups misses " + m.str() + " in " + gid.str());
      if (!seen_membership.emplace(m, g->group_type()).second) {
        fail(m.str() + " in two groups of type " + g->group_type());
      }
    });
  });
  for (const auto& [m, by_type] : reverse_groups_) {
    for (const auto& [type, gids] : by_type) {
      for (const auto& gid : gids) {
        GroupPtr g = group(gid);
        if (!g) {
          fail("reverse_groups names dead group " + gid.str());
        } else if (g->group_type() != type || !g->contains(m)) {
          fail("reverse_groups entry stale " + m.str() + " -> " + gid.str());
        }
      }
    }
  }

  // Membership must be acyclic.
  std::unordered_map<EntityId, int> colour;
  std::function<bool(const EntityId&)> cyclic = [&](const EntityId& id) {
    int& c = colour[id];
    if (c == 1) return true;
    if (c == 2) return false;
    c = 1;
    for (const auto& p : parents(id)) {
      if (cyclic(p)) return true;
    }
    colour[id] = 2;
    return false;
  };
  groups_.for_each([&](const EntityId& gid, const GroupPtr&) {
    if (cyclic(gid)) fail("membership cycle through " + gid.str());
  });
  return issues;
}

}  // namespace mlabm
