#include "mlabm/group_dynamics.hpp"

#include <algorithm>
#include <set>

namespace mlabm {

std::string LinkCriterion::group_type() const {
  if (!link_type) return "default";
  if (!link_value) return *link_type;
  return *link_type + "_" + format_value(*link_value);
}

std::string LinkCriterion::id_prefix() const { return link_type ? group_type() : "group"; }

namespace {

class PairFormer {
 public:
  PairFormer(Scheduler& s, std::string group_type, bool double_schedule, PolicyPtr policy)
      : s_(s), type_(std::move(group_type)), double_(double_schedule), policy_(std::move(policy)) {}

  template <typename MakeId>
  void apply(const EntityId& a, const EntityId& b, MakeId&& make_id) {
    if (a == b) return;
    const auto ga = s_.group_of(a, type_);
    const auto gb = s_.group_of(b, type_);
    if (!ga && !gb) {
      const EntityId id = make_id();
      if (!s_.group(id)) {
        s_.create_group(id, type_, double_, policy_);
        touched_.push_back(id);
      }
      join(id, a, b);
      join(id, b, a);
    } else if (ga && !gb) {
      join(*ga, b, a);
    } else if (gb && !ga) {
      join(*gb, a, b);
    } else if (*ga != *gb) {
      s_.net().upsert_edge(a, b);
    }
  }

  // Groups that never reached min_for_group are dissolved; returns the rest.
  std::vector<EntityId> settle() {
    std::vector<EntityId> out;
    for (const auto& gid : touched_) {
      if (s_.group(gid) && !s_.enforce_minimum(gid, true)) out.push_back(gid);
    }
    return out;
  }

 private:
  // Adds `member` to `gid`, recording its formation link to `partner`.
  void join(const EntityId& gid, const EntityId& member, const EntityId& partner) {
    if (member == gid || s_.is_ancestor(member, gid)) return;
    s_.attach(gid, member);
    GroupPtr g = s_.group(gid);
    if (g->contains(partner)) {
      const EdgeAttrs* attrs = s_.net().edge(member, partner);
      g->net().upsert_edge(member, partner, attrs ? *attrs : EdgeAttrs{});
    }
    if (std::find(touched_.begin(), touched_.end(), gid) == touched_.end()) touched_.push_back(gid);
  }

  Scheduler& s_;
  std::string type_;
  bool double_;
  PolicyPtr policy_;
  std::vector<EntityId> touched_;
};

std::string describe(const FormationDirective& d) {
  std::string out = "[";
  for (const auto& [a, b] : d.members) out += "(" + a.str() + "," + b.str() + ")";
  return out + "]";
}

}  // namespace

std::vector<EntityId> form_group(Scheduler& s, const FormationProcess& process, const FormOptions& options) {
  const bool explicit_ids = options.determine_id != "default";
  PairFormer former(s, options.group_type, options.double_schedule, options.policy);
  std::vector<std::string> rejected;

  for (const auto& directive : process(s)) {
    std::string problem;
    if (directive.members.empty()) problem = "empty directive";
    for (const auto& [a, b] : directive.members) {
      if (!problem.empty()) break;
      if (a == b) problem = "pair repeats " + a.str();
      else if (!s.knows(a)) problem = "unknown id " + a.str();
      else if (!s.knows(b)) problem = "unknown id " + b.str();
    }
    if (problem.empty() && explicit_ids) {
      if (!directive.group_id) {
        problem = "directive carries no group id";
      } else if (GroupPtr existing = s.group(*directive.group_id)) {
        if (existing->group_type() != options.group_type) {
          problem = "group id " + directive.group_id->str() + " belongs to type " + existing->group_type();
        }
      } else if (s.knows(*directive.group_id)) {
        problem = "group id " + directive.group_id->str() + " names an agent";
      }
    }
    if (!problem.empty()) {
      rejected.push_back(describe(directive) + ": " + problem);
      continue;
    }
    for (const auto& [a, b] : directive.members) {
      former.apply(a, b, [&] { return explicit_ids ? *directive.group_id : s.next_group_id("group"); });
    }
  }

  if (!rejected.empty()) {
    std::string what = "form_group skipped " + std::to_string(rejected.size()) + " directive(s)";
    for (const auto& r : rejected) what += "; " + r;
    throw FormationError(what, former.settle());
  }
  return former.settle();
}

void reassess_group(Scheduler& s, const ReassessProcess& process, bool reintroduce,
                    const std::string& group_type) {
  for (const auto& gid : s.groups().keys()) {
    GroupPtr g = s.group(gid);
    if (!g || g->group_type() != group_type) continue;
    for (const auto& m : process(*g, s)) {
      if (!g->contains(m)) {
        s.warn("reassess_group: " + m.str() + " is not a member of " + gid.str());
        continue;
      }
      s.detach(gid, m, reintroduce);
    }
    s.enforce_minimum(gid, reintroduce);
  }
}

std::vector<EntityId> net_group(Scheduler& s, const LinkCriterion& criterion, bool double_schedule,
                                PolicyPtr policy) {
  if (criterion.link_value && !criterion.link_type) {
    throw GraphError("a link value requires a link type");
  }
  const std::string prefix = criterion.id_prefix();
  PairFormer former(s, criterion.group_type(), double_schedule, std::move(policy));
  for (const auto& e : s.net().edges_matching(criterion.link_type, criterion.link_value)) {
    if (!s.knows(e.a) || !s.knows(e.b)) continue;
    former.apply(e.a, e.b, [&] { return s.next_group_id(prefix); });
  }
  return former.settle();
}

void reassess_net_group(Scheduler& s, const LinkCriterion& criterion) {
  if (criterion.link_value && !criterion.link_type) {
    throw GraphError("a link value requires a link type");
  }
  const std::string type = criterion.group_type();
  for (const auto& gid : s.groups().keys()) {
    GroupPtr g = s.group(gid);
    if (!g || g->group_type() != type) continue;
    const auto members = g->sub_agents().keys();
    std::vector<EntityId> dropped;
    for (const auto& m : members) {
      const bool keeps = std::any_of(members.begin(), members.end(), [&](const EntityId& n) {
        if (n == m) return false;
        const EdgeAttrs* attrs = s.net().edge(m, n);
        return attrs && link_qualifies(*attrs, criterion.link_type, criterion.link_value);
      });
      if (!keeps) dropped.push_back(m);
    }
    for (const auto& m : dropped) s.detach(gid, m, true);
    s.enforce_minimum(gid, true);
  }
}

namespace {

void check_link_list(const Scheduler& s, std::span<const EntityId> ids) {
  std::set<EntityId> distinct(ids.begin(), ids.end());
  if (distinct.size() < 2) throw std::invalid_argument("linking needs at least two distinct ids");
  for (const auto& id : distinct) {
    if (!s.knows(id)) throw std::out_of_range("unknown id: " + id.str());
  }
}

}  // namespace

void add_links(Scheduler& s, std::span<const EntityId> ids) {
  check_link_list(s, ids);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      if (ids[i] != ids[j]) s.net().upsert_edge(ids[i], ids[j]);
    }
  }
}

void remove_links(Scheduler& s, std::span<const EntityId> ids) {
  check_link_list(s, ids);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (std::size_t j = i + 1; j < ids.size(); ++j) s.net().remove_edge(ids[i], ids[j]);
  }
}

}  // namespace mlabm
