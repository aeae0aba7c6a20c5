#pragma once

// Randomized checks of the scheduler and group-dynamics invariants, shared by
// the unit tests (small counts) and the acceptance run (full counts).

#include <algorithm>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mlabm/group_dynamics.hpp"
#include "mlabm/metrics.hpp"
#include "mlabm/scheduler.hpp"

namespace mlabm::properties {

struct Outcome {
  std::size_t sequences = 0;
  std::size_t failures = 0;
  std::string first_failure;

  void fail(const std::string& what) {
    if (failures++ == 0) first_failure = what;
  }
  bool ok() const { return failures == 0; }
};

namespace detail {

using Log = std::vector<std::string>;

// Steps by logging itself and, now and then, removing something or adding a
// newcomer, so structure changes mid-step.
class ChaosAgent final : public Agent {
 public:
  ChaosAgent(std::string id, std::string tag, std::shared_ptr<Log> log, std::shared_ptr<int> counter)
      : Agent(EntityId(std::move(id)), std::move(tag)), log_(std::move(log)), counter_(std::move(counter)) {}

  void step(StepContext& ctx) override {
    log_->push_back(unique_id().str());
    auto& s = ctx.scheduler;
    std::uniform_int_distribution<int> roll(0, 19);
    const int r = roll(s.rng());
    if (r == 0) {
      const auto ids = s.agents().keys();
      const EntityId& victim = ids[std::uniform_int_distribution<std::size_t>(0, ids.size() - 1)(s.rng())];
      if (victim != unique_id()) s.remove(victim);
    } else if (r == 1) {
      s.add(std::make_shared<ChaosAgent>("n" + std::to_string((*counter_)++), "trader", log_, counter_));
    }
  }

 private:
  std::shared_ptr<Log> log_;
  std::shared_ptr<int> counter_;
};

inline std::string snapshot(const Scheduler& s) {
  std::ostringstream os;
  os << "schedule:";
  for (const auto& id : s.schedule().keys()) os << ' ' << id;
  os << "\ngroups:";
  s.groups().for_each([&](const EntityId& gid, const GroupPtr& g) {
    os << ' ' << gid << '[' << g->group_type() << "]{";
    for (const auto& m : g->sub_agents().keys()) os << m << ',';
    os << '}';
  });
  os << "\nagents:";
  for (const auto& id : s.agents().keys()) os << ' ' << id;
  os << '\n';
  s.net().write_csv(os);
  return os.str();
}

template <typename T>
const T& pick(const std::vector<T>& v, std::mt19937_64& rng) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

inline std::vector<EntityId> known_ids(const Scheduler& s) {
  auto ids = s.agents().keys();
  const auto gs = s.groups().keys();
  ids.insert(ids.end(), gs.begin(), gs.end());
  return ids;
}

// One random operation sequence. Returns an audit failure message or "".
inline std::string run_sequence(std::uint64_t seed, std::size_t ops, std::string* final_state, Log* log_out) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coin(0, 1);
  SchedulerOptions opts;
  opts.min_for_group = 2 + static_cast<int>(rng() % 2);
  opts.group_to_net = coin(rng) == 1;
  opts.seed = seed;
  Scheduler s(opts);
  auto log = std::make_shared<Log>();
  auto counter = std::make_shared<int>(0);
  const std::vector<std::string> types{"default", "team"};

  for (int i = 0; i < 8; ++i) {
    const bool cell = i % 4 == 3;
    s.add(std::make_shared<ChaosAgent>("a" + std::to_string(i), cell ? "cell" : "trader", log, counter), !cell,
          !cell);
  }

  for (std::size_t op = 0; op < ops; ++op) {
    const auto ids = known_ids(s);
    const int kind = static_cast<int>(rng() % 9);
    std::string label;
    try {
      switch (kind) {
        case 0: {
          label = "add";
          s.add(std::make_shared<ChaosAgent>("n" + std::to_string((*counter)++), "trader", log, counter),
                coin(rng) == 1, coin(rng) == 1);
          break;
        }
        case 1: {
          label = "remove";
          if (!ids.empty()) s.remove(pick(ids, rng));
          break;
        }
        case 2: {
          label = "form_group";
          if (ids.size() < 2) break;
          FormOptions fo;
          fo.group_type = pick(types, rng);
          fo.double_schedule = rng() % 4 == 0;
          const bool explicit_ids = rng() % 3 == 0;
          if (explicit_ids) fo.determine_id = "explicit";
          std::vector<FormationDirective> ds(1 + rng() % 2);
          for (auto& d : ds) {
            const std::size_t n = 1 + rng() % 3;
            for (std::size_t k = 0; k < n; ++k) d.members.emplace_back(pick(ids, rng), pick(ids, rng));
            if (explicit_ids) d.group_id = EntityId("x" + std::to_string(rng() % 4));
          }
          try {
            form_group(s, [&](const Scheduler&) { return ds; }, fo);
          } catch (const FormationError&) {
          }
          break;
        }
        case 3: {
          label = "reassess_group";
          const bool reintroduce = rng() % 4 != 0;
          reassess_group(
              s,
              [&](const Group& g, const Scheduler&) {
                std::vector<EntityId> out;
                for (const auto& m : g.sub_agents().keys()) {
                  if (coin(rng)) out.push_back(m);
                }
                if (coin(rng)) out.push_back(EntityId("not-a-member"));
                return out;
              },
              reintroduce, pick(types, rng));
          break;
        }
        case 4: {
          label = "link";
          const auto nodes = s.net().nodes();
          if (nodes.size() < 2) break;
          const EntityId a = pick(nodes, rng);
          const EntityId b = pick(nodes, rng);
          if (a != b) s.net().increment_edge_value(a, b, "trades", static_cast<double>(rng() % 3));
          break;
        }
        case 5: {
          label = "net_group";
          if (coin(rng)) net_group(s, {std::string("trades"), 2.0}, rng() % 4 == 0);
          else net_group(s);
          break;
        }
        case 6: {
          label = "reassess_net_group";
          if (coin(rng)) reassess_net_group(s, {std::string("trades"), 2.0});
          else reassess_net_group(s);
          break;
        }
        case 7: {
          label = "step";
          StepOptions so;
          so.shuffled = coin(rng) == 1;
          if (coin(rng)) so.const_update = "cell";
          if (coin(rng)) so.by_type = std::vector<std::string>{"trader"};
          s.step(so);
          break;
        }
        default: {
          label = "links";
          if (ids.size() < 3) break;
          std::vector<EntityId> some{pick(ids, rng), pick(ids, rng), pick(ids, rng)};
          std::sort(some.begin(), some.end());
          some.erase(std::unique(some.begin(), some.end()), some.end());
          if (some.size() < 2) break;
          if (coin(rng)) add_links(s, some);
          else remove_links(s, some);
        }
      }
    } catch (const std::exception& e) {
      return "seed " + std::to_string(seed) + " op " + std::to_string(op) + " (" + label + ") threw: " + e.what();
    }
    const auto issues = s.audit();
    if (!issues.empty()) {
      return "seed " + std::to_string(seed) + " op " + std::to_string(op) + " (" + label + "): " + issues.front();
    }
    try {
      const std::size_t depth = hierarchy_depth(s);
      if (s.groups().empty() != (depth == 1)) return "seed " + std::to_string(seed) + ": depth disagrees";
    } catch (const std::exception& e) {
      return "seed " + std::to_string(seed) + ": " + e.what();
    }
  }
  if (final_state) *final_state = snapshot(s);
  if (log_out) *log_out = *log;
  return "";
}

// Reference first-group precedence: a plain list of member sets scanned in
// creation order.
inline std::set<std::set<std::string>> reference_partition(
    const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::vector<std::set<std::string>> groups;
  auto find = [&](const std::string& x) -> std::set<std::string>* {
    for (auto& g : groups) {
      if (g.count(x)) return &g;
    }
    return nullptr;
  };
  for (const auto& [a, b] : pairs) {
    if (a == b) continue;
    auto* ga = find(a);
    auto* gb = find(b);
    if (!ga && !gb) groups.push_back({a, b});
    else if (ga && !gb) ga->insert(b);
    else if (gb && !ga) gb->insert(a);
  }
  return {groups.begin(), groups.end()};
}

inline std::set<std::set<std::string>> partition(const Scheduler& s, const std::string& type) {
  std::set<std::set<std::string>> out;
  s.groups().for_each([&](const EntityId&, const GroupPtr& g) {
    if (g->group_type() != type) return;
    std::set<std::string> members;
    for (const auto& m : g->sub_agents().keys()) members.insert(m.str());
    out.insert(members);
  });
  return out;
}

class Plain final : public Agent {
 public:
  explicit Plain(std::string id) : Agent(EntityId(std::move(id)), "trader") {}
  void step(StepContext&) override {}
};

}  // namespace detail

// Random add/remove/form/dissolve/step interleavings, audited after every
// operation. Every tenth sequence is replayed to check determinism.
inline Outcome audit_sequences(std::size_t sequences, std::uint64_t seed, std::size_t ops = 40) {
  Outcome out;
  for (std::size_t i = 0; i < sequences; ++i) {
    ++out.sequences;
    std::string state;
    detail::Log log;
    const std::string err = detail::run_sequence(seed + i, ops, &state, &log);
    if (!err.empty()) {
      out.fail(err);
      continue;
    }
    if (i % 10 == 0) {
      std::string again_state;
      detail::Log again_log;
      detail::run_sequence(seed + i, ops, &again_state, &again_log);
      if (again_state != state || again_log != log) out.fail("replay differs for seed " + std::to_string(seed + i));
    }
  }
  return out;
}

// form_group and net_group against the brute-force reference partition.
inline Outcome precedence_equivalence(std::size_t sequences, std::uint64_t seed) {
  Outcome out;
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < sequences; ++i) {
    ++out.sequences;
    const std::size_t n = 3 + rng() % 8;
    std::vector<std::string> names;
    for (std::size_t k = 0; k < n; ++k) names.push_back("p" + std::to_string(k));
    std::vector<std::pair<std::string, std::string>> pairs(1 + rng() % 12);
    for (auto& p : pairs) p = {detail::pick(names, rng), detail::pick(names, rng)};

    // form_group, pairs in yielded order, spread over several directives.
    {
      Scheduler s;
      for (const auto& nm : names) s.add(std::make_shared<detail::Plain>(nm));
      std::vector<FormationDirective> ds;
      for (const auto& [a, b] : pairs) {
        if (a == b) continue;
        if (ds.empty() || rng() % 2) ds.emplace_back();
        ds.back().members.emplace_back(EntityId(a), EntityId(b));
      }
      form_group(s, [&](const Scheduler&) { return ds; });
      if (detail::partition(s, "default") != detail::reference_partition(pairs)) {
        out.fail("form_group partition differs, sequence " + std::to_string(i));
      }
      if (!s.audit().empty()) out.fail("form_group audit: " + s.audit().front());
    }
    // net_group, edges in sorted order; idempotent on a second call.
    {
      Scheduler s;
      for (const auto& nm : names) s.add(std::make_shared<detail::Plain>(nm));
      for (const auto& [a, b] : pairs) {
        if (a != b) s.net().upsert_edge(EntityId(a), EntityId(b));
      }
      std::vector<std::pair<std::string, std::string>> sorted;
      for (const auto& e : s.net().edges_matching()) sorted.emplace_back(e.a.str(), e.b.str());
      net_group(s);
      if (detail::partition(s, "default") != detail::reference_partition(sorted)) {
        out.fail("net_group partition differs, sequence " + std::to_string(i));
      }
      const std::string before = detail::snapshot(s);
      if (!net_group(s).empty() || detail::snapshot(s) != before) {
        out.fail("net_group not idempotent, sequence " + std::to_string(i));
      }
    }
  }
  return out;
}

// Forming groups and then dissolving them all (members reintroduced) puts the
// schedule back exactly as it was, order included.
inline Outcome round_trip(std::size_t sequences, std::uint64_t seed) {
  Outcome out;
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < sequences; ++i) {
    ++out.sequences;
    Scheduler s({2, rng() % 2 == 0, seed + i});
    const std::size_t n = 2 + rng() % 9;
    std::vector<EntityId> ids;
    for (std::size_t k = 0; k < n; ++k) {
      ids.emplace_back("r" + std::to_string(k));
      s.add(std::make_shared<detail::Plain>(ids.back().str()));
    }
    // Some pre-existing churn so ranks are not trivially sorted.
    if (n > 3 && rng() % 2) {
      s.remove(ids.back());
      s.add(std::make_shared<detail::Plain>("late"));
    }
    const auto before = s.schedule().keys();
    const auto known = s.agents().keys();

    std::vector<FormationDirective> ds(1);
    const std::size_t links = 1 + rng() % 10;
    for (std::size_t k = 0; k < links; ++k) {
      const EntityId& a = detail::pick(known, rng);
      const EntityId& b = detail::pick(known, rng);
      if (a != b) ds[0].members.emplace_back(a, b);
    }
    if (ds[0].members.empty()) continue;
    form_group(s, [&](const Scheduler&) { return ds; });
    reassess_group(s, [](const Group& g, const Scheduler&) { return g.sub_agents().keys(); }, true);

    if (s.schedule().keys() != before) out.fail("schedule not restored, sequence " + std::to_string(i));
    if (!s.groups().empty() || !s.reverse_groups().empty()) {
      out.fail("groups left behind, sequence " + std::to_string(i));
    }
    if (!s.audit().empty()) out.fail("round trip audit: " + s.audit().front());
  }
  return out;
}

}  // namespace mlabm::properties
