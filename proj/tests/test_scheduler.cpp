#include <algorithm>
#include <set>

#include "doctest.h"
#include "mlabm/group_dynamics.hpp"
#include "mlabm/scheduler.hpp"
#include "test_support.hpp"

using namespace mlabm;
using namespace mlabm::testing;

namespace {

FormationProcess pairs_of(std::vector<std::pair<std::string, std::string>> ps) {
  return [ps](const Scheduler&) {
    FormationDirective d;
    for (const auto& [a, b] : ps) d.members.emplace_back(eid(a), eid(b));
    return std::vector<FormationDirective>{d};
  };
}

}  // namespace

TEST_CASE("construction") {
  Scheduler s;
  CHECK(s.min_for_group() == 2);
  CHECK_FALSE(s.group_to_net());
  CHECK(s.id_counter() == 0);
  CHECK(s.agents().empty());
  CHECK(s.schedule().empty());
  CHECK(s.groups().empty());
  CHECK(s.agents_by_type().empty());
  CHECK(s.reverse_groups().empty());
  CHECK(s.net().node_count() == 0);

  Scheduler t({3, true, 42});
  CHECK(t.min_for_group() == 3);
  CHECK(t.group_to_net());

  CHECK_THROWS_AS(Scheduler({1, false, 0}), std::invalid_argument);
}

TEST_CASE("same seed gives the same shuffled order") {
  auto order = [](std::uint64_t seed) {
    auto log = std::make_shared<Log>();
    Scheduler s({2, false, seed});
    for (int i = 0; i < 20; ++i) s.add(make_agent("a" + std::to_string(i), log));
    for (int k = 0; k < 5; ++k) s.step();
    return *log;
  };
  CHECK(order(9) == order(9));
  CHECK(order(9) != order(10));
}

TEST_CASE("add") {
  auto log = std::make_shared<Log>();
  Scheduler s;
  s.add(make_agent("t1", log));
  CHECK(s.agents().contains(eid("t1")));
  CHECK(s.agents_by_type().at("trader").contains(eid("t1")));
  CHECK(s.schedule().contains(eid("t1")));
  CHECK(s.net().has_node(eid("t1")));

  s.add(make_agent("c1", log, "cell"), false, false);
  CHECK(s.agents().contains(eid("c1")));
  CHECK(s.agents_by_type().at("cell").contains(eid("c1")));
  CHECK_FALSE(s.schedule().contains(eid("c1")));
  CHECK_FALSE(s.net().has_node(eid("c1")));

  CHECK_THROWS_AS(s.add(make_agent("t1", log)), std::invalid_argument);
  CHECK(s.agents().size() == 2);
  CHECK(s.schedule().size() == 1);
  CHECK(s.audit().empty());
}

TEST_CASE("remove") {
  auto log = std::make_shared<Log>();
  Scheduler s;
  for (const char* n : {"a", "b", "c", "d", "e", "x"}) s.add(make_agent(n, log));

  SUBCASE("loner") {
    s.net().upsert_edge(eid("x"), eid("a"));
    s.remove(eid("x"));
    CHECK_FALSE(s.knows(eid("x")));
    CHECK_FALSE(s.schedule().contains(eid("x")));
    CHECK_FALSE(s.net().has_node(eid("x")));
    CHECK_FALSE(s.agents_by_type().at("trader").contains(eid("x")));
    CHECK(s.net().neighbors(eid("a")).empty());
  }
  SUBCASE("member of a pair dissolves the group") {
    const auto ids = form_group(s, pairs_of({{"a", "b"}}));
    REQUIRE(ids.size() == 1);
    s.remove(eid("a"));
    CHECK(s.groups().empty());
    CHECK(s.schedule().contains(eid("b")));
    CHECK_FALSE(s.knows(ids[0]));
  }
  SUBCASE("member of a triple leaves a pair") {
    const auto ids = form_group(s, pairs_of({{"a", "b"}, {"b", "c"}}));
    REQUIRE(ids.size() == 1);
    s.remove(eid("c"));
    REQUIRE(s.group(ids[0]));
    CHECK(s.group(ids[0])->size() == 2);
    CHECK_FALSE(s.schedule().contains(eid("a")));
  }
  SUBCASE("unknown id") {
    CHECK_THROWS_AS(s.remove(eid("nobody")), std::out_of_range);
  }
  CHECK(s.audit().empty());
}

TEST_CASE("removing a group reintroduces its members") {
  auto log = std::make_shared<Log>();
  Scheduler s;
  for (const char* n : {"a", "b"}) s.add(make_agent(n, log));
  const auto ids = form_group(s, pairs_of({{"a", "b"}}));
  s.remove(ids.at(0));
  CHECK(s.groups().empty());
  CHECK(strs(s.schedule().keys()) == std::vector<std::string>{"a", "b"});
  CHECK(s.audit().empty());
}

TEST_CASE("step orders") {
  auto log = std::make_shared<Log>();
  Scheduler s;
  s.add(make_agent("x", log));
  s.add(make_agent("y", log));
  s.add(make_agent("z", log));

  SUBCASE("insertion order when not shuffled") {
    s.step({false, std::nullopt, std::nullopt});
    CHECK(*log == Log{"x", "y", "z"});
  }
  SUBCASE("shuffled steps each entry once") {
    s.step();
    auto sorted = *log;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == Log{"x", "y", "z"});
  }
}

TEST_CASE("staged activation with a constant-update type") {
  auto log = std::make_shared<Log>();
  Scheduler s;
  s.add(make_agent("c1", log, "cell"), false, false);
  s.add(make_agent("t1", log));
  s.add(make_agent("c2", log, "cell"), false, false);
  s.add(make_agent("t2", log));
  s.add(make_agent("w1", log, "walker"));

  StepOptions o;
  o.shuffled = false;
  o.by_type = std::vector<std::string>{"walker", "trader"};
  o.const_update = "cell";
  s.step(o);
  CHECK(*log == Log{"w1", "t1", "t2", "c1", "c2"});

  log->clear();
  o.by_type = std::vector<std::string>{"trader"};
  s.step(o);
  CHECK(*log == Log{"t1", "t2", "w1", "c1", "c2"});
}

TEST_CASE("unknown by_type tag fails before any activation") {
  auto log = std::make_shared<Log>();
  Scheduler s;
  s.add(make_agent("t1", log));
  StepOptions o;
  o.by_type = std::vector<std::string>{"trader", "ghost"};
  CHECK_THROWS_AS(s.step(o), std::invalid_argument);
  CHECK(log->empty());
  CHECK(s.steps_taken() == 0);
}

TEST_CASE("mid-step removal and addition") {
  auto log = std::make_shared<Log>();
  Scheduler s;
  s.add(std::make_shared<LogAgent>("killer", "trader", log, [](StepContext& ctx) {
    if (ctx.scheduler.knows(eid("victim"))) ctx.scheduler.remove(eid("victim"));
  }));
  s.add(make_agent("victim", log));
  s.add(std::make_shared<LogAgent>("spawner", "trader", log, [log](StepContext& ctx) {
    if (!ctx.scheduler.knows(eid("child"))) ctx.scheduler.add(make_agent("child", log));
  }));

  s.step({false, std::nullopt, std::nullopt});
  CHECK(*log == Log{"killer", "spawner"});
  log->clear();
  s.step({false, std::nullopt, std::nullopt});
  CHECK(*log == Log{"killer", "spawner", "child"});
  CHECK(s.audit().empty());
}

TEST_CASE("groups step their members once") {
  auto log = std::make_shared<Log>();
  Scheduler s;
  for (const char* n : {"a", "b", "c"}) s.add(make_agent(n, log));
  form_group(s, pairs_of({{"a", "b"}}));
  s.step();
  auto sorted = *log;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == Log{"a", "b", "c"});

  log->clear();
  s.group(eid("group_0"))->set_active(false);
  s.step();
  CHECK(*log == Log{"c"});
}

TEST_CASE("group policy runs before members") {
  struct Marker : PolicyHandle {
    std::shared_ptr<Log> log;
    void pre_step(Group& g, StepContext&) override { log->push_back("policy:" + g.unique_id().str()); }
  };
  auto log = std::make_shared<Log>();
  auto policy = std::make_shared<Marker>();
  policy->log = log;
  Scheduler s;
  for (const char* n : {"a", "b"}) s.add(make_agent(n, log));
  FormOptions fo;
  fo.policy = policy;
  form_group(s, pairs_of({{"a", "b"}}), fo);
  s.step();
  REQUIRE(log->size() == 3);
  CHECK((*log)[0] == "policy:group_0");
}

TEST_CASE("next_group_id") {
  Scheduler s;
  CHECK(s.next_group_id("group").str() == "group_0");
  CHECK(s.next_group_id("trades_10").str() == "trades_10_1");
  std::set<EntityId> seen;
  for (int i = 0; i < 100; ++i) seen.insert(s.next_group_id("group"));
  CHECK(seen.size() == 100);
  CHECK(s.id_counter() == 102);
}

TEST_CASE("removed agents keep their schedule slot when readded") {
  auto log = std::make_shared<Log>();
  Scheduler s;
  for (const char* n : {"a", "b", "c"}) s.add(make_agent(n, log));
  form_group(s, pairs_of({{"a", "b"}}));
  CHECK(strs(s.schedule().keys()) == std::vector<std::string>{"c", "group_0"});
  reassess_group(s, [](const Group& g, const Scheduler&) { return g.sub_agents().keys(); });
  CHECK(strs(s.schedule().keys()) == std::vector<std::string>{"a", "b", "c"});
}
