#include "mlabm/sugarscape/model.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <stdexcept>

#include "mlabm/group_dynamics.hpp"
#include "mlabm/stats.hpp"

namespace mlabm::sugarscape {

namespace {

constexpr const char* kLocationLink = "location";

SchedulerOptions scheduler_options(const ModelConfig& c) {
  SchedulerOptions o;
  o.min_for_group = 2;
  o.group_to_net = c.phase == Phase::kMultiLevel;
  o.seed = c.seed;
  return o;
}

}  // namespace

const char* to_string(Wiring w) {
  switch (w) {
    case Wiring::kStandard: return "standard";
    case Wiring::kExplicit: return "explicit";
    case Wiring::kNetwork: return "network";
  }
  return "unknown";
}

const char* to_string(Phase p) {
  switch (p) {
    case Phase::kBaseline: return "baseline";
    case Phase::kTradeGroups: return "trade-groups";
    case Phase::kPolicy: return "policy";
    case Phase::kCommonResource: return "common-resource";
    case Phase::kMultiLevel: return "multi-level";
  }
  return "unknown";
}

Trader::Trader(EntityId id, SugarscapeModel& model, Position pos, int vision, Metabolism metabolism,
               Wealth wealth)
    : Agent(std::move(id), kTypeTag),
      model_(&model),
      pos_(pos),
      vision_(vision),
      metabolism_(metabolism),
      wealth_(wealth) {
  if (vision < 1 || vision > 6) throw std::invalid_argument("vision outside 1..6");
  if (metabolism.sugar < 1 || metabolism.sugar > 6 || metabolism.spice < 1 || metabolism.spice > 6) {
    throw std::invalid_argument("metabolism outside 1..6");
  }
}

void Trader::step(StepContext&) { model_->activate(*this); }

void SugarPolicy::pre_step(Group& group, StepContext& ctx) {
  if (!model_->config_.staged_group_actions) return;
  std::vector<EntityId> members = group.sub_agents().keys();
  std::shuffle(members.begin(), members.end(), ctx.scheduler.rng());
  for (const auto& id : members) {
    Trader* t = model_->trader(id);
    if (!t || !group.contains(id)) continue;
    model_->move(*t);
    model_->harvest(*t);
  }
}

SugarscapeModel::SugarscapeModel(const ModelConfig& config)
    : SugarscapeModel(config, generate_landscape(config.width, config.height, config.ring_width)) {}

SugarscapeModel::SugarscapeModel(const ModelConfig& config, Landscape landscape)
    : config_(config),
      scheduler_(scheduler_options(config)),
      landscape_(std::move(landscape)),
      trade_group_type_(LinkCriterion{"trades", static_cast<double>(config.trade_threshold)}.group_type()) {
  if (config.trade_threshold < 1) throw std::invalid_argument("trade threshold must be >= 1");
  if (config.n_agents < 0) throw std::invalid_argument("agent count must be >= 0");
  for (const auto& cell : landscape_.cells()) scheduler_.add(cell, false, false);
  populate();
}

void SugarscapeModel::populate() {
  const auto n_cells = landscape_.cells().size();
  if (static_cast<std::size_t>(config_.n_agents) > n_cells) {
    throw std::invalid_argument("more agents than cells");
  }
  auto& rng = scheduler_.rng();
  std::vector<std::size_t> slots(n_cells);
  for (std::size_t i = 0; i < n_cells; ++i) slots[i] = i;
  std::shuffle(slots.begin(), slots.end(), rng);

  std::uniform_int_distribution<int> one_to_six(1, 6);
  std::uniform_int_distribution<int> endowment(25, 50);
  for (int i = 0; i < config_.n_agents; ++i) {
    const Position pos = landscape_.cells()[slots[static_cast<std::size_t>(i)]]->position();
    const int vision = config_.fixed_vision ? *config_.fixed_vision : one_to_six(rng);
    const int ms = one_to_six(rng);
    const int mp = one_to_six(rng);
    const double ws = endowment(rng);
    const double wp = endowment(rng);
    add_trader(pos, vision, {ms, mp}, {ws, wp});
  }
}

std::shared_ptr<Trader> SugarscapeModel::add_trader(Position pos, int vision, Metabolism metabolism,
                                                    Wealth wealth) {
  pos = landscape_.wrap(pos);
  Cell& cell = landscape_.at(pos);
  if (cell.occupant()) throw std::invalid_argument("cell already occupied");
  if (!wealth.alive()) throw std::invalid_argument("initial wealth must be positive");
  auto t = std::make_shared<Trader>(EntityId("trader_" + std::to_string(next_trader_++)), *this, pos, vision,
                                    metabolism, wealth);
  scheduler_.add(t, true, true);
  cell.set_occupant(t->unique_id());
  traders_.emplace(t->unique_id(), t);
  return t;
}

Trader* SugarscapeModel::trader(const EntityId& id) const {
  auto it = traders_.find(id);
  return it == traders_.end() ? nullptr : it->second.get();
}

std::vector<Trader*> SugarscapeModel::traders() const {
  std::vector<Trader*> out;
  out.reserve(traders_.size());
  for (const auto& [id, t] : traders_) out.push_back(t.get());
  return out;
}

std::vector<EntityId> SugarscapeModel::ancestors(const EntityId& id) const {
  std::vector<EntityId> out;
  EntityId cur = id;
  while (auto parent = scheduler_.group_of(cur, trade_group_type_)) {
    out.push_back(*parent);
    cur = *parent;
  }
  return out;
}

std::optional<EntityId> SugarscapeModel::pool_of(const EntityId& id) const {
  if (config_.phase != Phase::kCommonResource && config_.phase != Phase::kMultiLevel) return std::nullopt;
  const auto gid = scheduler_.group_of(id, trade_group_type_);
  if (!gid) return std::nullopt;
  GroupPtr g = scheduler_.group(*gid);
  auto* policy = g ? dynamic_cast<SugarPolicy*>(g->policy().get()) : nullptr;
  if (!policy || policy->kind() != PolicyKind::kCommonResource) return std::nullopt;
  return gid;
}

std::vector<Trader*> SugarscapeModel::leaf_traders(const EntityId& id) const {
  std::vector<Trader*> out;
  if (Trader* t = trader(id)) {
    out.push_back(t);
    return out;
  }
  GroupPtr g = scheduler_.group(id);
  if (!g) return out;
  g->sub_agents().for_each([&](const EntityId& m, const AgentPtr&) {
    auto sub = leaf_traders(m);
    out.insert(out.end(), sub.begin(), sub.end());
  });
  return out;
}

Wealth SugarscapeModel::effective_wealth(const Trader& t) const {
  const auto pool = pool_of(t.unique_id());
  if (!pool) return t.wealth_;
  Wealth total;
  for (const Trader* m : leaf_traders(*pool)) {
    total.sugar += m->wealth_.sugar;
    total.spice += m->wealth_.spice;
  }
  return total;
}

Wealth SugarscapeModel::perceived_wealth(const Trader& t) const {
  if (auto gid = scheduler_.group_of(t.unique_id(), trade_group_type_)) {
    GroupPtr g = scheduler_.group(*gid);
    auto* policy = g ? dynamic_cast<SugarPolicy*>(g->policy().get()) : nullptr;
    if (policy) {
      switch (policy->kind()) {
        case PolicyKind::kMinAccumulation:
        case PolicyKind::kMaxAccumulation:
        case PolicyKind::kGeoMeanAccumulation: {
          std::vector<Wealth> members;
          for (const Trader* m : leaf_traders(*gid)) members.push_back(m->wealth_);
          return sugarscape::perceived_wealth(policy->kind(), members);
        }
        default:
          break;
      }
    }
  }
  return effective_wealth(t);
}

void SugarscapeModel::move(Trader& t) {
  const Wealth base = perceived_wealth(t);
  if (!base.alive()) return;

  struct Candidate {
    Position pos;
    int distance;
  };
  std::vector<Candidate> candidates{{t.pos_, 0}};
  const auto ring = landscape_.cardinal_cells(t.pos_, t.vision_);
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const Cell& c = landscape_.at(ring[i]);
    if (c.occupant()) continue;
    const int d = std::max(landscape_.axis_distance(c.position().x, t.pos_.x, landscape_.width()),
                           landscape_.axis_distance(c.position().y, t.pos_.y, landscape_.height()));
    candidates.push_back({ring[i], d});
  }

  double best_score = -1.0;
  int best_distance = 0;
  std::vector<Position> best;
  for (const auto& cand : candidates) {
    const Cell& c = landscape_.at(cand.pos);
    const double score = welfare({base.sugar + c.sugar(), base.spice + c.spice()}, t.metabolism_);
    if (score > best_score || (score == best_score && cand.distance < best_distance)) {
      best_score = score;
      best_distance = cand.distance;
      best.assign(1, cand.pos);
    } else if (score == best_score && cand.distance == best_distance) {
      best.push_back(cand.pos);
    }
  }
  Position target = best.front();
  if (best.size() > 1) {
    std::uniform_int_distribution<std::size_t> pick(0, best.size() - 1);
    target = best[pick(scheduler_.rng())];
  }
  if (target == t.pos_) return;
  landscape_.at(t.pos_).set_occupant(std::nullopt);
  landscape_.at(target).set_occupant(t.unique_id());
  t.pos_ = target;
}

void SugarscapeModel::harvest(Trader& t) {
  const auto [sugar, spice] = landscape_.at(t.pos_).take_all();
  t.wealth_.sugar += sugar;
  t.wealth_.spice += spice;
  t.harvested_at_ = scheduler_.steps_taken();
}

bool SugarscapeModel::metabolize(Trader& t) {
  if (pool_of(t.unique_id())) {
    // A pooled trader the pool cannot feed dies without drawing on it.
    const Wealth pool = effective_wealth(t);
    if (pool.sugar - t.metabolism_.sugar <= 0 || pool.spice - t.metabolism_.spice <= 0) {
      kill(t);
      return false;
    }
  }
  t.wealth_.sugar -= t.metabolism_.sugar;
  t.wealth_.spice -= t.metabolism_.spice;
  if (effective_wealth(t).alive()) return true;
  kill(t);
  return false;
}

bool SugarscapeModel::collect_and_metabolize(Trader& t) {
  harvest(t);
  return metabolize(t);
}

void SugarscapeModel::kill(Trader& t) {
  const EntityId id = t.unique_id();
  if (!traders_.count(id)) return;
  std::shared_ptr<Trader> hold = traders_.at(id);

  if (auto pool = pool_of(id)) {
    std::vector<Trader*> heirs;
    for (Trader* m : leaf_traders(*pool)) {
      if (m != &t) heirs.push_back(m);
    }
    if (!heirs.empty()) {
      const double n = static_cast<double>(heirs.size());
      for (Trader* m : heirs) {
        m->wealth_.sugar += t.wealth_.sugar / n;
        m->wealth_.spice += t.wealth_.spice / n;
      }
      t.wealth_ = {};
    }
  }

  Cell& cell = landscape_.at(t.pos_);
  if (cell.occupant() == id) cell.set_occupant(std::nullopt);
  traders_.erase(id);
  scheduler_.remove(id);
}

void SugarscapeModel::record_trades(const EntityId& a, const EntityId& b, double count) {
  auto bump = [&](const EntityId& x, const EntityId& y) {
    scheduler_.net().increment_edge_value(x, y, "trades", count);
    trade_counts_[x < y ? std::make_pair(x, y) : std::make_pair(y, x)] += count;
  };
  bump(a, b);
  if (config_.phase != Phase::kMultiLevel) return;
  // Walk both ancestor chains level by level until they meet.
  const auto ca = ancestors(a);
  const auto cb = ancestors(b);
  for (std::size_t i = 0; i < std::min(ca.size(), cb.size()) && ca[i] != cb[i]; ++i) bump(ca[i], cb[i]);
}

std::vector<TradeRecord> SugarscapeModel::trade(Trader& a, Trader& b) {
  if (&a == &b) return {};
  const auto pool_a = pool_of(a.unique_id());
  const auto pool_b = pool_of(b.unique_id());

  // Pooled traders bargain with their own ledger balance, not the pool.
  Wealth wa = a.wealth_;
  Wealth wb = b.wealth_;
  if (!wa.alive() || !wb.alive()) return {};
  const auto exchanges = bargain(wa, a.metabolism_, wb, b.metabolism_);

  // Own ledgers stay positive through bargaining, but a pool holding debts
  // of other members could still be drained; stop before that happens.
  const bool shared = pool_a && pool_a == pool_b;
  Wealth pa = effective_wealth(a);
  Wealth pb = effective_wealth(b);

  std::vector<TradeRecord> out;
  out.reserve(exchanges.size());
  for (const auto& ex : exchanges) {
    Trader& buyer = ex.first_buys_sugar ? a : b;
    Trader& seller = ex.first_buys_sugar ? b : a;
    if (!shared) {
      Wealth& pbuy = ex.first_buys_sugar ? pa : pb;
      Wealth& psell = ex.first_buys_sugar ? pb : pa;
      if (pbuy.spice - ex.spice <= 0 || psell.sugar - ex.sugar <= 0) break;
      pbuy.sugar += ex.sugar;
      pbuy.spice -= ex.spice;
      psell.sugar -= ex.sugar;
      psell.spice += ex.spice;
    }
    buyer.wealth_.sugar += ex.sugar;
    buyer.wealth_.spice -= ex.spice;
    seller.wealth_.sugar -= ex.sugar;
    seller.wealth_.spice += ex.spice;
    out.push_back({scheduler_.steps_taken(), buyer.unique_id(), seller.unique_id(), ex.price, ex.sugar, ex.spice});
  }
  if (!out.empty()) record_trades(a.unique_id(), b.unique_id(), static_cast<double>(out.size()));
  step_trades_.insert(step_trades_.end(), out.begin(), out.end());
  return out;
}

void SugarscapeModel::trade_round(Trader& t) {
  std::vector<EntityId> partners;
  for (const auto& p : landscape_.cardinal_cells(t.pos_, t.vision_)) {
    if (const auto& occ = landscape_.at(p).occupant()) partners.push_back(*occ);
  }
  std::shuffle(partners.begin(), partners.end(), scheduler_.rng());
  const EntityId self = t.unique_id();
  for (const auto& id : partners) {
    if (!traders_.count(self)) return;
    Trader* other = trader(id);
    if (other) trade(t, *other);
  }
}

void SugarscapeModel::activate(Trader& t) {
  if (!effective_wealth(t).alive()) {
    kill(t);
    return;
  }
  if (t.harvested_at_ != scheduler_.steps_taken()) {
    move(t);
    harvest(t);
  }
  if (!metabolize(t)) return;
  trade_round(t);
}

void SugarscapeModel::before_step() {
  if (config_.phase != Phase::kBaseline) return;
  if (config_.wiring == Wiring::kExplicit) {
    form_group(
        scheduler_,
        [this](const Scheduler& s) {
          std::vector<FormationDirective> out;
          for (const auto& [id, t] : traders_) {
            if (s.group_of(id, kLocationLink)) continue;
            out.push_back({std::nullopt, {{id, landscape_.at(t->position()).unique_id()}}});
          }
          return out;
        },
        FormOptions{"default", false, nullptr, kLocationLink});
  } else if (config_.wiring == Wiring::kNetwork) {
    for (const auto& [id, t] : traders_) {
      scheduler_.net().upsert_edge(id, landscape_.at(t->position()).unique_id(),
                                   {{kLocationLink, std::string("on")}});
    }
    net_group(scheduler_, LinkCriterion{kLocationLink, std::nullopt});
  }
}

void SugarscapeModel::after_step() {
  if (config_.phase == Phase::kBaseline) {
    if (config_.wiring == Wiring::kExplicit) {
      reassess_group(
          scheduler_,
          [this](const Group& g, const Scheduler&) {
            std::vector<EntityId> out;
            const auto& cells = g.agents_by_type();
            auto tr = cells.find(Trader::kTypeTag);
            auto ce = cells.find(Cell::kTypeTag);
            if (tr == cells.end() || ce == cells.end()) return out;
            const Trader* t = trader(tr->second.begin()->first);
            const auto* c = dynamic_cast<const Cell*>(ce->second.begin()->second.get());
            if (t && c && !(t->position() == c->position())) out.push_back(t->unique_id());
            return out;
          },
          true, kLocationLink);
    } else if (config_.wiring == Wiring::kNetwork) {
      for (const auto& e : scheduler_.net().edges_matching(std::string(kLocationLink))) {
        const bool a_is_trader = traders_.count(e.a) != 0;
        const Trader* t = trader(a_is_trader ? e.a : e.b);
        const EntityId& cell = a_is_trader ? e.b : e.a;
        if (!t || landscape_.at(t->position()).unique_id() != cell) scheduler_.net().remove_edge(e.a, e.b);
      }
      reassess_net_group(scheduler_, LinkCriterion{kLocationLink, std::nullopt});
    }
    return;
  }

  std::vector<EntityId> touched;
  if (config_.wiring == Wiring::kExplicit) {
    const double threshold = config_.trade_threshold;
    touched = form_group(
        scheduler_,
        [this, threshold](const Scheduler& s) {
          std::vector<FormationDirective> out;
          for (const auto& [pair, count] : trade_counts_) {
            if (count >= threshold && s.knows(pair.first) && s.knows(pair.second)) {
              out.push_back({std::nullopt, {pair}});
            }
          }
          return out;
        },
        FormOptions{"default", false, nullptr, trade_group_type_});
  } else {
    touched = net_group(scheduler_, LinkCriterion{"trades", static_cast<double>(config_.trade_threshold)});
  }
  assign_policies(touched);
}

void SugarscapeModel::assign_policies(const std::vector<EntityId>& groups) {
  for (const auto& gid : groups) {
    GroupPtr g = scheduler_.group(gid);
    if (!g || g->policy()) continue;
    PolicyKind kind = PolicyKind::kNone;
    switch (config_.phase) {
      case Phase::kPolicy: {
        static constexpr PolicyKind kinds[] = {PolicyKind::kMinAccumulation, PolicyKind::kMaxAccumulation,
                                               PolicyKind::kGeoMeanAccumulation};
        std::uniform_int_distribution<int> pick(0, 2);
        kind = kinds[pick(scheduler_.rng())];
        break;
      }
      case Phase::kCommonResource:
      case Phase::kMultiLevel:
        kind = PolicyKind::kCommonResource;
        break;
      default:
        break;
    }
    g->set_policy(std::make_shared<SugarPolicy>(kind, *this));
  }
}

void SugarscapeModel::sweep_dead() {
  for (Trader* t : traders()) {
    if (traders_.count(t->unique_id()) && !effective_wealth(*t).alive()) kill(*t);
  }
}

StepMetrics SugarscapeModel::step() {
  step_trades_.clear();
  before_step();
  StepOptions opts;
  opts.const_update = Cell::kTypeTag;
  scheduler_.step(opts);
  after_step();
  sweep_dead();

  StepMetrics m;
  m.step = scheduler_.steps_taken();
  std::vector<double> prices;
  prices.reserve(step_trades_.size());
  for (const auto& r : step_trades_) {
    prices.push_back(r.price);
    if (r.price >= kParBandLow && r.price <= kParBandHigh) ++m.prices_near_par;
  }
  if (!prices.empty()) m.geo_mean_price = stats::geometric_mean(prices);
  m.sdlm = stats::sdlm(prices);
  m.trade_volume = prices.size();
  m.live_agents = traders_.size();
  m.group_count = scheduler_.groups().size();
  m.max_depth = hierarchy_depth(scheduler_);
  return m;
}

RunMetrics SugarscapeModel::run(std::size_t steps) {
  RunMetrics out;
  out.seed = config_.seed;
  out.steps.reserve(steps);
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < steps; ++i) out.steps.push_back(step());
  out.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.survivors = traders_.size();
  return out;
}

}  // namespace mlabm::sugarscape
