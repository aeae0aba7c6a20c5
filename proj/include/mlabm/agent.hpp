#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "mlabm/entity_id.hpp"

namespace mlabm {

class Scheduler;
class Group;

/// Activation regime shared by the scheduler and by groups stepping their
/// members.
struct StepOptions {
  bool shuffled = true;
  /// Staged activation: all agents of the first tag, then the second, ...
  /// Tags not listed run in a final stage.
  std::optional<std::vector<std::string>> by_type;
  /// Tag activated after everything else, once per scheduler step, straight
  /// from the type manager (scheduled or not).
  std::optional<std::string> const_update;
};

struct StepContext {
  Scheduler& scheduler;
  std::optional<std::string> const_update;
};

/// Anything the scheduler can activate.
class Agent {
 public:
  Agent(EntityId id, std::string type_tag);
  virtual ~Agent() = default;

  Agent(const Agent&) = delete;
  Agent& operator=(const Agent&) = delete;

  const EntityId& unique_id() const noexcept { return id_; }
  const std::string& type_tag() const noexcept { return type_tag_; }

  virtual void step(StepContext& ctx) = 0;

 private:
  EntityId id_;
  std::string type_tag_;
};

using AgentPtr = std::shared_ptr<Agent>;

/// Group behaviour. `pre_step` runs before the members step; models extend
/// this with their own perception/action hooks.
class PolicyHandle {
 public:
  virtual ~PolicyHandle() = default;
  virtual void pre_step(Group& /*group*/, StepContext& /*ctx*/) {}
};

using PolicyPtr = std::shared_ptr<PolicyHandle>;

/// Orders (id, type_tag) entries for one activation pass. Entries of the
/// const_update tag are dropped; they run in their own pass.
std::vector<EntityId> activation_order(const std::vector<std::pair<EntityId, std::string>>& entries,
                                       const StepOptions& options, std::mt19937_64& rng);

}  // namespace mlabm
