#pragma once

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mlabm/scheduler.hpp"

namespace mlabm {

/// One batch of bilateral links yielded by a formation process. When the
/// caller asks for explicit ids, `group_id` names the group the links form.
struct FormationDirective {
  std::optional<EntityId> group_id;
  std::vector<std::pair<EntityId, EntityId>> members;
};

/// Produces the directives for one formation pass. It sees the scheduler
/// read-only; the directives are applied after it returns.
using FormationProcess = std::function<std::vector<FormationDirective>(const Scheduler&)>;

/// Called once per group of the reassessed type; returns members to drop.
using ReassessProcess = std::function<std::vector<EntityId>(const Group&, const Scheduler&)>;

struct FormOptions {
  /// "default" generates ids as group_<n>; anything else takes the id from
  /// each directive.
  std::string determine_id = "default";
  bool double_schedule = false;
  PolicyPtr policy;
  std::string group_type = "default";
};

/// Which links count for network formation and dissolution.
struct LinkCriterion {
  std::optional<std::string> link_type;
  std::optional<EdgeValue> link_value;

  /// "default", "<type>" or "<type>_<value>": the group type of groups
  /// formed under this criterion.
  std::string group_type() const;
  /// Id prefix: "group" for bare link presence, otherwise group_type().
  std::string id_prefix() const;
};

/// Raised after a formation pass that had to skip directives. The valid
/// directives were still applied; `groups()` lists what they touched.
class FormationError : public std::runtime_error {
 public:
  FormationError(const std::string& what, std::vector<EntityId> groups)
      : std::runtime_error(what), groups_(std::move(groups)) {}
  const std::vector<EntityId>& groups() const noexcept { return groups_; }

 private:
  std::vector<EntityId> groups_;
};

/// Applies the process's bilateral links in yielded order. An agent joins the
/// first group it forms with; links between members of two different groups
/// are kept in the network only. Returns created or modified group ids.
std::vector<EntityId> form_group(Scheduler& s, const FormationProcess& process,
                                 const FormOptions& options = {});

void reassess_group(Scheduler& s, const ReassessProcess& process, bool reintroduce = true,
                    const std::string& group_type = "default");

/// Forms groups from every network link matching `criterion` (numeric values
/// are thresholds, value >= threshold), in sorted edge order.
std::vector<EntityId> net_group(Scheduler& s, const LinkCriterion& criterion = {},
                                bool double_schedule = false, PolicyPtr policy = nullptr);

/// Drops members left without a qualifying link to any other member of their
/// group (numeric: value < threshold), then dissolves undersized groups.
void reassess_net_group(Scheduler& s, const LinkCriterion& criterion = {});

/// Links (or unlinks) every unordered pair in `ids`.
void add_links(Scheduler& s, std::span<const EntityId> ids);
void remove_links(Scheduler& s, std::span<const EntityId> ids);

}  // namespace mlabm
