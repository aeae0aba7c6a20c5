#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <variant>
#include <vector>

#include "mlabm/entity_id.hpp"

namespace mlabm {

/// A link value is either a string tag ("friendly") or a non-negative count.
using EdgeValue = std::variant<std::string, double>;

/// Link-type label -> value. One edge can carry several labels.
using EdgeAttrs = std::map<std::string, EdgeValue>;

class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Formats a numeric link value the way it appears in group labels and CSV
/// ("10", "2.5").
std::string format_number(double v);
std::string format_value(const EdgeValue& v);

/// True iff `attrs` qualifies under the three formation criteria: any link
/// (no type), a link carrying `link_type`, or a link whose `link_type` value
/// is >= a numeric threshold / equal to a string tag.
bool link_qualifies(const EdgeAttrs& attrs,
                    const std::optional<std::string>& link_type,
                    const std::optional<EdgeValue>& value);

struct Edge {
  EntityId a;  // a < b
  EntityId b;
  EdgeAttrs attrs;
};

/// Undirected simple graph with attributed edges. Iteration is always in
/// sorted id order.
class Graph {
 public:
  void add_node(const EntityId& id);
  bool has_node(const EntityId& id) const { return adj_.count(id) != 0; }
  /// Removes the node and all incident edges. No-op for unknown ids.
  void remove_node(const EntityId& id);

  /// Merges `attrs` key-by-key over the existing edge attributes.
  void upsert_edge(const EntityId& a, const EntityId& b, const EdgeAttrs& attrs = {});
  double increment_edge_value(const EntityId& a, const EntityId& b,
                              const std::string& link_type, double delta);
  void remove_edge(const EntityId& a, const EntityId& b);

  bool has_edge(const EntityId& a, const EntityId& b) const;
  const EdgeAttrs* edge(const EntityId& a, const EntityId& b) const;

  std::vector<Edge> edges_matching(const std::optional<std::string>& link_type = std::nullopt,
                                   const std::optional<EdgeValue>& min_value = std::nullopt) const;

  std::vector<EntityId> neighbors(const EntityId& id) const;
  std::vector<EntityId> nodes() const;

  std::size_t node_count() const noexcept { return adj_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  /// Debug dump, one row per (edge, label): node_a,node_b,link_type,value.
  void write_csv(std::ostream& os) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  using Key = std::pair<EntityId, EntityId>;
  static Key key(const EntityId& a, const EntityId& b);

  std::map<EntityId, std::set<EntityId>> adj_;
  std::map<Key, EdgeAttrs> edges_;
};

}  // namespace mlabm
