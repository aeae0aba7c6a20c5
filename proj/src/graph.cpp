#include "mlabm/graph.hpp"

#include <array>
#include <charconv>

namespace mlabm {

std::string format_number(double v) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), end);
}

std::string format_value(const EdgeValue& v) {
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  return format_number(std::get<double>(v));
}

bool link_qualifies(const EdgeAttrs& attrs, const std::optional<std::string>& link_type,
                    const std::optional<EdgeValue>& value) {
  if (!link_type) {
    if (value) throw GraphError("a link value requires a link type");
    return true;
  }
  auto it = attrs.find(*link_type);
  if (it == attrs.end()) return false;
  if (!value) return true;
  const bool stored_is_tag = std::holds_alternative<std::string>(it->second);
  const bool query_is_tag = std::holds_alternative<std::string>(*value);
  if (stored_is_tag != query_is_tag) {
    throw GraphError("link '" + *link_type + "' compares a string tag against a number");
  }
  if (query_is_tag) return std::get<std::string>(it->second) == std::get<std::string>(*value);
  return std::get<double>(it->second) >= std::get<double>(*value);
}

Graph::Key Graph::key(const EntityId& a, const EntityId& b) {
  return a < b ? Key{a, b} : Key{b, a};
}

void Graph::add_node(const EntityId& id) { adj_.try_emplace(id); }

void Graph::remove_node(const EntityId& id) {
  auto it = adj_.find(id);
  if (it == adj_.end()) return;
  for (const auto& other : it->second) {
    edges_.erase(key(id, other));
    adj_[other].erase(id);
  }
  adj_.erase(it);
}

void Graph::upsert_edge(const EntityId& a, const EntityId& b, const EdgeAttrs& attrs) {
  if (a == b) throw GraphError("self-loop rejected: " + a.str());
  for (const auto& [label, value] : attrs) {
    if (const auto* d = std::get_if<double>(&value); d && *d < 0.0) {
      throw GraphError("negative value for link '" + label + "'");
    }
  }
  adj_[a].insert(b);
  adj_[b].insert(a);
  auto& stored = edges_[key(a, b)];
  for (const auto& [label, value] : attrs) stored[label] = value;
}

double Graph::increment_edge_value(const EntityId& a, const EntityId& b,
                                   const std::string& link_type, double delta) {
  if (a == b) throw GraphError("self-loop rejected: " + a.str());
  double current = 0.0;
  if (const EdgeAttrs* attrs = edge(a, b)) {
    if (auto it = attrs->find(link_type); it != attrs->end()) {
      if (!std::holds_alternative<double>(it->second)) {
        throw GraphError("link '" + link_type + "' holds a string tag");
      }
      current = std::get<double>(it->second);
    }
  }
  const double next = current + delta;
  if (next < 0.0) throw GraphError("link '" + link_type + "' would become negative");
  upsert_edge(a, b, {{link_type, next}});
  return next;
}

void Graph::remove_edge(const EntityId& a, const EntityId& b) {
  if (edges_.erase(key(a, b)) == 0) return;
  adj_[a].erase(b);
  adj_[b].erase(a);
}

bool Graph::has_edge(const EntityId& a, const EntityId& b) const {
  return edges_.count(key(a, b)) != 0;
}

const EdgeAttrs* Graph::edge(const EntityId& a, const EntityId& b) const {
  auto it = edges_.find(key(a, b));
  return it == edges_.end() ? nullptr : &it->second;
}

std::vector<Edge> Graph::edges_matching(const std::optional<std::string>& link_type,
                                        const std::optional<EdgeValue>& min_value) const {
  if (min_value && !link_type) throw GraphError("a link value requires a link type");
  std::vector<Edge> out;
  for (const auto& [k, attrs] : edges_) {
    if (link_qualifies(attrs, link_type, min_value)) out.push_back({k.first, k.second, attrs});
  }
  return out;
}

std::vector<EntityId> Graph::neighbors(const EntityId& id) const {
  auto it = adj_.find(id);
  if (it == adj_.end()) throw GraphError("unknown node: " + id.str());
  return {it->second.begin(), it->second.end()};
}

std::vector<EntityId> Graph::nodes() const {
  std::vector<EntityId> out;
  out.reserve(adj_.size());
  for (const auto& [id, _] : adj_) out.push_back(id);
  return out;
}

void Graph::write_csv(std::ostream& os) const {
  os << "node_a,node_b,link_type,value\n";
  for (const auto& [k, attrs] : edges_) {
    if (attrs.empty()) {
      os << k.first << ',' << k.second << ",,\n";
      continue;
    }
    for (const auto& [label, value] : attrs) {
      os << k.first << ',' << k.second << ',' << label << ',' << format_value(value) << '\n';
    }
  }
}

}  // namespace mlabm
