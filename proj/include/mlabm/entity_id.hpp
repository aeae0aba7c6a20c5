#pragma once

#include <compare>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

namespace mlabm {

/// Opaque identifier shared by agents, landscape cells and groups.
class EntityId {
 public:
  EntityId() = default;
  explicit EntityId(std::string value) : value_(std::move(value)) {}
  explicit EntityId(std::string_view value) : value_(value) {}
  explicit EntityId(const char* value) : value_(value) {}

  const std::string& str() const noexcept { return value_; }
  bool empty() const noexcept { return value_.empty(); }

  friend auto operator<=>(const EntityId&, const EntityId&) = default;
  friend bool operator==(const EntityId&, const EntityId&) = default;

  friend std::ostream& operator<<(std::ostream& os, const EntityId& id) {
    return os << id.value_;
  }

 private:
  std::string value_;
};

}  // namespace mlabm

template <>
struct std::hash<mlabm::EntityId> {
  std::size_t operator()(const mlabm::EntityId& id) const noexcept {
    return std::hash<std::string>{}(id.str());
  }
};
