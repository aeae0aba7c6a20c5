#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mlabm/entity_id.hpp"

namespace mlabm {

// Insertion-ordered map keyed by EntityId. Each key keeps the rank it was
// first inserted with, so erasing and re-inserting a key restores its
// original position in iteration order.
template <typename V>
class RankedMap {
 public:
  using value_type = std::pair<const EntityId, V>;

  bool contains(const EntityId& id) const { return index_.count(id) != 0; }
  std::size_t size() const noexcept { return index_.size(); }
  bool empty() const noexcept { return index_.empty(); }

  // Returns false if the key was already present (value left untouched).
  bool insert(const EntityId& id, V value) {
    if (contains(id)) return false;
    std::uint64_t rank;
    if (auto it = remembered_.find(id); it != remembered_.end()) {
      rank = it->second;
    } else {
      rank = next_rank_++;
      remembered_.emplace(id, rank);
    }
    by_rank_.emplace(rank, std::make_pair(id, std::move(value)));
    index_.emplace(id, rank);
    return true;
  }

  bool erase(const EntityId& id) {
    auto it = index_.find(id);
    if (it == index_.end()) return false;
    by_rank_.erase(it->second);
    index_.erase(it);
    return true;
  }

  // Drops the remembered rank too; a later insert goes to the back.
  void forget(const EntityId& id) {
    erase(id);
    remembered_.erase(id);
  }

  V* find(const EntityId& id) {
    auto it = index_.find(id);
    return it == index_.end() ? nullptr : &by_rank_.at(it->second).second;
  }
  const V* find(const EntityId& id) const {
    auto it = index_.find(id);
    return it == index_.end() ? nullptr : &by_rank_.at(it->second).second;
  }

  V& at(const EntityId& id) {
    V* v = find(id);
    if (!v) throw std::out_of_range("unknown id: " + id.str());
    return *v;
  }
  const V& at(const EntityId& id) const {
    const V* v = find(id);
    if (!v) throw std::out_of_range("unknown id: " + id.str());
    return *v;
  }

  std::vector<EntityId> keys() const {
    std::vector<EntityId> out;
    out.reserve(by_rank_.size());
    for (const auto& [rank, entry] : by_rank_) out.push_back(entry.first);
    return out;
  }

  template <typename F>
  void for_each(F&& f) const {
    for (const auto& [rank, entry] : by_rank_) f(entry.first, entry.second);
  }

  void clear() {
    by_rank_.clear();
    index_.clear();
  }

 private:
  std::map<std::uint64_t, std::pair<EntityId, V>> by_rank_;
  std::unordered_map<EntityId, std::uint64_t> index_;
  std::unordered_map<EntityId, std::uint64_t> remembered_;
  std::uint64_t next_rank_ = 0;
};

}  // namespace mlabm
