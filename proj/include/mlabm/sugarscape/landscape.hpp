#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "mlabm/agent.hpp"

namespace mlabm::sugarscape {

struct Position {
  int x = 0;
  int y = 0;
  friend bool operator==(const Position&, const Position&) = default;
};

/// One landscape cell. Activating a cell regrows it.
class Cell final : public Agent {
 public:
  static constexpr const char* kTypeTag = "cell";
  static constexpr int kMaxCapacity = 6;

  Cell(Position pos, int max_sugar, int max_spice);

  Position position() const noexcept { return pos_; }
  int sugar() const noexcept { return sugar_; }
  int spice() const noexcept { return spice_; }
  int max_sugar() const noexcept { return max_sugar_; }
  int max_spice() const noexcept { return max_spice_; }
  const std::optional<EntityId>& occupant() const noexcept { return occupant_; }

  void set_stock(int sugar, int spice);
  void set_occupant(std::optional<EntityId> id) { occupant_ = std::move(id); }

  /// Harvests the whole stock.
  std::pair<int, int> take_all();
  /// One unit of each resource, capped at capacity.
  void regrow();

  void step(StepContext&) override { regrow(); }

 private:
  Position pos_;
  int sugar_;
  int spice_;
  int max_sugar_;
  int max_spice_;
  std::optional<EntityId> occupant_;
};

/// Rectangular torus of cells.
class Landscape {
 public:
  Landscape(int width, int height, std::vector<std::shared_ptr<Cell>> cells);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }

  Cell& at(Position p) { return *cells_[index(p)]; }
  const Cell& at(Position p) const { return *cells_[index(p)]; }
  const std::vector<std::shared_ptr<Cell>>& cells() const noexcept { return cells_; }

  Position wrap(Position p) const noexcept;
  /// Shortest wrapped distance along each axis.
  int axis_distance(int a, int b, int extent) const noexcept;
  double distance(Position a, Position b) const noexcept;

  /// Cells along the four cardinal axes up to `range` steps away, nearest
  /// first (N, E, S, W at each distance). Excludes `from` itself.
  std::vector<Position> cardinal_cells(Position from, int range) const;

  long total_max_sugar() const;
  long total_max_spice() const;

 private:
  std::size_t index(Position p) const noexcept;

  int width_;
  int height_;
  std::vector<std::shared_ptr<Cell>> cells_;
};

/// Two sugar mounds and two spice mounds on opposite quarter-diagonals.
/// Capacity at distance d from the nearest peak of its resource is
/// clamp(6 - floor(d / ring_width), 0, 6). ring_width <= 0 picks
/// min(width, height) / 12, so a mound's last ring ends about half the
/// shorter side away from its peak. Cells start full.
Landscape generate_landscape(int width, int height, double ring_width = 0.0);

}  // namespace mlabm::sugarscape
