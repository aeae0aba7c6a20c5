#include "mlabm/sugarscape/landscape.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace mlabm::sugarscape {

namespace {

EntityId cell_id(Position p) {
  return EntityId("cell_" + std::to_string(p.x) + "_" + std::to_string(p.y));
}

}  // namespace

Cell::Cell(Position pos, int max_sugar, int max_spice)
    : Agent(cell_id(pos), kTypeTag),
      pos_(pos),
      sugar_(max_sugar),
      spice_(max_spice),
      max_sugar_(max_sugar),
      max_spice_(max_spice) {
  if (max_sugar < 0 || max_sugar > kMaxCapacity || max_spice < 0 || max_spice > kMaxCapacity) {
    throw std::invalid_argument("cell capacity outside 0..6");
  }
}

void Cell::set_stock(int sugar, int spice) {
  if (sugar < 0 || spice < 0 || sugar > max_sugar_ || spice > max_spice_) {
    throw std::invalid_argument("cell stock outside capacity");
  }
  sugar_ = sugar;
  spice_ = spice;
}

std::pair<int, int> Cell::take_all() {
  std::pair<int, int> out{sugar_, spice_};
  sugar_ = 0;
  spice_ = 0;
  return out;
}

void Cell::regrow() {
  sugar_ = std::min(sugar_ + 1, max_sugar_);
  spice_ = std::min(spice_ + 1, max_spice_);
}

Landscape::Landscape(int width, int height, std::vector<std::shared_ptr<Cell>> cells)
    : width_(width), height_(height), cells_(std::move(cells)) {
  if (width <= 0 || height <= 0) throw std::invalid_argument("landscape dimensions must be positive");
  if (cells_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw std::invalid_argument("cell count does not match dimensions");
  }
}

std::size_t Landscape::index(Position p) const noexcept {
  const Position w = wrap(p);
  return static_cast<std::size_t>(w.y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(w.x);
}

Position Landscape::wrap(Position p) const noexcept {
  return {((p.x % width_) + width_) % width_, ((p.y % height_) + height_) % height_};
}

int Landscape::axis_distance(int a, int b, int extent) const noexcept {
  const int d = std::abs(a - b) % extent;
  return std::min(d, extent - d);
}

double Landscape::distance(Position a, Position b) const noexcept {
  const double dx = axis_distance(a.x, b.x, width_);
  const double dy = axis_distance(a.y, b.y, height_);
  return std::sqrt(dx * dx + dy * dy);
}

std::vector<Position> Landscape::cardinal_cells(Position from, int range) const {
  std::vector<Position> out;
  // Never wrap back onto the origin or revisit a cell on a small torus.
  const int reach_x = std::min(range, (width_ - 1) / 2);
  const int reach_y = std::min(range, (height_ - 1) / 2);
  for (int d = 1; d <= range; ++d) {
    if (d <= reach_y) out.push_back(wrap({from.x, from.y + d}));
    if (d <= reach_x) out.push_back(wrap({from.x + d, from.y}));
    if (d <= reach_y) out.push_back(wrap({from.x, from.y - d}));
    if (d <= reach_x) out.push_back(wrap({from.x - d, from.y}));
  }
  return out;
}

long Landscape::total_max_sugar() const {
  long total = 0;
  for (const auto& c : cells_) total += c->max_sugar();
  return total;
}

long Landscape::total_max_spice() const {
  long total = 0;
  for (const auto& c : cells_) total += c->max_spice();
  return total;
}

Landscape generate_landscape(int width, int height, double ring_width) {
  if (width <= 0 || height <= 0) throw std::invalid_argument("landscape dimensions must be positive");
  if (ring_width <= 0.0) ring_width = std::min(width, height) / 12.0;

  const int qx = width / 4;
  const int qy = height / 4;
  const int tx = 3 * width / 4;
  const int ty = 3 * height / 4;
  const std::vector<Position> sugar_peaks{{qx, ty}, {tx, qy}};
  const std::vector<Position> spice_peaks{{qx, qy}, {tx, ty}};

  std::vector<std::shared_ptr<Cell>> cells;
  cells.reserve(static_cast<std::size_t>(width) * static_cast<std::size_t>(height));
  auto torus_distance = [&](Position a, Position b) {
    const int ax = std::abs(a.x - b.x) % width;
    const int ay = std::abs(a.y - b.y) % height;
    const double dx = std::min(ax, width - ax);
    const double dy = std::min(ay, height - ay);
    return std::sqrt(dx * dx + dy * dy);
  };
  auto capacity = [&](Position p, const std::vector<Position>& peaks) {
    double nearest = std::numeric_limits<double>::infinity();
    for (const auto& peak : peaks) nearest = std::min(nearest, torus_distance(p, peak));
    const int c = Cell::kMaxCapacity - static_cast<int>(std::floor(nearest / ring_width));
    return std::clamp(c, 0, Cell::kMaxCapacity);
  };

  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const Position p{x, y};
      cells.push_back(std::make_shared<Cell>(p, capacity(p, sugar_peaks), capacity(p, spice_peaks)));
    }
  }
  return Landscape(width, height, std::move(cells));
}

}  // namespace mlabm::sugarscape
