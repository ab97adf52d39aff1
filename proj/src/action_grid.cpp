#include "activemix/action_grid.hpp"

#include <limits>
#include <string>

#include "activemix/errors.hpp"

namespace activemix {

ActionGrid::ActionGrid(int n_grid, CellAction fill) : n_grid_(n_grid) {
  if (n_grid < 1) throw ConfigError("action grid needs n_grid >= 1");
  cells_.assign(static_cast<std::size_t>(n_grid) * static_cast<std::size_t>(n_grid), fill);
}

ActionGrid ActionGrid::from_digits(int n_grid, std::span<const int> digits) {
  ActionGrid grid(n_grid);
  if (digits.size() != grid.cells_.size()) {
    throw InvalidAction("action must have " + std::to_string(grid.cells_.size()) +
                        " cells, got " + std::to_string(digits.size()));
  }
  for (std::size_t k = 0; k < digits.size(); ++k) {
    if (digits[k] < 0 || digits[k] > 2) {
      throw InvalidAction("action digit " + std::to_string(digits[k]) + " at cell " +
                          std::to_string(k) + " is not in 0..2");
    }
    grid.cells_[k] = static_cast<CellAction>(digits[k]);
  }
  return grid;
}

std::vector<int> ActionGrid::digits() const {
  std::vector<int> out;
  out.reserve(cells_.size());
  for (CellAction c : cells_) out.push_back(static_cast<int>(c));
  return out;
}

bool ActionGrid::allowed_by(InteractionSet set) const {
  for (CellAction c : cells_) {
    if (c == CellAction::Attractive && !allows_attractive(set)) return false;
    if (c == CellAction::Repulsive && !allows_repulsive(set)) return false;
  }
  return true;
}

void ActionGrid::validate(InteractionSet set) const {
  for (std::size_t k = 0; k < cells_.size(); ++k) {
    const CellAction c = cells_[k];
    if ((c == CellAction::Attractive && !allows_attractive(set)) ||
        (c == CellAction::Repulsive && !allows_repulsive(set))) {
      throw InvalidAction("cell " + std::to_string(k) + " uses " +
                          (c == CellAction::Attractive ? "attractive" : "repulsive") +
                          " activation, not allowed for interaction set " +
                          std::string(to_string(set)));
    }
  }
}

std::uint64_t action_space_size(int n_grid) {
  if (n_grid < 1) throw ConfigError("n_grid must be >= 1");
  const int n_cells = n_grid * n_grid;
  // 3^40 < 2^64 < 3^41
  if (n_cells > 40) throw ConfigError("action space too large for a 64-bit index");
  std::uint64_t size = 1;
  for (int k = 0; k < n_cells; ++k) size *= 3;
  return size;
}

ActionGrid encode_action(std::uint64_t index, int n_grid) {
  const std::uint64_t size = action_space_size(n_grid);
  if (index >= size) {
    throw InvalidAction("action index " + std::to_string(index) + " out of range [0, " +
                        std::to_string(size) + ")");
  }
  ActionGrid grid(n_grid);
  for (int k = 0; k < n_grid * n_grid; ++k) {
    grid.set(k / n_grid, k % n_grid, static_cast<CellAction>(index % 3));
    index /= 3;
  }
  return grid;
}

std::uint64_t decode_action(const ActionGrid& grid) {
  action_space_size(grid.n_grid());
  std::uint64_t index = 0;
  const auto cells = grid.cells();
  for (std::size_t k = cells.size(); k-- > 0;) {
    index = index * 3 + static_cast<std::uint64_t>(cells[k]);
  }
  return index;
}

}  // namespace activemix
