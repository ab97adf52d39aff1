#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "activemix/params.hpp"

namespace activemix {

/// Digit values match the flat action encoding: 0 none, 1 attractive,
/// 2 repulsive.
enum class CellAction : std::uint8_t { None = 0, Attractive = 1, Repulsive = 2 };

/// Ng x Ng control field. Cell (ix, iy) covers
/// [-L + ix w, -L + (ix+1) w) x [-L + iy w, -L + (iy+1) w) with w = 2L/Ng and
/// is stored at ix * Ng + iy, so cell (0, 0) is the (-L, -L) corner.
class ActionGrid {
 public:
  explicit ActionGrid(int n_grid, CellAction fill = CellAction::None);
  /// Digits 0..2 in storage order; throws InvalidAction on bad length/digit.
  static ActionGrid from_digits(int n_grid, std::span<const int> digits);

  int n_grid() const { return n_grid_; }
  CellAction at(int ix, int iy) const { return cells_[index(ix, iy)]; }
  void set(int ix, int iy, CellAction a) { cells_[index(ix, iy)] = a; }
  CellAction operator[](std::size_t flat) const { return cells_[flat]; }
  std::span<const CellAction> cells() const { return cells_; }
  std::vector<int> digits() const;

  /// Throws InvalidAction if a cell uses a type the set does not allow.
  void validate(InteractionSet set) const;
  bool allowed_by(InteractionSet set) const;

  friend bool operator==(const ActionGrid&, const ActionGrid&) = default;

 private:
  std::size_t index(int ix, int iy) const {
    return static_cast<std::size_t>(ix) * static_cast<std::size_t>(n_grid_) +
           static_cast<std::size_t>(iy);
  }

  int n_grid_;
  std::vector<CellAction> cells_;
};

/// Number of distinct grids, 3^(Ng^2). Throws ConfigError above 2^64 - 1.
std::uint64_t action_space_size(int n_grid);

/// Base-3 little-endian over storage order: digit k is cell k.
ActionGrid encode_action(std::uint64_t index, int n_grid);
std::uint64_t decode_action(const ActionGrid& grid);

}  // namespace activemix
