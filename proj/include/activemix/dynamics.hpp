#pragma once

#include <cstdint>
#include <vector>

#include "activemix/action_grid.hpp"
#include "activemix/geometry.hpp"
#include "activemix/params.hpp"
#include "activemix/random.hpp"

namespace activemix {

enum class Activation : std::uint8_t { Inactive = 0, Attractive = 1, Repulsive = 2 };
enum class Tag : std::uint8_t { Left = 0, Right = 1 };
enum class InteractionMode : std::uint8_t { Attractive, Repulsive };

struct ParticleState {
  std::vector<Vec2> positions;
  std::vector<Activation> activation;
  std::vector<Tag> tags;

  std::size_t size() const { return positions.size(); }
  /// Throws ConfigError if sizes, tag balance or coordinates are off.
  void validate(const SimParams& params) const;
};

/// Per-particle force split into its attractive and repulsive parts. At most
/// one part is nonzero for any particle.
struct ForceVector {
  std::vector<Vec2> attractive;
  std::vector<Vec2> repulsive;

  std::size_t size() const { return attractive.size(); }
  Vec2 total(std::size_t i) const { return attractive[i] + repulsive[i]; }
};

struct GridCell {
  int ix = 0;
  int iy = 0;
  friend bool operator==(const GridCell&, const GridCell&) = default;
};

/// Bin containing a wrapped position: floor((x + L) / (2L / Ng)) per axis.
GridCell locate_cell(const Vec2& position, const SimParams& params);

/// Scalar pair coefficient (k dt^2 / m) (d - r0) / d of the linear update,
/// zero outside the open window (r_c, R_c). r0 = 0 for attractive pairs and
/// R_c for repulsive ones.
double pair_coefficient(double distance, InteractionMode mode, const SimParams& params);

/// O(N^2) reference force evaluation. Only same-mode activated pairs with
/// minimum-image distance strictly inside (r_c, R_c) interact. Each F_i is
/// summed over j in ascending index order.
ForceVector compute_forces(const ParticleState& state, const SimParams& params);

/// Same result as compute_forces, bit for bit, using a periodic cell list
/// with cell edge >= R_c to prune candidates.
ForceVector compute_forces_cell_list(const ParticleState& state, const SimParams& params);

/// x <- wrap(x + (dt^2 / m) F). Activation and tags are untouched.
void integrate_step(ParticleState& state, const ForceVector& forces, const SimParams& params);

/// Activation areas switch particles on (overriding prior state); particles
/// in inactive cells switch off with probability 1 - exp(-lambda dt). One
/// uniform draw is consumed per activated particle sitting in a None cell,
/// in index order. Throws InvalidAction if the grid does not fit the params.
void apply_activation_field(ParticleState& state, const ActionGrid& action, Rng& rng,
                            const SimParams& params);

}  // namespace activemix
