#include "activemix/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "activemix/errors.hpp"

namespace activemix {

void ParticleState::validate(const SimParams& params) const {
  const auto n = static_cast<std::size_t>(params.n_particles);
  if (positions.size() != n || activation.size() != n || tags.size() != n) {
    throw ConfigError("particle state size does not match n_particles");
  }
  std::size_t n_left = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& p = positions[i];
    if (!(p.x >= -params.half_width && p.x < params.half_width &&
          p.y >= -params.half_width && p.y < params.half_width)) {
      throw ConfigError("particle " + std::to_string(i) + " lies outside the box");
    }
    if (tags[i] == Tag::Left) ++n_left;
  }
  if (2 * n_left != n) throw ConfigError("tags must split particles evenly");
}

GridCell locate_cell(const Vec2& position, const SimParams& params) {
  const double w = params.cell_width();
  auto bin = [&](double v) {
    const int b = static_cast<int>(std::floor((v + params.half_width) / w));
    return std::clamp(b, 0, params.n_grid - 1);
  };
  return {bin(position.x), bin(position.y)};
}

double pair_coefficient(double distance, InteractionMode mode, const SimParams& params) {
  if (!(distance > params.lower_cutoff && distance < params.upper_cutoff)) return 0.0;
  const double rest = mode == InteractionMode::Attractive ? 0.0 : params.upper_cutoff;
  return params.spring_k * params.step_factor() * (distance - rest) / distance;
}

namespace {

// Force on i from j, given d = x_i - x_j (minimum image). Shared by both
// neighbour strategies so their arithmetic is identical.
inline bool accumulate_pair(const Vec2& d, Activation mode, const SimParams& params,
                            Vec2& force) {
  const double dist = d.norm();
  if (!(dist > params.lower_cutoff && dist < params.upper_cutoff)) return false;
  if (mode == Activation::Attractive) {
    force += d * -params.spring_k;
  } else {
    force += d * (-params.spring_k * (dist - params.upper_cutoff) / dist);
  }
  return true;
}

inline void add_force(ForceVector& f, std::size_t i, Activation mode, const Vec2& v) {
  if (mode == Activation::Attractive) {
    f.attractive[i] = v;
  } else {
    f.repulsive[i] = v;
  }
}

}  // namespace

ForceVector compute_forces(const ParticleState& state, const SimParams& params) {
  const std::size_t n = state.size();
  ForceVector f{std::vector<Vec2>(n), std::vector<Vec2>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const Activation mode = state.activation[i];
    if (mode == Activation::Inactive) continue;
    Vec2 acc;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || state.activation[j] != mode) continue;
      accumulate_pair(minimum_image_displacement(state.positions[i], state.positions[j],
                                                 params.half_width),
                      mode, params, acc);
    }
    add_force(f, i, mode, acc);
  }
  return f;
}

ForceVector compute_forces_cell_list(const ParticleState& state, const SimParams& params) {
  const std::size_t n = state.size();
  ForceVector f{std::vector<Vec2>(n), std::vector<Vec2>(n)};

  const double width = 2.0 * params.half_width;
  const int n_side = std::max(1, static_cast<int>(std::floor(width / params.upper_cutoff)));
  const double edge = width / n_side;
  auto cell_coord = [&](double v) {
    return std::clamp(static_cast<int>(std::floor((v + params.half_width) / edge)), 0,
                      n_side - 1);
  };

  std::vector<std::vector<std::size_t>> cells(static_cast<std::size_t>(n_side * n_side));
  std::vector<int> cell_of(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    if (state.activation[i] == Activation::Inactive) continue;
    const int c = cell_coord(state.positions[i].x) * n_side + cell_coord(state.positions[i].y);
    cell_of[i] = c;
    cells[static_cast<std::size_t>(c)].push_back(i);
  }

  // Neighbour cells deduplicated: with fewer than three cells per side the
  // periodic offsets -1, 0, +1 alias.
  std::vector<std::vector<int>> neighbours(cells.size());
  for (int cx = 0; cx < n_side; ++cx) {
    for (int cy = 0; cy < n_side; ++cy) {
      auto& list = neighbours[static_cast<std::size_t>(cx * n_side + cy)];
      for (int ox = -1; ox <= 1; ++ox) {
        for (int oy = -1; oy <= 1; ++oy) {
          const int nx = ((cx + ox) % n_side + n_side) % n_side;
          const int ny = ((cy + oy) % n_side + n_side) % n_side;
          list.push_back(nx * n_side + ny);
        }
      }
      std::sort(list.begin(), list.end());
      list.erase(std::unique(list.begin(), list.end()), list.end());
    }
  }

  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < n; ++i) {
    const Activation mode = state.activation[i];
    if (mode == Activation::Inactive) continue;
    candidates.clear();
    for (int c : neighbours[static_cast<std::size_t>(cell_of[i])]) {
      for (std::size_t j : cells[static_cast<std::size_t>(c)]) {
        if (j != i && state.activation[j] == mode) candidates.push_back(j);
      }
    }
    // ascending j reproduces the reference summation order
    std::sort(candidates.begin(), candidates.end());
    Vec2 acc;
    for (std::size_t j : candidates) {
      accumulate_pair(minimum_image_displacement(state.positions[i], state.positions[j],
                                                 params.half_width),
                      mode, params, acc);
    }
    add_force(f, i, mode, acc);
  }
  return f;
}

void integrate_step(ParticleState& state, const ForceVector& forces, const SimParams& params) {
  const double factor = params.step_factor();
  for (std::size_t i = 0; i < state.size(); ++i) {
    state.positions[i] =
        wrap_position(state.positions[i] + forces.total(i) * factor, params.half_width);
  }
}

void apply_activation_field(ParticleState& state, const ActionGrid& action, Rng& rng,
                            const SimParams& params) {
  if (action.n_grid() != params.n_grid) {
    throw InvalidAction("action grid is " + std::to_string(action.n_grid()) +
                        "x" + std::to_string(action.n_grid()) + ", expected " +
                        std::to_string(params.n_grid) + "x" + std::to_string(params.n_grid));
  }
  action.validate(params.interactions);
  const double p_off = params.deactivation_probability();
  for (std::size_t i = 0; i < state.size(); ++i) {
    const GridCell cell = locate_cell(state.positions[i], params);
    switch (action.at(cell.ix, cell.iy)) {
      case CellAction::Attractive:
        state.activation[i] = Activation::Attractive;
        break;
      case CellAction::Repulsive:
        state.activation[i] = Activation::Repulsive;
        break;
      case CellAction::None:
        if (state.activation[i] != Activation::Inactive && uniform01(rng) < p_off) {
          state.activation[i] = Activation::Inactive;
        }
        break;
    }
  }
}

}  // namespace activemix
