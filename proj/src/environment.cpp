#include "activemix/environment.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "activemix/errors.hpp"

namespace activemix {

ObservationTensor::ObservationTensor(int n_grid)
    : n_grid_(n_grid),
      counts_(2 * static_cast<std::size_t>(n_grid) * static_cast<std::size_t>(n_grid), 0) {}

int ObservationTensor::total() const {
  return std::accumulate(counts_.begin(), counts_.end(), 0);
}

int ObservationTensor::tag_total(Tag tag) const {
  const auto plane = counts_.size() / 2;
  const auto begin = counts_.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(tag) * plane);
  return std::accumulate(begin, begin + static_cast<std::ptrdiff_t>(plane), 0);
}

ObservationTensor bin_observation(const ParticleState& state, const SimParams& params) {
  ObservationTensor obs(params.n_grid);
  for (std::size_t i = 0; i < state.size(); ++i) {
    const GridCell c = locate_cell(state.positions[i], params);
    ++obs.at(state.tags[i], c.ix, c.iy);
  }
  return obs;
}

double mixing_reward(const ObservationTensor& obs, const SimParams& params) {
  const double per_row = static_cast<double>(params.n_particles) / params.n_grid;
  const double norm = per_row * per_row;
  double sum = 0.0;
  for (int ix = 0; ix < obs.n_grid(); ++ix) {
    for (int iy = 0; iy < obs.n_grid(); ++iy) {
      const double diff = obs.at(Tag::Left, ix, iy) - obs.at(Tag::Right, ix, iy);
      sum += diff * diff;
    }
  }
  return 0.0 - sum / (params.n_steps * norm);
}

double homogeneity_reward(const ObservationTensor& obs, const SimParams& params) {
  const double n_cells = params.n_cells();
  const double np = params.n_particles;
  const double norm = np * np * (1.0 - 1.0 / n_cells);
  if (norm == 0.0) return 0.0;
  const double mean = np / n_cells;
  double sum = 0.0;
  for (int ix = 0; ix < obs.n_grid(); ++ix) {
    for (int iy = 0; iy < obs.n_grid(); ++iy) {
      const double dev = mean - obs.occupancy(ix, iy);
      sum += dev * dev;
    }
  }
  return 0.0 - sum / (params.n_steps * norm);
}

double combined_reward(double r_m, double r_h, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw ConfigError("alpha must lie in [0, 1], got " + std::to_string(alpha));
  }
  return alpha * r_m + (1.0 - alpha) * r_h;
}

ParticleState init_particles(Rng& rng, const SimParams& params, Placement placement) {
  params.validate();
  const auto n = static_cast<std::size_t>(params.n_particles);
  const double L = params.half_width;
  ParticleState s;
  s.positions.resize(n);
  s.activation.assign(n, Activation::Inactive);
  s.tags.resize(n);
  for (std::size_t i = 0; i < n; ++i) s.tags[i] = i < n / 2 ? Tag::Left : Tag::Right;

  if (placement == Placement::Uniform) {
    for (std::size_t i = 0; i < n; ++i) {
      const double x0 = s.tags[i] == Tag::Left ? -L : 0.0;
      const double x = x0 + uniform01(rng) * L;
      const double y = -L + uniform01(rng) * 2.0 * L;
      s.positions[i] = wrap_position({x, y}, L);
    }
    return s;
  }

  const int ng = params.n_grid;
  if (ng % 2 != 0 || params.n_particles % params.n_cells() != 0) {
    throw ConfigError("stratified placement needs an even n_grid and n_particles divisible by n_grid^2");
  }
  const int per_cell = params.n_particles / params.n_cells();
  const double w = params.cell_width();
  std::size_t i = 0;
  for (int ix = 0; ix < ng; ++ix) {
    for (int iy = 0; iy < ng; ++iy) {
      for (int k = 0; k < per_cell; ++k, ++i) {
        const double x = -L + (ix + uniform01(rng)) * w;
        const double y = -L + (iy + uniform01(rng)) * w;
        // columns ix < ng/2 are the left half, filled first
        s.positions[i] = wrap_position({x, y}, L);
      }
    }
  }
  return s;
}

void EnvOptions::validate() const {
  combined_reward(0.0, 0.0, alpha);
  if (frame_skip < 1) throw ConfigError("frame_skip must be >= 1");
}

MixingEnv::MixingEnv(SimParams params, EnvOptions options)
    : params_(params), options_(options) {
  params_.validate();
  options_.validate();
}

ObservationTensor MixingEnv::reset(std::uint64_t seed) {
  rng_.seed(seed);
  state_ = init_particles(rng_, params_, options_.placement);
  t_ = 0;
  started_ = true;
  return bin_observation(state_, params_);
}

StepResult MixingEnv::step(const ActionGrid& action, const PreIntegrationHook& hook) {
  if (!started_ || done()) throw EpisodeFinished();
  if (action.n_grid() != params_.n_grid) {
    throw InvalidAction("action grid must be " + std::to_string(params_.n_grid) + "x" +
                        std::to_string(params_.n_grid));
  }
  action.validate(params_.interactions);

  StepResult result{ObservationTensor(params_.n_grid)};
  const int inner = std::min(options_.frame_skip, params_.n_steps - t_);
  for (int k = 0; k < inner; ++k) {
    apply_activation_field(state_, action, rng_, params_);
    if (hook) hook(state_, t_);
    const ForceVector forces = options_.use_cell_list ? compute_forces_cell_list(state_, params_)
                                                      : compute_forces(state_, params_);
    integrate_step(state_, forces, params_);
    ++t_;
    result.observation = bin_observation(state_, params_);
    result.r_m += mixing_reward(result.observation, params_);
    result.r_h += homogeneity_reward(result.observation, params_);
  }
  result.reward = combined_reward(result.r_m, result.r_h, options_.alpha);
  result.t = t_;
  result.done = done();
  return result;
}

}  // namespace activemix
