#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "activemix/action_grid.hpp"
#include "activemix/dynamics.hpp"
#include "activemix/params.hpp"
#include "activemix/random.hpp"

namespace activemix {

/// Per-tag, per-cell particle counts, indexed (tag, x-bin, y-bin) and stored
/// at tag * Ng^2 + ix * Ng + iy.
class ObservationTensor {
 public:
  explicit ObservationTensor(int n_grid);

  int n_grid() const { return n_grid_; }
  int& at(Tag tag, int ix, int iy) { return counts_[index(tag, ix, iy)]; }
  int at(Tag tag, int ix, int iy) const { return counts_[index(tag, ix, iy)]; }
  /// Left plus right count of one cell.
  int occupancy(int ix, int iy) const {
    return at(Tag::Left, ix, iy) + at(Tag::Right, ix, iy);
  }
  int total() const;
  int tag_total(Tag tag) const;
  const std::vector<int>& flat() const { return counts_; }

  friend bool operator==(const ObservationTensor&, const ObservationTensor&) = default;

 private:
  std::size_t index(Tag tag, int ix, int iy) const {
    const auto ng = static_cast<std::size_t>(n_grid_);
    return static_cast<std::size_t>(tag) * ng * ng + static_cast<std::size_t>(ix) * ng +
           static_cast<std::size_t>(iy);
  }

  int n_grid_;
  std::vector<int> counts_;
};

ObservationTensor bin_observation(const ParticleState& state, const SimParams& params);

/// Per-step mixing reward -(1 / (Nt Nm)) sum (M_l - M_r)^2, Nm = (Np / Ng)^2.
double mixing_reward(const ObservationTensor& obs, const SimParams& params);
/// Per-step homogeneity reward -(1 / (Nt Nh)) sum (Np / Ng^2 - M_l - M_r)^2,
/// Nh = Np^2 (1 - 1 / Ng^2). Zero when Ng = 1.
double homogeneity_reward(const ObservationTensor& obs, const SimParams& params);
/// alpha * r_m + (1 - alpha) * r_h; ConfigError unless alpha is in [0, 1].
double combined_reward(double r_m, double r_h, double alpha);

enum class Placement {
  Uniform,     // each half filled uniformly at random
  Stratified,  // every half-box cell receives exactly Np / Ng^2 particles
};

/// Left-tagged particles (indices [0, Np/2)) on [-L, 0) x [-L, L), right-tagged
/// on [0, L) x [-L, L), all inactive. Consumes draws from rng.
ParticleState init_particles(Rng& rng, const SimParams& params,
                             Placement placement = Placement::Uniform);

struct EnvOptions {
  double alpha = 1.0;
  int frame_skip = 1;  // simulation steps per action
  Placement placement = Placement::Uniform;
  bool use_cell_list = false;

  void validate() const;
};

struct StepResult {
  ObservationTensor observation;
  double reward = 0.0;
  double r_m = 0.0;  // mixing part, before the alpha blend
  double r_h = 0.0;  // homogeneity part, before the alpha blend
  bool done = false;
  int t = 0;         // simulation steps taken so far
};

/// Called once per simulation step after the activation field is applied and
/// before forces are computed; receives the step index t being taken.
using PreIntegrationHook = std::function<void(const ParticleState&, int t)>;

/// One mixing episode. A seed fully determines the initial condition and the
/// deactivation draws, so (seed, action sequence) determines every result.
class MixingEnv {
 public:
  MixingEnv(SimParams params, EnvOptions options = {});

  /// Starts a new episode; returns the initial observation.
  ObservationTensor reset(std::uint64_t seed);

  /// Applies the action for frame_skip simulation steps (fewer if the episode
  /// ends first). Rewards of the inner steps are summed. Throws InvalidAction
  /// or EpisodeFinished; a rejected action leaves the episode untouched.
  StepResult step(const ActionGrid& action, const PreIntegrationHook& hook = {});

  const SimParams& params() const { return params_; }
  const EnvOptions& options() const { return options_; }
  const ParticleState& state() const { return state_; }
  int t() const { return t_; }
  bool started() const { return started_; }
  bool done() const { return started_ && t_ >= params_.n_steps; }

 private:
  SimParams params_;
  EnvOptions options_;
  Rng rng_;
  ParticleState state_;
  int t_ = 0;
  bool started_ = false;
};

}  // namespace activemix
