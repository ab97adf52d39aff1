#pragma once

#include <string>
#include <string_view>

namespace activemix {

enum class InteractionSet { AttractiveOnly, RepulsiveOnly, Both };

std::string_view to_string(InteractionSet set);
/// Accepts "attractive-only", "repulsive-only" and "both".
InteractionSet parse_interaction_set(std::string_view name);

inline bool allows_attractive(InteractionSet s) {
  return s != InteractionSet::RepulsiveOnly;
}
inline bool allows_repulsive(InteractionSet s) {
  return s != InteractionSet::AttractiveOnly;
}

/// Physical and episode constants. Defaults reproduce the reference
/// platform configuration (96 particles on a 4x4 grid, 100 steps).
struct SimParams {
  double dt = 0.05;
  double spring_k = 3.0;
  double lower_cutoff = 0.015;  // r_c
  double upper_cutoff = 1.5;    // R_c, also the repulsive rest length
  double decay_rate = 10.0;     // lambda
  double mass = 1.0;
  double half_width = 2.0;      // box spans [-L, L) per axis
  int n_particles = 96;
  int n_grid = 4;
  int n_steps = 100;
  InteractionSet interactions = InteractionSet::Both;
  // Multiplies dt^2/m in the position update. 1 reproduces the bare
  // equation of motion.
  double mobility = 1.0;

  /// Throws ConfigError on the first violated constraint.
  void validate() const;

  /// mobility * dt^2 / m
  double step_factor() const { return mobility * dt * dt / mass; }
  /// Per-step probability that an activated particle outside any
  /// activation area switches off: 1 - exp(-lambda dt).
  double deactivation_probability() const;
  double cell_width() const { return 2.0 * half_width / n_grid; }
  int n_cells() const { return n_grid * n_grid; }
};

}  // namespace activemix
