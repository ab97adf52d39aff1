#include "activemix/params.hpp"

#include <cmath>
#include <string>

#include "activemix/errors.hpp"

namespace activemix {

std::string_view to_string(InteractionSet set) {
  switch (set) {
    case InteractionSet::AttractiveOnly:
      return "attractive-only";
    case InteractionSet::RepulsiveOnly:
      return "repulsive-only";
    case InteractionSet::Both:
      return "both";
  }
  return "both";
}

InteractionSet parse_interaction_set(std::string_view name) {
  if (name == "attractive-only" || name == "attractive") return InteractionSet::AttractiveOnly;
  if (name == "repulsive-only" || name == "repulsive") return InteractionSet::RepulsiveOnly;
  if (name == "both") return InteractionSet::Both;
  throw ConfigError("unknown interaction set '" + std::string(name) +
                    "' (expected attractive-only, repulsive-only or both)");
}

namespace {
void require(bool ok, const char* what) {
  if (!ok) throw ConfigError(std::string("invalid parameters: ") + what);
}
}  // namespace

void SimParams::validate() const {
  require(std::isfinite(dt) && dt > 0.0, "dt must be > 0");
  require(std::isfinite(spring_k) && spring_k >= 0.0, "spring_k must be >= 0");
  require(std::isfinite(mass) && mass > 0.0, "mass must be > 0");
  require(lower_cutoff >= 0.0 && lower_cutoff < upper_cutoff &&
              std::isfinite(upper_cutoff),
          "cutoffs must satisfy 0 <= lower_cutoff < upper_cutoff");
  require(std::isfinite(decay_rate) && decay_rate >= 0.0, "decay_rate must be >= 0");
  require(std::isfinite(half_width) && half_width > 0.0, "half_width must be > 0");
  require(n_particles >= 2 && n_particles % 2 == 0,
          "n_particles must be even and positive");
  require(n_grid >= 1, "n_grid must be >= 1");
  require(n_steps >= 1, "n_steps must be >= 1");
  require(std::isfinite(mobility) && mobility > 0.0, "mobility must be > 0");
}

double SimParams::deactivation_probability() const {
  return -std::expm1(-decay_rate * dt);
}

}  // namespace activemix
