#pragma once

#include <string_view>
#include <vector>

#include "activemix/action_grid.hpp"
#include "activemix/environment.hpp"
#include "activemix/params.hpp"

namespace activemix {

enum class PolicyKind {
  NoOp,
  CollapseAll,
  CollapseSome,
  ActivateLittle,
  ActivateOneSide,
  RepulsiveSpreading,
  AttrRepSpreading,
  Oscillation,
};

enum class Side { Left, Right };

std::string_view to_string(PolicyKind kind);
PolicyKind parse_policy_kind(std::string_view name);

/// Scripted controller description. Only the fields of the selected kind are
/// read; the rest keep their defaults.
struct PolicySpec {
  PolicyKind kind = PolicyKind::NoOp;

  // collapse_all: with `careful`, attract only during the first
  // ceil(careful_duty * careful_period) steps of each period.
  bool careful = false;
  int careful_period = 4;
  double careful_duty = 0.25;

  // collapse_some: flat cell indices (ix * Ng + iy) to keep attractive.
  // Empty selects the central cells.
  std::vector<int> cell_mask;

  // activate_little: attract the most crowded cell every `little_interval`
  // steps, nothing otherwise.
  int little_interval = 4;

  // activate_one_side: `columns` x-bin columns from `side` set repulsive.
  Side side = Side::Left;
  int columns = 2;

  // repulsive_spreading / attr_rep_spreading: occupancy above
  // mean + spread_margin repels, below mean - spread_margin attracts.
  double spread_margin = 0.0;

  // oscillation: per period, ceil(duty * period) attractive steps then
  // repulsive ones. Without collapse the attractive phase is scaled by
  // no_collapse_scale.
  int period = 10;
  double duty = 0.5;
  bool collapse = true;
  double no_collapse_scale = 0.5;

  /// Throws InvalidPolicy for out-of-range parameters or when the kind needs
  /// an interaction the set does not provide.
  void validate(InteractionSet set, int n_grid) const;
};

/// Interactions a policy kind emits.
bool needs_attractive(PolicyKind kind);
bool needs_repulsive(PolicyKind kind);

/// Deterministic grid for (spec, observation, step index t).
ActionGrid policy_action(const PolicySpec& spec, const ObservationTensor& obs, int t);

/// Attractive steps per oscillation period.
int oscillation_attractive_steps(const PolicySpec& spec);

}  // namespace activemix
