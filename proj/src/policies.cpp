#include "activemix/policies.hpp"

#include <array>
#include <cmath>
#include <string>
#include <utility>

#include "activemix/errors.hpp"

namespace activemix {

namespace {

constexpr std::array<std::pair<PolicyKind, std::string_view>, 8> kNames{{
    {PolicyKind::NoOp, "no_op"},
    {PolicyKind::CollapseAll, "collapse_all"},
    {PolicyKind::CollapseSome, "collapse_some"},
    {PolicyKind::ActivateLittle, "activate_little"},
    {PolicyKind::ActivateOneSide, "activate_one_side"},
    {PolicyKind::RepulsiveSpreading, "repulsive_spreading"},
    {PolicyKind::AttrRepSpreading, "attr_rep_spreading"},
    {PolicyKind::Oscillation, "oscillation"},
}};

std::vector<int> central_cells(int n_grid) {
  const int hi = n_grid / 2;
  const int lo = n_grid % 2 == 0 ? hi - 1 : hi;
  std::vector<int> cells;
  for (int ix = lo; ix <= hi; ++ix) {
    for (int iy = lo; iy <= hi; ++iy) cells.push_back(ix * n_grid + iy);
  }
  return cells;
}

int ceil_steps(double fraction, int period) {
  return static_cast<int>(std::ceil(fraction * period));
}

}  // namespace

std::string_view to_string(PolicyKind kind) {
  for (const auto& [k, name] : kNames) {
    if (k == kind) return name;
  }
  return "no_op";
}

PolicyKind parse_policy_kind(std::string_view name) {
  for (const auto& [k, n] : kNames) {
    if (n == name) return k;
  }
  throw InvalidPolicy("unknown policy '" + std::string(name) + "'");
}

bool needs_attractive(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::CollapseAll:
    case PolicyKind::CollapseSome:
    case PolicyKind::ActivateLittle:
    case PolicyKind::AttrRepSpreading:
    case PolicyKind::Oscillation:
      return true;
    default:
      return false;
  }
}

bool needs_repulsive(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::ActivateOneSide:
    case PolicyKind::RepulsiveSpreading:
    case PolicyKind::AttrRepSpreading:
    case PolicyKind::Oscillation:
      return true;
    default:
      return false;
  }
}

void PolicySpec::validate(InteractionSet set, int n_grid) const {
  const std::string name(to_string(kind));
  if ((needs_attractive(kind) && !allows_attractive(set)) ||
      (needs_repulsive(kind) && !allows_repulsive(set))) {
    throw InvalidPolicy("policy " + name + " is not available with interaction set " +
                        std::string(to_string(set)));
  }
  auto require = [&](bool ok, const char* what) {
    if (!ok) throw InvalidPolicy("policy " + name + ": " + what);
  };
  switch (kind) {
    case PolicyKind::CollapseAll:
      if (careful) {
        require(careful_period >= 1, "careful_period must be >= 1");
        require(careful_duty > 0.0 && careful_duty <= 1.0, "careful_duty must lie in (0, 1]");
      }
      break;
    case PolicyKind::CollapseSome:
      for (int c : cell_mask) require(c >= 0 && c < n_grid * n_grid, "cell mask index out of range");
      break;
    case PolicyKind::ActivateLittle:
      require(little_interval >= 1, "little_interval must be >= 1");
      break;
    case PolicyKind::ActivateOneSide:
      require(columns >= 0 && columns <= n_grid, "columns must lie in [0, n_grid]");
      break;
    case PolicyKind::RepulsiveSpreading:
    case PolicyKind::AttrRepSpreading:
      require(spread_margin >= 0.0, "spread_margin must be >= 0");
      break;
    case PolicyKind::Oscillation:
      require(period >= 1, "period must be >= 1");
      require(duty >= 0.0 && duty <= 1.0, "duty must lie in [0, 1]");
      require(no_collapse_scale > 0.0 && no_collapse_scale <= 1.0,
              "no_collapse_scale must lie in (0, 1]");
      break;
    case PolicyKind::NoOp:
      break;
  }
}

int oscillation_attractive_steps(const PolicySpec& spec) {
  const double fraction = spec.collapse ? spec.duty : spec.duty * spec.no_collapse_scale;
  return ceil_steps(fraction, spec.period);
}

ActionGrid policy_action(const PolicySpec& spec, const ObservationTensor& obs, int t) {
  const int ng = obs.n_grid();
  switch (spec.kind) {
    case PolicyKind::NoOp:
      return ActionGrid(ng);

    case PolicyKind::CollapseAll: {
      if (!spec.careful) return ActionGrid(ng, CellAction::Attractive);
      const bool on = t % spec.careful_period < ceil_steps(spec.careful_duty, spec.careful_period);
      return ActionGrid(ng, on ? CellAction::Attractive : CellAction::None);
    }

    case PolicyKind::CollapseSome: {
      ActionGrid grid(ng);
      const std::vector<int> mask = spec.cell_mask.empty() ? central_cells(ng) : spec.cell_mask;
      for (int c : mask) grid.set(c / ng, c % ng, CellAction::Attractive);
      return grid;
    }

    case PolicyKind::ActivateLittle: {
      ActionGrid grid(ng);
      if (t % spec.little_interval != 0) return grid;
      int best = 0;
      int best_count = -1;
      for (int c = 0; c < ng * ng; ++c) {
        const int occ = obs.occupancy(c / ng, c % ng);
        if (occ > best_count) {
          best = c;
          best_count = occ;
        }
      }
      grid.set(best / ng, best % ng, CellAction::Attractive);
      return grid;
    }

    case PolicyKind::ActivateOneSide: {
      ActionGrid grid(ng);
      for (int k = 0; k < spec.columns; ++k) {
        const int ix = spec.side == Side::Left ? k : ng - 1 - k;
        for (int iy = 0; iy < ng; ++iy) grid.set(ix, iy, CellAction::Repulsive);
      }
      return grid;
    }

    case PolicyKind::RepulsiveSpreading:
    case PolicyKind::AttrRepSpreading: {
      ActionGrid grid(ng);
      const double mean = static_cast<double>(obs.total()) / (ng * ng);
      for (int ix = 0; ix < ng; ++ix) {
        for (int iy = 0; iy < ng; ++iy) {
          const double occ = obs.occupancy(ix, iy);
          if (occ > mean + spec.spread_margin) {
            grid.set(ix, iy, CellAction::Repulsive);
          } else if (spec.kind == PolicyKind::AttrRepSpreading &&
                     occ < mean - spec.spread_margin) {
            grid.set(ix, iy, CellAction::Attractive);
          }
        }
      }
      return grid;
    }

    case PolicyKind::Oscillation: {
      const bool attract = t % spec.period < oscillation_attractive_steps(spec);
      return ActionGrid(ng, attract ? CellAction::Attractive : CellAction::Repulsive);
    }
  }
  return ActionGrid(ng);
}

}  // namespace activemix
