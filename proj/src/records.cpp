#include "activemix/records.hpp"

#include <cmath>
#include <istream>
#include <optional>

#include <fmt/format.h>
#include <json.hpp>

#include "activemix/errors.hpp"

namespace activemix {

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  return fmt::format("{:.17g}", v);
}

void JsonLine::key(std::string_view k) {
  if (!first_) body_ += ',';
  first_ = false;
  body_ += '"';
  body_ += k;
  body_ += "\":";
}

JsonLine& JsonLine::field(std::string_view k, double v) {
  key(k);
  body_ += format_double(v);
  return *this;
}

JsonLine& JsonLine::field(std::string_view k, int v) {
  key(k);
  body_ += std::to_string(v);
  return *this;
}

JsonLine& JsonLine::field(std::string_view k, std::int64_t v) {
  key(k);
  body_ += std::to_string(v);
  return *this;
}

JsonLine& JsonLine::field(std::string_view k, std::uint64_t v) {
  key(k);
  body_ += std::to_string(v);
  return *this;
}

JsonLine& JsonLine::field(std::string_view k, bool v) {
  key(k);
  body_ += v ? "true" : "false";
  return *this;
}

JsonLine& JsonLine::field(std::string_view k, std::string_view v) {
  key(k);
  // values are identifiers and paths; escape only what JSON requires
  body_ += nlohmann::json(std::string(v)).dump();
  return *this;
}

JsonLine& JsonLine::field(std::string_view k, std::span<const double> values) {
  key(k);
  body_ += '[';
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) body_ += ',';
    body_ += format_double(values[i]);
  }
  body_ += ']';
  return *this;
}

JsonLine& JsonLine::field(std::string_view k, std::span<const int> values) {
  key(k);
  body_ += '[';
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) body_ += ',';
    body_ += std::to_string(values[i]);
  }
  body_ += ']';
  return *this;
}

JsonLine& JsonLine::field(std::string_view k, const ObservationTensor& obs) {
  key(k);
  body_ += observation_json(obs);
  return *this;
}

JsonLine& JsonLine::null_field(std::string_view k) {
  key(k);
  body_ += "null";
  return *this;
}

std::string observation_json(const ObservationTensor& obs) {
  std::string out = "[";
  for (int tag = 0; tag < 2; ++tag) {
    if (tag) out += ',';
    out += '[';
    for (int ix = 0; ix < obs.n_grid(); ++ix) {
      if (ix) out += ',';
      out += '[';
      for (int iy = 0; iy < obs.n_grid(); ++iy) {
        if (iy) out += ',';
        out += std::to_string(obs.at(static_cast<Tag>(tag), ix, iy));
      }
      out += ']';
    }
    out += ']';
  }
  out += ']';
  return out;
}

std::string trajectory_header(const RunConfig& cfg) {
  const SimParams& p = cfg.params;
  return JsonLine()
      .field("type", "config")
      .field("dt", p.dt)
      .field("spring_k", p.spring_k)
      .field("lower_cutoff", p.lower_cutoff)
      .field("upper_cutoff", p.upper_cutoff)
      .field("decay_rate", p.decay_rate)
      .field("mass", p.mass)
      .field("half_width", p.half_width)
      .field("n_particles", p.n_particles)
      .field("n_grid", p.n_grid)
      .field("n_steps", p.n_steps)
      .field("interaction_set", to_string(p.interactions))
      .field("mobility", p.mobility)
      .field("alpha", cfg.env.alpha)
      .field("frame_skip", cfg.env.frame_skip)
      .field("placement", cfg.env.placement == Placement::Uniform ? "uniform" : "stratified")
      .field("policy", to_string(cfg.policy.kind))
      .str();
}

std::string trajectory_step(int episode, std::uint64_t seed, int t, const ActionGrid& action,
                            const StepResult& result) {
  const std::vector<int> digits = action.digits();
  return JsonLine()
      .field("type", "step")
      .field("episode", episode)
      .field("seed", seed)
      .field("t", t)
      .field("action", std::span<const int>(digits))
      .field("counts", result.observation)
      .field("r_m", result.r_m)
      .field("r_h", result.r_h)
      .field("reward", result.reward)
      .str();
}

std::string trajectory_summary(const EpisodeSummary& s, PolicyKind policy) {
  return JsonLine()
      .field("type", "summary")
      .field("episode", s.episode)
      .field("seed", s.seed)
      .field("policy", to_string(policy))
      .field("steps", s.steps)
      .field("return", s.episode_return)
      .field("r_m_sum", s.r_m_sum)
      .field("r_h_sum", s.r_h_sum)
      .str();
}

std::string spectrum_line(int episode, std::uint64_t seed, const SpectrumRecord& rec,
                          double log_det_sum) {
  JsonLine line;
  line.field("episode", episode)
      .field("seed", seed)
      .field("t", rec.t)
      .field("na", static_cast<int>(rec.size()))
      .field("n_attractive", rec.n_attractive)
      .field("n_repulsive", rec.n_repulsive)
      .field("eigenvalues", std::span<const double>(rec.eigenvalues))
      .field("gershgorin_lo", rec.gershgorin.lo)
      .field("gershgorin_hi", rec.gershgorin.hi);
  if (rec.log_det.finite) {
    line.field("log_det", rec.log_det.value);
  } else {
    line.null_field("log_det");
  }
  line.field("log_det_finite", rec.log_det.finite);
  if (std::isfinite(log_det_sum)) {
    line.field("log_det_cumulative", log_det_sum);
  } else {
    line.null_field("log_det_cumulative");
  }
  return line.str();
}

VerifyReport verify_trajectory(std::istream& in) {
  using nlohmann::json;
  VerifyReport report;
  std::optional<SimParams> params;
  double alpha = 1.0;
  double ret = 0.0;
  double r_m_sum = 0.0;
  double r_h_sum = 0.0;
  int steps = 0;

  auto mismatch = [&](const std::string& what) {
    if (report.mismatches++ == 0) report.first_mismatch = what;
  };

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json rec;
    try {
      rec = json::parse(line);
      const std::string type = rec.at("type").get<std::string>();
      if (type == "config") {
        SimParams p;
        p.n_particles = rec.at("n_particles").get<int>();
        p.n_grid = rec.at("n_grid").get<int>();
        p.n_steps = rec.at("n_steps").get<int>();
        alpha = rec.at("alpha").get<double>();
        if (rec.at("frame_skip").get<int>() != 1) {
          throw ConfigError("trajectory written with frame_skip > 1 cannot be verified from counts");
        }
        params = p;
      } else if (type == "step") {
        if (!params) throw ConfigError("step record before config record");
        ObservationTensor obs(params->n_grid);
        const json& counts = rec.at("counts");
        for (int tag = 0; tag < 2; ++tag) {
          for (int ix = 0; ix < params->n_grid; ++ix) {
            for (int iy = 0; iy < params->n_grid; ++iy) {
              obs.at(static_cast<Tag>(tag), ix, iy) = counts.at(tag).at(ix).at(iy).get<int>();
            }
          }
        }
        const double r_m = mixing_reward(obs, *params);
        const double r_h = homogeneity_reward(obs, *params);
        const double reward = combined_reward(r_m, r_h, alpha);
        const std::string where = "line " + std::to_string(line_no);
        if (rec.at("r_m").get<double>() != r_m) mismatch(where + ": r_m");
        if (rec.at("r_h").get<double>() != r_h) mismatch(where + ": r_h");
        if (rec.at("reward").get<double>() != reward) mismatch(where + ": reward");
        ret += reward;
        r_m_sum += r_m;
        r_h_sum += r_h;
        ++steps;
        ++report.steps_checked;
      } else if (type == "summary") {
        const std::string where = "line " + std::to_string(line_no);
        if (rec.at("steps").get<int>() != steps) mismatch(where + ": steps");
        if (rec.at("return").get<double>() != ret) mismatch(where + ": return");
        if (rec.at("r_m_sum").get<double>() != r_m_sum) mismatch(where + ": r_m_sum");
        if (rec.at("r_h_sum").get<double>() != r_h_sum) mismatch(where + ": r_h_sum");
        ++report.summaries_checked;
        ret = r_m_sum = r_h_sum = 0.0;
        steps = 0;
      } else {
        throw ConfigError("unknown record type '" + type + "'");
      }
    } catch (const json::exception& e) {
      throw ConfigError("trajectory line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return report;
}

}  // namespace activemix
