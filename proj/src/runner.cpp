#include "activemix/runner.hpp"

#include <istream>
#include <ostream>

#include <json.hpp>

#include "activemix/errors.hpp"
#include "activemix/policies.hpp"

namespace activemix {

std::vector<EpisodeSummary> run_batch(const RunConfig& cfg, const RunSinks& sinks) {
  cfg.validate();
  MixingEnv env(cfg.params, cfg.env);
  std::vector<EpisodeSummary> summaries;
  if (sinks.trajectory) *sinks.trajectory << trajectory_header(cfg) << '\n';

  int episode = 0;
  for (std::uint64_t seed : cfg.seeds()) {
    ObservationTensor obs = env.reset(seed);
    EpisodeSummary summary;
    summary.episode = episode;
    summary.seed = seed;

    PreIntegrationHook hook;
    if (sinks.on_spectrum) {
      hook = [&](const ParticleState& state, int t) {
        if (t % cfg.spectra_stride == 0) {
          sinks.on_spectrum(episode, seed, analyze_state(state, cfg.params, t, cfg.include_inactive));
        }
      };
    }

    while (!env.done()) {
      const int t = env.t();
      const ActionGrid action = policy_action(cfg.policy, obs, t);
      const StepResult result = env.step(action, hook);
      if (summary.steps == 0) {
        summary.first_r_m = result.r_m;
        summary.first_r_h = result.r_h;
      }
      summary.last_r_m = result.r_m;
      summary.last_r_h = result.r_h;
      summary.episode_return += result.reward;
      summary.r_m_sum += result.r_m;
      summary.r_h_sum += result.r_h;
      ++summary.steps;
      if (sinks.trajectory) {
        *sinks.trajectory << trajectory_step(episode, seed, result.t, action, result) << '\n';
      }
      obs = result.observation;
    }
    if (sinks.trajectory) *sinks.trajectory << trajectory_summary(summary, cfg.policy.kind) << '\n';
    summaries.push_back(summary);
    ++episode;
  }
  return summaries;
}

std::vector<StepResult> replay_actions(const RunConfig& cfg, std::uint64_t seed,
                                       const std::vector<ActionGrid>& actions) {
  MixingEnv env(cfg.params, cfg.env);
  env.reset(seed);
  std::vector<StepResult> out;
  for (const ActionGrid& a : actions) {
    if (env.done()) break;
    out.push_back(env.step(a));
  }
  return out;
}

namespace {

std::string error_response(std::string_view code, std::string_view message) {
  return JsonLine().field("error", code).field("message", message).str();
}

}  // namespace

ServeSession::ServeSession(RunConfig cfg) : cfg_(std::move(cfg)), env_(cfg_.params, cfg_.env) {
  cfg_.params.validate();
  cfg_.env.validate();
}

std::string ServeSession::spec_response() const {
  const int ng = cfg_.params.n_grid;
  const std::vector<int> obs_shape{2, ng, ng};
  const std::vector<int> action_shape{ng * ng};
  std::vector<int> values{0};
  if (allows_attractive(cfg_.params.interactions)) values.push_back(1);
  if (allows_repulsive(cfg_.params.interactions)) values.push_back(2);
  return JsonLine()
      .field("n_particles", cfg_.params.n_particles)
      .field("n_grid", ng)
      .field("n_steps", cfg_.params.n_steps)
      .field("obs_shape", std::span<const int>(obs_shape))
      .field("action_shape", std::span<const int>(action_shape))
      .field("action_values", std::span<const int>(values))
      .field("interaction_set", to_string(cfg_.params.interactions))
      .field("alpha", cfg_.env.alpha)
      .field("frame_skip", cfg_.env.frame_skip)
      .str();
}

std::string ServeSession::handle(const std::string& request) {
  using nlohmann::json;
  if (closed_) return error_response("closed", "session already closed");

  json msg;
  try {
    msg = json::parse(request);
  } catch (const json::parse_error& e) {
    return error_response("parse_error", e.what());
  }
  if (!msg.is_object() || !msg.contains("cmd") || !msg["cmd"].is_string()) {
    return error_response("bad_request", "request must be an object with a string 'cmd'");
  }
  const std::string cmd = msg["cmd"].get<std::string>();

  if (cmd == "spec") return spec_response();

  if (cmd == "close") {
    closed_ = true;
    return JsonLine().field("closed", true).str();
  }

  if (cmd == "reset") {
    std::uint64_t seed = cfg_.seed;
    if (msg.contains("seed")) {
      if (!msg["seed"].is_number_unsigned()) {
        return error_response("bad_request", "seed must be a non-negative integer");
      }
      seed = msg["seed"].get<std::uint64_t>();
    }
    const ObservationTensor obs = env_.reset(seed);
    return JsonLine().field("obs", obs).field("t", env_.t()).str();
  }

  if (cmd == "step") {
    if (!env_.started()) return error_response("not_reset", "step before reset");
    if (env_.done()) return error_response("episode_finished", "episode finished; send reset");
    if (!msg.contains("action") || !msg["action"].is_array()) {
      return error_response("bad_request", "step needs an 'action' array of cell digits");
    }
    std::vector<int> digits;
    for (const json& d : msg["action"]) {
      if (!d.is_number_integer() || d.get<std::int64_t>() < 0 || d.get<std::int64_t>() > 2) {
        return error_response("invalid_action", "action digits must be integers 0..2");
      }
      digits.push_back(d.get<int>());
    }
    try {
      const ActionGrid action = ActionGrid::from_digits(cfg_.params.n_grid, digits);
      const StepResult r = env_.step(action);
      const std::vector<double> parts{r.r_m, r.r_h};
      return JsonLine()
          .field("obs", r.observation)
          .field("reward", r.reward)
          .field("reward_parts", std::span<const double>(parts))
          .field("done", r.done)
          .field("t", r.t)
          .str();
    } catch (const InvalidAction& e) {
      return error_response("invalid_action", e.what());
    }
  }

  return error_response("unknown_cmd", "unknown cmd '" + cmd + "'");
}

void serve(const RunConfig& cfg, std::istream& in, std::ostream& out) {
  ServeSession session(cfg);
  std::string line;
  while (!session.closed() && std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out << session.handle(line) << '\n';
    out.flush();
  }
}

}  // namespace activemix
