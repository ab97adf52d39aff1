#include <doctest.h>

#include <random>
#include <sstream>

#include <json.hpp>

#include "activemix/runner.hpp"

using namespace activemix;
using nlohmann::json;

namespace {

std::string transcript(const RunConfig& cfg, const std::string& script) {
  std::istringstream in(script);
  std::ostringstream out;
  serve(cfg, in, out);
  return out.str();
}

std::string digits_json(const ActionGrid& g) { return json(g.digits()).dump(); }

}  // namespace

TEST_CASE("batch runs are deterministic") {
  RunConfig cfg;
  cfg.policy.kind = PolicyKind::AttrRepSpreading;
  cfg.episodes = 2;
  std::ostringstream a, b;
  const auto sa = run_batch(cfg, {&a, {}});
  const auto sb = run_batch(cfg, {&b, {}});
  CHECK(a.str() == b.str());
  REQUIRE(sa.size() == 2);
  CHECK(sa[0].seed == 0);
  CHECK(sa[1].seed == 1);
  CHECK(sa[0].steps == 100);
  CHECK(sa[0].episode_return == doctest::Approx(sa[0].r_m_sum));
}

TEST_CASE("spectrum hook follows the stride") {
  RunConfig cfg;
  cfg.policy.kind = PolicyKind::CollapseAll;
  cfg.params.interactions = InteractionSet::AttractiveOnly;
  cfg.spectra_stride = 5;
  std::vector<int> times;
  RunSinks sinks;
  sinks.on_spectrum = [&](int, std::uint64_t, const SpectrumRecord& rec) {
    times.push_back(rec.t);
    CHECK(rec.n_attractive + rec.n_repulsive == static_cast<int>(rec.size()));
  };
  run_batch(cfg, sinks);
  REQUIRE(times.size() == 20);
  for (std::size_t k = 0; k < times.size(); ++k) CHECK(times[k] == static_cast<int>(5 * k));
}

TEST_CASE("serve transcript") {
  RunConfig cfg;
  const std::string out = transcript(cfg,
                                     "{\"cmd\":\"spec\"}\n"
                                     "\n"
                                     "{\"cmd\":\"step\",\"action\":[]}\n"
                                     "{\"cmd\":\"reset\",\"seed\":4}\n"
                                     "{\"cmd\":\"step\",\"action\":[1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1]}\n"
                                     "{\"cmd\":\"step\",\"action\":[1,1]}\n"
                                     "{\"cmd\":\"step\",\"action\":[3,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0]}\n"
                                     "{\"cmd\":\"step\"}\n"
                                     "{\"cmd\":\"dance\"}\n"
                                     "not json\n"
                                     "{\"cmd\":\"reset\",\"seed\":-1}\n"
                                     "{\"cmd\":\"close\"}\n"
                                     "{\"cmd\":\"spec\"}\n");
  std::istringstream lines(out);
  std::vector<json> r;
  for (std::string line; std::getline(lines, line);) r.push_back(json::parse(line));
  REQUIRE(r.size() == 11);
  CHECK(r[0]["n_particles"] == 96);
  CHECK(r[0]["obs_shape"] == json::array({2, 4, 4}));
  CHECK(r[0]["action_shape"] == json::array({16}));
  CHECK(r[0]["action_values"] == json::array({0, 1, 2}));
  CHECK(r[1]["error"] == "not_reset");
  CHECK(r[2]["t"] == 0);
  CHECK(r[2]["obs"].size() == 2);
  CHECK(r[3]["t"] == 1);
  CHECK(r[3]["reward_parts"].size() == 2);
  CHECK(r[3]["done"] == false);
  CHECK(r[4]["error"] == "invalid_action");
  CHECK(r[5]["error"] == "invalid_action");
  CHECK(r[6]["error"] == "bad_request");
  CHECK(r[7]["error"] == "unknown_cmd");
  CHECK(r[8]["error"] == "parse_error");
  CHECK(r[9]["error"] == "bad_request");
  CHECK(r[10]["closed"] == true);
  for (const json& j : r) {
    if (j.contains("error")) CHECK(j["message"].is_string());
  }
}

TEST_CASE("serve matches direct stepping and finishes episodes") {
  RunConfig cfg;
  cfg.env.alpha = 0.7;
  std::mt19937_64 gen(12);
  std::uniform_int_distribution<std::uint64_t> idx(0, action_space_size(4) - 1);
  std::vector<ActionGrid> actions;
  std::string script = "{\"cmd\":\"reset\",\"seed\":21}\n";
  for (int k = 0; k < 100; ++k) {
    actions.push_back(encode_action(idx(gen), 4));
    script += "{\"cmd\":\"step\",\"action\":" + digits_json(actions.back()) + "}\n";
  }
  script += "{\"cmd\":\"step\",\"action\":" + digits_json(actions.back()) + "}\n";
  const std::string out = transcript(cfg, script);
  CHECK(out == transcript(cfg, script));

  const auto reference = replay_actions(cfg, 21, actions);
  REQUIRE(reference.size() == 100);
  std::istringstream lines(out);
  std::string line;
  std::getline(lines, line);
  for (std::size_t k = 0; k < 100; ++k) {
    REQUIRE(std::getline(lines, line));
    const json j = json::parse(line);
    CHECK(j["reward"].get<double>() == reference[k].reward);
    CHECK(j["reward_parts"][0].get<double>() == reference[k].r_m);
    CHECK(j["done"].get<bool>() == (k == 99));
    CHECK(j["obs"].dump() == observation_json(reference[k].observation));
  }
  REQUIRE(std::getline(lines, line));
  CHECK(json::parse(line)["error"] == "episode_finished");
}

TEST_CASE("serve advertises the restricted action alphabet") {
  RunConfig cfg;
  cfg.params.interactions = InteractionSet::RepulsiveOnly;
  const json spec = json::parse(transcript(cfg, "{\"cmd\":\"spec\"}\n"));
  CHECK(spec["action_values"] == json::array({0, 2}));
  CHECK(spec["interaction_set"] == "repulsive-only");
  ServeSession session(cfg);
  session.handle("{\"cmd\":\"reset\"}");
  const json r = json::parse(session.handle(
      "{\"cmd\":\"step\",\"action\":[1,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0]}"));
  CHECK(r["error"] == "invalid_action");
}
