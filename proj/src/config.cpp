#include "activemix/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "activemix/errors.hpp"

namespace activemix {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, const char* expected) {
  throw ConfigError("setting '" + std::string(key) + "': cannot parse '" + std::string(value) +
                    "' as " + expected);
}

template <typename T>
T parse_number(std::string_view key, std::string_view value, const char* expected) {
  value = trim(value);
  T out{};
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) bad_value(key, value, expected);
  return out;
}

int parse_int(std::string_view key, std::string_view v) { return parse_number<int>(key, v, "an integer"); }
double parse_double(std::string_view key, std::string_view v) {
  return parse_number<double>(key, v, "a number");
}
std::uint64_t parse_u64(std::string_view key, std::string_view v) {
  return parse_number<std::uint64_t>(key, v, "a non-negative integer");
}

bool parse_bool(std::string_view key, std::string_view v) {
  v = trim(v);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  bad_value(key, v, "a boolean");
}

std::vector<int> parse_int_list(std::string_view key, std::string_view v) {
  std::vector<int> out;
  v = trim(v);
  while (!v.empty()) {
    const auto comma = v.find(',');
    out.push_back(parse_int(key, trim(v.substr(0, comma))));
    if (comma == std::string_view::npos) break;
    v = v.substr(comma + 1);
  }
  return out;
}

using Setter = std::function<void(RunConfig&, std::string_view key, std::string_view value)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      // physics
      {"dt", [](RunConfig& c, auto k, auto v) { c.params.dt = parse_double(k, v); }},
      {"spring_k", [](RunConfig& c, auto k, auto v) { c.params.spring_k = parse_double(k, v); }},
      {"lower_cutoff", [](RunConfig& c, auto k, auto v) { c.params.lower_cutoff = parse_double(k, v); }},
      {"upper_cutoff", [](RunConfig& c, auto k, auto v) { c.params.upper_cutoff = parse_double(k, v); }},
      {"decay_rate", [](RunConfig& c, auto k, auto v) { c.params.decay_rate = parse_double(k, v); }},
      {"mass", [](RunConfig& c, auto k, auto v) { c.params.mass = parse_double(k, v); }},
      {"half_width", [](RunConfig& c, auto k, auto v) { c.params.half_width = parse_double(k, v); }},
      {"n_particles", [](RunConfig& c, auto k, auto v) { c.params.n_particles = parse_int(k, v); }},
      {"n_grid", [](RunConfig& c, auto k, auto v) { c.params.n_grid = parse_int(k, v); }},
      {"n_steps", [](RunConfig& c, auto k, auto v) { c.params.n_steps = parse_int(k, v); }},
      {"interaction_set",
       [](RunConfig& c, auto, auto v) { c.params.interactions = parse_interaction_set(trim(v)); }},
      {"mobility", [](RunConfig& c, auto k, auto v) { c.params.mobility = parse_double(k, v); }},
      // environment
      {"alpha", [](RunConfig& c, auto k, auto v) { c.env.alpha = parse_double(k, v); }},
      {"frame_skip", [](RunConfig& c, auto k, auto v) { c.env.frame_skip = parse_int(k, v); }},
      {"placement",
       [](RunConfig& c, auto k, auto v) {
         v = trim(v);
         if (v == "uniform") {
           c.env.placement = Placement::Uniform;
         } else if (v == "stratified") {
           c.env.placement = Placement::Stratified;
         } else {
           bad_value(k, v, "uniform or stratified");
         }
       }},
      {"cell_list", [](RunConfig& c, auto k, auto v) { c.env.use_cell_list = parse_bool(k, v); }},
      // episodes
      {"seed",
       [](RunConfig& c, auto k, auto v) {
         v = trim(v);
         const auto dots = v.find("..");
         if (dots == std::string_view::npos) {
           c.seed = parse_u64(k, v);
           c.seed_end.reset();
         } else {
           c.seed = parse_u64(k, v.substr(0, dots));
           c.seed_end = parse_u64(k, v.substr(dots + 2));
           if (*c.seed_end <= c.seed) throw ConfigError("seed range a..b needs a < b");
         }
       }},
      {"episodes", [](RunConfig& c, auto k, auto v) { c.episodes = parse_int(k, v); }},
      // policy
      {"policy", [](RunConfig& c, auto, auto v) { c.policy.kind = parse_policy_kind(trim(v)); }},
      {"careful", [](RunConfig& c, auto k, auto v) { c.policy.careful = parse_bool(k, v); }},
      {"careful_period", [](RunConfig& c, auto k, auto v) { c.policy.careful_period = parse_int(k, v); }},
      {"careful_duty", [](RunConfig& c, auto k, auto v) { c.policy.careful_duty = parse_double(k, v); }},
      {"cell_mask", [](RunConfig& c, auto k, auto v) { c.policy.cell_mask = parse_int_list(k, v); }},
      {"little_interval", [](RunConfig& c, auto k, auto v) { c.policy.little_interval = parse_int(k, v); }},
      {"side",
       [](RunConfig& c, auto k, auto v) {
         v = trim(v);
         if (v == "left") {
           c.policy.side = Side::Left;
         } else if (v == "right") {
           c.policy.side = Side::Right;
         } else {
           bad_value(k, v, "left or right");
         }
       }},
      {"columns", [](RunConfig& c, auto k, auto v) { c.policy.columns = parse_int(k, v); }},
      {"spread_margin", [](RunConfig& c, auto k, auto v) { c.policy.spread_margin = parse_double(k, v); }},
      {"period", [](RunConfig& c, auto k, auto v) { c.policy.period = parse_int(k, v); }},
      {"duty", [](RunConfig& c, auto k, auto v) { c.policy.duty = parse_double(k, v); }},
      {"collapse", [](RunConfig& c, auto k, auto v) { c.policy.collapse = parse_bool(k, v); }},
      {"no_collapse_scale",
       [](RunConfig& c, auto k, auto v) { c.policy.no_collapse_scale = parse_double(k, v); }},
      // outputs
      {"trajectory", [](RunConfig& c, auto, auto v) { c.trajectory_path = std::string(trim(v)); }},
      {"spectra_out", [](RunConfig& c, auto, auto v) { c.spectra_path = std::string(trim(v)); }},
      {"histogram_out", [](RunConfig& c, auto, auto v) { c.histogram_path = std::string(trim(v)); }},
      {"output_dir", [](RunConfig& c, auto, auto v) { c.output_dir = std::string(trim(v)); }},
      {"stride", [](RunConfig& c, auto k, auto v) { c.spectra_stride = parse_int(k, v); }},
      {"hist_bins", [](RunConfig& c, auto k, auto v) { c.hist_bins = parse_int(k, v); }},
      {"hist_lo", [](RunConfig& c, auto k, auto v) { c.hist_lo = parse_double(k, v); }},
      {"hist_hi", [](RunConfig& c, auto k, auto v) { c.hist_hi = parse_double(k, v); }},
      {"include_inactive", [](RunConfig& c, auto k, auto v) { c.include_inactive = parse_bool(k, v); }},
  };
  return table;
}

}  // namespace

const std::vector<std::string_view>& setting_keys() {
  static const std::vector<std::string_view> keys = [] {
    std::vector<std::string_view> out;
    for (const auto& [k, _] : setters()) out.emplace_back(k);
    return out;
  }();
  return keys;
}

void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value) {
  std::string normalized(trim(key));
  std::replace(normalized.begin(), normalized.end(), '-', '_');
  const auto it = setters().find(normalized);
  if (it == setters().end()) throw ConfigError("unknown setting '" + std::string(key) + "'");
  it->second(cfg, normalized, value);
}

void apply_config_text(RunConfig& cfg, std::istream& in) {
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    apply_setting(cfg, view.substr(0, eq), view.substr(eq + 1));
  }
}

void apply_config_file(RunConfig& cfg, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  apply_config_text(cfg, in);
}

std::vector<std::uint64_t> RunConfig::seeds() const {
  const int n = episode_count();
  std::vector<std::uint64_t> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int e = 0; e < n; ++e) out.push_back(seed + static_cast<std::uint64_t>(e));
  return out;
}

int RunConfig::episode_count() const {
  if (seed_end) {
    if (*seed_end <= seed) throw ConfigError("seed range a..b needs a < b");
    const std::uint64_t span = *seed_end - seed;
    if (span > 1'000'000'000ULL) throw ConfigError("seed range too large");
    const int n = static_cast<int>(span);
    if (episodes && *episodes != n) {
      throw ConfigError("episodes (" + std::to_string(*episodes) +
                        ") does not match the seed range size (" + std::to_string(n) + ")");
    }
    return n;
  }
  return episodes.value_or(1);
}

void RunConfig::validate() const {
  params.validate();
  env.validate();
  if (episode_count() < 1) throw ConfigError("episodes must be >= 1");
  if (spectra_stride < 1) throw ConfigError("stride must be >= 1");
  if (hist_bins < 1) throw ConfigError("hist_bins must be >= 1");
  if (!(hist_lo < hist_hi)) throw ConfigError("hist_lo must be < hist_hi");
  policy.validate(params.interactions, params.n_grid);
}

std::filesystem::path RunConfig::resolve(const std::string& path) const {
  if (path == "-") return path;
  std::filesystem::path p(path);
  if (p.is_relative() && !output_dir.empty()) return output_dir / p;
  return p;
}

}  // namespace activemix
