#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "activemix/environment.hpp"
#include "activemix/params.hpp"
#include "activemix/policies.hpp"

namespace activemix {

/// Everything a batch run, spectrum extraction or serve session needs.
struct RunConfig {
  SimParams params;
  EnvOptions env;
  PolicySpec policy;

  // Either a single seed (episodes consecutive seeds starting there) or a
  // half-open range "a..b" that fixes the episode count.
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> seed_end;
  std::optional<int> episodes;

  // "-" writes to stdout. Relative paths resolve against output_dir. An
  // empty trajectory path means trajectory.jsonl for `run` and no
  // trajectory for `spectra`.
  std::string trajectory_path;
  std::string spectra_path = "spectra.jsonl";
  std::string histogram_path = "histogram.txt";
  std::filesystem::path output_dir;

  int spectra_stride = 1;
  int hist_bins = 200;
  double hist_lo = 0.9;
  double hist_hi = 1.1;
  bool include_inactive = false;

  /// Seeds of every episode, in run order.
  std::vector<std::uint64_t> seeds() const;
  int episode_count() const;
  /// Throws ConfigError / InvalidPolicy.
  void validate() const;
  /// Path with output_dir applied; "-" is returned unchanged.
  std::filesystem::path resolve(const std::string& path) const;
};

/// Environment variable naming the default directory for output files.
inline constexpr const char* kOutputDirEnv = "ACTIVEMIX_OUTPUT_DIR";

/// Sets one setting by key. Keys use underscores; dashes are accepted too
/// ("spring-k" == "spring_k"). Throws ConfigError on an unknown key or a
/// value that does not parse.
void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value);

/// Flat key-value document: one `key = value` per line, '#' starts a comment,
/// blank lines are ignored.
void apply_config_text(RunConfig& cfg, std::istream& in);
void apply_config_file(RunConfig& cfg, const std::filesystem::path& path);

/// All keys understood by apply_setting.
const std::vector<std::string_view>& setting_keys();

}  // namespace activemix
