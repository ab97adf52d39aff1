#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

#include "activemix/action_grid.hpp"
#include "activemix/config.hpp"
#include "activemix/environment.hpp"
#include "activemix/spectral.hpp"

namespace activemix {

/// Doubles are printed with 17 significant digits ("%.17g") so every record
/// round-trips bit-exactly; non-finite values become null.
std::string format_double(double v);

/// Builds one JSON object on a single line, keys in insertion order.
class JsonLine {
 public:
  JsonLine& field(std::string_view key, double v);
  JsonLine& field(std::string_view key, int v);
  JsonLine& field(std::string_view key, std::int64_t v);
  JsonLine& field(std::string_view key, std::uint64_t v);
  JsonLine& field(std::string_view key, bool v);
  JsonLine& field(std::string_view key, std::string_view v);
  JsonLine& field(std::string_view key, const char* v) { return field(key, std::string_view(v)); }
  JsonLine& field(std::string_view key, std::span<const double> values);
  JsonLine& field(std::string_view key, std::span<const int> values);
  /// Emits the counts as a nested [tag][x][y] array.
  JsonLine& field(std::string_view key, const ObservationTensor& obs);
  JsonLine& null_field(std::string_view key);

  std::string str() const { return body_ + "}"; }

 private:
  void key(std::string_view k);
  std::string body_ = "{";
  bool first_ = true;
};

std::string observation_json(const ObservationTensor& obs);

/// Header record opening every trajectory file: the parameters the rewards
/// depend on, so a verifier can recompute them.
std::string trajectory_header(const RunConfig& cfg);
std::string trajectory_step(int episode, std::uint64_t seed, int t, const ActionGrid& action,
                            const StepResult& result);

struct EpisodeSummary {
  int episode = 0;
  std::uint64_t seed = 0;
  int steps = 0;
  double episode_return = 0.0;
  double r_m_sum = 0.0;
  double r_h_sum = 0.0;
  double first_r_m = 0.0;  // per-step parts after the first and last steps
  double first_r_h = 0.0;
  double last_r_m = 0.0;
  double last_r_h = 0.0;
};

std::string trajectory_summary(const EpisodeSummary& s, PolicyKind policy);
/// log_det_sum is the running sum of log_det over the episode's records so
/// far, this one included; NaN once any of them was not finite.
std::string spectrum_line(int episode, std::uint64_t seed, const SpectrumRecord& rec,
                          double log_det_sum);

struct VerifyReport {
  int steps_checked = 0;
  int summaries_checked = 0;
  int mismatches = 0;
  std::string first_mismatch;

  bool ok() const { return mismatches == 0 && steps_checked > 0; }
};

/// Recomputes r_m, r_h and the blend of every step record from its counts
/// alone and compares them with the stored values (exactly, as doubles).
/// Summary records are checked against the running sums. Throws ConfigError
/// on a malformed file or one written with frame_skip > 1.
VerifyReport verify_trajectory(std::istream& in);

}  // namespace activemix
