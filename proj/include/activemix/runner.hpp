#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "activemix/config.hpp"
#include "activemix/environment.hpp"
#include "activemix/records.hpp"
#include "activemix/spectral.hpp"

namespace activemix {

using SpectrumSink =
    std::function<void(int episode, std::uint64_t seed, const SpectrumRecord& record)>;

/// Where a batch sends its output. Null members are skipped.
struct RunSinks {
  std::ostream* trajectory = nullptr;  // header, step and summary records
  SpectrumSink on_spectrum;            // called every cfg.spectra_stride steps
};

/// Runs cfg.episode_count() episodes of the scripted policy. Throws
/// ConfigError / InvalidPolicy before anything is written if cfg is invalid.
std::vector<EpisodeSummary> run_batch(const RunConfig& cfg, const RunSinks& sinks);

/// Replays a fixed action sequence from one seed and returns the per-step
/// results; the reference path for protocol-fidelity checks.
std::vector<StepResult> replay_actions(const RunConfig& cfg, std::uint64_t seed,
                                       const std::vector<ActionGrid>& actions);

/// One request/response serve session over a single environment.
class ServeSession {
 public:
  explicit ServeSession(RunConfig cfg);

  /// Handles one request line and returns the response line (no newline).
  std::string handle(const std::string& request);
  bool closed() const { return closed_; }

 private:
  std::string spec_response() const;

  RunConfig cfg_;
  MixingEnv env_;
  bool closed_ = false;
};

/// Reads request lines from `in` until EOF or a close request, writing one
/// response line per non-blank request to `out` and flushing after each.
void serve(const RunConfig& cfg, std::istream& in, std::ostream& out);

}  // namespace activemix
