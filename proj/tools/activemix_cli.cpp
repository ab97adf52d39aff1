// Command-line front end: run scripted episodes, extract update-matrix
// spectra, serve the environment over stdio, verify trajectory files.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "activemix/config.hpp"
#include "activemix/errors.hpp"
#include "activemix/records.hpp"
#include "activemix/runner.hpp"
#include "activemix/spectral.hpp"

namespace {

using activemix::RunConfig;

struct SettingFlags {
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
  std::string config_path;
};

void add_setting_flags(CLI::App* cmd, SettingFlags& flags) {
  for (std::string_view key : activemix::setting_keys()) {
    std::string flag(key);
    std::replace(flag.begin(), flag.end(), '_', '-');
    auto& slot = flags.values[std::string(key)];
    flags.options[std::string(key)] = cmd->add_option("--" + flag, slot);
  }
  cmd->add_option("--config", flags.config_path,
                  "flat key = value file; its entries override command-line flags");
}

RunConfig build_config(const SettingFlags& flags) {
  RunConfig cfg;
  if (const char* dir = std::getenv(activemix::kOutputDirEnv); dir && *dir) cfg.output_dir = dir;
  for (const auto& [key, opt] : flags.options) {
    if (opt->count() > 0) activemix::apply_setting(cfg, key, flags.values.at(key));
  }
  if (!flags.config_path.empty()) activemix::apply_config_file(cfg, flags.config_path);
  return cfg;
}

// Output stream for a resolved path: stdout for "-", otherwise a file whose
// parent directories are created on demand.
class Output {
 public:
  explicit Output(const std::filesystem::path& path) {
    if (path == "-") return;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
    if (!*file_) throw activemix::ConfigError("cannot open output file " + path.string());
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

int cmd_run(const RunConfig& cfg) {
  cfg.validate();
  Output traj(cfg.resolve(cfg.trajectory_path.empty() ? "trajectory.jsonl" : cfg.trajectory_path));
  const auto summaries = activemix::run_batch(cfg, {&traj.stream(), {}});
  double mean = 0.0;
  for (const auto& s : summaries) mean += s.episode_return;
  mean /= static_cast<double>(summaries.size());
  fmt::print(stderr, "{} episode(s), mean return {:.6f}\n", summaries.size(), mean);
  return 0;
}

int cmd_spectra(const RunConfig& cfg) {
  cfg.validate();
  std::unique_ptr<Output> traj;
  if (!cfg.trajectory_path.empty()) traj = std::make_unique<Output>(cfg.resolve(cfg.trajectory_path));
  Output spectra(cfg.resolve(cfg.spectra_path));
  activemix::SpectrumHistogram hist(cfg.hist_bins, cfg.hist_lo, cfg.hist_hi);
  std::size_t n_records = 0;
  int current_episode = -1;
  double log_det_sum = 0.0;

  activemix::RunSinks sinks;
  sinks.trajectory = traj ? &traj->stream() : nullptr;
  sinks.on_spectrum = [&](int episode, std::uint64_t seed, const activemix::SpectrumRecord& rec) {
    if (episode != current_episode) {
      current_episode = episode;
      log_det_sum = 0.0;
    }
    log_det_sum += rec.log_det.finite ? rec.log_det.value : std::nan("");
    spectra.stream() << activemix::spectrum_line(episode, seed, rec, log_det_sum) << '\n';
    hist.add(rec);
    ++n_records;
  };
  activemix::run_batch(cfg, sinks);

  Output hist_out(cfg.resolve(cfg.histogram_path));
  hist.write_table(hist_out.stream());
  fmt::print(stderr, "{} spectrum record(s), {} eigenvalue(s), underflow {}, overflow {}\n",
             n_records, hist.total(), hist.underflow(), hist.overflow());
  return 0;
}

int cmd_verify(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw activemix::ConfigError("cannot open " + path);
  const auto report = activemix::verify_trajectory(in);
  fmt::print("steps {} summaries {} mismatches {}\n", report.steps_checked,
             report.summaries_checked, report.mismatches);
  if (!report.ok()) {
    fmt::print(stderr, "verification failed: {}\n",
               report.first_mismatch.empty() ? "no step records" : report.first_mismatch);
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Controllable active-matter mixing: simulate, analyze spectra, serve"};
  app.require_subcommand(1);

  SettingFlags run_flags, spectra_flags, serve_flags;
  auto* run = app.add_subcommand("run", "run scripted-policy episodes and write a trajectory");
  add_setting_flags(run, run_flags);
  auto* spectra = app.add_subcommand("spectra", "extract update-matrix spectra and a histogram");
  add_setting_flags(spectra, spectra_flags);
  auto* serve = app.add_subcommand("serve", "line-delimited JSON environment protocol on stdio");
  add_setting_flags(serve, serve_flags);
  std::string verify_path;
  auto* verify = app.add_subcommand("verify", "recompute rewards of a trajectory from its counts");
  verify->add_option("file", verify_path)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(build_config(run_flags));
    if (*spectra) return cmd_spectra(build_config(spectra_flags));
    if (*serve) {
      activemix::serve(build_config(serve_flags), std::cin, std::cout);
      return 0;
    }
    if (*verify) return cmd_verify(verify_path);
  } catch (const activemix::InvalidPolicy& e) {
    fmt::print(stderr, "error: invalid policy: {}\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  }
  return 0;
}
