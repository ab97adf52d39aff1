// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. A criterion id as the only argument runs just that one.

#include <array>
#include <chrono>
#include <cstdlib>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "activemix/dynamics.hpp"
#include "activemix/runner.hpp"
#include "activemix/spectral.hpp"

using namespace activemix;

namespace {

struct SpectrumTally {
  std::uint64_t eigenvalues = 0;
  std::uint64_t above_one = 0;        // > 1 + 1e-9
  std::uint64_t below_one = 0;        // < 1 - 1e-9
  std::uint64_t clearly_above = 0;    // > 1 + 1e-6
  std::uint64_t clearly_below = 0;    // < 1 - 1e-6
  std::uint64_t outside_gershgorin = 0;
  std::size_t records = 0;
  double max_log_det = -INFINITY;
  double min_log_det = INFINITY;
  bool all_log_det_finite = true;
  double max_eig = -INFINITY;
  double min_eig = INFINITY;
  double seconds = 0.0;
};

SpectrumTally collect_spectra(PolicyKind policy, InteractionSet set, int episodes, int stride) {
  RunConfig cfg;
  cfg.policy.kind = policy;
  cfg.params.interactions = set;
  cfg.episodes = episodes;
  cfg.spectra_stride = stride;
  SpectrumTally tally;
  RunSinks sinks;
  sinks.on_spectrum = [&](int, std::uint64_t, const SpectrumRecord& rec) {
    ++tally.records;
    for (double l : rec.eigenvalues) {
      ++tally.eigenvalues;
      tally.above_one += l > 1.0 + 1e-9;
      tally.below_one += l < 1.0 - 1e-9;
      tally.clearly_above += l > 1.0 + 1e-6;
      tally.clearly_below += l < 1.0 - 1e-6;
      tally.outside_gershgorin +=
          l < rec.gershgorin.lo - 1e-9 || l > rec.gershgorin.hi + 1e-9;
      tally.max_eig = std::max(tally.max_eig, l);
      tally.min_eig = std::min(tally.min_eig, l);
    }
    if (!rec.log_det.finite) {
      tally.all_log_det_finite = false;
    } else {
      tally.max_log_det = std::max(tally.max_log_det, rec.log_det.value);
      tally.min_log_det = std::min(tally.min_log_det, rec.log_det.value);
    }
  };
  const auto start = std::chrono::steady_clock::now();
  run_batch(cfg, sinks);
  tally.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return tally;
}

int failures = 0;

void report(const std::string& id, bool pass, const std::string& detail) {
  fmt::print("{} criterion {}: {}\n", pass ? "PASS" : "FAIL", id, detail);
  if (!pass) ++failures;
}

ParticleState random_cluster(std::mt19937_64& gen, std::size_t n, const SimParams& p) {
  const double lo = p.lower_cutoff + 0.05;
  const double hi = p.upper_cutoff - 0.05;
  std::uniform_real_distribution<double> u(-hi / 2, hi / 2);
  std::uniform_int_distribution<int> mode(1, 2);
  for (;;) {
    ParticleState s;
    bool ok = true;
    while (s.positions.size() < n && ok) {
      const Vec2 q{u(gen), u(gen)};
      if (q.norm() >= hi / 2) continue;
      for (const Vec2& r : s.positions) ok = ok && (q - r).norm() > lo;
      s.positions.push_back(q);
    }
    if (!ok) continue;
    for (std::size_t i = 0; i < n; ++i) {
      s.activation.push_back(static_cast<Activation>(mode(gen)));
      s.tags.push_back(i < n / 2 ? Tag::Left : Tag::Right);
    }
    return s;
  }
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

SpectrumTally attractive_spectra() {
  return collect_spectra(PolicyKind::CollapseAll, InteractionSet::AttractiveOnly, 20, 5);
}
SpectrumTally repulsive_spectra() {
  return collect_spectra(PolicyKind::ActivateOneSide, InteractionSet::RepulsiveOnly, 20, 5);
}
SpectrumTally two_sided_spectra() {
  return collect_spectra(PolicyKind::Oscillation, InteractionSet::Both, 20, 5);
}

void attractive_bound() {
  const SpectrumTally attractive = attractive_spectra();
  report("1", attractive.eigenvalues > 0 && attractive.above_one == 0 && attractive.all_log_det_finite &&
                  attractive.max_log_det <= 1e-9 && attractive.seconds < 120.0,
         fmt::format("attractive-only collapse_all: {} eigenvalues in {} matrices, {} above 1+1e-9, "
                     "max eigenvalue 1{:+.3e}, max log_det {:.6g}, {:.1f} s",
                     attractive.eigenvalues, attractive.records, attractive.above_one,
                     attractive.max_eig - 1.0, attractive.max_log_det, attractive.seconds));
}

void repulsive_bound() {
  const SpectrumTally repulsive = repulsive_spectra();
  report("2", repulsive.eigenvalues > 0 && repulsive.below_one == 0 && repulsive.all_log_det_finite &&
                  repulsive.min_log_det >= -1e-9,
         fmt::format("repulsive-only activate_one_side: {} eigenvalues in {} matrices, {} below 1-1e-9, "
                     "min eigenvalue 1{:+.3e}, min log_det {:.6g}",
                     repulsive.eigenvalues, repulsive.records, repulsive.below_one,
                     repulsive.min_eig - 1.0, repulsive.min_log_det));
}

void two_sided() {
  const SpectrumTally both = two_sided_spectra();
  const double frac_below = static_cast<double>(both.clearly_below) / static_cast<double>(both.eigenvalues);
  const double frac_above = static_cast<double>(both.clearly_above) / static_cast<double>(both.eigenvalues);
  report("3", both.eigenvalues > 0 && frac_below >= 0.01 && frac_above >= 0.01,
         fmt::format("oscillation, both interactions: {} eigenvalues in {} matrices, {:.2f}% below 1-1e-6, "
                     "{:.2f}% above 1+1e-6",
                     both.eigenvalues, both.records, 100 * frac_below, 100 * frac_above));
}

void gershgorin_containment() {
  std::uint64_t outside = 0, total = 0;
  for (const SpectrumTally& t : {attractive_spectra(), repulsive_spectra(), two_sided_spectra()}) {
    outside += t.outside_gershgorin;
    total += t.eigenvalues;
  }
  report("4", total > 0 && outside == 0,
         fmt::format("{} of {} eigenvalues outside their Gershgorin hull", outside, total));
}

void reward_normalization() {
  const SimParams p;
  ObservationTensor one_bin(4);
  one_bin.at(Tag::Left, 2, 1) = 48;
  one_bin.at(Tag::Right, 2, 1) = 48;
  const double rh_one = homogeneity_reward(one_bin, p);
  ObservationTensor uniform(4);
  for (int ix = 0; ix < 4; ++ix) {
    for (int iy = 0; iy < 4; ++iy) {
      uniform.at(Tag::Left, ix, iy) = 3;
      uniform.at(Tag::Right, ix, iy) = 3;
    }
  }
  const double rm_u = mixing_reward(uniform, p);
  const double rh_u = homogeneity_reward(uniform, p);

  RunConfig cfg;
  cfg.episodes = 1000;
  const auto summaries = run_batch(cfg, {});
  double mean = 0.0;
  for (const auto& s : summaries) mean += s.episode_return;
  mean /= static_cast<double>(summaries.size());
  const bool a = rh_one == -0.01;
  const bool b = rm_u == 0.0 && rh_u == 0.0;
  const bool c = mean >= -1.20 && mean <= -1.09;
  report("5", a && b && c,
         fmt::format("one-bin R_h = {:.17g}; balanced uniform R_m = {}, R_h = {}; "
                     "no-op mean return over 1000 seeds {:.4f} (expected -660/576 = {:.4f})",
                     rh_one, rm_u, rh_u, mean, -660.0 / 576.0));
}

void linearization() {
  std::mt19937_64 gen(6);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    SimParams p;
    ParticleState s = random_cluster(gen, 16, p);
    const UpdateMatrix um = build_update_matrix(s, p, true);
    std::vector<double> xs, ys;
    for (const Vec2& v : s.positions) {
      xs.push_back(v.x);
      ys.push_back(v.y);
    }
    const auto mx = um.entries.multiply(xs);
    const auto my = um.entries.multiply(ys);
    integrate_step(s, compute_forces(s, p), p);
    for (std::size_t i = 0; i < s.size(); ++i) {
      worst = std::max({worst, std::abs(mx[i] - s.positions[i].x), std::abs(my[i] - s.positions[i].y)});
    }
  }
  report("6", worst <= 1e-12,
         fmt::format("100 activated configurations, max |M x - step(x)| = {:.3e}", worst));
}

void eigen_oracles() {
  const SimParams p;
  ParticleState two;
  two.positions = {{0, 0}, {0.8, 0.3}};
  two.activation = {Activation::Attractive, Activation::Attractive};
  two.tags = {Tag::Left, Tag::Right};
  const UpdateMatrix m2 = build_update_matrix(two, p);
  const double c2 = m2.entries(0, 1);
  const auto e2 = symmetric_eigenvalues(m2.entries);
  const double err2 = std::max(std::abs(e2[0] - (1 - 2 * c2)), std::abs(e2[1] - 1.0));

  ParticleState three;
  const double side = 0.9;
  three.positions = {{0, 0}, {side, 0}, {side / 2, side * std::sqrt(3.0) / 2}};
  three.activation.assign(3, Activation::Attractive);
  three.tags = {Tag::Left, Tag::Right, Tag::Left};
  const UpdateMatrix m3 = build_update_matrix(three, p);
  const double c3 = m3.entries(0, 1);
  const auto e3 = symmetric_eigenvalues(m3.entries);
  const double err3 = std::max({std::abs(e3[0] - (1 - 3 * c3)), std::abs(e3[1] - (1 - 3 * c3)),
                                std::abs(e3[2] - 1.0)});
  report("7", err2 <= 1e-10 && err3 <= 1e-10 && c2 > 0 && c3 > 0,
         fmt::format("two-particle error {:.2e}, three-particle error {:.2e}", err2, err3));
}

void strategy_reproduction() {
  RunConfig collapse;
  collapse.policy.kind = PolicyKind::CollapseAll;
  collapse.seed = 0;
  collapse.seed_end = 32;
  const auto sc = run_batch(collapse, {});

  RunConfig one_side;
  one_side.policy.kind = PolicyKind::ActivateOneSide;
  one_side.params.interactions = InteractionSet::RepulsiveOnly;
  one_side.seed = 0;
  one_side.seed_end = 32;
  const auto so = run_batch(one_side, {});

  RunConfig noop;
  noop.params.interactions = InteractionSet::RepulsiveOnly;
  noop.seed = 0;
  noop.seed_end = 32;
  const auto sn = run_batch(noop, {});

  int rh_drops = 0, rm_holds = 0, mixes = 0;
  for (std::size_t k = 0; k < 32; ++k) {
    rh_drops += sc[k].last_r_h < sc[k].first_r_h;
    rm_holds += sc[k].last_r_m >= sc[k].first_r_m;
    mixes += so[k].last_r_m > sn[k].last_r_m;
  }
  report("8", rh_drops >= 30 && rm_holds >= 30 && mixes >= 30,
         fmt::format("collapse_all: final R_h below first in {}/32, final R_m >= first in {}/32; "
                     "activate_one_side final R_m above no-op in {}/32",
                     rh_drops, rm_holds, mixes));
}

void determinism() {
  const auto dir = std::filesystem::temp_directory_path() / "activemix_acceptance";
  std::filesystem::create_directories(dir);
  RunConfig cfg;
  cfg.policy.kind = PolicyKind::Oscillation;
  cfg.seed = 17;
  cfg.episodes = 3;
  for (const char* name : {"a.jsonl", "b.jsonl"}) {
    std::ofstream out(dir / name, std::ios::binary | std::ios::trunc);
    run_batch(cfg, {&out, {}});
  }
  const std::string a = read_file(dir / "a.jsonl");
  const std::string b = read_file(dir / "b.jsonl");
  std::filesystem::remove_all(dir);
  report("9", !a.empty() && a == b,
         fmt::format("two oscillation runs (seed 17, 3 episodes): {} bytes each, identical: {}",
                     a.size(), a == b));
}

}  // namespace

int main(int argc, char** argv) {
  const std::array<void (*)(), 9> criteria{attractive_bound, repulsive_bound, two_sided,
                                           gershgorin_containment, reward_normalization,
                                           linearization, eigen_oracles, strategy_reproduction,
                                           determinism};
  if (argc == 2) {
    const int id = std::atoi(argv[1]);
    if (id < 1 || id > 9) {
      fmt::print(stderr, "criterion id must be 1..9\n");
      return 2;
    }
    criteria[static_cast<std::size_t>(id - 1)]();
    return failures == 0 ? 0 : 1;
  }
  for (auto run : criteria) run();
  fmt::print("{} of 9 criteria passed\n", 9 - failures);
  return failures == 0 ? 0 : 1;
}
