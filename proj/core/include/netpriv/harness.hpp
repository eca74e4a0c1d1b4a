#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "netpriv/analytic.hpp"
#include "netpriv/model.hpp"

// Monte Carlo orchestration and analytic-vs-empirical comparison. Trials are
// embarrassingly parallel: each draws its own seed sub-stream and results are
// reduced in trial order, so thread count never changes the output.
namespace netpriv::harness {

struct EntropyReport {
  ScenarioConfig config;          // with the cap resolved
  double h_max = 0;
  double h_analytic = 0;
  double h_paper_style = 0;       // analytic formula at the empirical mean break size
  double h_empirical_mean = 0;    // mean per-trial posterior entropy
  double h_empirical_ci95 = 0;
  double mean_break_size = 0;     // mean surviving-member count
  std::uint64_t trials = 0;
};

/// `trials` independent sessions, each with a fresh uniformly drawn honest
/// initiator. trials == 0 fills only the analytic fields (empirical fields
/// become NaN); n_threads == 0 uses the hardware count.
EntropyReport run_monte_carlo(const ScenarioConfig& config, std::uint64_t trials,
                              unsigned n_threads = 0);

// Sweep axes; an unset axis stays at the base config's value, a set-but-empty
// axis is an error.
struct SweepAxes {
  std::optional<std::vector<double>> rho;
  std::optional<std::vector<double>> rho_e;
  std::optional<std::vector<double>> p_f;
  std::optional<std::vector<std::uint32_t>> n_users;
};

/// Cartesian grid evaluation, one report per point. Row order is fixed:
/// n_users, then p_f, then rho, then rho_e, innermost last.
std::vector<EntropyReport> sweep(const ScenarioConfig& base, const SweepAxes& axes,
                                 std::uint64_t trials, unsigned n_threads = 0);

struct LongTermRun {
  std::uint64_t seed = 0;
  std::uint32_t alice = 0;
  std::vector<std::uint32_t> intersection_sizes;   // one entry per session
  std::optional<std::uint32_t> isolation_index;    // first session with size 1
  bool isolated_to_alice = false;
};

/// Intersection attack over `sessions` sessions of one fixed initiator, once
/// per seed. NetPriv runs ride the persistent cascade of the seed's session
/// key; P2Priv scenarios re-randomize the cascade every session.
std::vector<LongTermRun> run_longterm(const ScenarioConfig& config, std::uint32_t sessions,
                                      std::span<const std::uint64_t> seeds);

/// Deterministic seed list derived from a master seed.
std::vector<std::uint64_t> make_seed_list(std::uint64_t master, std::size_t count);

}  // namespace netpriv::harness
