#include "netpriv/harness.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

#include "netpriv/adversary.hpp"
#include "netpriv/rng.hpp"
#include "netpriv/sim.hpp"

namespace netpriv::harness {

namespace {

unsigned resolve_threads(unsigned requested, std::uint64_t trials) {
  unsigned n = requested > 0 ? requested : std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  const auto max_useful = static_cast<std::uint64_t>(1) + trials / 1024;
  return static_cast<unsigned>(std::min<std::uint64_t>(n, max_useful));
}

// Runs fn(t) for t in [0, trials) across workers. Exceptions resurface here.
template <typename Fn>
void parallel_trials(std::uint64_t trials, unsigned n_threads, Fn&& fn) {
  if (n_threads <= 1) {
    for (std::uint64_t t = 0; t < trials; ++t) fn(t);
    return;
  }
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(n_threads);
  const std::uint64_t chunk = (trials + n_threads - 1) / n_threads;
  for (unsigned w = 0; w < n_threads; ++w) {
    const std::uint64_t begin = w * chunk;
    const std::uint64_t end = std::min(trials, begin + chunk);
    workers.emplace_back([&, w, begin, end] {
      try {
        for (std::uint64_t t = begin; t < end; ++t) fn(t);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : workers) th.join();
  for (auto& err : errors)
    if (err) std::rethrow_exception(err);
}

}  // namespace

EntropyReport run_monte_carlo(const ScenarioConfig& config, std::uint64_t trials,
                              unsigned n_threads) {
  config.validate();

  EntropyReport report;
  report.config = config;
  report.config.break_cap = config.effective_cap();
  report.trials = trials;

  const auto inputs = analytic::inputs_from(config);
  report.h_max = analytic::max_entropy(inputs.n_users, inputs.rho);
  report.h_analytic = analytic::entropy_for(inputs, config.scenario);

  if (trials == 0) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    report.h_paper_style = nan;
    report.h_empirical_mean = nan;
    report.h_empirical_ci95 = nan;
    report.mean_break_size = nan;
    return report;
  }

  const Network net = build_population(config);
  const auto honest_count = static_cast<std::uint32_t>(net.honest_users.size());

  std::vector<std::uint32_t> survivors(trials);
  std::vector<double> entropy(trials);

  parallel_trials(trials, resolve_threads(n_threads, trials), [&](std::uint64_t t) {
    Rng rng(derive_seed(config.seed, stream::trial_base + t));
    const std::uint32_t alice = net.honest_users[rng.uniform_below(honest_count)];
    const SessionTrace trace = execute_session(config, net, alice, t, rng);
    const ObservationLog log = observe_session(trace, net.adversary, config.scenario);
    const PosteriorCounts counts = posterior_counts(log, net.adversary, config);
    survivors[t] = static_cast<std::uint32_t>(trace.cascade.members.size());
    entropy[t] =
        posterior_entropy_from_counts(counts.candidates.size(), counts.n_break, counts.honest);
  });

  // Reduce in trial order; results are independent of the thread split.
  std::uint64_t survivor_sum = 0;
  for (auto s : survivors) survivor_sum += s;
  report.mean_break_size =
      static_cast<double>(survivor_sum) / static_cast<double>(trials);

  double h_sum = 0.0;
  for (auto h : entropy) h_sum += h;
  report.h_empirical_mean = h_sum / static_cast<double>(trials);

  double sq_sum = 0.0;
  for (auto h : entropy) {
    const double d = h - report.h_empirical_mean;
    sq_sum += d * d;
  }
  const double variance =
      trials > 1 ? sq_sum / static_cast<double>(trials - 1) : 0.0;
  report.h_empirical_ci95 = 1.96 * std::sqrt(variance / static_cast<double>(trials));

  report.h_paper_style =
      analytic::entropy_for_at(inputs, config.scenario, report.mean_break_size);
  return report;
}

std::vector<EntropyReport> sweep(const ScenarioConfig& base, const SweepAxes& axes,
                                 std::uint64_t trials, unsigned n_threads) {
  const auto axis_or = [](const auto& axis, auto base_value) {
    using Vec = std::remove_cvref_t<decltype(*axis)>;
    if (!axis) return Vec{base_value};
    if (axis->empty()) throw std::invalid_argument("sweep: empty axis");
    return *axis;
  };

  const auto n_axis = axis_or(axes.n_users, base.n_users);
  const auto pf_axis = axis_or(axes.p_f, base.p_f);
  const auto rho_axis = axis_or(axes.rho, base.rho);
  const auto rho_e_axis = axis_or(axes.rho_e, base.rho_e);

  std::vector<EntropyReport> table;
  table.reserve(n_axis.size() * pf_axis.size() * rho_axis.size() * rho_e_axis.size());
  for (auto n : n_axis)
    for (auto pf : pf_axis)
      for (auto rho : rho_axis)
        for (auto rho_e : rho_e_axis) {
          ScenarioConfig point = base;
          point.n_users = n;
          point.p_f = pf;
          point.rho = rho;
          point.rho_e = rho_e;
          table.push_back(run_monte_carlo(point, trials, n_threads));
        }
  return table;
}

std::vector<LongTermRun> run_longterm(const ScenarioConfig& config, std::uint32_t sessions,
                                      std::span<const std::uint64_t> seeds) {
  if (sessions < 1) throw std::invalid_argument("longterm: sessions must be at least 1");
  config.validate();

  std::vector<LongTermRun> runs;
  runs.reserve(seeds.size());
  for (const auto seed : seeds) {
    ScenarioConfig cfg = config;
    cfg.seed = seed;
    const Network net = build_population(cfg);

    LongTermRun run;
    run.seed = seed;
    Rng alice_rng(derive_seed(seed, stream::alice_draw));
    run.alice = net.honest_users[alice_rng.uniform_below(
        static_cast<std::uint32_t>(net.honest_users.size()))];

    const std::uint64_t session_key = derive_seed(seed, stream::session_key);
    std::vector<ObservationLog> logs;
    logs.reserve(sessions);
    for (std::uint32_t s = 0; s < sessions; ++s) {
      Rng rng(derive_seed(seed, stream::session_base + s));
      const SessionTrace trace =
          cfg.scenario == Scenario::netpriv_cs
              ? execute_session_persistent(cfg, net, run.alice, session_key, s, rng)
              : execute_session(cfg, net, run.alice, s, rng);
      logs.push_back(observe_session(trace, net.adversary, cfg.scenario));
    }

    const auto steps = intersection_attack(logs, net.adversary, cfg);
    run.intersection_sizes.reserve(steps.size());
    for (std::uint32_t i = 0; i < steps.size(); ++i) {
      run.intersection_sizes.push_back(static_cast<std::uint32_t>(steps[i].size()));
      if (!run.isolation_index && steps[i].size() == 1) {
        run.isolation_index = i;
        run.isolated_to_alice = steps[i][0] == user_node(run.alice);
      }
    }
    runs.push_back(std::move(run));
  }
  return runs;
}

std::vector<std::uint64_t> make_seed_list(std::uint64_t master, std::size_t count) {
  std::vector<std::uint64_t> seeds(count);
  for (std::size_t i = 0; i < count; ++i)
    seeds[i] = derive_seed(master, stream::seed_list_base + i);
  return seeds;
}

}  // namespace netpriv::harness
