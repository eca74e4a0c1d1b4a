#include "netpriv/adversary.hpp"

#include <algorithm>
#include <cmath>

#include "netpriv/analytic.hpp"
#include "netpriv/rng.hpp"

namespace netpriv {

ObservationLog observe_session(const SessionTrace& trace, const AdversaryView& view,
                               Scenario scenario) {
  ObservationLog log;
  log.session_id = trace.session_id;

  const std::uint64_t hash = fnv1a64(trace.token.request.data(), trace.token.request.size());
  for (const auto& ev : trace.token_events)
    if (ev.holder.role == NodeRole::user && view.is_malicious_user(ev.holder.index))
      log.token_intercepts.push_back({ev.holder, ev.time, hash});

  for (const auto& c : trace.connections) {
    switch (scenario) {
      case Scenario::p2priv_p2p:
        if (c.destination.role == NodeRole::user &&
            view.is_malicious_user(c.destination.index))
          log.observed_connections.push_back(
              {c.source, ObservationPoint::malicious_peer, c.send_time});
        break;
      case Scenario::p2priv_cs:
        // The watched server sees every incoming connection with its true
        // source, the members come in plain text.
        if (view.server_compromised)
          log.observed_connections.push_back(
              {c.source, ObservationPoint::server, c.send_time});
        break;
      case Scenario::netpriv_cs:
        // Server-side, only the exit's address shows up.
        if (view.server_compromised && c.via_exit)
          log.observed_connections.push_back(
              {*c.via_exit, ObservationPoint::server, c.send_time});
        if (c.via_exit && view.is_malicious_exit(c.via_exit->index))
          log.observed_connections.push_back(
              {c.source, ObservationPoint::malicious_exit, c.send_time});
        break;
    }
  }
  return log;
}

PosteriorCounts posterior_counts(const ObservationLog& log, const AdversaryView& view,
                                 const ScenarioConfig& config) {
  PosteriorCounts counts;
  counts.honest = config.n_users -
                  static_cast<std::uint32_t>(view.malicious_users.size());

  std::size_t server_records = 0;
  for (const auto& oc : log.observed_connections) {
    if (oc.point == ObservationPoint::server) {
      ++server_records;
      if (config.scenario == Scenario::p2priv_cs)
        counts.candidates.push_back(oc.source.index);
    } else {
      counts.candidates.push_back(oc.source.index);
    }
  }
  std::sort(counts.candidates.begin(), counts.candidates.end());
  counts.candidates.erase(
      std::unique(counts.candidates.begin(), counts.candidates.end()),
      counts.candidates.end());

  if (is_client_server(config.scenario)) {
    // One server-side connection per surviving member: the record count is
    // the surviving-cascade size.
    counts.n_break = static_cast<double>(
        std::max(server_records, counts.candidates.size()));
  } else {
    // No central vantage point: the adversary falls back on the model's
    // expected break size, clamped so the weights stay a distribution.
    double expected = static_cast<double>(counts.candidates.size());
    if (config.rho > 0.0)
      expected = analytic::expected_cc_break(config.rho, config.p_f,
                                             config.effective_cap());
    counts.n_break = std::clamp(expected,
                                static_cast<double>(counts.candidates.size()),
                                static_cast<double>(counts.honest));
  }
  return counts;
}

CandidateDistribution posterior_from_observation(const ObservationLog& log,
                                                 const AdversaryView& view,
                                                 const ScenarioConfig& config) {
  const PosteriorCounts counts = posterior_counts(log, view, config);
  CandidateDistribution dist;
  dist.probabilities.reserve(counts.honest);

  if (counts.candidates.empty()) {
    const double p = 1.0 / counts.honest;
    for (std::uint32_t u = 0; u < config.n_users; ++u)
      if (!view.is_malicious_user(u)) dist.probabilities.emplace_back(user_node(u), p);
    return dist;
  }

  const double p_observed = 1.0 / counts.n_break;
  const double ratio = static_cast<double>(counts.candidates.size()) / counts.n_break;
  const std::size_t outside = counts.honest - counts.candidates.size();
  const double p_outside = outside > 0 ? (1.0 - ratio) / static_cast<double>(outside) : 0.0;

  auto next_candidate = counts.candidates.begin();
  for (std::uint32_t u = 0; u < config.n_users; ++u) {
    if (view.is_malicious_user(u)) continue;
    if (next_candidate != counts.candidates.end() && *next_candidate == u) {
      dist.probabilities.emplace_back(user_node(u), p_observed);
      ++next_candidate;
    } else {
      dist.probabilities.emplace_back(user_node(u), p_outside);
    }
  }
  return dist;
}

double entropy_of(const CandidateDistribution& dist) {
  double h = 0.0;
  for (const auto& [node, p] : dist.probabilities)
    if (p > 0.0) h -= p * std::log2(p);
  return h;
}

double posterior_entropy_from_counts(std::size_t observed, double n_break,
                                     std::uint32_t honest) {
  if (observed == 0) return std::log2(static_cast<double>(honest));
  const double ratio = static_cast<double>(observed) / n_break;
  double h = ratio * std::log2(n_break);
  if (ratio < 1.0) {
    const double p_outside =
        (1.0 - ratio) / static_cast<double>(honest - observed);
    h -= (1.0 - ratio) * std::log2(p_outside);
  }
  return h;
}

std::vector<std::vector<NodeId>> intersection_attack(std::span<const ObservationLog> logs,
                                                     const AdversaryView& view,
                                                     const ScenarioConfig& config) {
  std::vector<std::vector<NodeId>> steps;
  steps.reserve(logs.size());

  std::vector<std::uint32_t> current;  // sorted user indices
  bool initialized = false;

  std::vector<std::uint32_t> all_honest;
  for (std::uint32_t u = 0; u < config.n_users; ++u)
    if (!view.is_malicious_user(u)) all_honest.push_back(u);

  for (const auto& log : logs) {
    std::vector<std::uint32_t> session_set = posterior_counts(log, view, config).candidates;
    if (session_set.empty()) session_set = all_honest;

    if (!initialized) {
      current = std::move(session_set);
      initialized = true;
    } else {
      std::vector<std::uint32_t> merged;
      std::set_intersection(current.begin(), current.end(), session_set.begin(),
                            session_set.end(), std::back_inserter(merged));
      current = std::move(merged);
    }

    std::vector<NodeId> step;
    step.reserve(current.size());
    for (auto u : current) step.push_back(user_node(u));
    steps.push_back(std::move(step));
  }
  return steps;
}

}  // namespace netpriv
