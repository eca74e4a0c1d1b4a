#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "netpriv/model.hpp"
#include "netpriv/sim.hpp"

// The adversary's side: filter a ground-truth trace through the colluders'
// sensors, turn observations into a posterior over candidate initiators, and
// run the long-term intersection attack.
namespace netpriv {

enum class ObservationPoint : std::uint8_t { malicious_peer, malicious_exit, server };

struct TokenIntercept {
  NodeId holder;
  Tick time;
  std::uint64_t content_hash;
};

struct ObservedConnection {
  NodeId source;  // user node at peer/exit observation points, exit node at the server
  ObservationPoint point;
  Tick time;
};

struct ObservationLog {
  std::vector<TokenIntercept> token_intercepts;
  std::vector<ObservedConnection> observed_connections;
  std::uint64_t session_id = 0;
};

// Posterior over honest user nodes; colluders are excluded (the adversary
// knows its own). Entries are sorted by node and sum to 1.
struct CandidateDistribution {
  std::vector<std::pair<NodeId, double>> probabilities;
};

/// Events visible to `view` in one session. P2P: connections whose
/// destination peer colludes. P2Priv client-server: every server-side
/// connection, source included (the server is watched). NetPriv: server-side
/// connections show only the exit's identity; a member's own address leaks
/// only through a colluding exit. Token custody leaks at colluding holders.
ObservationLog observe_session(const SessionTrace& trace, const AdversaryView& view,
                               Scenario scenario);

// Sizes the posterior is built from: candidate sources the adversary saw,
// its best value for the surviving-cascade size, and the honest population.
struct PosteriorCounts {
  std::vector<std::uint32_t> candidates;  // sorted, distinct honest users
  double n_break = 0;
  std::uint32_t honest = 0;
};

/// Candidate extraction per scenario. In the client-server scenarios the
/// surviving-member count is read off the server-side connection count; in
/// the P2P scenario the adversary cannot count survivors and falls back on
/// the analytic expectation, clamped so the weights stay a distribution.
PosteriorCounts posterior_counts(const ObservationLog& log, const AdversaryView& view,
                                 const ScenarioConfig& config);

/// Posterior over honest users: weight 1/n_break on each observed candidate,
/// the leftover mass spread evenly over the unobserved honest users. An empty
/// log yields the uniform no-information posterior.
CandidateDistribution posterior_from_observation(const ObservationLog& log,
                                                 const AdversaryView& view,
                                                 const ScenarioConfig& config);

/// Shannon entropy in bits; zero-probability entries contribute nothing.
double entropy_of(const CandidateDistribution& dist);

/// entropy_of(posterior) without materializing the distribution.
double posterior_entropy_from_counts(std::size_t observed, double n_break,
                                     std::uint32_t honest);

/// Running intersection of per-session candidate sets over repeated sessions
/// of one initiator. A session with no observation contributes the full
/// honest population (no information is not exoneration). Element i holds
/// the intersection after sessions 0..i, sorted.
std::vector<std::vector<NodeId>> intersection_attack(std::span<const ObservationLog> logs,
                                                     const AdversaryView& view,
                                                     const ScenarioConfig& config);

}  // namespace netpriv
