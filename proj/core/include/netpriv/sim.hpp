#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "netpriv/model.hpp"
#include "netpriv/rng.hpp"

// Seeded simulation of one protocol session: cascade establishment, token
// delivery over the (perfectly unlinkable) mix layer, timed clone requests
// and exit forwarding. Produces the full ground truth; what the adversary
// gets to see of it is the adversary module's business.
namespace netpriv {

struct Cascade {
  // Distinct honest members in recruitment order; members[0] is the initiator.
  std::vector<NodeId> members;
  // Honest token holders hop by hop, revisits included. custody.size() is the
  // broken/terminated walk length the break-PMF speaks about.
  std::vector<std::uint32_t> custody;
  // Colluding node that absorbed the token, truncating the walk.
  std::optional<std::uint32_t> absorbed_by;
  bool persistent = false;

  std::uint32_t walk_length() const noexcept {
    return static_cast<std::uint32_t>(custody.size());
  }
};

struct TokenEvent {
  NodeId holder;
  Tick time;
};

struct Connection {
  NodeId source;                  // the cascade member
  std::optional<NodeId> via_exit; // NetPriv only
  NodeId destination;
  Tick send_time;
};

struct SessionTrace {
  std::uint64_t session_id = 0;
  NodeId alice;
  Cascade cascade;
  CloningToken token;
  std::vector<TokenEvent> token_events;     // full custody, absorber included
  std::vector<Connection> connections;      // one per surviving member
  std::optional<std::uint32_t> break_index; // index into token_events
  NodeId first_connector;                   // earliest sender, ties drawn at random
};

/// Random-walk cascade: alice plus a chain of uniformly drawn user nodes
/// (never the current holder), each continuing with probability p_f. A
/// colluding recipient absorbs the token and ends the walk; max_hops bounds
/// the honest chain. alice must be honest.
Cascade establish_cc_random_walk(const Network& net, std::uint32_t alice,
                                 double p_f, std::uint32_t max_hops, Rng& rng);

/// Free-route cascade pinned by the sender for a whole session: alice plus
/// target_len - 1 distinct honest members, a pure function of session_key.
/// Throws std::invalid_argument when target_len exceeds the honest population.
Cascade establish_cc_persistent(const Network& net, std::uint32_t alice,
                                std::uint32_t target_len, std::uint64_t session_key);

/// Sender-selected single-shot cascade of exactly target_len distinct user
/// nodes (honesty unknown to the sender), truncated at the first colluder.
Cascade establish_cc_fixed_length(const Network& net, std::uint32_t alice,
                                  std::uint32_t target_len, Rng& rng);

/// Hop-by-hop custody of the token, one tick per hop starting at inject_time.
/// Throws std::invalid_argument when token.request_time does not clear the
/// last custody event (a token construction bug).
std::vector<TokenEvent> deliver_token(const Cascade& cascade, const CloningToken& token,
                                      Tick inject_time);

/// One complete single-shot session. Every surviving member sends at
/// token.request_time plus an independent uniform delay in [0, jitter_max];
/// P2Priv members connect straight to their destination, NetPriv members seal
/// an exit request for a uniformly chosen exit node, which then connects to
/// the server under its own address.
SessionTrace execute_session(const ScenarioConfig& config, const Network& net,
                             std::uint32_t alice, std::uint64_t session_id, Rng& rng);

/// NetPriv session on the persistent cascade of session_key: member list and
/// per-member exit choices are fixed across sessions, only the delays are
/// redrawn from rng.
SessionTrace execute_session_persistent(const ScenarioConfig& config, const Network& net,
                                        std::uint32_t alice, std::uint64_t session_key,
                                        std::uint64_t session_id, Rng& rng);

/// Canonical line-oriented rendering of a trace; regression-fixture format.
std::string serialize_trace(const SessionTrace& trace);

}  // namespace netpriv
