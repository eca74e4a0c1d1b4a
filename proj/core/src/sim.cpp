#include "netpriv/sim.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace netpriv {

namespace {

// Uniform user index != excluded.
std::uint32_t draw_other_user(std::uint32_t n_users, std::uint32_t excluded, Rng& rng) {
  std::uint32_t d = rng.uniform_below(n_users - 1);
  if (d >= excluded) ++d;
  return d;
}

void append_member(Cascade& cc, std::uint32_t user) {
  cc.custody.push_back(user);
  const NodeId id = user_node(user);
  if (std::find(cc.members.begin(), cc.members.end(), id) == cc.members.end())
    cc.members.push_back(id);
}

}  // namespace

Cascade establish_cc_random_walk(const Network& net, std::uint32_t alice, double p_f,
                                 std::uint32_t max_hops, Rng& rng) {
  if (net.adversary.is_malicious_user(alice))
    throw std::invalid_argument("walk initiator must be honest");
  const std::uint32_t n = net.population.n_users;

  Cascade cc;
  append_member(cc, alice);
  std::uint32_t current = alice;
  for (;;) {
    if (cc.walk_length() >= max_hops) break;  // walk bound, forced stop
    const std::uint32_t next = draw_other_user(n, current, rng);
    if (net.adversary.is_malicious_user(next)) {
      cc.absorbed_by = next;  // the colluder keeps the token; walk broken
      break;
    }
    append_member(cc, next);
    current = next;
    if (!rng.bernoulli(p_f)) break;  // natural stop
  }
  return cc;
}

Cascade establish_cc_persistent(const Network& net, std::uint32_t alice,
                                std::uint32_t target_len, std::uint64_t session_key) {
  if (target_len < 1) throw std::invalid_argument("persistent cascade needs target_len >= 1");
  if (net.adversary.is_malicious_user(alice))
    throw std::invalid_argument("cascade initiator must be honest");
  const auto& honest = net.honest_users;
  if (target_len > honest.size())
    throw std::invalid_argument("target_len exceeds the honest population");

  Cascade cc;
  cc.persistent = true;
  append_member(cc, alice);

  // Partial Fisher-Yates over the honest users minus alice, driven purely by
  // session_key: every session of the key sees the identical member list.
  Rng rng(derive_seed(session_key, stream::persistent_members));
  std::vector<std::uint32_t> pool;
  pool.reserve(honest.size() - 1);
  for (auto u : honest)
    if (u != alice) pool.push_back(u);
  for (std::uint32_t i = 0; i + 1 < target_len; ++i) {
    const auto j = i + rng.uniform_below(static_cast<std::uint32_t>(pool.size()) - i);
    std::swap(pool[i], pool[j]);
    append_member(cc, pool[i]);
  }
  return cc;
}

Cascade establish_cc_fixed_length(const Network& net, std::uint32_t alice,
                                  std::uint32_t target_len, Rng& rng) {
  if (target_len < 1) throw std::invalid_argument("fixed cascade needs target_len >= 1");
  if (target_len > net.population.n_users)
    throw std::invalid_argument("target_len exceeds the population");
  if (net.adversary.is_malicious_user(alice))
    throw std::invalid_argument("cascade initiator must be honest");

  // Sender picks target_len distinct nodes blind to collusion; the token still
  // dies at the first colluder it reaches.
  std::vector<std::uint32_t> picked{alice};
  picked.reserve(target_len);
  while (picked.size() < target_len) {
    const std::uint32_t u = rng.uniform_below(net.population.n_users);
    if (std::find(picked.begin(), picked.end(), u) == picked.end()) picked.push_back(u);
  }

  Cascade cc;
  append_member(cc, alice);
  for (std::size_t i = 1; i < picked.size(); ++i) {
    if (net.adversary.is_malicious_user(picked[i])) {
      cc.absorbed_by = picked[i];
      break;
    }
    append_member(cc, picked[i]);
  }
  return cc;
}

std::vector<TokenEvent> deliver_token(const Cascade& cascade, const CloningToken& token,
                                      Tick inject_time) {
  std::vector<TokenEvent> events;
  events.reserve(cascade.custody.size() + 1);
  Tick t = inject_time;
  for (auto holder : cascade.custody) events.push_back({user_node(holder), t++});
  if (cascade.absorbed_by) events.push_back({user_node(*cascade.absorbed_by), t});
  if (token.request_time <= events.back().time)
    throw std::invalid_argument(
        "token request_time does not clear the cascade traversal (construction bug)");
  return events;
}

namespace {

SessionTrace run_session(const ScenarioConfig& config, const Network& net,
                         std::uint32_t alice, std::uint64_t session_id, Rng& rng,
                         Cascade cascade,
                         const std::vector<std::uint32_t>* persistent_exits) {
  SessionTrace trace;
  trace.session_id = session_id;
  trace.alice = user_node(alice);
  trace.cascade = std::move(cascade);

  const Tick inject = 0;
  const auto target = is_client_server(config.scenario) ? CloningToken::Target::server
                                                        : CloningToken::Target::peer_swarm;
  trace.token = make_token(target, inject, config.effective_cap() + 1, "payload");
  trace.token_events = deliver_token(trace.cascade, trace.token, inject);
  if (trace.cascade.absorbed_by)
    trace.break_index = static_cast<std::uint32_t>(trace.token_events.size() - 1);

  const Tick jmax = config.effective_jitter_max();
  const auto& members = trace.cascade.members;
  trace.connections.reserve(members.size());
  for (std::size_t i = 0; i < members.size(); ++i) {
    const std::uint32_t m = members[i].index;
    Connection conn;
    conn.source = members[i];
    conn.send_time = trace.token.request_time +
                     rng.uniform_below(static_cast<std::uint32_t>(jmax) + 1);
    switch (config.scenario) {
      case Scenario::p2priv_p2p:
        // Content lives on the peers themselves; each member fetches from a
        // uniformly drawn other peer.
        conn.destination = user_node(draw_other_user(net.population.n_users, m, rng));
        break;
      case Scenario::p2priv_cs:
        conn.destination = server_node();
        break;
      case Scenario::netpriv_cs: {
        const std::uint32_t e = persistent_exits
                                    ? (*persistent_exits)[i]
                                    : rng.uniform_below(net.population.n_exits);
        // Envelope round trip: only the chosen exit can read the request it
        // then forwards under its own source address.
        const SealedExitRequest sealed({members[i], {Destination::Kind::server, 0},
                                        trace.token.request},
                                       e);
        (void)sealed.open(e);
        conn.via_exit = exit_node(e);
        conn.destination = server_node();
        break;
      }
    }
    trace.connections.push_back(conn);
  }

  // Earliest connector; simultaneous sends arrive in arbitrary order, so ties
  // are drawn uniformly.
  Tick best = trace.connections.front().send_time;
  for (const auto& c : trace.connections) best = std::min(best, c.send_time);
  std::vector<std::uint32_t> earliest;
  for (std::uint32_t i = 0; i < trace.connections.size(); ++i)
    if (trace.connections[i].send_time == best) earliest.push_back(i);
  trace.first_connector =
      trace.connections[earliest[rng.uniform_below(static_cast<std::uint32_t>(earliest.size()))]]
          .source;
  return trace;
}

}  // namespace

SessionTrace execute_session(const ScenarioConfig& config, const Network& net,
                             std::uint32_t alice, std::uint64_t session_id, Rng& rng) {
  // A NetPriv sender routes free-style, but with the length drawn from the
  // walk law the selection is hop-for-hop equivalent to the walk, so the walk
  // doubles as the sampler; a pinned netpriv_cc_len switches to an explicit
  // fixed-size pick.
  Cascade cc = (config.scenario == Scenario::netpriv_cs && config.netpriv_cc_len > 0)
                   ? establish_cc_fixed_length(net, alice, config.netpriv_cc_len, rng)
                   : establish_cc_random_walk(net, alice, config.p_f,
                                              config.effective_cap(), rng);
  return run_session(config, net, alice, session_id, rng, std::move(cc), nullptr);
}

SessionTrace execute_session_persistent(const ScenarioConfig& config, const Network& net,
                                        std::uint32_t alice, std::uint64_t session_key,
                                        std::uint64_t session_id, Rng& rng) {
  if (config.scenario != Scenario::netpriv_cs)
    throw std::invalid_argument("persistent sessions are a netpriv-cs mechanism");
  Cascade cc = establish_cc_persistent(net, alice, config.persistent_cc_len(), session_key);

  // Exit choices persist with the cascade: one fixed exit per member position.
  Rng exit_rng(derive_seed(session_key, stream::persistent_exits));
  std::vector<std::uint32_t> exits(cc.members.size());
  for (auto& e : exits) e = exit_rng.uniform_below(net.population.n_exits);

  return run_session(config, net, alice, session_id, rng, std::move(cc), &exits);
}

std::string serialize_trace(const SessionTrace& trace) {
  std::ostringstream out;
  out << "session " << trace.session_id << " alice " << to_string(trace.alice) << "\n";
  out << "cascade";
  for (const auto& m : trace.cascade.members) out << ' ' << to_string(m);
  out << (trace.cascade.persistent ? " persistent" : "") << "\n";
  out << "custody";
  for (const auto& ev : trace.token_events)
    out << ' ' << to_string(ev.holder) << '@' << ev.time;
  out << "\n";
  if (trace.break_index) out << "break " << *trace.break_index << "\n";
  out << "token dest=" << (trace.token.dest == CloningToken::Target::server ? "S" : "peers")
      << " t=" << trace.token.request_time << "\n";
  for (const auto& c : trace.connections) {
    out << "conn " << to_string(c.source);
    if (c.via_exit) out << " via " << to_string(*c.via_exit);
    out << " -> " << to_string(c.destination) << " @" << c.send_time << "\n";
  }
  out << "first " << to_string(trace.first_connector) << "\n";
  return out.str();
}

}  // namespace netpriv
