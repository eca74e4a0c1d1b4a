#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace netpriv {

using Tick = std::uint64_t;

enum class Scenario : std::uint8_t {
  p2priv_p2p,    // distributed content exchange between equivalent peers
  p2priv_cs,     // all cascade members connect directly to one server
  netpriv_cs,    // cascade members connect to the server via exit nodes
};

constexpr bool is_client_server(Scenario s) noexcept {
  return s != Scenario::p2priv_p2p;
}

const char* to_string(Scenario s) noexcept;
std::optional<Scenario> parse_scenario(std::string_view name) noexcept;

enum class NodeRole : std::uint8_t { user, exit_node, server };

// Role-qualified node identity; indices are dense per role set.
struct NodeId {
  NodeRole role{NodeRole::user};
  std::uint32_t index{0};
  auto operator<=>(const NodeId&) const = default;
};

constexpr NodeId user_node(std::uint32_t i) noexcept { return {NodeRole::user, i}; }
constexpr NodeId exit_node(std::uint32_t i) noexcept { return {NodeRole::exit_node, i}; }
constexpr NodeId server_node() noexcept { return {NodeRole::server, 0}; }

std::string to_string(NodeId id);

struct ScenarioConfig {
  std::uint32_t n_users = 1000;
  std::uint32_t n_exits = 20;     // NetPriv only
  double rho = 0.0;               // colluding fraction of user nodes
  double rho_e = 0.0;             // colluding fraction of exit nodes (NetPriv)
  double p_f = 2.0 / 3.0;         // random-walk forwarding probability
  Scenario scenario = Scenario::p2priv_cs;

  // Upper bound for break-length summations and for the walk itself.
  // Unset: floor(n_users * (1 - rho)), clamped to >= 1.
  std::optional<std::uint32_t> break_cap;

  // Largest per-clone send delay, in ticks. Unset: 4 * (walk bound + 1).
  std::optional<Tick> jitter_max;

  // NetPriv cascade length for a single-shot session. 0 draws the length per
  // session from the same law the p_f walk follows, which keeps single-shot
  // NetPriv statistics aligned with the break-length model; a positive value
  // pins the sender's free-route selection to that many members. Persistent
  // sessions require a pinned length and default to 4.
  std::uint32_t netpriv_cc_len = 0;

  std::uint64_t seed = 0;

  void validate() const;  // throws std::invalid_argument
  std::uint32_t effective_cap() const noexcept;
  Tick effective_jitter_max() const noexcept;
  std::uint32_t persistent_cc_len() const noexcept;  // netpriv_cc_len or 4
};

struct AdversaryView {
  std::vector<std::uint8_t> user_malicious;  // 0/1 per user index
  std::vector<std::uint8_t> exit_malicious;  // 0/1 per exit index
  std::vector<std::uint32_t> malicious_users;  // sorted
  std::vector<std::uint32_t> malicious_exits;  // sorted
  bool server_compromised = false;

  bool is_malicious_user(std::uint32_t i) const noexcept { return user_malicious[i] != 0; }
  bool is_malicious_exit(std::uint32_t i) const noexcept { return exit_malicious[i] != 0; }
  bool empty() const noexcept { return malicious_users.empty() && malicious_exits.empty(); }
};

struct Population {
  std::uint32_t n_users = 0;
  std::uint32_t n_exits = 0;  // 0 outside NetPriv
  bool has_server = false;
};

struct Network {
  Population population;
  AdversaryView adversary;
  std::vector<std::uint32_t> honest_users;  // sorted
};

/// Deterministic role and colluder assignment for `config.seed`. Exactly
/// floor(rho * n_users) user colluders and, in the NetPriv scenario,
/// floor(rho_e * n_exits) exit colluders, each a uniform random subset.
/// The server counts as compromised only while the adversary exists at all
/// (some colluding node somewhere); with rho = rho_e = 0 there is nobody to
/// sit at it and observation logs stay empty.
Network build_population(const ScenarioConfig& config);

// Where a connection ultimately lands.
struct Destination {
  enum class Kind : std::uint8_t { server, peer };
  Kind kind{Kind::server};
  std::uint32_t peer = 0;  // user index when kind == peer
};

// Signaling message recruiting the clones. dest names the server or the peer
// swarm; request_time is the earliest permitted connection tick.
struct CloningToken {
  enum class Target : std::uint8_t { server, peer_swarm };
  Target dest{Target::server};
  Tick request_time = 0;
  std::string request;  // opaque payload; adversary matching = byte equality
};

/// Token whose request_time clears `inject_time` plus the worst-case cascade
/// traversal (`traversal_bound` ticks) by one tick, as the timing rule demands.
CloningToken make_token(CloningToken::Target dest, Tick inject_time,
                        std::uint32_t traversal_bound, std::string request);

struct ExitRequestBody {
  NodeId src;
  Destination dest;
  std::string request;
};

// {src, dest, request} sealed for one exit node; stands in for the public-key
// envelope. Contents are reachable only through open() as the sealing exit.
class SealedExitRequest {
 public:
  SealedExitRequest(ExitRequestBody body, std::uint32_t sealed_for)
      : body_(std::move(body)), sealed_for_(sealed_for) {}

  std::uint32_t sealed_for() const noexcept { return sealed_for_; }

  /// Throws std::logic_error unless `exit_index` is the sealing exit.
  const ExitRequestBody& open(std::uint32_t exit_index) const {
    if (exit_index != sealed_for_)
      throw std::logic_error("sealed exit request opened by wrong exit node");
    return body_;
  }

 private:
  ExitRequestBody body_;
  std::uint32_t sealed_for_;
};

}  // namespace netpriv
