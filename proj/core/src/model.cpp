#include "netpriv/model.hpp"

#include <algorithm>
#include <cmath>

#include "netpriv/rng.hpp"

namespace netpriv {

const char* to_string(Scenario s) noexcept {
  switch (s) {
    case Scenario::p2priv_p2p: return "p2priv-p2p";
    case Scenario::p2priv_cs: return "p2priv-cs";
    case Scenario::netpriv_cs: return "netpriv-cs";
  }
  return "?";
}

std::optional<Scenario> parse_scenario(std::string_view name) noexcept {
  if (name == "p2priv-p2p") return Scenario::p2priv_p2p;
  if (name == "p2priv-cs") return Scenario::p2priv_cs;
  if (name == "netpriv-cs") return Scenario::netpriv_cs;
  return std::nullopt;
}

std::string to_string(NodeId id) {
  switch (id.role) {
    case NodeRole::user: return "u" + std::to_string(id.index);
    case NodeRole::exit_node: return "e" + std::to_string(id.index);
    case NodeRole::server: return "S";
  }
  return "?";
}

void ScenarioConfig::validate() const {
  if (n_users < 2) throw std::invalid_argument("n_users must be at least 2 (no crowd to hide in)");
  if (!(rho >= 0.0 && rho <= 1.0)) throw std::invalid_argument("rho must lie in [0, 1]");
  if (!(rho_e >= 0.0 && rho_e <= 1.0)) throw std::invalid_argument("rho_e must lie in [0, 1]");
  if (!(p_f >= 0.0 && p_f < 1.0)) throw std::invalid_argument("p_f must lie in [0, 1)");
  if (scenario == Scenario::netpriv_cs && n_exits < 1)
    throw std::invalid_argument("netpriv-cs requires at least one exit node");
  if (break_cap && *break_cap < 1) throw std::invalid_argument("break_cap must be positive");
  if (jitter_max && *jitter_max < 1) throw std::invalid_argument("jitter_max must be positive");
}

std::uint32_t ScenarioConfig::effective_cap() const noexcept {
  if (break_cap) return *break_cap;
  const double honest = std::floor(static_cast<double>(n_users) * (1.0 - rho));
  return honest < 1.0 ? 1u : static_cast<std::uint32_t>(honest);
}

Tick ScenarioConfig::effective_jitter_max() const noexcept {
  if (jitter_max) return *jitter_max;
  return 4 * (static_cast<Tick>(effective_cap()) + 1);
}

std::uint32_t ScenarioConfig::persistent_cc_len() const noexcept {
  return netpriv_cc_len > 0 ? netpriv_cc_len : 4;
}

namespace {

// Uniform k-subset of {0,..,n-1} via partial Fisher-Yates; returned sorted.
std::vector<std::uint32_t> sample_subset(std::uint32_t n, std::uint32_t k, Rng& rng) {
  std::vector<std::uint32_t> pool(n);
  for (std::uint32_t i = 0; i < n; ++i) pool[i] = i;
  for (std::uint32_t i = 0; i < k; ++i) {
    const std::uint32_t j = i + rng.uniform_below(n - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace

Network build_population(const ScenarioConfig& config) {
  config.validate();

  Network net;
  net.population.n_users = config.n_users;
  net.population.n_exits = config.scenario == Scenario::netpriv_cs ? config.n_exits : 0;
  net.population.has_server = is_client_server(config.scenario);

  Rng rng(derive_seed(config.seed, stream::population));

  const auto n_mal_users =
      static_cast<std::uint32_t>(std::floor(config.rho * config.n_users));
  auto& view = net.adversary;
  view.malicious_users = sample_subset(config.n_users, n_mal_users, rng);
  view.user_malicious.assign(config.n_users, 0);
  for (auto u : view.malicious_users) view.user_malicious[u] = 1;

  view.exit_malicious.assign(net.population.n_exits, 0);
  if (net.population.n_exits > 0) {
    const auto n_mal_exits =
        static_cast<std::uint32_t>(std::floor(config.rho_e * net.population.n_exits));
    view.malicious_exits = sample_subset(net.population.n_exits, n_mal_exits, rng);
    for (auto e : view.malicious_exits) view.exit_malicious[e] = 1;
  }

  view.server_compromised = net.population.has_server && !view.empty();

  net.honest_users.reserve(config.n_users - n_mal_users);
  for (std::uint32_t u = 0; u < config.n_users; ++u)
    if (!view.user_malicious[u]) net.honest_users.push_back(u);

  return net;
}

CloningToken make_token(CloningToken::Target dest, Tick inject_time,
                        std::uint32_t traversal_bound, std::string request) {
  CloningToken token;
  token.dest = dest;
  token.request_time = inject_time + traversal_bound + 1;
  token.request = std::move(request);
  return token;
}

}  // namespace netpriv
