#include "netpriv/analytic.hpp"

#include <cmath>
#include <stdexcept>

namespace netpriv::analytic {

namespace {
constexpr double kWeightTol = 1e-12;
}

void AnalyticInputs::validate() const {
  if (!(n_users >= 2.0)) throw std::domain_error("n_users must be at least 2");
  if (!(rho >= 0.0 && rho <= 1.0)) throw std::domain_error("rho must lie in [0, 1]");
  if (!(rho_e >= 0.0 && rho_e <= 1.0)) throw std::domain_error("rho_e must lie in [0, 1]");
  if (!(p_f >= 0.0 && p_f < 1.0)) throw std::domain_error("p_f must lie in [0, 1)");
  if (cap < 1) throw std::domain_error("cap must be positive");
}

AnalyticInputs inputs_from(const ScenarioConfig& config) {
  AnalyticInputs in;
  in.n_users = static_cast<double>(config.n_users);
  in.rho = config.rho;
  in.rho_e = config.rho_e;
  in.p_f = config.p_f;
  in.cap = config.effective_cap();
  in.validate();
  return in;
}

std::uint32_t auto_cap(double n_users, double rho) noexcept {
  const double honest = std::floor(n_users * (1.0 - rho));
  return honest < 1.0 ? 1u : static_cast<std::uint32_t>(honest);
}

double max_entropy(double n_users, double rho) {
  const double candidates = n_users * (1.0 - rho);
  if (!(candidates >= 1.0))
    throw std::domain_error("max_entropy: no honest candidate population");
  return std::log2(candidates);
}

double mean_cc_length(double p_f) {
  if (!(p_f >= 0.0 && p_f < 1.0))
    throw std::domain_error("mean_cc_length: p_f must lie in [0, 1)");
  return (p_f - 2.0) / (p_f - 1.0);
}

double cc_break_pmf(std::int64_t n, double rho, double p_f) {
  if (n < 1) throw std::domain_error("cc_break_pmf: n must be at least 1");
  if (!(rho >= 0.0 && rho <= 1.0)) throw std::domain_error("cc_break_pmf: rho outside [0, 1]");
  if (!(p_f >= 0.0 && p_f < 1.0)) throw std::domain_error("cc_break_pmf: p_f outside [0, 1)");
  if (n == 1) return rho;
  const double nn = static_cast<double>(n);
  return std::pow(1.0 - rho, nn - 1.0) *
         (std::pow(p_f, nn - 1.0) * rho + (1.0 - p_f) * std::pow(p_f, nn - 2.0));
}

double expected_cc_break(double rho, double p_f, std::uint32_t cap) {
  if (!(rho > 0.0 && rho <= 1.0))
    throw std::domain_error("expected_cc_break: rho must lie in (0, 1]");
  if (cap < 1) throw std::domain_error("expected_cc_break: cap must be positive");
  double sum = 0.0;
  for (std::uint32_t n = 1; n <= cap; ++n)
    sum += static_cast<double>(n) * cc_break_pmf(n, rho, p_f);
  return sum;
}

double expected_cc_break_closed_form(double rho, double p_f, double cc_len) {
  if (!(rho > 0.0 && rho <= 1.0))
    throw std::domain_error("expected_cc_break_closed_form: rho must lie in (0, 1]");
  if (!(p_f > 0.0 && p_f < 1.0))
    throw std::domain_error("expected_cc_break_closed_form: p_f must lie in (0, 1)");
  const double c = cc_len;
  const double bracket = (1.0 + c) * std::pow(p_f, c) * std::pow(rho - 1.0, c) -
                         c * std::pow(p_f, c + 1.0) * std::pow(rho - 1.0, c + 1.0) -
                         p_f * (rho - 2.0) + p_f * p_f * (rho - 1.0);
  return bracket * p_f / (1.0 + p_f * (rho - 1.0));
}

double eavesdrop_size(double fraction, double n_break) noexcept {
  return fraction * n_break;
}

PosteriorParams posterior_params_at(double n_users, double rho, double n_break,
                                    double n_eavesdropped, PosteriorForm form) {
  if (!(n_break >= 1.0)) throw std::domain_error("posterior: n_break must be at least 1");
  if (!(n_eavesdropped >= 0.0 && n_eavesdropped <= n_break))
    throw std::domain_error("posterior: eavesdropped set exceeds the broken cascade");

  PosteriorParams p;
  p.n_break = n_break;
  p.n_eavesdropped = n_eavesdropped;
  p.p_a1 = 1.0 / n_break;

  const double outside = n_users - rho * n_users - n_eavesdropped;
  if (!(outside > 0.0))
    throw std::domain_error("posterior: no honest nodes outside the eavesdropped set");

  const double mass = form == PosteriorForm::normalized
                          ? 1.0 - n_eavesdropped / n_break
                          : 1.0 - p.p_a1;
  p.p_other = mass / outside;
  if (form == PosteriorForm::normalized && p.p_other > 1.0 + kWeightTol)
    throw std::domain_error("posterior: outside weight exceeds 1, not a distribution");
  return p;
}

PosteriorParams posterior_params(const AnalyticInputs& in, Scenario scenario,
                                 PosteriorForm form) {
  in.validate();
  const double n_break = expected_cc_break(in.rho, in.p_f, in.cap);
  const double fraction = scenario == Scenario::netpriv_cs ? in.rho_e : in.rho;
  return posterior_params_at(in.n_users, in.rho, n_break,
                             eavesdrop_size(fraction, n_break), form);
}

double posterior_entropy(const PosteriorParams& p, double n_users, double rho) {
  // H = -sum_eavesdropped p_a1 log2 p_a1 - sum_outside p_other log2 p_other,
  // with the set sizes as real weights. Written via the eavesdropped ratio so
  // a fully eavesdropped cascade degrades exactly to log2(n_break).
  const double ratio = p.n_eavesdropped / p.n_break;
  double h = ratio * std::log2(p.n_break);
  if (ratio < 1.0 && p.p_other > 0.0) {
    const double outside = n_users - rho * n_users - p.n_eavesdropped;
    h -= outside * p.p_other * std::log2(p.p_other);
  }
  return h;
}

namespace {

double two_component_entropy(double n_users, double rho, double n_break,
                             double n_eavesdropped) {
  return posterior_entropy(
      posterior_params_at(n_users, rho, n_break, n_eavesdropped), n_users, rho);
}

}  // namespace

double entropy_p2priv_p2p_at(double n_users, double rho, double n_break) {
  if (rho == 0.0) return max_entropy(n_users, 0.0);
  return two_component_entropy(n_users, rho, n_break, eavesdrop_size(rho, n_break));
}

double entropy_p2priv_cs_at(double n_break) {
  if (!(n_break >= 1.0)) throw std::domain_error("entropy: n_break must be at least 1");
  return std::log2(n_break);
}

double entropy_netpriv_at(double n_users, double rho, double rho_e, double n_break) {
  if (rho == 0.0) return max_entropy(n_users, 0.0);
  return two_component_entropy(n_users, rho, n_break, eavesdrop_size(rho_e, n_break));
}

double entropy_p2priv_p2p(const AnalyticInputs& in) {
  in.validate();
  if (in.rho == 0.0) return max_entropy(in.n_users, 0.0);
  return entropy_p2priv_p2p_at(in.n_users, in.rho,
                               expected_cc_break(in.rho, in.p_f, in.cap));
}

double entropy_p2priv_cs(const AnalyticInputs& in) {
  in.validate();
  if (in.rho == 0.0) return max_entropy(in.n_users, 0.0);
  // Depends on (rho, p_f, cap) only: independent of the network scale.
  return entropy_p2priv_cs_at(expected_cc_break(in.rho, in.p_f, in.cap));
}

double entropy_netpriv(const AnalyticInputs& in) {
  in.validate();
  if (in.rho == 0.0) return max_entropy(in.n_users, 0.0);
  return entropy_netpriv_at(in.n_users, in.rho, in.rho_e,
                            expected_cc_break(in.rho, in.p_f, in.cap));
}

double entropy_for(const AnalyticInputs& in, Scenario scenario) {
  switch (scenario) {
    case Scenario::p2priv_p2p: return entropy_p2priv_p2p(in);
    case Scenario::p2priv_cs: return entropy_p2priv_cs(in);
    case Scenario::netpriv_cs: return entropy_netpriv(in);
  }
  throw std::logic_error("unknown scenario");
}

double entropy_for_at(const AnalyticInputs& in, Scenario scenario, double n_break) {
  if (in.rho == 0.0) return max_entropy(in.n_users, 0.0);
  switch (scenario) {
    case Scenario::p2priv_p2p: return entropy_p2priv_p2p_at(in.n_users, in.rho, n_break);
    case Scenario::p2priv_cs: return entropy_p2priv_cs_at(n_break);
    case Scenario::netpriv_cs:
      return entropy_netpriv_at(in.n_users, in.rho, in.rho_e, n_break);
  }
  throw std::logic_error("unknown scenario");
}

}  // namespace netpriv::analytic
