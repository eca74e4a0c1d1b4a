#pragma once

#include <cstdint>

#include "netpriv/model.hpp"

// Closed-form anonymity quantities for the parallel-cascade architectures.
// Everything here is a pure function of its arguments; the simulator is
// validated against these. Domain violations throw std::domain_error.
//
// Conventions, fixed across the module:
//  * Break-length expectations are truncated sums up to `cap`, never
//    renormalized. The default cap is floor(n_users * (1 - rho)), the largest
//    break size the honest population admits.
//  * Expected set sizes enter the entropy expressions as real-valued weights,
//    without rounding.
//  * rho = 0 means no adversary; every entropy operation then returns
//    max_entropy(n_users, 0).
//  * Posterior weights outside the eavesdropped set use the normalized form
//    (leftover probability mass spread evenly); the historical unnormalized
//    expression is available as PosteriorForm::unnormalized_reference for
//    side-by-side comparison but is not a probability distribution.
namespace netpriv::analytic {

struct AnalyticInputs {
  double n_users = 0;   // |N|
  double rho = 0;       // colluding user fraction
  double rho_e = 0;     // colluding exit fraction
  double p_f = 0;       // walk forwarding probability
  std::uint32_t cap = 1;  // summation / walk bound

  void validate() const;
};

/// Resolves a ScenarioConfig (including an AUTO cap) into analytic inputs.
AnalyticInputs inputs_from(const ScenarioConfig& config);

/// floor(n_users * (1 - rho)), clamped to >= 1.
std::uint32_t auto_cap(double n_users, double rho) noexcept;

/// Entropy of the no-information adversary: log2(n_users * (1 - rho)).
/// Domain error when fewer than one honest candidate remains.
double max_entropy(double n_users, double rho);

/// Mean cascade length (p_f - 2) / (p_f - 1) for p_f in [0, 1).
/// Note: the formula gives 3 at p_f = 1/2 (not 2); the formula wins.
double mean_cc_length(double p_f);

/// Probability that the broken cascade has exactly n honest members:
/// rho for n = 1, else (1-rho)^(n-1) * (p_f^(n-1) rho + (1-p_f) p_f^(n-2)).
/// rho = 0 is degenerate (a break never happens) and is special-cased by the
/// entropy operations, not here.
double cc_break_pmf(std::int64_t n, double rho, double p_f);

/// Truncated expectation sum_{n=1..cap} n * cc_break_pmf(n). Canonical form
/// of the expected broken-cascade size. Requires rho in (0, 1].
double expected_cc_break(double rho, double p_f, std::uint32_t cap);

/// Transcribed closed-form variant of the expectation, evaluated verbatim
/// with cc_len (normally mean_cc_length(p_f)) as the upper bound. Kept for
/// cross-validation only: it deviates from the summation for most inputs
/// (the geometric tail terms carry sign defects and the trailing p_f factor
/// reads as a stray reciprocal); see the analytic test suite for the
/// recorded comparison. expected_cc_break is authoritative.
double expected_cc_break_closed_form(double rho, double p_f, double cc_len);

/// Expected eavesdropped subset size: fraction * n_break. The fraction is
/// rho in the P2P scenario and rho_e in the NetPriv scenario.
double eavesdrop_size(double fraction, double n_break) noexcept;

enum class PosteriorForm : std::uint8_t {
  normalized,               // leftover mass spread over the outside set
  unnormalized_reference,   // p_other = (1 - p_a1) / outside, comparison only
};

struct PosteriorParams {
  double p_a1 = 0;            // per-node weight inside the eavesdropped set
  double p_other = 0;         // per-node weight outside it
  double n_eavesdropped = 0;  // |CC_eavesdrop|, real-valued
  double n_break = 0;         // |CC_break|, real-valued
};

/// Adversary posterior weights for explicit set sizes. Domain error when the
/// outside set is empty or (normalized form) when p_other would exceed 1,
/// i.e. when the weights stop being a distribution.
PosteriorParams posterior_params_at(double n_users, double rho, double n_break,
                                    double n_eavesdropped,
                                    PosteriorForm form = PosteriorForm::normalized);

/// Posterior at the model's expected set sizes for the given scenario.
PosteriorParams posterior_params(const AnalyticInputs& in, Scenario scenario,
                                 PosteriorForm form = PosteriorForm::normalized);

/// Two-component Shannon entropy of the posterior, in bits: the eavesdropped
/// set contributes n_eavesdropped * p_a1 * log2(1/p_a1), the remaining honest
/// nodes the analogous p_other term. Fractional sizes act as weights.
double posterior_entropy(const PosteriorParams& p, double n_users, double rho);

// Entropies at an explicit break size (used to evaluate the formulas at an
// empirically measured |CC_break|).
double entropy_p2priv_p2p_at(double n_users, double rho, double n_break);
double entropy_p2priv_cs_at(double n_break);  // log2(n_break)
double entropy_netpriv_at(double n_users, double rho, double rho_e, double n_break);

// Entropies at the model's expected break size.
double entropy_p2priv_p2p(const AnalyticInputs& in);
double entropy_p2priv_cs(const AnalyticInputs& in);
double entropy_netpriv(const AnalyticInputs& in);

/// Scenario dispatch for the three entropies above.
double entropy_for(const AnalyticInputs& in, Scenario scenario);

/// Scenario dispatch with the break size substituted by `n_break`.
double entropy_for_at(const AnalyticInputs& in, Scenario scenario, double n_break);

}  // namespace netpriv::analytic
