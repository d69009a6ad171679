/**
 * @file interaction.hpp
 * @brief Value of information and the second-order interaction between two
 *        channels, split into complement and substitute forces.
 *
 * With g(b) = E_{o_j}[V(posterior_j(b, o_j))] and h(b) = V(b):
 *
 *     delta_voi(j | i, b) = E[VoI(j | b_i)] - VoI(j | b)
 *                         = (E[g(b_i)] - g(b)) - (E[h(b_i)] - h(b))
 *                         = complement_force - substitute_force
 *
 * where b_i ranges over the posteriors of channel i. Each force is a Jensen
 * gap, which equals the expected Bregman divergence of g (resp. h) because
 * the posteriors average back to b exactly. Forces are reported as Jensen
 * gaps so they stay well defined at kinks of V, where the per-outcome
 * Bregman divergence depends on the chosen subgradient.
 */
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "voilab/bayes.hpp"
#include "voilab/value.hpp"

namespace voilab {

/// VoI(ch | b) = E_o[V(posterior(o))] - V(b). Always >= 0.
inline Rational voi(const DecisionProblem& prob, const Channel& ch, const Belief& b) {
    return expected_posterior_value(prob, ch, b) - value(prob, b).value;
}

/// g(b): the expected value after observing channel j from belief b.
inline Rational g_value(const DecisionProblem& prob, const Channel& ch_j, const Belief& b) {
    return expected_posterior_value(prob, ch_j, b);
}

struct OutcomeDetail {
    std::size_t outcome;
    Rational marginal;
    Belief posterior;
    Rational value;                 // V(posterior)
    ActionSet argmax_actions;       // at the posterior
    Rational voi_j;                 // VoI(j | posterior)
    Rational regret_of_prior_action; // regret of the canonical prior action at the posterior
};

struct InteractionReport {
    explicit InteractionReport(Belief b) : belief(std::move(b)) {}

    Belief belief;
    Rational value;            // V(b)
    ActionSet argmax_actions;  // at b
    Rational voi_i;
    Rational voi_j;
    Rational voi_j_after_i;    // E_{o_i}[VoI(j | posterior)]
    Rational delta_voi;
    Rational complement_force; // E[g(posterior)] - g(b)
    Rational substitute_force; // E[V(posterior)] - V(b)
    bool prior_on_kink = false;
    std::vector<OutcomeDetail> per_outcome;
};

inline InteractionReport delta_voi(const DecisionProblem& prob, const Channel& ch_i,
                                   const Channel& ch_j, const Belief& b) {
    require_states(prob.num_states(), b.size(), "delta_voi: belief");
    require_states(prob.num_states(), ch_i.num_states(), "delta_voi: channel i");
    require_states(prob.num_states(), ch_j.num_states(), "delta_voi: channel j");

    const ValueResult prior = value(prob, b);
    const Rational g_prior = g_value(prob, ch_j, b);
    const std::size_t prior_action = prior.canonical_action();

    InteractionReport r(b);
    r.value = prior.value;
    r.argmax_actions = prior.argmax_actions;
    r.voi_i = voi(prob, ch_i, b);
    r.voi_j = g_prior - prior.value;
    r.prior_on_kink = prior.on_kink();

    Rational expected_g = 0;
    Rational expected_v = 0;
    for (const auto& e : posterior_family(b, ch_i)) {
        ValueResult post = value(prob, e.posterior);
        Rational g_post = g_value(prob, ch_j, e.posterior);
        Rational voi_j_post = g_post - post.value;
        Rational reg = post.value - dot(prob.reward_row(prior_action), e.posterior.probs());

        r.voi_j_after_i += e.marginal * voi_j_post;
        expected_g += e.marginal * g_post;
        expected_v += e.marginal * post.value;
        r.per_outcome.push_back({e.outcome, e.marginal, e.posterior, post.value,
                                 std::move(post.argmax_actions), std::move(voi_j_post),
                                 std::move(reg)});
    }
    r.delta_voi = r.voi_j_after_i - r.voi_j;
    r.complement_force = expected_g - g_prior;
    r.substitute_force = expected_v - prior.value;
    return r;
}

/// Names of the report invariants that fail (empty when all hold).
inline std::vector<std::string> report_violations(const InteractionReport& r) {
    std::vector<std::string> out;
    if (r.delta_voi != r.voi_j_after_i - r.voi_j) out.push_back("delta_voi != voi_j_after_i - voi_j");
    if (r.delta_voi != r.complement_force - r.substitute_force)
        out.push_back("decomposition: delta_voi != complement_force - substitute_force");
    if (sgn(r.complement_force) < 0) out.push_back("complement_force < 0");
    if (sgn(r.substitute_force) < 0) out.push_back("substitute_force < 0");
    if (r.substitute_force != r.voi_i) out.push_back("substitute_force != voi_i");
    return out;
}

/// D_h(b', b) = V(b') - V(b) - r_sel . (b' - b), using r_sel as the
/// subgradient of V at b. `selected` must be optimal at b.
inline Rational bregman_divergence_h(const DecisionProblem& prob, const Belief& b_post,
                                     const Belief& b, std::size_t selected) {
    require_states(prob.num_states(), b_post.size(), "bregman_divergence_h: first belief");
    const ValueResult at_b = value(prob, b);
    if (selected >= prob.num_actions() || !at_b.contains(selected))
        throw ValidationError("bregman_divergence_h: action " + std::to_string(selected) +
                              " is not optimal at the reference belief, so it is not a subgradient");
    Rational linear = 0;
    const auto row = prob.reward_row(selected);
    for (std::size_t s = 0; s < b.size(); ++s) linear += row[s] * (b_post[s] - b[s]);
    return value(prob, b_post).value - at_b.value - linear;
}

/// Adds `c` to every reward. Leaves every VoI and delta_voi unchanged.
inline DecisionProblem shift_rewards(const DecisionProblem& prob, const Rational& c) {
    Matrix rewards = prob.rewards();
    for (auto& row : rewards)
        for (auto& x : row) x += c;
    return DecisionProblem(prob.state_names(), prob.action_names(), std::move(rewards));
}

} // namespace voilab
