/**
 * @file value.hpp
 * @brief The value function V(b) = max_a r_a . b, its argmax sets, regret,
 *        and expected posterior values.
 *
 * V is the upper envelope of one linear functional per action. The closed
 * decision region of action a is the set of beliefs whose argmax contains a;
 * ties are always reported in full.
 */
#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "voilab/bayes.hpp"
#include "voilab/model.hpp"

namespace voilab {

using ActionSet = std::vector<std::size_t>; // sorted, nonempty

struct ValueResult {
    Rational value;
    ActionSet argmax_actions;

    bool on_kink() const noexcept { return argmax_actions.size() > 1; }
    /// Lowest-index optimal action.
    std::size_t canonical_action() const { return argmax_actions.front(); }
    bool contains(std::size_t a) const {
        return std::binary_search(argmax_actions.begin(), argmax_actions.end(), a);
    }
};

inline ValueResult value(const DecisionProblem& prob, const Belief& b) {
    require_states(prob.num_states(), b.size(), "value: belief");
    ValueResult out;
    for (std::size_t a = 0; a < prob.num_actions(); ++a) {
        Rational v = dot(prob.reward_row(a), b.probs());
        if (out.argmax_actions.empty() || v > out.value) {
            out.value = v;
            out.argmax_actions.assign(1, a);
        } else if (v == out.value) {
            out.argmax_actions.push_back(a);
        }
    }
    return out;
}

inline bool shares_action(const ActionSet& x, const ActionSet& y) {
    auto i = x.begin();
    auto j = y.begin();
    while (i != x.end() && j != y.end()) {
        if (*i == *j) return true;
        if (*i < *j) ++i;
        else ++j;
    }
    return false;
}

/// True iff both beliefs lie in a common closed decision region.
inline bool same_region(const DecisionProblem& prob, const Belief& b, const Belief& other) {
    return shares_action(value(prob, b).argmax_actions, value(prob, other).argmax_actions);
}

inline Rational regret(const DecisionProblem& prob, std::size_t action, const Belief& b) {
    if (action >= prob.num_actions())
        throw ValidationError("regret: unknown action index " + std::to_string(action));
    return value(prob, b).value - dot(prob.reward_row(action), b.probs());
}

/// P(o | b) * V(posterior(o)), computed without normalizing:
/// max_a sum_s R(a, s) P(o | s) b(s). Well defined when P(o | b) = 0.
inline Rational unnorm_posterior_value(const DecisionProblem& prob, const Channel& ch,
                                       const Belief& b, std::size_t outcome) {
    require_states(prob.num_states(), b.size(), "unnorm_posterior_value: belief");
    require_states(prob.num_states(), ch.num_states(), "unnorm_posterior_value: channel");
    if (outcome >= ch.num_outcomes())
        throw ValidationError("unnorm_posterior_value: outcome " + std::to_string(outcome) +
                              " out of range for channel '" + ch.name() + "'");
    std::vector<Rational> weighted(b.size());
    for (std::size_t s = 0; s < b.size(); ++s) weighted[s] = ch.likelihood(outcome, s) * b[s];
    Rational best;
    for (std::size_t a = 0; a < prob.num_actions(); ++a) {
        Rational v = dot(prob.reward_row(a), weighted);
        if (a == 0 || v > best) best = v;
    }
    return best;
}

/// E_o[V(posterior(o))] as the sum of unnormalized posterior values.
inline Rational expected_posterior_value(const DecisionProblem& prob, const Channel& ch,
                                         const Belief& b) {
    Rational total = 0;
    for (std::size_t o = 0; o < ch.num_outcomes(); ++o)
        total += unnorm_posterior_value(prob, ch, b, o);
    return total;
}

} // namespace voilab
