/**
 * @file localization.hpp
 * @brief Boundary-crossing diagnostics and executable localization checks.
 *
 * Two predicates, deliberately not complements of each other:
 *  - stays_interior: some optimal action at b stays optimal at every
 *    positive-marginal posterior of channel i (all posteriors share one
 *    closed decision region with b). Then delta_voi >= 0 and VoI(i) = 0.
 *  - crossing outcome: a posterior whose optimal actions are disjoint from
 *    those at b.
 * Substitution (delta_voi < 0) requires !stays_interior.
 */
#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "voilab/instance_io.hpp"
#include "voilab/interaction.hpp"

namespace voilab {

enum class Regime { complement, substitute, neutral };

inline std::string_view to_string(Regime r) {
    switch (r) {
    case Regime::complement: return "complement";
    case Regime::substitute: return "substitute";
    case Regime::neutral: return "neutral";
    }
    return "?";
}

inline Regime regime_of(const Rational& delta) {
    int s = sgn(delta);
    return s > 0 ? Regime::complement : (s < 0 ? Regime::substitute : Regime::neutral);
}

struct LocalizationVerdict {
    bool stays_interior = false;
    std::vector<std::size_t> crossing_outcomes;
    Regime regime = Regime::neutral;
    bool theorem2_applicable = false;
    std::optional<std::size_t> theorem3_witness;
};

/// True iff one action optimal at the prior stays optimal at every posterior.
inline bool posteriors_share_prior_region(const ActionSet& prior,
                                          const std::vector<ActionSet>& posteriors) {
    for (std::size_t a : prior) {
        bool everywhere = true;
        for (const auto& set : posteriors)
            if (!std::binary_search(set.begin(), set.end(), a)) {
                everywhere = false;
                break;
            }
        if (everywhere) return true;
    }
    return false;
}

/// Verdict from a computed report; never throws.
inline LocalizationVerdict assess(const InteractionReport& r) {
    LocalizationVerdict v;
    std::vector<ActionSet> post_sets;
    for (const auto& d : r.per_outcome) {
        post_sets.push_back(d.argmax_actions);
        if (!shares_action(d.argmax_actions, r.argmax_actions))
            v.crossing_outcomes.push_back(d.outcome);
    }
    v.stays_interior = posteriors_share_prior_region(r.argmax_actions, post_sets);
    v.theorem2_applicable = v.stays_interior;
    v.regime = regime_of(r.delta_voi);

    if (v.regime == Regime::substitute) {
        if (!v.crossing_outcomes.empty()) {
            v.theorem3_witness = v.crossing_outcomes.front();
        } else {
            // kink prior: some posterior leaves the region of the canonical action
            const std::size_t a = r.argmax_actions.front();
            for (const auto& d : r.per_outcome)
                if (!std::binary_search(d.argmax_actions.begin(), d.argmax_actions.end(), a)) {
                    v.theorem3_witness = d.outcome;
                    break;
                }
        }
    }
    return v;
}

/// Names of the localization results contradicted by (report, verdict).
inline std::vector<std::string> localization_violations(const InteractionReport& r,
                                                        const LocalizationVerdict& v) {
    std::vector<std::string> out;
    if (v.stays_interior && v.regime == Regime::substitute)
        out.push_back("interior complementarity: posteriors stay in one region but delta_voi < 0");
    if (v.stays_interior && sgn(r.voi_i) != 0)
        out.push_back("decision irrelevance: posteriors stay in one region but VoI(i) != 0");
    if (v.regime == Regime::substitute) {
        if (!v.theorem3_witness)
            out.push_back("boundary crossing: delta_voi < 0 without a posterior leaving the region");
        if (r.argmax_actions.size() == 1 && v.crossing_outcomes.empty())
            out.push_back("boundary crossing: delta_voi < 0, unique prior action optimal at every posterior");
    }
    return out;
}

namespace detail {

inline std::string reproducer(const DecisionProblem& prob, const Channel& ch_i, const Channel& ch_j,
                              const Belief& b) {
    nlohmann::ordered_json doc;
    doc["instance"] = instance_to_json(make_pair_instance(prob, ch_i, ch_j));
    auto belief = nlohmann::ordered_json::array();
    for (const auto& p : b.probs()) belief.push_back(to_string(p));
    doc["belief"] = std::move(belief);
    return doc.dump(2);
}

} // namespace detail

/// Classifies the interaction at b. Throws TheoremViolation (carrying the
/// serialized instance and belief) if a decomposition or localization
/// result fails, which would indicate a bug.
inline LocalizationVerdict classify(const DecisionProblem& prob, const Channel& ch_i,
                                    const Channel& ch_j, const Belief& b) {
    InteractionReport r = delta_voi(prob, ch_i, ch_j, b);
    LocalizationVerdict v = assess(r);
    auto bad = report_violations(r);
    for (auto& s : localization_violations(r, v)) bad.push_back(std::move(s));
    if (!bad.empty()) {
        std::string msg = "theorem violation:";
        for (const auto& s : bad) msg += " [" + s + "]";
        throw TheoremViolation(msg, detail::reproducer(prob, ch_i, ch_j, b));
    }
    return v;
}

/// True iff VoI(ch | b) = 0.
inline bool decision_irrelevant(const DecisionProblem& prob, const Channel& ch, const Belief& b) {
    const bool irrelevant = sgn(voi(prob, ch, b)) == 0;
    std::vector<ActionSet> post_sets;
    for (const auto& e : posterior_family(b, ch)) post_sets.push_back(value(prob, e.posterior).argmax_actions);
    if (!irrelevant && posteriors_share_prior_region(value(prob, b).argmax_actions, post_sets))
        throw TheoremViolation("decision irrelevance: posteriors stay in one region but VoI != 0",
                               detail::reproducer(prob, ch, ch, b));
    return irrelevant;
}

} // namespace voilab
