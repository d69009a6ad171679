/**
 * @file bayes.hpp
 * @brief Outcome marginals, posterior beliefs, and product channels.
 */
#pragma once

#include <cstddef>
#include <vector>

#include "voilab/model.hpp"

namespace voilab {

/// P(o | b) for every outcome o of a channel.
struct OutcomeDistribution {
    std::vector<Rational> probs;
};

struct PosteriorEntry {
    std::size_t outcome;
    Rational marginal;
    Belief posterior;
};

/// Posteriors for the outcomes with positive marginal. Zero-marginal outcomes
/// are omitted; they carry no weight in any expectation.
struct PosteriorFamily {
    std::vector<PosteriorEntry> entries;

    auto begin() const { return entries.begin(); }
    auto end() const { return entries.end(); }
    std::size_t size() const noexcept { return entries.size(); }
    const PosteriorEntry& operator[](std::size_t k) const { return entries[k]; }
};

inline OutcomeDistribution marginal(const Belief& b, const Channel& ch) {
    require_states(ch.num_states(), b.size(), "marginal: belief");
    OutcomeDistribution out;
    out.probs.reserve(ch.num_outcomes());
    for (const auto& row : ch.kernel()) out.probs.push_back(dot(row, b.probs()));
    return out;
}

inline PosteriorFamily posterior_family(const Belief& b, const Channel& ch) {
    require_states(ch.num_states(), b.size(), "posterior_family: belief");
    PosteriorFamily fam;
    const std::size_t k = b.size();
    for (std::size_t o = 0; o < ch.num_outcomes(); ++o) {
        std::vector<Rational> joint(k);
        Rational m = 0;
        for (std::size_t s = 0; s < k; ++s) {
            joint[s] = ch.likelihood(o, s) * b[s];
            m += joint[s];
        }
        if (sgn(m) == 0) continue;
        for (auto& x : joint) x /= m;
        fam.entries.push_back({o, m, Belief(std::move(joint))});
    }
    return fam;
}

/// Joint channel of two conditionally independent observations. Outcome
/// (o1, o2) has index o1 * |O2| + o2.
inline Channel product_channel(const Channel& first, const Channel& second) {
    require_states(first.num_states(), second.num_states(), "product_channel: second channel");
    Matrix kernel;
    kernel.reserve(first.num_outcomes() * second.num_outcomes());
    for (const auto& r1 : first.kernel())
        for (const auto& r2 : second.kernel()) {
            std::vector<Rational> row(r1.size());
            for (std::size_t s = 0; s < r1.size(); ++s) row[s] = r1[s] * r2[s];
            kernel.push_back(std::move(row));
        }
    return Channel(first.name() + "*" + second.name(), std::move(kernel));
}

} // namespace voilab
