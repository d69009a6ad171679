/**
 * @file model.hpp
 * @brief Exact domain types: beliefs, decision problems, channels.
 *
 * All types validate on construction and are immutable afterwards.
 */
#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "voilab/error.hpp"
#include "voilab/rational.hpp"

namespace voilab {

using Matrix = std::vector<std::vector<Rational>>;

/// A probability vector over K states (a point of the closed simplex).
class Belief {
public:
    explicit Belief(std::vector<Rational> probs) : probs_(std::move(probs)) {
        if (probs_.empty()) throw ValidationError("belief: no states");
        Rational total = 0;
        for (std::size_t s = 0; s < probs_.size(); ++s) {
            if (sgn(probs_[s]) < 0)
                throw ValidationError("belief: entry " + std::to_string(s) + " is negative (" +
                                      to_string(probs_[s]) + ")");
            total += probs_[s];
        }
        if (total != 1)
            throw ValidationError("belief: entries sum to " + to_string(total) + ", expected 1");
    }

    std::size_t size() const noexcept { return probs_.size(); }
    const Rational& operator[](std::size_t s) const { return probs_[s]; }
    std::span<const Rational> probs() const noexcept { return probs_; }

    friend bool operator==(const Belief&, const Belief&) = default;

private:
    std::vector<Rational> probs_;
};

inline std::string to_string(const Belief& b) {
    std::string out = "(";
    for (std::size_t s = 0; s < b.size(); ++s) {
        if (s) out += ", ";
        out += to_string(b[s]);
    }
    return out + ")";
}

/// Rewards R(a, s) over |A| actions and K states. Row a is the payoff vector r_a.
class DecisionProblem {
public:
    DecisionProblem(std::vector<std::string> state_names, std::vector<std::string> action_names,
                    Matrix rewards)
        : states_(std::move(state_names)), actions_(std::move(action_names)),
          rewards_(std::move(rewards)) {
        if (states_.size() < 2) throw ValidationError("problem: need at least two states");
        if (actions_.size() < 2) throw ValidationError("problem: need at least two actions");
        if (rewards_.size() != actions_.size())
            throw DimensionError("rewards: " + std::to_string(rewards_.size()) + " rows for " +
                                 std::to_string(actions_.size()) + " actions");
        for (std::size_t a = 0; a < rewards_.size(); ++a)
            if (rewards_[a].size() != states_.size())
                throw DimensionError("rewards: row " + std::to_string(a) + " (" + actions_[a] +
                                     ") has " + std::to_string(rewards_[a].size()) +
                                     " entries, expected " + std::to_string(states_.size()));
    }

    /// Problem with generated names s1..sK and a1..aA.
    static DecisionProblem from_rewards(Matrix rewards) {
        if (rewards.empty()) throw ValidationError("problem: need at least two actions");
        std::vector<std::string> states, actions;
        for (std::size_t s = 0; s < rewards.front().size(); ++s)
            states.push_back("s" + std::to_string(s + 1));
        for (std::size_t a = 0; a < rewards.size(); ++a)
            actions.push_back("a" + std::to_string(a + 1));
        return DecisionProblem(std::move(states), std::move(actions), std::move(rewards));
    }

    std::size_t num_states() const noexcept { return states_.size(); }
    std::size_t num_actions() const noexcept { return actions_.size(); }
    const std::vector<std::string>& state_names() const noexcept { return states_; }
    const std::vector<std::string>& action_names() const noexcept { return actions_; }
    const Matrix& rewards() const noexcept { return rewards_; }
    std::span<const Rational> reward_row(std::size_t a) const { return rewards_.at(a); }

    friend bool operator==(const DecisionProblem&, const DecisionProblem&) = default;

private:
    std::vector<std::string> states_;
    std::vector<std::string> actions_;
    Matrix rewards_;
};

/// Likelihood kernel P(o | s); rows are outcomes, columns are states.
class Channel {
public:
    Channel(std::string name, Matrix kernel) : name_(std::move(name)), kernel_(std::move(kernel)) {
        if (kernel_.empty())
            throw ValidationError("channel '" + name_ + "': needs at least one outcome");
        const std::size_t k = kernel_.front().size();
        if (k == 0) throw ValidationError("channel '" + name_ + "': no state columns");
        for (std::size_t o = 0; o < kernel_.size(); ++o) {
            if (kernel_[o].size() != k)
                throw DimensionError("channel '" + name_ + "': outcome row " + std::to_string(o) +
                                     " has " + std::to_string(kernel_[o].size()) +
                                     " entries, expected " + std::to_string(k));
            for (std::size_t s = 0; s < k; ++s)
                if (sgn(kernel_[o][s]) < 0)
                    throw ValidationError("channel '" + name_ + "': P(o=" + std::to_string(o) +
                                          " | state " + std::to_string(s) + ") is negative");
        }
        for (std::size_t s = 0; s < k; ++s) {
            Rational col = 0;
            for (const auto& row : kernel_) col += row[s];
            if (col != 1)
                throw ValidationError("channel '" + name_ + "': column for state index " +
                                      std::to_string(s) + " sums to " + to_string(col) +
                                      ", expected 1");
        }
    }

    /// Single-outcome channel: observing it never changes the belief.
    static Channel uninformative(std::size_t num_states, std::string name = "null") {
        return Channel(std::move(name), Matrix{std::vector<Rational>(num_states, Rational(1))});
    }

    const std::string& name() const noexcept { return name_; }
    std::size_t num_outcomes() const noexcept { return kernel_.size(); }
    std::size_t num_states() const noexcept { return kernel_.front().size(); }
    const Matrix& kernel() const noexcept { return kernel_; }
    const Rational& likelihood(std::size_t o, std::size_t s) const { return kernel_[o][s]; }

    friend bool operator==(const Channel&, const Channel&) = default;

private:
    std::string name_;
    Matrix kernel_;
};

/// A decision problem together with named channels over its states.
class ProblemInstance {
public:
    ProblemInstance(DecisionProblem problem, std::map<std::string, Channel> channels)
        : problem_(std::move(problem)), channels_(std::move(channels)) {
        for (const auto& [name, ch] : channels_)
            if (ch.num_states() != problem_.num_states())
                throw DimensionError("channel '" + name + "': " + std::to_string(ch.num_states()) +
                                     " state columns, problem has " +
                                     std::to_string(problem_.num_states()));
    }

    const DecisionProblem& problem() const noexcept { return problem_; }
    const std::map<std::string, Channel>& channels() const noexcept { return channels_; }

    const Channel& channel(const std::string& name) const {
        auto it = channels_.find(name);
        if (it == channels_.end()) throw ValidationError("unknown channel '" + name + "'");
        return it->second;
    }

    friend bool operator==(const ProblemInstance&, const ProblemInstance&) = default;

private:
    DecisionProblem problem_;
    std::map<std::string, Channel> channels_;
};

inline void require_states(std::size_t expected, std::size_t got, std::string_view what) {
    if (expected != got)
        throw DimensionError(std::string(what) + ": " + std::to_string(got) +
                             " states, expected " + std::to_string(expected));
}

/// Parses a comma-separated list of K rational literals into a Belief.
inline Belief parse_belief(std::string_view text, std::size_t num_states) {
    std::vector<Rational> probs;
    std::size_t start = 0;
    while (true) {
        auto comma = text.find(',', start);
        auto token = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
        probs.push_back(parse_rational(token));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    if (probs.size() != num_states)
        throw DimensionError("belief: " + std::to_string(probs.size()) + " entries, expected " +
                             std::to_string(num_states));
    return Belief(std::move(probs));
}

} // namespace voilab
