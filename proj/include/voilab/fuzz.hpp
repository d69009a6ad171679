/**
 * @file fuzz.hpp
 * @brief Randomized falsification harness for the decomposition and
 *        localization results.
 *
 * Each case draws a random problem, two random channels, a random belief
 * and a random reward shift, all with small denominators, and checks every
 * identity and implication exactly. Case k is generated from its own
 * generator seeded by (seed, k), so results do not depend on how cases are
 * spread over worker threads.
 */
#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "voilab/instance_io.hpp"
#include "voilab/interaction.hpp"
#include "voilab/localization.hpp"

namespace voilab {

struct FuzzConfig {
    std::uint64_t seed = 42;
    std::size_t cases = 1000;
    std::size_t max_states = 5;
    std::size_t max_actions = 5;
    std::size_t max_outcomes = 4;
    std::size_t denom_bound = 12;

    void validate() const {
        if (cases < 1) throw ValidationError("fuzz config: cases must be >= 1");
        if (max_states < 2 || max_states > 5)
            throw ValidationError("fuzz config: max_states must be in [2, 5]");
        if (max_actions < 2 || max_actions > 5)
            throw ValidationError("fuzz config: max_actions must be in [2, 5]");
        if (max_outcomes < 1 || max_outcomes > 4)
            throw ValidationError("fuzz config: max_outcomes must be in [1, 4]");
        if (denom_bound < 1) throw ValidationError("fuzz config: denom_bound must be >= 1");
    }
};

struct FuzzCase {
    DecisionProblem problem;
    Channel ch_i;
    Channel ch_j;
    Belief belief;
    Rational shift;
};

/// Names of the per-case checks, in reporting order.
inline constexpr std::array<std::string_view, 9> fuzz_checks{
    "decomposition",           // delta = comp - sub = voi_j_after_i - voi_j
    "complement_nonnegative",
    "substitute_nonnegative",
    "substitute_equals_voi_i",
    "interior_complementarity", // stays_interior => delta >= 0
    "boundary_crossing",        // delta < 0 => posteriors leave the prior region
    "decision_irrelevance",     // stays_interior => VoI(i) = 0
    "four_term_identity",       // delta = F_ij - F_i - F_j + V
    "shift_invariance",
};

struct CaseOutcome {
    Regime regime = Regime::neutral;
    bool stays_interior = false;
    bool gap_witness = false; // a crossing outcome and delta > 0
    bool prior_on_kink = false;
    std::vector<std::string> failed;
};

struct Violation {
    std::size_t case_index;
    std::string check;
    std::string reproducer; // JSON
};

struct VerifyReport {
    FuzzConfig config;
    std::size_t cases_run = 0;
    std::size_t violations = 0;
    std::size_t gap_witnesses = 0;
    std::size_t interior_cases = 0;
    std::size_t kink_priors = 0;
    std::map<std::string, std::size_t> regime_histogram;
    std::vector<Violation> details;
    double elapsed_seconds = 0.0;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

class CaseRng {
public:
    CaseRng(std::uint64_t seed, std::uint64_t index)
        : engine_(splitmix64(seed ^ splitmix64(index + 1))) {}

    long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(engine_); }
    bool chance(long one_in) { return uniform(0, one_in - 1) == 0; }

private:
    std::mt19937_64 engine_;
};

inline Rational random_signed(CaseRng& rng, long bound) {
    long den = rng.uniform(1, bound);
    long num = rng.uniform(-bound * den, bound * den);
    return make_rational(num, den);
}

inline Channel random_channel(CaseRng& rng, const std::string& name, std::size_t k,
                              std::size_t outcomes, long bound) {
    Matrix kernel(outcomes, std::vector<Rational>(k));
    for (std::size_t s = 0; s < k; ++s) {
        Rational col = 0;
        do {
            col = 0;
            for (std::size_t o = 0; o < outcomes; ++o) {
                long den = rng.uniform(1, bound);
                kernel[o][s] = make_rational(rng.uniform(0, den), den);
                col += kernel[o][s];
            }
        } while (sgn(col) == 0);
        for (std::size_t o = 0; o < outcomes; ++o) kernel[o][s] /= col;
    }
    return Channel(name, std::move(kernel));
}

inline Belief random_lattice_belief(CaseRng& rng, std::size_t k, long bound) {
    std::vector<long> w(k);
    long total = 0;
    do {
        total = 0;
        for (auto& x : w) total += (x = rng.uniform(0, bound));
    } while (total == 0);
    std::vector<Rational> p;
    for (long x : w) p.push_back(make_rational(x, total));
    return Belief(std::move(p));
}

/// First kink on the segment p -> q where the action optimal at p ties with
/// another action, if any.
inline std::optional<Belief> kink_between(const DecisionProblem& prob, const Belief& p,
                                          const Belief& q) {
    const std::size_t a = value(prob, p).canonical_action();
    std::vector<Rational> dir(p.size());
    for (std::size_t s = 0; s < p.size(); ++s) dir[s] = q[s] - p[s];
    std::vector<Rational> ts;
    for (std::size_t b = 0; b < prob.num_actions(); ++b) {
        if (b == a) continue;
        Rational gap0 = dot(prob.reward_row(a), p.probs()) - dot(prob.reward_row(b), p.probs());
        Rational rate = dot(prob.reward_row(b), dir) - dot(prob.reward_row(a), dir);
        if (sgn(rate) <= 0) continue;
        Rational t = gap0 / rate;
        if (sgn(t) >= 0 && t <= 1) ts.push_back(t);
    }
    std::sort(ts.begin(), ts.end());
    for (const auto& t : ts) {
        std::vector<Rational> x(p.size());
        for (std::size_t s = 0; s < p.size(); ++s) x[s] = p[s] + t * dir[s];
        Belief b(std::move(x));
        if (value(prob, b).on_kink()) return b;
    }
    return std::nullopt;
}

} // namespace detail

inline FuzzCase generate_case(const FuzzConfig& cfg, std::size_t index) {
    detail::CaseRng rng(cfg.seed, index);
    const long bound = static_cast<long>(cfg.denom_bound);
    const auto k = static_cast<std::size_t>(rng.uniform(2, static_cast<long>(cfg.max_states)));
    const auto n_actions = static_cast<std::size_t>(rng.uniform(2, static_cast<long>(cfg.max_actions)));

    Matrix rewards(n_actions, std::vector<Rational>(k));
    for (auto& row : rewards)
        for (auto& x : row) x = detail::random_signed(rng, bound);
    DecisionProblem prob = DecisionProblem::from_rewards(std::move(rewards));

    const auto oi = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(cfg.max_outcomes)));
    const auto oj = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(cfg.max_outcomes)));
    Channel ch_i = detail::random_channel(rng, "i", k, oi, bound);
    Channel ch_j = detail::random_channel(rng, "j", k, oj, bound);

    Belief b = detail::random_lattice_belief(rng, k, bound);
    if (rng.chance(4)) {
        Belief q = detail::random_lattice_belief(rng, k, bound);
        if (auto kink = detail::kink_between(prob, b, q)) b = std::move(*kink);
    }
    Rational shift = detail::random_signed(rng, bound);
    return FuzzCase{std::move(prob), std::move(ch_i), std::move(ch_j), std::move(b), std::move(shift)};
}

inline CaseOutcome check_case(const FuzzCase& c) {
    CaseOutcome out;
    const auto fail = [&](std::string_view name) { out.failed.emplace_back(name); };

    const InteractionReport r = delta_voi(c.problem, c.ch_i, c.ch_j, c.belief);
    const LocalizationVerdict v = assess(r);
    out.regime = v.regime;
    out.stays_interior = v.stays_interior;
    out.prior_on_kink = r.prior_on_kink;
    out.gap_witness = !v.crossing_outcomes.empty() && v.regime == Regime::complement;

    if (r.delta_voi != r.complement_force - r.substitute_force || r.delta_voi != r.voi_j_after_i - r.voi_j)
        fail(fuzz_checks[0]);
    if (sgn(r.complement_force) < 0) fail(fuzz_checks[1]);
    if (sgn(r.substitute_force) < 0) fail(fuzz_checks[2]);
    if (r.substitute_force != r.voi_i) fail(fuzz_checks[3]);
    if (v.stays_interior && sgn(r.delta_voi) < 0) fail(fuzz_checks[4]);
    if (sgn(r.delta_voi) < 0) {
        bool leaves = v.theorem3_witness.has_value() && !v.stays_interior;
        if (r.argmax_actions.size() == 1) {
            const std::size_t a = r.argmax_actions.front();
            bool some_outcome_drops_a = std::any_of(r.per_outcome.begin(), r.per_outcome.end(), [&](const auto& d) {
                return !std::binary_search(d.argmax_actions.begin(), d.argmax_actions.end(), a);
            });
            leaves = leaves && some_outcome_drops_a && !v.crossing_outcomes.empty();
        }
        if (!leaves) fail(fuzz_checks[5]);
    }
    if (v.stays_interior && (sgn(r.voi_i) != 0 || sgn(r.delta_voi) < 0)) fail(fuzz_checks[6]);

    const Channel joint = product_channel(c.ch_i, c.ch_j);
    const Rational four_term = expected_posterior_value(c.problem, joint, c.belief) -
                               expected_posterior_value(c.problem, c.ch_i, c.belief) -
                               expected_posterior_value(c.problem, c.ch_j, c.belief) + r.value;
    if (four_term != r.delta_voi) fail(fuzz_checks[7]);

    const DecisionProblem shifted = shift_rewards(c.problem, c.shift);
    const InteractionReport rs = delta_voi(shifted, c.ch_i, c.ch_j, c.belief);
    if (rs.delta_voi != r.delta_voi || rs.voi_i != r.voi_i || rs.voi_j != r.voi_j ||
        rs.complement_force != r.complement_force || rs.substitute_force != r.substitute_force ||
        rs.value != r.value + c.shift)
        fail(fuzz_checks[8]);
    return out;
}

inline std::string fuzz_reproducer(const FuzzConfig& cfg, std::size_t index, const FuzzCase& c) {
    nlohmann::ordered_json doc;
    doc["seed"] = cfg.seed;
    doc["case"] = index;
    doc["instance"] = instance_to_json(make_pair_instance(c.problem, c.ch_i, c.ch_j));
    auto belief = nlohmann::ordered_json::array();
    for (const auto& p : c.belief.probs()) belief.push_back(to_string(p));
    doc["belief"] = std::move(belief);
    doc["shift"] = to_string(c.shift);
    return doc.dump(2);
}

/// Runs `cfg.cases` cases on up to `threads` workers. Deterministic in cfg.
inline VerifyReport run_verify(const FuzzConfig& cfg, unsigned threads = 1) {
    cfg.validate();
    const auto start = std::chrono::steady_clock::now();
    std::vector<CaseOutcome> outcomes(cfg.cases);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t k = next++; k < cfg.cases; k = next++) {
            try {
                outcomes[k] = check_case(generate_case(cfg, k));
            } catch (const Error& e) {
                outcomes[k].failed.push_back(std::string("exception: ") + e.what());
            }
        }
    };
    threads = std::max(1u, threads);
    if (threads == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work);
    }

    VerifyReport rep;
    rep.config = cfg;
    for (auto r : {Regime::complement, Regime::substitute, Regime::neutral})
        rep.regime_histogram[std::string(to_string(r))] = 0;
    for (std::size_t k = 0; k < outcomes.size(); ++k) {
        const auto& o = outcomes[k];
        ++rep.cases_run;
        ++rep.regime_histogram[std::string(to_string(o.regime))];
        rep.gap_witnesses += o.gap_witness;
        rep.interior_cases += o.stays_interior;
        rep.kink_priors += o.prior_on_kink;
        if (!o.failed.empty()) {
            const std::string repro = fuzz_reproducer(cfg, k, generate_case(cfg, k));
            for (const auto& name : o.failed) {
                ++rep.violations;
                rep.details.push_back({k, name, repro});
            }
        }
    }
    rep.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

} // namespace voilab
