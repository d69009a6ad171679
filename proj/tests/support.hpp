// Test-only helpers: a brute-force reference implementation that shares no
// code path with the library beyond the Rational type, and small random
// generators for property tests.
#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "voilab/voilab.hpp"

namespace voilab::testing {

using Vec = std::vector<Rational>;
using Mat = std::vector<Vec>;

inline Rational Q(const char* text) { return parse_rational(text); }

inline Vec vec(std::initializer_list<const char*> xs) {
    Vec v;
    for (const char* x : xs) v.push_back(parse_rational(x));
    return v;
}

inline Belief belief(std::initializer_list<const char*> xs) { return Belief(vec(xs)); }

// ---------------------------------------------------------------------------
// Brute-force oracle over raw matrices.

namespace oracle {

inline Rational value(const Mat& rewards, const Vec& b) {
    Rational best;
    for (std::size_t a = 0; a < rewards.size(); ++a) {
        Rational v = 0;
        for (std::size_t s = 0; s < b.size(); ++s) v += rewards[a][s] * b[s];
        if (a == 0 || v > best) best = v;
    }
    return best;
}

struct Post {
    Rational weight;
    Vec belief;
};

inline std::vector<Post> posteriors(const Mat& kernel, const Vec& b) {
    std::vector<Post> out;
    for (const auto& row : kernel) {
        Rational m = 0;
        for (std::size_t s = 0; s < b.size(); ++s) m += row[s] * b[s];
        if (m == 0) continue;
        Vec p(b.size());
        for (std::size_t s = 0; s < b.size(); ++s) p[s] = row[s] * b[s] / m;
        out.push_back({m, p});
    }
    return out;
}

inline Rational expected_value(const Mat& rewards, const Mat& kernel, const Vec& b) {
    Rational e = 0;
    for (const auto& p : posteriors(kernel, b)) e += p.weight * value(rewards, p.belief);
    return e;
}

inline Rational voi(const Mat& rewards, const Mat& kernel, const Vec& b) {
    return expected_value(rewards, kernel, b) - value(rewards, b);
}

/// Definition-level interaction: average VoI of j after i, minus VoI of j.
inline Rational delta_voi(const Mat& rewards, const Mat& ki, const Mat& kj, const Vec& b) {
    Rational after = 0;
    for (const auto& p : posteriors(ki, b)) after += p.weight * voi(rewards, kj, p.belief);
    return after - voi(rewards, kj, b);
}

/// E[phi(posterior)] - phi(b) for phi = g (expected value after j).
inline Rational g_jensen_gap(const Mat& rewards, const Mat& ki, const Mat& kj, const Vec& b) {
    Rational e = 0;
    for (const auto& p : posteriors(ki, b)) e += p.weight * expected_value(rewards, kj, p.belief);
    return e - expected_value(rewards, kj, b);
}

inline Rational h_jensen_gap(const Mat& rewards, const Mat& ki, const Vec& b) {
    Rational e = 0;
    for (const auto& p : posteriors(ki, b)) e += p.weight * value(rewards, p.belief);
    return e - value(rewards, b);
}

} // namespace oracle

// ---------------------------------------------------------------------------
// Generators

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

    Rational rational(long bound) {
        long den = uniform(1, bound);
        return make_rational(uniform(-bound * den, bound * den), den);
    }

    Vec simplex_point(std::size_t k, long bound = 10) {
        std::vector<long> w(k);
        long total = 0;
        while (total == 0) {
            total = 0;
            for (auto& x : w) total += (x = uniform(0, bound));
        }
        Vec p;
        for (long x : w) p.push_back(make_rational(x, total));
        return p;
    }

    Belief belief(std::size_t k, long bound = 10) { return Belief(simplex_point(k, bound)); }

    DecisionProblem problem(std::size_t k, std::size_t actions, long bound = 6) {
        Matrix r(actions, Vec(k));
        for (auto& row : r)
            for (auto& x : row) x = make_rational(uniform(-bound, bound));
        return DecisionProblem::from_rewards(std::move(r));
    }

    Channel channel(std::size_t k, std::size_t outcomes, const std::string& name = "c") {
        Matrix kernel(outcomes, Vec(k));
        for (std::size_t s = 0; s < k; ++s) {
            Vec col = simplex_point(outcomes, 4);
            for (std::size_t o = 0; o < outcomes; ++o) kernel[o][s] = col[o];
        }
        return Channel(name, std::move(kernel));
    }

private:
    std::mt19937_64 rng_;
};

inline const ProblemInstance& reference_instance() {
    static const ProblemInstance inst = reference::instance();
    return inst;
}

} // namespace voilab::testing
