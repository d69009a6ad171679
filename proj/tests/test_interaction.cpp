#include <gtest/gtest.h>

#include "support.hpp"

using namespace voilab;
using namespace voilab::testing;

namespace {
const DecisionProblem& prob() { return reference_instance().problem(); }
const Channel& ch_i() { return reference_instance().channel("i"); }
const Channel& ch_j() { return reference_instance().channel("j"); }
const Belief b1 = belief({"1/11", "2/11", "8/11"});
const Belief b2 = belief({"1/4", "1/6", "7/12"});
const Belief b3 = belief({"5/12", "5/12", "1/6"});

Vec raw(const Belief& b) { return Vec(b.probs().begin(), b.probs().end()); }
} // namespace

TEST(Voi, ReferenceValues) {
    EXPECT_EQ(voi(prob(), ch_i(), b1), 0);
    EXPECT_EQ(voi(prob(), ch_j(), b1), Q("3/44"));
    EXPECT_EQ(voi(prob(), ch_i(), b2), Q("11/16"));
}

TEST(GValue, ReferenceValues) {
    EXPECT_EQ(g_value(prob(), ch_j(), b1), Q("327/44"));
    EXPECT_EQ(g_value(prob(), ch_j(), b3), 8);
    EXPECT_EQ(g_value(prob(), Channel::uninformative(3), b2), value(prob(), b2).value);
}

TEST(DeltaVoi, InteriorComplementarity) {
    const auto r = delta_voi(prob(), ch_i(), ch_j(), b1);
    EXPECT_EQ(r.delta_voi, Q("3/176"));
    EXPECT_EQ(r.complement_force, Q("3/176"));
    EXPECT_EQ(r.substitute_force, 0);
    EXPECT_EQ(r.voi_j_after_i, Q("15/176"));
    EXPECT_FALSE(r.prior_on_kink);
    EXPECT_TRUE(report_violations(r).empty());
}

TEST(DeltaVoi, BoundaryComplementarity) {
    const auto r = delta_voi(prob(), ch_i(), ch_j(), b2);
    EXPECT_EQ(r.delta_voi, Q("5/64"));
    EXPECT_EQ(r.complement_force, Q("49/64"));
    EXPECT_EQ(r.substitute_force, Q("11/16"));
    EXPECT_EQ(r.voi_j_after_i, Q("9/64"));
    // VoI(j) is amplified 2.25x by observing i first
    EXPECT_EQ(r.voi_j_after_i / r.voi_j, Q("9/4"));
}

TEST(DeltaVoi, SubstitutionAtKink) {
    const auto r = delta_voi(prob(), ch_i(), ch_j(), b3);
    EXPECT_EQ(r.delta_voi, Q("-77/32"));
    EXPECT_EQ(r.voi_j_after_i, Q("3/32"));
    EXPECT_TRUE(r.prior_on_kink);
    // Jensen gaps, checked against the brute-force oracle
    const auto& R = prob().rewards();
    EXPECT_EQ(r.complement_force, oracle::g_jensen_gap(R, ch_i().kernel(), ch_j().kernel(), raw(b3)));
    EXPECT_EQ(r.substitute_force, oracle::h_jensen_gap(R, ch_i().kernel(), raw(b3)));
    EXPECT_EQ(r.complement_force, Q("3/32"));
    EXPECT_EQ(r.substitute_force, Q("5/2"));
    // after o=0, j is worthless
    ASSERT_EQ(r.per_outcome.size(), 2u);
    EXPECT_EQ(r.per_outcome[0].voi_j, 0);
}

TEST(DeltaVoi, DimensionMismatch) {
    EXPECT_THROW(delta_voi(prob(), ch_i(), Channel::uninformative(2), b1), DimensionError);
}

TEST(BregmanDivergence, Examples) {
    EXPECT_EQ(bregman_divergence_h(prob(), belief({"3/13", "2/13", "8/13"}), b1, 2), 0);
    EXPECT_EQ(bregman_divergence_h(prob(), b2, b2, 2), 0);
    const Belief post = belief({"15/22", "5/22", "2/22"});
    EXPECT_EQ(bregman_divergence_h(prob(), post, b3, 0), 0);
    // a2 is also optimal at b3; the divergence depends on the subgradient
    EXPECT_EQ(bregman_divergence_h(prob(), post, b3, 1), regret(prob(), 1, post));
    EXPECT_EQ(bregman_divergence_h(prob(), post, b3, 1), Q("60/11"));
}

TEST(BregmanDivergence, RejectsNonSubgradient) {
    EXPECT_THROW(bregman_divergence_h(prob(), b2, b3, 2), ValidationError);
    EXPECT_THROW(bregman_divergence_h(prob(), b2, b3, 7), ValidationError);
}

TEST(ShiftRewards, LeavesInteractionUnchanged) {
    for (const char* c : {"5", "0", "-3", "7/3"}) {
        const DecisionProblem shifted = shift_rewards(prob(), Q(c));
        for (const Belief& b : {b1, b2, b3}) {
            const auto r0 = delta_voi(prob(), ch_i(), ch_j(), b);
            const auto r1 = delta_voi(shifted, ch_i(), ch_j(), b);
            EXPECT_EQ(r1.delta_voi, r0.delta_voi);
            EXPECT_EQ(r1.voi_i, r0.voi_i);
            EXPECT_EQ(r1.voi_j, r0.voi_j);
            EXPECT_EQ(r1.value, r0.value + Q(c));
        }
    }
    EXPECT_EQ(shift_rewards(prob(), 0), prob());
}

TEST(InteractionProperties, DecompositionAndOracleAgreement) {
    Gen gen(301);
    for (int k = 0; k < 300; ++k) {
        const std::size_t states = static_cast<std::size_t>(gen.uniform(2, 4));
        const DecisionProblem p = gen.problem(states, static_cast<std::size_t>(gen.uniform(2, 4)));
        const Channel ci = gen.channel(states, static_cast<std::size_t>(gen.uniform(1, 3)), "i");
        const Channel cj = gen.channel(states, static_cast<std::size_t>(gen.uniform(1, 3)), "j");
        const Belief b = gen.belief(states);
        const auto r = delta_voi(p, ci, cj, b);
        EXPECT_TRUE(report_violations(r).empty());
        EXPECT_EQ(r.delta_voi, oracle::delta_voi(p.rewards(), ci.kernel(), cj.kernel(), raw(b)));
        EXPECT_EQ(r.complement_force, oracle::g_jensen_gap(p.rewards(), ci.kernel(), cj.kernel(), raw(b)));
        EXPECT_EQ(r.voi_i, oracle::voi(p.rewards(), ci.kernel(), raw(b)));
        EXPECT_EQ(r.complement_force, r.delta_voi + r.voi_i);

        // four-term expansion over the product channel
        const Rational four = expected_posterior_value(p, product_channel(ci, cj), b) -
                              expected_posterior_value(p, ci, b) - expected_posterior_value(p, cj, b) +
                              value(p, b).value;
        EXPECT_EQ(four, r.delta_voi);
    }
}

TEST(InteractionProperties, ExpectedBregmanIsSubgradientFree) {
    Gen gen(302);
    int kinks = 0;
    for (int k = 0; k < 600; ++k) {
        const std::size_t states = static_cast<std::size_t>(gen.uniform(2, 3));
        const DecisionProblem p = gen.problem(states, 3, 2);
        const Channel ci = gen.channel(states, static_cast<std::size_t>(gen.uniform(2, 3)));
        const Belief b = gen.belief(states, 4);
        const ValueResult v = value(p, b);
        kinks += v.on_kink();
        const auto fam = posterior_family(b, ci);
        const Rational h_gap = voi(p, ci, b);
        for (std::size_t a : v.argmax_actions) {
            Rational expected = 0;
            for (const auto& e : fam) expected += e.marginal * bregman_divergence_h(p, e.posterior, b, a);
            EXPECT_EQ(expected, h_gap);
        }
        // regret form of the substitute force at a unique optimum
        if (!v.on_kink()) {
            Rational expected_regret = 0;
            for (const auto& e : fam) expected_regret += e.marginal * regret(p, v.canonical_action(), e.posterior);
            EXPECT_EQ(expected_regret, delta_voi(p, ci, ci, b).substitute_force);
        }
    }
    EXPECT_GT(kinks, 20);
}
