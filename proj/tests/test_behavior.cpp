#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "support/instances.hpp"
#include "wtm/behavior.hpp"

using namespace wtm;
using namespace wtm::testing;

TEST_CASE("instantaneous advantage algebra") {
    AgentProfile p = unit_profile();

    // At the reference: a(x,x) = nu*g(x) - mu*(aspiration - g(x)).
    CHECK(instantaneous_advantage(p, 0.0, 0.0, 3.0) == -3.0);
    // lambda = mu = nu = 1, g(x)=0, g(y)=2, aspiration 3.
    CHECK(instantaneous_advantage(p, 0.0, 2.0, 3.0) == 3.0);
    CHECK(instantaneous_advantage(p, 0.0, 2.0, 3.0) -
              instantaneous_advantage(p, 0.0, 0.0, 3.0) ==
          6.0); // delta * (g(y) - g(x)) = 3 * 2

    // Improving-only character: the reference difference reduces to the gain gap.
    AgentProfile improving;
    improving.satisfaction_weight = 0.0;
    improving.disappointment_weight = 0.0;
    improving.utility_weight = 1.0;
    CHECK(instantaneous_advantage(improving, 1.0, 4.0, 5.0) -
              instantaneous_advantage(improving, 1.0, 1.0, 5.0) ==
          3.0);
}

TEST_CASE("advantage to move") {
    AgentProfile p = unit_profile();
    CHECK(advantage_to_move(p, 5.0, 5.0, 2.0) == 0.0); // A(x,x) = 0
    CHECK(advantage_to_move(p, 0.0, 2.0, 1.0) == 6.0); // delta=3, t=1, dg=2
    CHECK_THROWS_AS((void)advantage_to_move(p, 0.0, 1.0, -1.0), std::invalid_argument);

    // Cross-check against the instantaneous form on random inputs.
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        AgentProfile q;
        q.satisfaction_weight = rng.uniform(0, 2);
        q.disappointment_weight = rng.uniform(0, 2);
        q.utility_weight = rng.uniform(0.1, 2);
        const double gx = rng.uniform(-5, 5), gy = rng.uniform(-5, 5);
        const double aspiration = gx + rng.uniform(0, 3);
        const double t = rng.uniform(0, 2);
        const double via_reference = t * (instantaneous_advantage(q, gx, gy, aspiration) -
                                          instantaneous_advantage(q, gx, gx, aspiration));
        CHECK(advantage_to_move(q, gx, gy, t) ==
              doctest::Approx(via_reference).epsilon(1e-12));
    }
}

TEST_CASE("cost to move per friction class") {
    const auto space = line3_space();

    CostModel dry = dry_cost(1.0, 1.0);
    CHECK(cost_to_move(dry, space, 1, 1).total == 0.0);
    CHECK(cost_to_move(dry, space, 0, 2).total == 2.0);
    CHECK(cost_to_move(dry, space, 0, 2).moving_time == 2.0);
    CHECK(cost_to_move(dry, space, 0, 2).per_time == 1.0);

    CostModel viscous = dry;
    viscous.friction = FrictionClass::Viscous;
    CHECK(cost_to_move(viscous, space, 0, 2).total == 4.0); // e * d^2
    CHECK(cost_to_move(viscous, space, 0, 1).total == 1.0);

    CostModel table = dry;
    table.friction = FrictionClass::Table;
    table.effort_table = {0, 2, 3, 1, 0, 5, 3, 5, 0}; // asymmetric allowed
    CHECK(cost_to_move(table, space, 0, 1).total == 2.0);
    CHECK(cost_to_move(table, space, 1, 0).total == 1.0);
    table.effort_table = {0, 1};
    CHECK_THROWS_AS((void)cost_to_move(table, space, 0, 1), std::invalid_argument);
}

TEST_CASE("affine effort-speed law raises the per-distance effort") {
    const auto space = line3_space();
    CostModel m = dry_cost(1.0, 1.0);
    m.affine_effort_law = true;
    m.law_max_speed = 1.0; // effort = 1 * (1 + 1/1) = 2
    CHECK(cost_to_move(m, space, 0, 2).total == 4.0);
    m.speed = 0.5; // effort = 1.5, and the move takes d / 0.5
    CHECK(cost_to_move(m, space, 0, 2).total == 3.0);
    CHECK(cost_to_move(m, space, 0, 2).moving_time == 4.0);
}

TEST_CASE("opportunity cost") {
    const auto space = line3_space();
    CostModel m = dry_cost(1.0, 1.0);
    CHECK(opportunity_cost(m, space, 3.0, 0, 0) == 0.0);
    CHECK(opportunity_cost(m, space, 3.0, 0, 2) == 6.0); // (d/v) * g(x)
    CHECK(opportunity_cost(m, space, 0.0, 0, 2) == 0.0);
}

TEST_CASE("transition ratio") {
    const auto space = line3_space();
    AgentProfile p;
    p.utility_weight = 1.0;
    p.satisfaction_weight = 0.0;
    p.disappointment_weight = 0.0; // delta = 1
    CostModel m = dry_cost(1.0, 1.0);

    CHECK(transition_ratio(p, m, space, 0.0, 1.0, 0, 1) == 1.0);

    CostModel opp = m;
    opp.opportunity = true;
    CHECK(transition_ratio(p, opp, space, 0.0, 1.0, 0, 1) == 1.0); // g(x)=0 adds nothing

    // Doubling the character index halves the ratio.
    AgentProfile twice = p;
    twice.utility_weight = 2.0;
    twice.bounds.max_character = 2.0;
    CHECK(transition_ratio(twice, m, space, 0.0, 1.0, 0, 1) == 0.5);

    CHECK_THROWS_AS((void)transition_ratio(p, m, space, 0.0, 0.0, 0, 1),
                    std::invalid_argument);
}

TEST_CASE("worthwhile membership on the tie instance") {
    const auto space = line3_space();
    const auto g = t3_gain();
    const AgentProfile p = unit_profile(); // delta = 3
    const CostModel m = dry_cost();

    // Frozen membership matrix: A(x,y) = 3*dg, C = d.
    auto member = [&](std::size_t x, std::size_t y) {
        return worthwhile_membership(p, m, space, g, 1.0, x, y);
    };
    CHECK(member(0, 0));
    CHECK(member(0, 1)); // A = 6 >= 1
    CHECK(member(0, 2)); // A = 9 >= 2
    CHECK(member(1, 1));
    CHECK_FALSE(member(1, 0)); // A = -6
    CHECK(member(1, 2));       // A = 3 >= 1
    CHECK(member(2, 2));
    CHECK_FALSE(member(2, 0));
    CHECK_FALSE(member(2, 1));
}

TEST_CASE("worthwhile membership with unit character and unit ratio") {
    // Same line and gains, but delta = 1 so that A = dg and theta(x,y) = 1.
    const auto space = line3_space();
    const auto g = t3_gain();
    AgentProfile p;
    p.satisfaction_weight = 0.0;
    p.disappointment_weight = 0.0;
    p.utility_weight = 1.0;
    const CostModel m = dry_cost();

    CHECK(worthwhile_membership(p, m, space, g, 1.0, 0, 1));       // A=2 >= C=1
    CHECK_FALSE(worthwhile_membership(p, m, space, g, 1.0, 1, 0)); // A=-2 < 1
}

TEST_CASE("worthwhile moves improve the gain") {
    Rng rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        const auto inst = slack_instance(rng, 4 + rng.uniform_index(20), trial % 2);
        const double t = inst.profile.bounds.max_exploit_time;
        for (std::size_t x = 0; x < inst.space.size(); ++x)
            for (std::size_t y = 0; y < inst.space.size(); ++y) {
                CHECK(worthwhile_membership(inst.profile, inst.cost, inst.space,
                                            inst.gain, t, x, x));
                if (y != x &&
                    worthwhile_membership(inst.profile, inst.cost, inst.space,
                                          inst.gain, t, x, y))
                    CHECK(inst.gain.at(y) >= inst.gain.at(x));
            }
    }
}

TEST_CASE("worthwhile test is the pairwise ratio test") {
    Rng rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        const auto inst = slack_instance(rng, 3 + rng.uniform_index(12), trial % 2);
        const double t = inst.profile.bounds.max_exploit_time * 0.8;
        for (std::size_t x = 0; x < inst.space.size(); ++x)
            for (std::size_t y = 0; y < inst.space.size(); ++y) {
                if (x == y) continue;
                const bool member = worthwhile_membership(inst.profile, inst.cost,
                                                          inst.space, inst.gain, t, x, y);
                const double ratio = transition_ratio(
                    inst.profile, inst.cost, inst.space, inst.gain.at(x), t, x, y);
                const double d = inst.space.distance(x, y);
                const double gap = inst.gain.at(y) - inst.gain.at(x) - ratio * d;
                // The two formulations may only disagree inside the tie band.
                if (member)
                    CHECK(gap >= -1e-12);
                else
                    CHECK(gap <= 1e-12);
            }
    }
}

TEST_CASE("opportunity costs keep the ratio equivalence") {
    Rng rng(37);
    for (int trial = 0; trial < 30; ++trial) {
        auto inst = slack_instance(rng, 3 + rng.uniform_index(12), trial % 2);
        inst.cost.opportunity = true;
        inst.cost.speed = rng.uniform(0.5, 2.0);
        inst.profile.bounds.max_speed = inst.cost.speed;
        const double t = inst.profile.bounds.max_exploit_time * 0.8;
        for (std::size_t x = 0; x < inst.space.size(); ++x)
            for (std::size_t y = 0; y < inst.space.size(); ++y) {
                if (x == y) continue;
                const bool member = worthwhile_membership(inst.profile, inst.cost,
                                                          inst.space, inst.gain, t, x, y);
                const double ratio = transition_ratio(
                    inst.profile, inst.cost, inst.space, inst.gain.at(x), t, x, y);
                const double gap = inst.gain.at(y) - inst.gain.at(x) -
                                   ratio * inst.space.distance(x, y);
                if (member)
                    CHECK(gap >= -1e-12);
                else
                    CHECK(gap <= 1e-12);
            }
    }
}

TEST_CASE("enclosing sets on the tie instance") {
    const auto space = line3_space();
    const auto g = t3_gain();

    CHECK(enclosing_membership(1.0, space, g, 0, 0));
    const auto s0 = enclosing_set(1.0, space, g, 0);
    CHECK(s0.members == std::vector<std::size_t>{0, 1, 2});
    CHECK(s0.radius == 2.0);
    const auto s1 = enclosing_set(1.0, space, g, 1);
    CHECK(s1.members == std::vector<std::size_t>{1, 2});
    CHECK(s1.radius == 1.0);
    const auto s2 = enclosing_set(1.0, space, g, 2);
    CHECK(s2.members == std::vector<std::size_t>{2});
    CHECK(s2.radius == 0.0);

    const auto huge = enclosing_set(1e9, space, g, 0);
    CHECK(huge.members == std::vector<std::size_t>{0});
    CHECK(huge.radius == 0.0);
}

TEST_CASE("enclosing relation is transitive on random instances") {
    Rng rng(41);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 4 + rng.uniform_index(25);
        const auto table = trial % 2 ? random_tree_metric(rng, n)
                                     : random_line_metric(rng, n);
        const FiniteMetricSpace space(index_labels(n), table);
        const auto g = GainFunction::table(random_gain(rng, n));
        const double theta = rng.uniform(0.05, 1.5);
        for (int probe = 0; probe < 60; ++probe) {
            const std::size_t x = rng.uniform_index(n);
            const std::size_t y = rng.uniform_index(n);
            const std::size_t z = rng.uniform_index(n);
            if (enclosing_membership(theta, space, g, x, y) &&
                enclosing_membership(theta, space, g, y, z))
                CHECK(enclosing_membership(theta, space, g, x, z));
        }
    }
}

TEST_CASE("worthwhile set is enclosed when bounds dominate") {
    Rng rng(53);
    for (int trial = 0; trial < 30; ++trial) {
        const auto inst = slack_instance(rng, 3 + rng.uniform_index(15), trial % 2);
        const double t = inst.profile.bounds.max_exploit_time * rng.uniform(0.4, 1.0);
        for (std::size_t x = 0; x < inst.space.size(); ++x)
            for (std::size_t y = 0; y < inst.space.size(); ++y)
                if (worthwhile_membership(inst.profile, inst.cost, inst.space,
                                          inst.gain, t, x, y))
                    CHECK(enclosing_membership(inst.theta, inst.space, inst.gain, x, y));
    }
}

TEST_CASE("rest point taxonomy on the tie instance") {
    const auto space = line3_space();
    const auto g = t3_gain();
    CHECK(classify_rest_point(1.0, space, g, 0) == RestPointClass::NotRest);
    CHECK(classify_rest_point(1.0, space, g, 1) == RestPointClass::WeakOnly);
    CHECK(classify_rest_point(1.0, space, g, 2) == RestPointClass::Strong);
}

TEST_CASE("theta zero degenerates to global maximum detection") {
    const auto space = line3_space();
    const auto g = t3_gain();
    // Unique global maximum at 2: strong; others are beaten.
    CHECK(classify_rest_point(0.0, space, g, 2) == RestPointClass::Strong);
    CHECK(classify_rest_point(0.0, space, g, 0) == RestPointClass::NotRest);

    const auto flat = GainFunction::table({1.0, 1.0, 0.0});
    CHECK(classify_rest_point(0.0, space, flat, 0) == RestPointClass::WeakOnly);
    CHECK(classify_rest_point(0.0, space, flat, 1) == RestPointClass::WeakOnly);
}

TEST_CASE("satisficing transition ratio") {
    ProfileBounds b;
    b.min_non_sacrificing = 1.0;
    b.min_effort = 1.0;
    b.max_exploit_time = 1.0;
    b.max_character = 1.0;
    CHECK(satisficing_theta(b, false) == 1.0);

    b.min_non_sacrificing = 0.5;
    b.min_effort = 2.0;
    b.max_exploit_time = 4.0;
    b.max_character = 1.0;
    CHECK(satisficing_theta(b, false) == 0.25);

    b.max_speed = 2.0;
    CHECK(satisficing_theta(b, true, 0.0) == 0.25); // zero forgone gain

    b.min_effort = 0.0;
    CHECK_THROWS_AS((void)satisficing_theta(b, false), std::invalid_argument);
}

TEST_CASE("satisficing ratio lower-bounds the pairwise ratios") {
    Rng rng(67);
    for (int trial = 0; trial < 30; ++trial) {
        const auto inst = slack_instance(rng, 3 + rng.uniform_index(12), trial % 2);
        const double t = inst.profile.bounds.max_exploit_time * rng.uniform(0.3, 1.0);
        for (std::size_t x = 0; x < inst.space.size(); ++x)
            for (std::size_t y = 0; y < inst.space.size(); ++y) {
                if (x == y) continue;
                CHECK(transition_ratio(inst.profile, inst.cost, inst.space,
                                       inst.gain.at(x), t, x, y) >=
                      inst.theta - 1e-12);
            }
    }
}
