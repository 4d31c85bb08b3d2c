#include <doctest.h>

#include <stdexcept>

#include "support/instances.hpp"
#include "wtm/goals.hpp"

using namespace wtm;
using namespace wtm::testing;

TEST_CASE("reachable supremum on the tie instance") {
    const auto space = line3_space();
    const auto g = t3_gain();
    CHECK(reachable_supremum(1.0, space, g, 0) == 3.0);
    CHECK(reachable_supremum(1.0, space, g, 1) == 3.0);
    CHECK(reachable_supremum(1.0, space, g, 2) == 3.0); // strong rest point, s = g

    // A huge ratio collapses the enclosing set to the point itself.
    for (std::size_t x = 0; x < 3; ++x)
        CHECK(reachable_supremum(1e12, space, g, x) == g.at(x));
}

TEST_CASE("aspiration level") {
    CHECK(set_aspiration(0.0, 3.0, 0.5) == 1.5);
    CHECK(set_aspiration(0.0, 3.0, 1.0) == 3.0); // full aspiration
    CHECK(set_aspiration(2.0, 2.0, 0.7) == 2.0); // no headroom
    CHECK_THROWS_AS((void)set_aspiration(0.0, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS((void)set_aspiration(0.0, 1.0, 1.5), std::invalid_argument);
}

TEST_CASE("satisficing level and improvement gap") {
    const auto lvl = satisficing_level(0.0, 1.5, 0.5);
    CHECK(lvl.level == 0.75);
    CHECK(lvl.epsilon == 0.75);

    const auto satisfied = satisficing_level(2.0, 2.0, 0.5);
    CHECK(satisfied.level == 2.0);
    CHECK(satisfied.epsilon == 0.0);

    // q near 1 pushes the level toward the aspiration.
    const auto nearly = satisficing_level(0.0, 1.0, 1.0 - 1e-12);
    CHECK(nearly.level == doctest::Approx(1.0).epsilon(1e-9));

    CHECK_THROWS_AS((void)satisficing_level(0.0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS((void)satisficing_level(0.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("goal levels on the tie instance") {
    const auto space = line3_space();
    const auto g = t3_gain();
    const auto levels = make_goal_levels(1.0, space, g, 0, 0.5, 0.5);
    CHECK(levels.supremum == 3.0);
    CHECK(levels.aspiration == 1.5);
    CHECK(levels.satisficing == 0.75);
    CHECK(levels.epsilon == 0.75);
    CHECK(levels.sigma == 0.25);
}

TEST_CASE("frustration") {
    CHECK(frustration(1.0, 2.0, 2.0) == 0.0);
    CHECK(frustration(2.0, 3.5, 2.0) == 3.0);
    CHECK_THROWS_AS((void)frustration(-1.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("level chain holds on random instances") {
    Rng rng(101);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 3 + rng.uniform_index(30);
        const auto table = trial % 2 ? random_tree_metric(rng, n)
                                     : random_line_metric(rng, n);
        const FiniteMetricSpace space(index_labels(n), table);
        const auto g = GainFunction::table(random_gain(rng, n));
        const double theta = rng.uniform(0.05, 2.0);
        const double p = rng.uniform(0.1, 1.0);
        const double q = rng.uniform(0.1, 0.9);
        for (std::size_t x = 0; x < n; ++x) {
            const auto lv = make_goal_levels(theta, space, g, x, p, q);
            CHECK(lv.gain <= lv.satisficing + 1e-15);
            CHECK(lv.satisficing <= lv.aspiration + 1e-15);
            CHECK(lv.aspiration <= lv.supremum + 1e-15);
            CHECK(lv.supremum <= *g.upper_bound());
            CHECK(lv.epsilon >= 0.0);
            // The epsilon form and the sigma form of improving-enough agree
            // exactly: epsilon is defined as sigma * (s - g).
            CHECK(lv.epsilon == lv.sigma * (lv.supremum - lv.gain));
            // The q-route through the aspiration agrees to rounding.
            CHECK(lv.epsilon ==
                  doctest::Approx(q * (lv.aspiration - lv.gain)).epsilon(1e-12));
        }
    }
}

TEST_CASE("headroom dominates theta times enclosing radius") {
    Rng rng(103);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 3 + rng.uniform_index(30);
        const auto table = trial % 2 ? random_tree_metric(rng, n)
                                     : random_line_metric(rng, n);
        const FiniteMetricSpace space(index_labels(n), table);
        const auto g = GainFunction::table(random_gain(rng, n));
        const double theta = rng.uniform(0.05, 2.0);
        for (std::size_t x = 0; x < n; ++x) {
            const auto set = enclosing_set(theta, space, g, x);
            const double headroom = reachable_supremum(theta, space, g, x) - g.at(x);
            CHECK(headroom >= theta * set.radius - 1e-12);
        }
    }
}
