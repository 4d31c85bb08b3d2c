// Aspiration and satisficing levels: the controller that turns accepting any
// worthwhile improvement into requiring a large-enough one. All levels derive
// from the reachable supremum inside the enclosing set, so aspirations stay
// feasible by construction.
#pragma once

#include <cstddef>

#include "wtm/behavior.hpp"

namespace wtm {

struct GoalLevels {
    double gain = 0.0;        // g(x)
    double supremum = 0.0;    // s(x), best gain reachable inside S(x)
    double aspiration = 0.0;  // g(x) + p * (s(x) - g(x))
    double satisficing = 0.0; // g(x) + sigma * (s(x) - g(x))
    double epsilon = 0.0;     // required improvement, sigma * (s(x) - g(x))
    double p = 0.5, q = 0.5, sigma = 0.25;
};

// s(x) = max { g(y) : y in S(x) }; exact by enumeration. Always >= g(x).
double reachable_supremum(double theta, const FiniteMetricSpace& space,
                          const GainFunction& g, std::size_t x);

// Aspiration level between the current gain and the reachable supremum.
// Rejects p outside (0, 1].
double set_aspiration(double gain_x, double supremum, double p);

struct SatisficingLevel {
    double level = 0.0;   // g~(x)
    double epsilon = 0.0; // g~(x) - g(x) >= 0
};

// Intermediate satisficing level g(x) + q * (aspiration - g(x)).
// Rejects q outside (0, 1).
SatisficingLevel satisficing_level(double gain_x, double aspiration, double q);

// Residual frustration mu * (aspiration - gain); zero at a terminal rest point.
double frustration(double mu, double aspiration, double gain);

// Composes the three levels for one state. epsilon is computed as
// (p*q) * (s - g) so the improving-enough test and its sigma form agree
// exactly.
GoalLevels make_goal_levels(double theta, const FiniteMetricSpace& space,
                            const GainFunction& g, std::size_t x, double p, double q);

} // namespace wtm
