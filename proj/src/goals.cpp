#include "wtm/goals.hpp"

#include <algorithm>
#include <stdexcept>

namespace wtm {

double reachable_supremum(double theta, const FiniteMetricSpace& space,
                          const GainFunction& g, std::size_t x) {
    double best = g.at(x); // x is always a member of S(x)
    for (std::size_t y = 0; y < space.size(); ++y)
        if (enclosing_membership(theta, space, g, x, y))
            best = std::max(best, g.at(y));
    return best;
}

double set_aspiration(double gain_x, double supremum, double p) {
    if (!(p > 0.0) || p > 1.0)
        throw std::invalid_argument("aspiration rate must lie in (0, 1]");
    return gain_x + p * (supremum - gain_x);
}

SatisficingLevel satisficing_level(double gain_x, double aspiration, double q) {
    if (!(q > 0.0) || !(q < 1.0))
        throw std::invalid_argument("need-reduction rate must lie in (0, 1)");
    SatisficingLevel out;
    out.epsilon = q * (aspiration - gain_x);
    out.level = gain_x + out.epsilon;
    return out;
}

double frustration(double mu, double aspiration, double gain) {
    if (mu < 0) throw std::invalid_argument("frustration weight must be nonnegative");
    return mu * (aspiration - gain);
}

GoalLevels make_goal_levels(double theta, const FiniteMetricSpace& space,
                            const GainFunction& g, std::size_t x, double p,
                            double q) {
    GoalLevels levels;
    levels.p = p;
    levels.q = q;
    levels.sigma = p * q;
    levels.gain = g.at(x);
    levels.supremum = reachable_supremum(theta, space, g, x);
    levels.aspiration = set_aspiration(levels.gain, levels.supremum, p);
    // One canonical rounding for epsilon: sigma * headroom. The q-route
    // q * (aspiration - gain) agrees to rounding error.
    levels.epsilon = levels.sigma * (levels.supremum - levels.gain);
    levels.satisficing = levels.gain + levels.epsilon;
    return levels;
}

} // namespace wtm
