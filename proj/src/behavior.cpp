#include "wtm/behavior.hpp"

#include <cmath>
#include <stdexcept>

namespace wtm {

void AgentProfile::validate() const {
    if (satisfaction_weight < 0 || disappointment_weight < 0 || utility_weight < 0)
        throw std::invalid_argument("psychological weights must be nonnegative");
    if (!(character_index() > 0))
        throw std::invalid_argument("character index must be positive");
    if (!(bounds.min_non_sacrificing > 0) || !(bounds.min_effort > 0) ||
        !(bounds.max_exploit_time > 0) || !(bounds.max_character > 0))
        throw std::invalid_argument("enclosing bounds must be positive");
    if (non_sacrificing_rate < bounds.min_non_sacrificing)
        throw std::invalid_argument("non-sacrificing rate falls below its bound");
    if (character_index() > bounds.max_character)
        throw std::invalid_argument("character index exceeds its bound");
    if (!(bounds.min_exploit_fraction > 0) || bounds.min_exploit_fraction > 1.0)
        throw std::invalid_argument("exploit-fraction floor must lie in (0, 1]");
    if (bounds.min_speed && !(*bounds.min_speed > 0))
        throw std::invalid_argument("speed lower bound must be positive");
    if (bounds.max_speed && !(*bounds.max_speed > 0))
        throw std::invalid_argument("speed upper bound must be positive");
}

double CostModel::effort(std::size_t i, std::size_t j, double d, std::size_t n) const {
    double base = min_effort;
    if (affine_effort_law) base = min_effort * (1.0 + speed / law_max_speed);
    switch (friction) {
    case FrictionClass::Dry:
        return base;
    case FrictionClass::Viscous:
        return base * d; // C = e*d^2 read as effort e*d per unit distance
    case FrictionClass::Table:
        if (effort_table.size() != n * n)
            throw std::invalid_argument("effort table does not cover the space");
        return effort_table[i * n + j];
    }
    return base;
}

void CostModel::validate(std::size_t n) const {
    if (!(min_effort > 0)) throw std::invalid_argument("effort must be positive");
    if (!(speed > 0)) throw std::invalid_argument("speed must be positive");
    if (affine_effort_law && !(law_max_speed > 0))
        throw std::invalid_argument("effort-speed law needs a positive speed cap");
    if (friction == FrictionClass::Table) {
        if (effort_table.size() != n * n)
            throw std::invalid_argument("effort table does not cover the space");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j && !(effort_table[i * n + j] > 0))
                    throw std::invalid_argument(
                        "effort table entries must be positive off the diagonal");
    }
}

double instantaneous_advantage(const AgentProfile& profile, double gain_x,
                               double gain_y, double aspiration_x) {
    return profile.utility_weight * gain_y +
           profile.satisfaction_weight * (gain_y - gain_x) -
           profile.disappointment_weight * (aspiration_x - gain_y);
}

double advantage_to_move(const AgentProfile& profile, double gain_x, double gain_y,
                         double exploit_time) {
    if (exploit_time < 0)
        throw std::invalid_argument("exploitation time must be nonnegative");
    return exploit_time * profile.character_index() * (gain_y - gain_x);
}

MoveCost cost_to_move(const CostModel& model, const FiniteMetricSpace& space,
                      std::size_t x, std::size_t y) {
    MoveCost out;
    if (x == y) return out;
    const double d = space.distance(x, y);
    const double e = model.effort(x, y, d, space.size());
    out.per_distance = e;
    out.total = e * d;
    out.moving_time = d / model.speed;
    out.per_time = e * model.speed;
    return out;
}

double opportunity_cost(const CostModel& model, const FiniteMetricSpace& space,
                        double gain_x, std::size_t x, std::size_t y) {
    if (!(model.speed > 0)) throw std::invalid_argument("degenerate zero speed");
    if (x == y) return 0.0;
    return (space.distance(x, y) / model.speed) * gain_x;
}

double transition_ratio(const AgentProfile& profile, const CostModel& model,
                        const FiniteMetricSpace& space, double gain_x,
                        double exploit_time, std::size_t x, std::size_t y) {
    if (!(exploit_time > 0))
        throw std::invalid_argument("transition ratio needs exploitation time > 0");
    const double delta = profile.character_index();
    if (!(delta > 0))
        throw std::invalid_argument("transition ratio needs a positive character index");
    const double d = x == y ? 0.0 : space.distance(x, y);
    double effort = model.effort(x, y, d, space.size());
    if (model.opportunity) effort += gain_x / model.speed;
    return profile.non_sacrificing_rate * effort / (exploit_time * delta);
}

bool worthwhile_membership(const AgentProfile& profile, const CostModel& model,
                           const FiniteMetricSpace& space, const GainFunction& g,
                           double exploit_time, std::size_t x, std::size_t y) {
    if (x == y) return true;
    const double advantage =
        advantage_to_move(profile, g.at(x), g.at(y), exploit_time);
    double charged = cost_to_move(model, space, x, y).total;
    if (model.opportunity)
        charged += opportunity_cost(model, space, g.at(x), x, y);
    return advantage >= profile.non_sacrificing_rate * charged;
}

bool enclosing_membership(double theta, const FiniteMetricSpace& space,
                          const GainFunction& g, std::size_t x, std::size_t y) {
    if (x == y) return true;
    return g.at(y) - g.at(x) >= theta * space.distance(x, y);
}

EnclosingSet enclosing_set(double theta, const FiniteMetricSpace& space,
                           const GainFunction& g, std::size_t x) {
    EnclosingSet out;
    for (std::size_t y = 0; y < space.size(); ++y) {
        if (enclosing_membership(theta, space, g, x, y)) {
            out.members.push_back(y);
            if (y != x) out.radius = std::max(out.radius, space.distance(x, y));
        }
    }
    return out;
}

double worthwhile_radius(const AgentProfile& profile, const CostModel& model,
                         const FiniteMetricSpace& space, const GainFunction& g,
                         double exploit_time, std::size_t x) {
    double radius = 0.0;
    for (std::size_t y = 0; y < space.size(); ++y) {
        if (y == x) continue;
        if (worthwhile_membership(profile, model, space, g, exploit_time, x, y))
            radius = std::max(radius, space.distance(x, y));
    }
    return radius;
}

RestPointClass classify_rest_point(double theta, const FiniteMetricSpace& space,
                                   const GainFunction& g, std::size_t x,
                                   double tie_tol) {
    bool tie = false;
    for (std::size_t y = 0; y < space.size(); ++y) {
        if (y == x) continue;
        const double gap = g.at(y) - g.at(x) - theta * space.distance(x, y);
        if (gap > tie_tol) return RestPointClass::NotRest;
        if (gap >= -tie_tol) tie = true;
    }
    return tie ? RestPointClass::WeakOnly : RestPointClass::Strong;
}

double satisficing_theta(const ProfileBounds& bounds, bool opportunity,
                         double gain_start) {
    if (!(bounds.min_non_sacrificing > 0) || !(bounds.min_effort > 0) ||
        !(bounds.max_exploit_time > 0) || !(bounds.max_character > 0))
        throw std::invalid_argument("satisficing ratio needs positive bounds");
    double effort = bounds.min_effort;
    if (opportunity) {
        if (!bounds.max_speed || !(*bounds.max_speed > 0))
            throw std::invalid_argument(
                "opportunity variant needs a positive speed upper bound");
        effort += gain_start / *bounds.max_speed;
        if (!(effort > 0))
            throw std::invalid_argument(
                "opportunity variant drives the transition ratio non-positive");
    }
    return bounds.min_non_sacrificing * effort /
           (bounds.max_exploit_time * bounds.max_character);
}

} // namespace wtm
