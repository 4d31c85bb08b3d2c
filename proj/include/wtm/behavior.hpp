// Advantage/cost calculus for move-or-stay decisions: agent profiles, cost
// models, the worthwhile-to-move and enclosing relations, rest-point
// classification, and the satisficing transition ratio derived from the
// enclosing bounds.
#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "wtm/gain.hpp"
#include "wtm/metric_space.hpp"

namespace wtm {

// Bounds the agent places on its own control variables. They drive the
// uniform transition ratio used by the enclosing relation.
struct ProfileBounds {
    double min_non_sacrificing = 1.0; // lower bound on xi, > 0
    double min_effort = 1.0;          // lower bound on effort per distance, > 0
    double max_exploit_time = 1.0;    // upper bound on t(y), > 0
    double max_character = 1.0;       // upper bound on delta, > 0
    std::optional<double> min_speed;  // optional lower speed bound
    std::optional<double> max_speed;  // optional upper speed bound
    double min_exploit_fraction = 1.0; // floor for alpha, in (0, 1]
};

struct AgentProfile {
    double satisfaction_weight = 0.0;   // weight on improving past the reference
    double disappointment_weight = 0.0; // weight on missing the aspiration
    double utility_weight = 1.0;        // weight on the destination gain itself
    double non_sacrificing_rate = 1.0;  // fraction of moving costs to cover; may exceed 1
    ProfileBounds bounds;

    double character_index() const {
        return satisfaction_weight + disappointment_weight + utility_weight;
    }
    // Throws std::invalid_argument when a weight is negative, the character
    // index is zero, a bound is non-positive, or an actual escapes its bound.
    void validate() const;
};

enum class FrictionClass {
    Dry,     // cost proportional to distance
    Viscous, // cost proportional to squared distance
    Table,   // explicit per-distance effort table, may be asymmetric
};

struct CostModel {
    FrictionClass friction = FrictionClass::Dry;
    double min_effort = 1.0; // base effort per unit distance, > 0
    double speed = 1.0;      // constant moving speed, > 0
    bool opportunity = false; // include forgone-gain costs while moving
    // Row-major n*n effort table for FrictionClass::Table.
    std::vector<double> effort_table;
    // Optional affine effort-speed law: effort = min_effort * (1 + speed/max_speed).
    bool affine_effort_law = false;
    double law_max_speed = 1.0;

    // Effort per unit distance for the pair (i, j) at distance d.
    double effort(std::size_t i, std::size_t j, double d, std::size_t n) const;
    void validate(std::size_t n) const;
};

// Cost of one move together with its time decomposition.
struct MoveCost {
    double total = 0.0;        // C(x,y)
    double moving_time = 0.0;  // t(x,y) = d/v
    double per_time = 0.0;     // c(x,y) = effort * speed
    double per_distance = 0.0; // effort e(x,y)
};

// Instantaneous weighted advantage of being at y seen from reference x:
// utility_weight*g(y) + satisfaction_weight*(g(y)-g(x))
//   - disappointment_weight*(aspiration_x - g(y)).
double instantaneous_advantage(const AgentProfile& profile, double gain_x,
                               double gain_y, double aspiration_x);

// Exploitation-weighted advantage to move: t_y * delta * (g(y) - g(x)).
// Equals t_y * (a(x,y) - a(x,x)); rejects negative exploitation time.
double advantage_to_move(const AgentProfile& profile, double gain_x, double gain_y,
                         double exploit_time);

MoveCost cost_to_move(const CostModel& model, const FiniteMetricSpace& space,
                      std::size_t x, std::size_t y);

// Gain forgone while moving: (d/v) * g(x). Requires the opportunity switch.
double opportunity_cost(const CostModel& model, const FiniteMetricSpace& space,
                        double gain_x, std::size_t x, std::size_t y);

// Acceptable transition rate theta(x,y): the gain-per-distance slope that
// makes a move from x to y exactly worthwhile.
double transition_ratio(const AgentProfile& profile, const CostModel& model,
                        const FiniteMetricSpace& space, double gain_x,
                        double exploit_time, std::size_t x, std::size_t y);

// True iff A(x,y) >= xi * C(x,y) (plus xi * O(x,y) under opportunity costs).
bool worthwhile_membership(const AgentProfile& profile, const CostModel& model,
                           const FiniteMetricSpace& space, const GainFunction& g,
                           double exploit_time, std::size_t x, std::size_t y);

// True iff g(y) - g(x) >= theta * d(x,y); reflexive and transitive.
bool enclosing_membership(double theta, const FiniteMetricSpace& space,
                          const GainFunction& g, std::size_t x, std::size_t y);

struct EnclosingSet {
    std::vector<std::size_t> members; // ascending index order, contains x
    double radius = 0.0;              // max distance from x to a member
};

EnclosingSet enclosing_set(double theta, const FiniteMetricSpace& space,
                           const GainFunction& g, std::size_t x);

// Radius of the exact worthwhile-to-move set W(x), by enumeration.
double worthwhile_radius(const AgentProfile& profile, const CostModel& model,
                         const FiniteMetricSpace& space, const GainFunction& g,
                         double exploit_time, std::size_t x);

enum class RestPointClass {
    Strong,   // every other point falls strictly below the threshold
    WeakOnly, // some point ties the threshold, none exceeds it
    NotRest,  // some point strictly exceeds the threshold
};

// Classification under the uniform ratio theta; ties are resolved at `tie_tol`.
// theta = 0 degenerates to (unique) global-maximum detection.
RestPointClass classify_rest_point(double theta, const FiniteMetricSpace& space,
                                   const GainFunction& g, std::size_t x,
                                   double tie_tol = 1e-12);

// Satisficing transition ratio from the enclosing bounds:
// (min_xi * min_effort) / (max_exploit_time * max_character); under
// opportunity costs the effort picks up gain_start / max_speed.
double satisficing_theta(const ProfileBounds& bounds, bool opportunity,
                         double gain_start = 0.0);

} // namespace wtm
