// Closed convex constraint sets (box, ball, halfspace, intersections) with
// Euclidean projection. Primitive sets project in closed form; intersections
// use Dykstra's alternating scheme.
#pragma once

#include <cstddef>
#include <vector>

namespace wtm {

class ConstraintSet {
public:
    enum class Kind { Box, Ball, Halfspace, Intersection };

    static ConstraintSet box(std::vector<double> lower, std::vector<double> upper);
    static ConstraintSet ball(std::vector<double> center, double radius);
    // Points x with dot(normal, x) <= offset.
    static ConstraintSet halfspace(std::vector<double> normal, double offset);
    static ConstraintSet intersection(std::vector<ConstraintSet> parts);

    Kind kind() const { return kind_; }
    std::size_t dimension() const;

    bool contains(const std::vector<double>& x, double tol = 1e-9) const;

    const std::vector<double>& lower() const { return a_; }
    const std::vector<double>& upper() const { return b_; }
    const std::vector<double>& center() const { return a_; }
    double radius() const { return scalar_; }
    const std::vector<double>& normal() const { return a_; }
    double offset() const { return scalar_; }
    const std::vector<ConstraintSet>& parts() const { return parts_; }

private:
    ConstraintSet() = default;
    Kind kind_ = Kind::Box;
    std::vector<double> a_, b_;
    double scalar_ = 0.0;
    std::vector<ConstraintSet> parts_;
};

struct ProjectionOptions {
    double tolerance = 1e-10;
    int max_sweeps = 10000;
};

// Euclidean projection of `point` onto `set`. Throws std::invalid_argument on
// a dimension mismatch and std::runtime_error when an intersection fails to
// converge (the configuration is treated as infeasible).
std::vector<double> project(const ConstraintSet& set, const std::vector<double>& point,
                            const ProjectionOptions& opts = {});

} // namespace wtm
