#include "wtm/constraint.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wtm/metric_space.hpp"

namespace wtm {

ConstraintSet ConstraintSet::box(std::vector<double> lower, std::vector<double> upper) {
    if (lower.size() != upper.size())
        throw std::invalid_argument("box bounds have mismatched dimensions");
    for (std::size_t i = 0; i < lower.size(); ++i)
        if (lower[i] > upper[i])
            throw std::invalid_argument("box has lower bound above upper bound");
    ConstraintSet s;
    s.kind_ = Kind::Box;
    s.a_ = std::move(lower);
    s.b_ = std::move(upper);
    return s;
}

ConstraintSet ConstraintSet::ball(std::vector<double> center, double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("ball radius must be positive");
    ConstraintSet s;
    s.kind_ = Kind::Ball;
    s.a_ = std::move(center);
    s.scalar_ = radius;
    return s;
}

ConstraintSet ConstraintSet::halfspace(std::vector<double> normal, double offset) {
    double n2 = 0.0;
    for (double v : normal) n2 += v * v;
    if (!(n2 > 0.0)) throw std::invalid_argument("halfspace normal must be nonzero");
    ConstraintSet s;
    s.kind_ = Kind::Halfspace;
    s.a_ = std::move(normal);
    s.scalar_ = offset;
    return s;
}

ConstraintSet ConstraintSet::intersection(std::vector<ConstraintSet> parts) {
    if (parts.empty())
        throw std::invalid_argument("intersection needs at least one set");
    ConstraintSet s;
    s.kind_ = Kind::Intersection;
    s.parts_ = std::move(parts);
    return s;
}

std::size_t ConstraintSet::dimension() const {
    switch (kind_) {
    case Kind::Box:
    case Kind::Ball:
    case Kind::Halfspace:
        return a_.size();
    case Kind::Intersection:
        return parts_.front().dimension();
    }
    return 0;
}

bool ConstraintSet::contains(const std::vector<double>& x, double tol) const {
    switch (kind_) {
    case Kind::Box:
        for (std::size_t i = 0; i < a_.size(); ++i)
            if (x[i] < a_[i] - tol || x[i] > b_[i] + tol) return false;
        return true;
    case Kind::Ball:
        return euclidean_distance(x, a_) <= scalar_ + tol;
    case Kind::Halfspace: {
        double dot = 0.0;
        for (std::size_t i = 0; i < a_.size(); ++i) dot += a_[i] * x[i];
        return dot <= scalar_ + tol;
    }
    case Kind::Intersection:
        return std::all_of(parts_.begin(), parts_.end(),
                           [&](const ConstraintSet& p) { return p.contains(x, tol); });
    }
    return false;
}

namespace {

std::vector<double> project_primitive(const ConstraintSet& set,
                                      const std::vector<double>& x) {
    switch (set.kind()) {
    case ConstraintSet::Kind::Box: {
        std::vector<double> y(x.size());
        for (std::size_t i = 0; i < x.size(); ++i)
            y[i] = std::clamp(x[i], set.lower()[i], set.upper()[i]);
        return y;
    }
    case ConstraintSet::Kind::Ball: {
        std::vector<double> y = x;
        const double d = euclidean_distance(x, set.center());
        if (d <= set.radius()) return y;
        const double scale = set.radius() / d;
        for (std::size_t i = 0; i < x.size(); ++i)
            y[i] = set.center()[i] + scale * (x[i] - set.center()[i]);
        return y;
    }
    case ConstraintSet::Kind::Halfspace: {
        double dot = 0.0, n2 = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            dot += set.normal()[i] * x[i];
            n2 += set.normal()[i] * set.normal()[i];
        }
        if (dot <= set.offset()) return x;
        std::vector<double> y = x;
        const double shift = (dot - set.offset()) / n2;
        for (std::size_t i = 0; i < x.size(); ++i) y[i] -= shift * set.normal()[i];
        return y;
    }
    default:
        throw std::logic_error("project_primitive on composite set");
    }
}

// Flatten nested intersections into a list of primitives.
void collect_primitives(const ConstraintSet& set, std::vector<const ConstraintSet*>& out) {
    if (set.kind() == ConstraintSet::Kind::Intersection) {
        for (const auto& p : set.parts()) collect_primitives(p, out);
    } else {
        out.push_back(&set);
    }
}

std::vector<double> project_intersection(const std::vector<const ConstraintSet*>& sets,
                                         const std::vector<double>& x,
                                         const ProjectionOptions& opts) {
    // Fast path: if the projection onto one primitive already lies in all the
    // others, it is the projection onto the intersection.
    for (const ConstraintSet* lead : sets) {
        std::vector<double> y = project_primitive(*lead, x);
        bool ok = true;
        for (const ConstraintSet* other : sets) {
            if (other != lead && !other->contains(y, opts.tolerance)) {
                ok = false;
                break;
            }
        }
        if (ok) return y;
    }

    // Dykstra: alternating projections with per-set correction terms.
    const std::size_t m = sets.size();
    const std::size_t p = x.size();
    std::vector<double> y = x;
    std::vector<std::vector<double>> corr(m, std::vector<double>(p, 0.0));
    std::vector<double> z(p);
    for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
        double change = 0.0;
        for (std::size_t s = 0; s < m; ++s) {
            for (std::size_t i = 0; i < p; ++i) z[i] = y[i] + corr[s][i];
            std::vector<double> next = project_primitive(*sets[s], z);
            for (std::size_t i = 0; i < p; ++i) {
                corr[s][i] = z[i] - next[i];
                change = std::max(change, std::abs(next[i] - y[i]));
            }
            y = std::move(next);
        }
        if (change <= opts.tolerance) {
            bool feasible = true;
            for (const ConstraintSet* s : sets)
                if (!s->contains(y, 10.0 * opts.tolerance)) feasible = false;
            if (feasible) return y;
        }
    }
    throw std::runtime_error(
        "projection onto intersection did not converge; constraints look infeasible");
}

} // namespace

std::vector<double> project(const ConstraintSet& set, const std::vector<double>& point,
                            const ProjectionOptions& opts) {
    if (set.dimension() != point.size())
        throw std::invalid_argument("projection dimension mismatch");
    if (set.kind() != ConstraintSet::Kind::Intersection)
        return project_primitive(set, point);
    std::vector<const ConstraintSet*> primitives;
    collect_primitives(set, primitives);
    return project_intersection(primitives, point, opts);
}

} // namespace wtm
