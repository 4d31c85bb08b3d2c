#include "wtm/lsp.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "wtm/metric_space.hpp"

namespace wtm {

namespace {

double penalized_value(const GainFunction& g, const std::vector<double>& x_ref,
                       double theta, const std::vector<double>& y) {
    double sq = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double d = y[i] - x_ref[i];
        sq += d * d;
    }
    const double v = g.value(y) - theta * sq;
    if (!std::isfinite(v))
        throw std::runtime_error("penalized objective evaluated to a non-finite value");
    return v;
}

std::vector<double> penalized_gradient(const GainFunction& g,
                                       const std::vector<double>& x_ref, double theta,
                                       const std::vector<double>& y) {
    std::vector<double> grad = g.gradient(y);
    for (std::size_t i = 0; i < y.size(); ++i)
        grad[i] -= 2.0 * theta * (y[i] - x_ref[i]);
    return grad;
}

// Projected gradient ascent with Armijo backtracking on the projected step.
// Returns the final point and objective value.
std::pair<std::vector<double>, double> ascend(const GainFunction& g,
                                              const ConstraintSet& feasible,
                                              const std::vector<double>& x_ref,
                                              double theta,
                                              std::vector<double> y,
                                              const InnerSolverParams& params) {
    const std::size_t p = y.size();
    double value = penalized_value(g, x_ref, theta, y);
    std::vector<double> trial(p);
    for (int iter = 0; iter < params.max_iterations; ++iter) {
        const std::vector<double> grad = penalized_gradient(g, x_ref, theta, y);
        double step = params.step_init;
        bool accepted = false;
        double moved = 0.0;
        while (step > 1e-16) {
            for (std::size_t i = 0; i < p; ++i) trial[i] = y[i] + step * grad[i];
            std::vector<double> cand = project(feasible, trial);
            double disp_sq = 0.0;
            for (std::size_t i = 0; i < p; ++i) {
                const double d = cand[i] - y[i];
                disp_sq += d * d;
            }
            if (disp_sq == 0.0) break; // stationary for this and all smaller steps
            const double cand_value = penalized_value(g, x_ref, theta, cand);
            if (cand_value >= value + 1e-4 * disp_sq / step) {
                y = std::move(cand);
                value = cand_value;
                moved = std::sqrt(disp_sq);
                accepted = true;
                break;
            }
            step *= params.backtrack;
        }
        if (!accepted || moved <= params.tolerance) break;
    }
    return {std::move(y), value};
}

} // namespace

InnerResult inner_solve(const GainFunction& g, const ConstraintSet& constraints,
                        const std::vector<double>& x, double theta, double radius,
                        const InnerSolverParams& params, Rng& rng) {
    if (!(theta > 0) || !(radius > 0))
        throw std::invalid_argument("inner solve needs theta > 0 and radius > 0");
    const ConstraintSet feasible =
        ConstraintSet::intersection({constraints, ConstraintSet::ball(x, radius)});

    InnerResult out;
    out.start_value = penalized_value(g, x, theta, x); // equals g(x)

    auto [best, best_value] = ascend(g, feasible, x, theta, x, params);
    for (int r = 0; r < params.restarts; ++r) {
        std::vector<double> start(x.size());
        for (std::size_t i = 0; i < x.size(); ++i)
            start[i] = x[i] + rng.uniform(-radius, radius);
        start = project(feasible, start);
        auto [point, value] = ascend(g, feasible, x, theta, std::move(start), params);
        if (value > best_value) {
            best = std::move(point);
            best_value = value;
        }
    }
    // The x-start run only accepts improvements, so this cannot regress.
    if (best_value < out.start_value) {
        best = x;
        best_value = out.start_value;
    }
    out.point = std::move(best);
    out.value = best_value;
    return out;
}

LspStepResult lsp_step(const GainFunction& g, const ConstraintSet& constraints,
                       const std::vector<double>& x, const LspConfig& config,
                       Rng& rng) {
    const InnerResult inner = inner_solve(g, constraints, x, config.theta,
                                          config.radius, config.inner, rng);
    LspStepResult out;
    out.slack = inner.value - inner.start_value;
    if (out.slack < -config.eps_n) {
        out.point = x;
        out.accepted = false;
        out.slack = 0.0;
        return out;
    }
    out.point = inner.point;
    const double moved = euclidean_distance(out.point, x);
    out.ball_active = moved >= config.radius * (1.0 - 1e-9);
    return out;
}

LspTrace lsp_run(const GainFunction& g, const ConstraintSet& constraints,
                 const std::vector<double>& start, const LspConfig& config) {
    if (!(config.theta > 0) || !(config.radius > 0))
        throw std::invalid_argument("lsp_run needs theta > 0 and radius > 0");
    Rng rng(config.seed);
    LspTrace trace;

    std::vector<double> x = project(constraints, start);
    LspRecord first;
    first.point = x;
    first.value = g.value(x);
    first.residual = criticality_residual(g, constraints, x, config.probe_step);
    trace.records.push_back(first);

    for (int n = 0; n < config.stop.max_outer; ++n) {
        const LspStepResult step = lsp_step(g, constraints, x, config, rng);
        const double step_norm = euclidean_distance(step.point, x);
        const double residual =
            criticality_residual(g, constraints, step.point, config.probe_step);

        if (step_norm > 0.0) {
            trace.sum_squared_steps += step_norm * step_norm;
            LspRecord rec;
            rec.point = step.point;
            rec.value = g.value(step.point);
            rec.step_norm = step_norm;
            rec.slack = step.slack;
            rec.residual = residual;
            rec.cum_sq_steps = trace.sum_squared_steps;
            rec.ball_active = step.ball_active;
            trace.records.push_back(rec);
            x = step.point;
        }

        if (step_norm <= config.stop.step_tolerance) {
            trace.converged = residual <= config.stop.residual_tolerance;
            break;
        }
        if (!step.accepted) break; // inner solver failed; cannot proceed
    }
    return trace;
}

double criticality_residual(const GainFunction& g, const ConstraintSet& constraints,
                            const std::vector<double>& x, double probe_step) {
    if (!(probe_step > 0))
        throw std::invalid_argument("probe step must be positive");
    const std::vector<double> grad = g.gradient(x);
    std::vector<double> probe(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        probe[i] = x[i] + probe_step * grad[i];
    const std::vector<double> proj = project(constraints, probe);
    return euclidean_distance(proj, x) / probe_step;
}

CheckResult opial_monotonicity(const LspTrace& trace, const std::vector<double>& point,
                               double tol) {
    CheckResult check{"opial-monotone-distance", true, "", {}};
    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < trace.records.size(); ++i) {
        const double d = euclidean_distance(trace.records[i].point, point);
        if (d > prev + tol) {
            check.pass = false;
            check.step = static_cast<int>(i);
            char buf[128];
            std::snprintf(buf, sizeof buf,
                          "distance to anchor grew at iterate %zu (%.17g > %.17g)", i,
                          d, prev);
            check.detail = buf;
            break;
        }
        prev = d;
    }
    return check;
}

} // namespace wtm
