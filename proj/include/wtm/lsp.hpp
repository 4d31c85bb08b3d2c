// Local search and proximal solver on Euclidean space: per-step maximization
// of g(y) - theta*||y - x_n||^2 over the constraint set intersected with an
// exploration ball, with projected-gradient inner solves and criticality
// diagnostics.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wtm/constraint.hpp"
#include "wtm/dynamics.hpp"
#include "wtm/gain.hpp"
#include "wtm/rng.hpp"

namespace wtm {

struct InnerSolverParams {
    double step_init = 1.0;     // initial trial step for the line search
    double backtrack = 0.5;     // line-search shrink factor
    int restarts = 3;           // random feasible starts besides x_n
    int max_iterations = 2000;  // projected-gradient iteration cap
    double tolerance = 1e-11;   // displacement tolerance of the inner solve
};

struct LspStopRule {
    double step_tolerance = 1e-8;
    double residual_tolerance = 1e-6;
    int max_outer = 1000;
};

struct LspConfig {
    double theta = 1.0;  // proximal weight, > 0
    double radius = 1.0; // clairvoyance radius, > 0
    double eps_n = 0.0;  // tolerated per-step approximation level
    InnerSolverParams inner;
    LspStopRule stop;
    std::uint64_t seed = 0; // drives the multi-start draws only
    std::optional<double> gbar; // enables the summability bound report
    std::optional<std::vector<double>> opial_point; // monotone-distance probe
    double probe_step = 1e-3; // criticality-residual probe
};

struct LspRecord {
    std::vector<double> point;
    double value = 0.0;
    double step_norm = 0.0;     // distance from the previous iterate
    double slack = 0.0;         // value gain minus theta * step_norm^2
    double residual = 0.0;      // criticality residual at this iterate
    double cum_sq_steps = 0.0;  // running sum of squared step norms
    bool ball_active = false;   // step landed on the exploration boundary
};

struct LspTrace {
    std::vector<LspRecord> records; // first record is the (projected) start
    bool converged = false;
    double sum_squared_steps = 0.0;
    std::size_t iterations() const {
        return records.empty() ? 0 : records.size() - 1;
    }
};

struct InnerResult {
    std::vector<double> point;
    double value = 0.0;       // penalized objective at `point`
    double start_value = 0.0; // penalized objective at x_n, equals g(x_n)
};

// Maximizes g(y) - theta*||y - x_n||^2 over C intersected with the ball
// B(x_n, r). Projected gradient ascent with backtracking, multi-started from
// x_n plus `restarts` random feasible points; the returned value never falls
// below the start value. Throws std::runtime_error on non-finite objective
// evaluations.
InnerResult inner_solve(const GainFunction& g, const ConstraintSet& constraints,
                        const std::vector<double>& x, double theta, double radius,
                        const InnerSolverParams& params, Rng& rng);

struct LspStepResult {
    std::vector<double> point;
    double slack = 0.0;
    bool accepted = true;     // false when slack < -eps_n (point stays at x_n)
    bool ball_active = false;
};

LspStepResult lsp_step(const GainFunction& g, const ConstraintSet& constraints,
                       const std::vector<double>& x, const LspConfig& config,
                       Rng& rng);

// Runs the solver from start (projected onto the constraints first) until the
// step norm and the criticality residual fall under their tolerances, or the
// outer cap hits.
LspTrace lsp_run(const GainFunction& g, const ConstraintSet& constraints,
                 const std::vector<double>& start, const LspConfig& config);

// ||project(C, x + s*grad g(x)) - x|| / s: zero exactly at points satisfying
// the normal-cone inclusion.
double criticality_residual(const GainFunction& g, const ConstraintSet& constraints,
                            const std::vector<double>& x, double probe_step = 1e-3);

// Optional diagnostic: distances from the iterates to `point` never increase
// (within tol). Meaningful when `point` lies in the terminal super-level set.
CheckResult opial_monotonicity(const LspTrace& trace, const std::vector<double>& point,
                               double tol = 1e-9);

} // namespace wtm
