#include "wtm/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace wtm {

const char* to_string(TerminalKind kind) {
    switch (kind) {
    case TerminalKind::StrongRestPoint: return "strong-rest-point";
    case TerminalKind::WeakRestPoint: return "weak-rest-point";
    case TerminalKind::NotRestPoint: return "not-rest-point";
    case TerminalKind::LocalMaximum: return "local-maximum";
    case TerminalKind::Unterminated: return "unterminated";
    }
    return "unknown";
}

const char* to_string(ProcessMode mode) {
    return mode == ProcessMode::MuddlingThrough ? "muddling-through"
                                                : "improving-enough";
}

const char* to_string(SelectionPolicy policy) {
    switch (policy) {
    case SelectionPolicy::MaxGain: return "max-gain";
    case SelectionPolicy::MinDistance: return "min-distance";
    case SelectionPolicy::FirstFound: return "first-found";
    }
    return "unknown";
}

std::optional<std::size_t> select_next(const std::vector<Candidate>& candidates,
                                       SelectionPolicy policy) {
    if (candidates.empty()) return std::nullopt;
    // Comparators return true when `a` is preferred over `b`.
    auto better = [policy](const Candidate& a, const Candidate& b) {
        switch (policy) {
        case SelectionPolicy::MaxGain:
            if (a.gain != b.gain) return a.gain > b.gain;
            if (a.distance != b.distance) return a.distance < b.distance;
            return a.state < b.state;
        case SelectionPolicy::MinDistance:
            if (a.distance != b.distance) return a.distance < b.distance;
            if (a.gain != b.gain) return a.gain > b.gain;
            return a.state < b.state;
        case SelectionPolicy::FirstFound:
            return a.state < b.state;
        }
        return a.state < b.state;
    };
    const Candidate* best = &candidates.front();
    for (const Candidate& c : candidates)
        if (better(c, *best)) best = &c;
    return best->state;
}

namespace {

void validate_config(const ProcessConfig& config, const AgentProfile& profile,
                     std::size_t n) {
    if (!(config.radius > 0))
        throw std::invalid_argument("exploration radius must be positive");
    if (config.max_steps < 1)
        throw std::invalid_argument("max_steps must be at least 1");
    if (config.start >= n) throw std::invalid_argument("start state out of range");
    if (!(config.alpha >= profile.bounds.min_exploit_fraction) || config.alpha > 1.0)
        throw std::invalid_argument("exploitation fraction outside [alpha_min, 1]");
    if (!(config.exploit_time > 0) ||
        config.exploit_time > profile.bounds.max_exploit_time)
        throw std::invalid_argument("exploitation time outside (0, t_max]");
    if (!(config.p > 0) || config.p > 1.0)
        throw std::invalid_argument("aspiration rate must lie in (0, 1]");
    if (!(config.q > 0) || !(config.q < 1.0))
        throw std::invalid_argument("need-reduction rate must lie in (0, 1)");
    if (!(config.explore_spend > 0))
        throw std::invalid_argument("exploration spend must be positive");
}

TerminalKind classify_terminal(double theta, const FiniteMetricSpace& space,
                               const GainFunction& g, std::size_t x) {
    switch (classify_rest_point(theta, space, g, x)) {
    case RestPointClass::Strong: return TerminalKind::StrongRestPoint;
    case RestPointClass::WeakOnly: return TerminalKind::WeakRestPoint;
    case RestPointClass::NotRest: return TerminalKind::NotRestPoint;
    }
    return TerminalKind::NotRestPoint;
}

} // namespace

Trace run_process(const FiniteMetricSpace& space, const GainFunction& g,
                  const AgentProfile& profile, const CostModel& model,
                  const ProcessConfig& config) {
    const std::size_t n = space.size();
    profile.validate();
    model.validate(n);
    validate_config(config, profile, n);

    Trace trace;
    trace.kind = TraceKind::Process;
    trace.mode = config.mode;
    trace.config = config;
    trace.sigma = config.p * config.q;
    trace.theta = satisficing_theta(profile.bounds, model.opportunity,
                                    g.at(config.start));

    const double phase_time = config.exploit_time / config.alpha;
    const double explore_time = phase_time - config.exploit_time;

    std::size_t x = config.start;
    for (int step = 0;; ++step) {
        TraceRecord rec;
        rec.n = step;
        rec.state = x;
        rec.gain = g.at(x);
        rec.phase_time = phase_time;
        rec.exploit_time = config.exploit_time;
        rec.explore_time = explore_time;
        rec.rho_enclosing = enclosing_set(trace.theta, space, g, x).radius;

        bool stop = false;
        if (config.mode == ProcessMode::ImprovingEnough) {
            const GoalLevels levels =
                make_goal_levels(trace.theta, space, g, x, config.p, config.q);
            rec.epsilon = levels.epsilon;
            if (levels.epsilon <= 0.0) stop = true; // nothing enough to reach
        }

        std::optional<std::size_t> next;
        if (!stop) {
            std::vector<Candidate> candidates;
            for (std::size_t y = 0; y < n; ++y) {
                if (y == x || space.distance(x, y) > config.radius) continue;
                if (!(g.at(y) > g.at(x))) continue; // strict improvement only
                if (!worthwhile_membership(profile, model, space, g,
                                           config.exploit_time, x, y))
                    continue;
                if (config.mode == ProcessMode::ImprovingEnough &&
                    g.at(y) - g.at(x) < rec.epsilon)
                    continue;
                candidates.push_back({y, g.at(y), space.distance(x, y)});
            }
            next = select_next(candidates, config.policy);
        }

        if (!next) {
            rec.terminal = true;
            trace.records.push_back(rec);
            trace.terminal_state = x;
            trace.completed = true;
            trace.classification = classify_terminal(trace.theta, space, g, x);
            break;
        }
        if (step >= config.max_steps) {
            rec.terminal = false;
            trace.records.push_back(rec);
            trace.terminal_state = x;
            trace.completed = false;
            trace.classification = TerminalKind::Unterminated;
            break;
        }

        const std::size_t y = *next;
        rec.move_distance = space.distance(x, y);
        rec.advantage =
            advantage_to_move(profile, g.at(x), g.at(y), config.exploit_time);
        const MoveCost cost = cost_to_move(model, space, x, y);
        rec.cost = cost.total;
        rec.opportunity =
            model.opportunity ? opportunity_cost(model, space, g.at(x), x, y) : 0.0;
        rec.theta_pair = transition_ratio(profile, model, space, g.at(x),
                                          config.exploit_time, x, y);
        rec.move_time = cost.moving_time;
        trace.records.push_back(rec);
        x = y;
    }
    return trace;
}

bool VerifyReport::pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckResult& c) { return c.pass; });
}

std::string VerifyReport::summary() const {
    std::string out;
    for (const CheckResult& c : checks) {
        out += c.pass ? "[pass] " : "[FAIL] ";
        out += c.name;
        if (!c.detail.empty()) {
            out += ": ";
            out += c.detail;
        }
        out += '\n';
    }
    return out;
}

namespace {

std::string step_msg(const char* text, int step, double lhs, double rhs) {
    char buf[192];
    std::snprintf(buf, sizeof buf, "%s at step %d (%.17g vs %.17g)", text, step, lhs,
                  rhs);
    return buf;
}

} // namespace

VerifyReport verify_budget(const Trace& trace, double theta, double gbar,
                           double tol) {
    VerifyReport report;
    const auto& recs = trace.records;
    if (recs.empty()) {
        report.checks.push_back({"budget", true, "empty trace, vacuous pass", {}});
        return report;
    }

    CheckResult per_step{"per-step-ratio", true, "", {}};
    CheckResult monotone{"gain-monotone", true, "", {}};
    double sum_d = 0.0;
    for (std::size_t i = 0; i + 1 < recs.size(); ++i) {
        const double dg = recs[i + 1].gain - recs[i].gain;
        const double d = recs[i].move_distance;
        sum_d += d;
        if (per_step.pass && dg < theta * d - tol) {
            per_step.pass = false;
            per_step.step = recs[i].n;
            per_step.detail = step_msg("gain below theta*distance", recs[i].n, dg,
                                       theta * d);
        }
        if (monotone.pass && dg < -tol) {
            monotone.pass = false;
            monotone.step = recs[i].n;
            monotone.detail = step_msg("gain decreased", recs[i].n, recs[i + 1].gain,
                                       recs[i].gain);
        }
    }
    report.checks.push_back(per_step);

    CheckResult budget{"distance-budget", true, "", {}};
    const double cap = (gbar - recs.front().gain) / theta;
    if (sum_d > cap + tol) {
        budget.pass = false;
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "total distance %.17g exceeds (gbar - g0)/theta = %.17g", sum_d,
                      cap);
        budget.detail = buf;
    }
    report.checks.push_back(budget);
    report.checks.push_back(monotone);

    // Long traces must end with a step inside the remaining budget.
    const std::size_t moves = trace.moves();
    if (moves >= 10) {
        CheckResult tail{"tail-step", true, "", {}};
        const TraceRecord& last_move = recs[recs.size() - 2];
        const double headroom = gbar - last_move.gain;
        if (theta * last_move.move_distance > headroom + 1e-9) {
            tail.pass = false;
            tail.step = last_move.n;
            tail.detail = step_msg("final step outside remaining budget",
                                   last_move.n, theta * last_move.move_distance,
                                   headroom);
        }
        report.checks.push_back(tail);
    }
    return report;
}

VerifyReport verify_shrinking(const Trace& trace, double theta,
                              const FiniteMetricSpace& space, const GainFunction& g,
                              double tol) {
    VerifyReport report;
    if (trace.kind != TraceKind::Process || trace.mode != ProcessMode::ImprovingEnough) {
        report.checks.push_back(
            {"mode", false, "refused: trace is not an improving-enough run", {}});
        return report;
    }
    if (!trace.completed) {
        report.checks.push_back(
            {"concluded", false, "non-terminal, shrinking not concluded", {}});
        return report;
    }
    const double sigma = trace.sigma;
    const auto& recs = trace.records;

    CheckResult per_step{"per-step-shrinking", true, "", {}};
    for (std::size_t i = 0; i + 1 < recs.size(); ++i) {
        const double dg = recs[i + 1].gain - recs[i].gain;
        const double headroom =
            reachable_supremum(theta, space, g, recs[i].state) - recs[i].gain;
        // Recomputed rather than read off the trace record.
        const double rho = enclosing_set(theta, space, g, recs[i].state).radius;
        if (dg < sigma * headroom - tol) {
            per_step.pass = false;
            per_step.step = recs[i].n;
            per_step.detail = step_msg("gain below sigma*(s - g)", recs[i].n, dg,
                                       sigma * headroom);
            break;
        }
        if (sigma * headroom < sigma * theta * rho - tol) {
            per_step.pass = false;
            per_step.step = recs[i].n;
            per_step.detail = step_msg("headroom below theta*rho(S)", recs[i].n,
                                       headroom, theta * rho);
            break;
        }
    }
    report.checks.push_back(per_step);

    CheckResult terminal{"terminal-radius", true, "", {}};
    const double rho_final =
        enclosing_set(theta, space, g, recs.back().state).radius;
    if (rho_final != 0.0) {
        terminal.pass = false;
        char buf[128];
        std::snprintf(buf, sizeof buf, "terminal rho(S) = %.17g, expected 0",
                      rho_final);
        terminal.detail = buf;
    }
    report.checks.push_back(terminal);
    return report;
}

TimeAccounting time_accounting(const Trace& trace, double min_alpha,
                               double min_speed, double tol) {
    if (!(min_alpha > 0)) throw std::invalid_argument("alpha floor must be positive");
    if (!(min_speed > 0)) throw std::invalid_argument("speed floor must be positive");
    TimeAccounting out;
    double sum_move_time = 0.0, sum_phase = 0.0, sum_exploit = 0.0, sum_d = 0.0;
    for (const TraceRecord& rec : trace.records) {
        out.total += rec.phase_time + rec.move_time;
        sum_move_time += rec.move_time;
        sum_phase += rec.phase_time;
        sum_exploit += rec.exploit_time;
        sum_d += rec.move_distance;
    }

    CheckResult moving{"moving-time-bound", true, "", {}};
    if (sum_move_time > sum_d / min_speed + tol) {
        moving.pass = false;
        char buf[160];
        std::snprintf(buf, sizeof buf, "moving time %.17g exceeds distance/speed %.17g",
                      sum_move_time, sum_d / min_speed);
        moving.detail = buf;
    }
    out.report.checks.push_back(moving);

    CheckResult phases{"phase-time-bound", true, "", {}};
    if (sum_phase > sum_exploit / min_alpha + tol) {
        phases.pass = false;
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "phase time %.17g exceeds exploitation/alpha %.17g", sum_phase,
                      sum_exploit / min_alpha);
        phases.detail = buf;
    }
    out.report.checks.push_back(phases);
    return out;
}

EkelandCertificate ekeland_certificate(const FiniteMetricSpace& space,
                                       const GainFunction& g, double theta,
                                       double epsilon, std::size_t start,
                                       double tie_tol) {
    if (!(theta > 0)) throw std::invalid_argument("theta must be positive");
    if (!(epsilon > 0)) throw std::invalid_argument("epsilon must be positive");
    if (start >= space.size()) throw std::invalid_argument("start out of range");

    EkelandCertificate cert;
    cert.start = start;
    cert.need = *g.upper_bound() - g.at(start);
    cert.precondition_ok = cert.need <= epsilon;
    if (!cert.precondition_ok) return cert;

    const std::size_t n = space.size();
    bool have_fallback = false;
    EkelandCertificate fallback;
    for (std::size_t x = 0; x < n; ++x) {
        if (g.at(x) < g.at(start)) continue;                        // clause i
        if (epsilon < theta * space.distance(start, x)) continue;   // clause ii
        double min_slack = std::numeric_limits<double>::infinity(); // clause iii
        std::vector<std::size_t> ties;
        bool ok = true;
        for (std::size_t y = 0; y < n; ++y) {
            if (y == x) continue;
            const double slack =
                g.at(x) - (g.at(y) - theta * space.distance(x, y));
            min_slack = std::min(min_slack, slack);
            if (slack < -tie_tol) {
                ok = false;
                break;
            }
            if (slack <= tie_tol) ties.push_back(y);
        }
        if (!ok) continue;
        EkelandCertificate found = cert;
        found.found = true;
        found.point = x;
        found.strict = ties.empty();
        found.ties = std::move(ties);
        found.improvement_slack = g.at(x) - g.at(start);
        found.move_slack = epsilon - theta * space.distance(start, x);
        found.maximality_slack = n > 1 ? min_slack : 0.0;
        if (found.strict) return found;
        if (!have_fallback) {
            fallback = std::move(found);
            have_fallback = true;
        }
    }
    if (have_fallback) return fallback;
    return cert; // found stays false; cannot happen on a valid metric instance
}

std::optional<int> clairvoyance_index(const Trace& trace,
                                      const FiniteMetricSpace& space,
                                      const GainFunction& g,
                                      const AgentProfile& profile,
                                      const CostModel& model, double radius) {
    for (const TraceRecord& rec : trace.records) {
        const double rho = worthwhile_radius(profile, model, space, g,
                                             trace.config.exploit_time, rec.state);
        if (rho <= radius) return rec.n;
    }
    return std::nullopt;
}

Trace hill_climb(const FiniteMetricSpace& space, const GainFunction& g, double radius,
                 std::size_t start) {
    if (!(radius > 0)) throw std::invalid_argument("radius must be positive");
    if (start >= space.size()) throw std::invalid_argument("start out of range");

    Trace trace;
    trace.kind = TraceKind::HillClimb;
    trace.completed = true;
    trace.classification = TerminalKind::LocalMaximum;
    trace.config.radius = radius;
    trace.config.start = start;

    std::size_t x = start;
    for (int step = 0;; ++step) {
        TraceRecord rec;
        rec.n = step;
        rec.state = x;
        rec.gain = g.at(x);

        std::vector<Candidate> candidates;
        for (std::size_t y = 0; y < space.size(); ++y) {
            if (y == x || space.distance(x, y) > radius) continue;
            if (g.at(y) > g.at(x))
                candidates.push_back({y, g.at(y), space.distance(x, y)});
        }
        const auto next = select_next(candidates, SelectionPolicy::MaxGain);
        if (!next) {
            rec.terminal = true;
            trace.records.push_back(rec);
            trace.terminal_state = x;
            break;
        }
        rec.move_distance = space.distance(x, *next);
        trace.records.push_back(rec);
        x = *next;
    }
    return trace;
}

double inefficiency_gap(const Trace& trace, double gbar) {
    if (trace.records.empty())
        throw std::invalid_argument("inefficiency gap needs a finished trace");
    return gbar - trace.records.back().gain;
}

} // namespace wtm
