// The punctuated exploration-exploitation-moving process on finite spaces,
// its verifiers (per-step budget law, shrinking, finite-time accounting), the
// Ekeland certificate search, the clairvoyance index, and the hill-climbing
// comparator.
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "wtm/behavior.hpp"
#include "wtm/goals.hpp"

namespace wtm {

enum class ProcessMode {
    MuddlingThrough, // accept any worthwhile strict improvement
    ImprovingEnough, // additionally require gain(y) - gain(x) >= epsilon(x)
};

enum class SelectionPolicy { MaxGain, MinDistance, FirstFound };

struct ProcessConfig {
    ProcessMode mode = ProcessMode::ImprovingEnough;
    double radius = 0.0; // exploration radius r > 0
    SelectionPolicy policy = SelectionPolicy::MaxGain;
    int max_steps = 1000;
    double alpha = 0.5;         // exploitation fraction of each static phase
    double exploit_time = 1.0;  // t(x) per visit; also the t(y) in the advantage
    double explore_spend = 1.0; // per-unit exploration expenditure k(x)
    double p = 0.5, q = 0.5;    // aspiration and need-reduction rates
    std::size_t start = 0;
};

struct TraceRecord {
    int n = 0;                 // step index
    std::size_t state = 0;     // x_n
    double gain = 0.0;         // g(x_n)
    double move_distance = 0.0; // d(x_n, x_{n+1}); 0 on the terminal record
    double advantage = 0.0;     // A(x_n, x_{n+1})
    double cost = 0.0;          // C(x_n, x_{n+1})
    double opportunity = 0.0;   // O(x_n, x_{n+1})
    double theta_pair = 0.0;    // pairwise transition ratio of the move
    double epsilon = 0.0;       // required improvement at x_n (improving-enough)
    double rho_enclosing = 0.0; // radius of S(x_n)
    double phase_time = 0.0;    // h(x_n), exploitation-exploration duration
    double exploit_time = 0.0;  // t(x_n)
    double explore_time = 0.0;  // tau(x_n)
    double move_time = 0.0;     // t(x_n, x_{n+1})
    bool terminal = false;
};

enum class TerminalKind {
    StrongRestPoint,
    WeakRestPoint,
    NotRestPoint,
    LocalMaximum, // hill-climb terminal
    Unterminated, // stopped by the step cap
};

enum class TraceKind { Process, HillClimb };

struct Trace {
    std::vector<TraceRecord> records; // one per visit, last one terminal when completed
    std::size_t terminal_state = 0;
    TerminalKind classification = TerminalKind::Unterminated;
    bool completed = false; // false when max_steps ran out
    TraceKind kind = TraceKind::Process;
    ProcessMode mode = ProcessMode::ImprovingEnough;
    double theta = 0.0; // uniform transition ratio of the run
    double sigma = 0.0; // p*q, floor used by the shrinking verifier
    ProcessConfig config;

    std::size_t moves() const { return records.empty() ? 0 : records.size() - 1; }
};

const char* to_string(TerminalKind kind);
const char* to_string(ProcessMode mode);
const char* to_string(SelectionPolicy policy);

struct Candidate {
    std::size_t state = 0;
    double gain = 0.0;
    double distance = 0.0;
};

// Deterministic choice among already-filtered candidates. Ties break by the
// chain gain desc, distance asc, index asc (rotated per policy); empty input
// means the process stops.
std::optional<std::size_t> select_next(const std::vector<Candidate>& candidates,
                                       SelectionPolicy policy);

// Runs the punctuated process from config.start until no candidate inside the
// exploration ball passes the mode's tests (or the step cap hits). Inputs are
// validated; the uniform ratio comes from satisficing_theta over the profile
// bounds.
Trace run_process(const FiniteMetricSpace& space, const GainFunction& g,
                  const AgentProfile& profile, const CostModel& model,
                  const ProcessConfig& config);

struct CheckResult {
    std::string name;
    bool pass = true;
    std::string detail;
    std::optional<int> step; // violating step, when one exists
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    bool pass() const;
    std::string summary() const;
};

// Budget law: per-step gain >= theta * distance, cumulative distance within
// (gbar - g(x0)) / theta, gains monotone, and (long traces only) the final
// step inside the remaining budget.
VerifyReport verify_budget(const Trace& trace, double theta, double gbar,
                           double tol = 1e-12);

// Shrinking law for improving-enough runs: per-step gain covers
// sigma * (s(x_n) - g(x_n)) >= sigma * theta * rho(S(x_n)), and the terminal
// enclosing set is the singleton. Refuses traces from other modes.
VerifyReport verify_shrinking(const Trace& trace, double theta,
                              const FiniteMetricSpace& space, const GainFunction& g,
                              double tol = 1e-12);

struct TimeAccounting {
    double total = 0.0; // sum of phase durations plus moving times
    VerifyReport report;
};

// Total elapsed time along the trace plus the finite-time bounds: moving time
// within (1/min_speed) * total distance, phase time within
// (1/min_alpha) * total exploitation time.
TimeAccounting time_accounting(const Trace& trace, double min_alpha, double min_speed,
                               double tol = 1e-12);

struct EkelandCertificate {
    bool precondition_ok = false; // gbar - g(x0) <= epsilon held
    bool found = false;
    bool strict = false; // maximality strict at every y != point
    std::size_t start = 0;
    std::size_t point = 0; // x*
    double need = 0.0;     // gbar - g(x0)
    double improvement_slack = 0.0; // g(x*) - g(x0)
    double move_slack = 0.0;        // epsilon - theta * d(x0, x*)
    double maximality_slack = 0.0;  // min_y!=x* [ g(x*) - g(y) + theta d(x*,y) ]
    std::vector<std::size_t> ties;  // maximality ties when not strict
};

// Exhaustive search for a point witnessing the three Ekeland clauses:
// improvement over x0, move affordable within epsilon, and maximality of
// y -> g(y) - theta d(x*, y). Prefers a strict witness.
EkelandCertificate ekeland_certificate(const FiniteMetricSpace& space,
                                       const GainFunction& g, double theta,
                                       double epsilon, std::size_t start,
                                       double tie_tol = 1e-12);

// First step index whose exact worthwhile set fits in a ball of radius r;
// empty when the trace never gets there.
std::optional<int> clairvoyance_index(const Trace& trace,
                                      const FiniteMetricSpace& space,
                                      const GainFunction& g,
                                      const AgentProfile& profile,
                                      const CostModel& model, double radius);

// Greedy local search: moves to the best strict improvement within distance r,
// stops at a local maximum of the r-neighborhood structure.
Trace hill_climb(const FiniteMetricSpace& space, const GainFunction& g, double radius,
                 std::size_t start);

// gbar minus the terminal gain of a finished trace.
double inefficiency_gap(const Trace& trace, double gbar);

} // namespace wtm
