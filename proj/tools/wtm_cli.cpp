// Batch harness for worthwhile-to-move scenarios.
//
// Subcommands: validate, run-wtm, run-lsp, rest-points, ekeland-check,
// compare. Exit codes: 0 when every enabled check passes, 1 on a verification
// failure (the failing check is named), 2 on I/O or document errors.

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "wtm/dynamics.hpp"
#include "wtm/goals.hpp"
#include "wtm/lsp.hpp"
#include "wtm/scenario.hpp"
#include "wtm/trace_io.hpp"

namespace {

using nlohmann::json;
using namespace wtm;

constexpr int kExitPass = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitEnvFail = 2;

struct CommonArgs {
    std::string scenario_path;
    std::string out_dir; // empty: fall back to the scenario's output.dir
    std::string format = "csv";
    std::optional<std::uint64_t> seed;
    std::optional<int> max_steps;
};

std::optional<Scenario> load_scenario(const CommonArgs& args, int& exit_code) {
    std::ifstream in(args.scenario_path);
    if (!in) {
        std::fprintf(stderr, "error: cannot read scenario '%s'\n",
                     args.scenario_path.c_str());
        exit_code = kExitEnvFail;
        return std::nullopt;
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    ParseResult parsed = parse_scenario_text(buffer.str());
    if (!parsed.ok()) {
        std::fprintf(stderr, "scenario rejected:\n");
        for (const auto& e : parsed.errors)
            std::fprintf(stderr, "  %s\n", e.c_str());
        exit_code = kExitEnvFail;
        return std::nullopt;
    }
    Scenario s = std::move(*parsed.scenario);
    if (args.seed) {
        s.seed = *args.seed;
        s.lsp.seed = *args.seed;
    }
    if (args.max_steps) s.process.max_steps = *args.max_steps;
    return s;
}

std::string out_path(const CommonArgs& args, const Scenario& s,
                     const std::string& suffix) {
    std::string dir = args.out_dir;
    if (dir.empty()) dir = s.output_dir.value_or(".");
    return dir + "/" + s.name + suffix;
}

json checks_to_json(const VerifyReport& report) {
    json arr = json::array();
    for (const auto& c : report.checks) {
        json item{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}};
        if (c.step) item["step"] = *c.step;
        arr.push_back(item);
    }
    return arr;
}

void print_report(const char* title, const VerifyReport& report) {
    std::printf("%s\n%s", title, report.summary().c_str());
}

int require_finite(const Scenario& s) {
    if (s.engine == Scenario::Engine::FiniteProcess) return kExitPass;
    std::fprintf(stderr, "error: this subcommand needs a finite scenario\n");
    return kExitEnvFail;
}

// Metric validation shared by validate and every finite run command.
bool metric_ok(const Scenario& s, bool print_all) {
    const auto report = validate_metric(s.dist);
    if (report.valid()) return true;
    std::size_t shown = 0;
    for (const auto& v : report.violations) {
        if (print_all || shown < 10)
            std::printf("metric violation: %s\n", v.message().c_str());
        ++shown;
    }
    if (!print_all && shown > 10)
        std::printf("... %zu violations total\n", shown);
    return false;
}

int cmd_validate(const CommonArgs& args) {
    int code = kExitPass;
    const auto scenario = load_scenario(args, code);
    if (!scenario) return code;
    if (scenario->engine == Scenario::Engine::FiniteProcess) {
        if (!metric_ok(*scenario, true)) return kExitVerifyFail;
        std::printf("scenario '%s': metric and schema valid (%zu points)\n",
                    scenario->name.c_str(), scenario->points.size());
    } else {
        std::printf("scenario '%s': schema valid (euclidean, dimension %d)\n",
                    scenario->name.c_str(), scenario->euclidean.dimension);
    }
    return kExitPass;
}

int cmd_run_wtm(const CommonArgs& args) {
    int code = kExitPass;
    const auto scenario = load_scenario(args, code);
    if (!scenario) return code;
    if (int rc = require_finite(*scenario)) return rc;
    if (!metric_ok(*scenario, false)) return kExitVerifyFail;

    const auto space = scenario->make_space();
    const auto gain = scenario->make_table_gain();
    const Trace trace = run_process(space, gain, scenario->profile, scenario->cost,
                                    scenario->process);

    if (args.format == "json")
        write_file(out_path(args, *scenario, "_trace.json"),
                   trace_to_json(trace, space).dump(2) + "\n");
    else
        write_file(out_path(args, *scenario, "_trace.csv"),
                   trace_to_csv(trace, space));

    std::printf("trace: %zu moves, terminal %s (%s)%s\n", trace.moves(),
                space.label(trace.terminal_state).c_str(),
                to_string(trace.classification),
                trace.completed ? "" : " [step cap reached]");

    const double gbar = scenario->gbar();
    json report_doc{{"scenario", scenario->name},
                    {"command", "run-wtm"},
                    {"terminal", space.label(trace.terminal_state)},
                    {"classification", to_string(trace.classification)},
                    {"moves", trace.moves()},
                    {"theta", trace.theta}};
    bool all_pass = true;
    if (scenario->verify.budget) {
        const auto report = verify_budget(trace, trace.theta, gbar);
        print_report("budget checks:", report);
        report_doc["budget"] = checks_to_json(report);
        all_pass = all_pass && report.pass();
    }
    if (scenario->verify.shrinking &&
        scenario->process.mode == ProcessMode::ImprovingEnough) {
        const auto report = verify_shrinking(trace, trace.theta, space, gain);
        print_report("shrinking checks:", report);
        report_doc["shrinking"] = checks_to_json(report);
        all_pass = all_pass && report.pass();
    }
    if (scenario->verify.time) {
        const auto accounting =
            time_accounting(trace, scenario->profile.bounds.min_exploit_fraction,
                            scenario->cost.speed);
        std::printf("total time: %g\n", accounting.total);
        print_report("time checks:", accounting.report);
        report_doc["total_time"] = accounting.total;
        report_doc["time"] = checks_to_json(accounting.report);
        all_pass = all_pass && accounting.report.pass();
    }
    report_doc["pass"] = all_pass;
    write_file(out_path(args, *scenario, "_report.json"), report_doc.dump(2) + "\n");
    return all_pass ? kExitPass : kExitVerifyFail;
}

int cmd_run_lsp(const CommonArgs& args) {
    int code = kExitPass;
    const auto scenario = load_scenario(args, code);
    if (!scenario) return code;
    if (scenario->engine != Scenario::Engine::EuclideanLsp) {
        std::fprintf(stderr, "error: this subcommand needs a euclidean scenario\n");
        return kExitEnvFail;
    }

    const auto gain = scenario->make_smooth_gain();
    const LspTrace trace =
        lsp_run(gain, *scenario->constraints, scenario->lsp_start, scenario->lsp);

    if (args.format == "json")
        write_file(out_path(args, *scenario, "_trace.json"),
                   lsp_trace_to_json(trace).dump(2) + "\n");
    else
        write_file(out_path(args, *scenario, "_trace.csv"), lsp_trace_to_csv(trace));

    VerifyReport report;
    CheckResult monotone{"value-monotone-slack", true, "", {}};
    for (std::size_t i = 1; i < trace.records.size(); ++i) {
        if (trace.records[i].slack < -scenario->lsp.eps_n - 1e-12) {
            monotone.pass = false;
            monotone.step = static_cast<int>(i);
            monotone.detail = "sufficient-increase slack below -eps_n";
            break;
        }
    }
    report.checks.push_back(monotone);

    CheckResult converged{"converged", trace.converged, "", {}};
    if (!trace.converged) converged.detail = "outer iteration cap reached";
    report.checks.push_back(converged);

    const double terminal_residual =
        trace.records.empty() ? 0.0 : trace.records.back().residual;
    CheckResult residual{"terminal-residual",
                         terminal_residual <= scenario->lsp.stop.residual_tolerance,
                         "",
                         {}};
    {
        char buf[96];
        std::snprintf(buf, sizeof buf, "residual %.3e vs tolerance %.3e",
                      terminal_residual, scenario->lsp.stop.residual_tolerance);
        residual.detail = buf;
    }
    report.checks.push_back(residual);

    if (scenario->gbar_supplied) {
        const double budget =
            (*scenario->gbar_supplied - trace.records.front().value) /
                scenario->lsp.theta +
            scenario->lsp.eps_n * static_cast<double>(trace.iterations()) /
                scenario->lsp.theta;
        CheckResult summability{"squared-step-budget",
                                trace.sum_squared_steps <= budget + 1e-10,
                                "",
                                {}};
        char buf[96];
        std::snprintf(buf, sizeof buf, "sum %.6e vs budget %.6e",
                      trace.sum_squared_steps, budget);
        summability.detail = buf;
        report.checks.push_back(summability);
    }
    if (scenario->lsp.opial_point)
        report.checks.push_back(opial_monotonicity(trace, *scenario->lsp.opial_point));

    std::printf("lsp: %zu iterations, %s, terminal residual %.3e\n",
                trace.iterations(), trace.converged ? "converged" : "not converged",
                terminal_residual);
    print_report("lsp checks:", report);

    json report_doc{{"scenario", scenario->name},
                    {"command", "run-lsp"},
                    {"iterations", trace.iterations()},
                    {"converged", trace.converged},
                    {"sum_squared_steps", trace.sum_squared_steps},
                    {"checks", checks_to_json(report)},
                    {"pass", report.pass()}};
    write_file(out_path(args, *scenario, "_report.json"), report_doc.dump(2) + "\n");
    return report.pass() ? kExitPass : kExitVerifyFail;
}

int cmd_rest_points(const CommonArgs& args) {
    int code = kExitPass;
    const auto scenario = load_scenario(args, code);
    if (!scenario) return code;
    if (int rc = require_finite(*scenario)) return rc;
    if (!metric_ok(*scenario, false)) return kExitVerifyFail;

    const auto space = scenario->make_space();
    const auto gain = scenario->make_table_gain();
    const double theta =
        satisficing_theta(scenario->profile.bounds, scenario->cost.opportunity,
                          gain.at(scenario->process.start));

    std::string csv = "state,gain,class,rho_enclosing,reachable_supremum\n";
    std::printf("theta = %g\n", theta);
    for (std::size_t x = 0; x < space.size(); ++x) {
        const auto cls = classify_rest_point(theta, space, gain, x);
        const char* name = cls == RestPointClass::Strong     ? "strong"
                           : cls == RestPointClass::WeakOnly ? "weak-only"
                                                             : "not-rest";
        const auto set = enclosing_set(theta, space, gain, x);
        const double s = reachable_supremum(theta, space, gain, x);
        char line[192];
        std::snprintf(line, sizeof line, "%s,%.17g,%s,%.17g,%.17g\n",
                      space.label(x).c_str(), gain.at(x), name, set.radius, s);
        csv += line;
        std::printf("%-8s g=%-10g %-9s rho(S)=%-10g s=%g\n", space.label(x).c_str(),
                    gain.at(x), name, set.radius, s);
    }
    write_file(out_path(args, *scenario, "_rest_points.csv"), csv);
    return kExitPass;
}

int cmd_ekeland(const CommonArgs& args) {
    int code = kExitPass;
    const auto scenario = load_scenario(args, code);
    if (!scenario) return code;
    if (int rc = require_finite(*scenario)) return rc;
    if (!scenario->ekeland) {
        std::fprintf(stderr, "error: scenario has no ekeland block\n");
        return kExitEnvFail;
    }
    if (!metric_ok(*scenario, false)) return kExitVerifyFail;

    const auto space = scenario->make_space();
    const auto gain = scenario->make_table_gain();
    const auto& params = *scenario->ekeland;
    const auto cert =
        ekeland_certificate(space, gain, params.theta, params.epsilon, params.start);

    json doc{{"scenario", scenario->name},
             {"command", "ekeland-check"},
             {"theta", params.theta},
             {"epsilon", params.epsilon},
             {"start", space.label(params.start)},
             {"need", cert.need},
             {"precondition_ok", cert.precondition_ok},
             {"found", cert.found}};
    if (!cert.precondition_ok) {
        std::printf("precondition failed: need %.17g exceeds epsilon %.17g\n",
                    cert.need, params.epsilon);
        write_file(out_path(args, *scenario, "_ekeland.json"), doc.dump(2) + "\n");
        return kExitVerifyFail;
    }
    doc["point"] = space.label(cert.point);
    doc["strict"] = cert.strict;
    doc["improvement_slack"] = cert.improvement_slack;
    doc["move_slack"] = cert.move_slack;
    doc["maximality_slack"] = cert.maximality_slack;
    if (!cert.ties.empty()) {
        json ties = json::array();
        for (auto t : cert.ties) ties.push_back(space.label(t));
        doc["ties"] = ties;
    }
    write_file(out_path(args, *scenario, "_ekeland.json"), doc.dump(2) + "\n");

    std::printf("certificate: x* = %s (%s), slacks: improvement %g, move %g, "
                "maximality %g\n",
                space.label(cert.point).c_str(),
                cert.strict ? "strict" : "with ties", cert.improvement_slack,
                cert.move_slack, cert.maximality_slack);
    return cert.found ? kExitPass : kExitVerifyFail;
}

int cmd_compare(const CommonArgs& args) {
    int code = kExitPass;
    const auto scenario = load_scenario(args, code);
    if (!scenario) return code;
    if (int rc = require_finite(*scenario)) return rc;
    if (!metric_ok(*scenario, false)) return kExitVerifyFail;

    const auto space = scenario->make_space();
    const auto gain = scenario->make_table_gain();
    const double gbar = scenario->gbar();

    const Trace wtm = run_process(space, gain, scenario->profile, scenario->cost,
                                  scenario->process);
    const Trace hc =
        hill_climb(space, gain, scenario->process.radius, scenario->process.start);

    const double wtm_gap = inefficiency_gap(wtm, gbar);
    const double hc_gap = inefficiency_gap(hc, gbar);
    std::printf("worthwhile-process gap %g (terminal %s, %zu moves)\n", wtm_gap,
                space.label(wtm.terminal_state).c_str(), wtm.moves());
    std::printf("hill-climb gap %g (terminal %s, %zu moves)\n", hc_gap,
                space.label(hc.terminal_state).c_str(), hc.moves());

    json doc{{"scenario", scenario->name},
             {"command", "compare"},
             {"gbar", gbar},
             {"worthwhile",
              {{"gap", wtm_gap},
               {"terminal", space.label(wtm.terminal_state)},
               {"moves", wtm.moves()}}},
             {"hill_climb",
              {{"gap", hc_gap},
               {"terminal", space.label(hc.terminal_state)},
               {"moves", hc.moves()}}}};
    write_file(out_path(args, *scenario, "_compare.json"), doc.dump(2) + "\n");
    return kExitPass;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"worthwhile-to-move dynamics and local-search proximal harness"};
    app.require_subcommand(1);

    CommonArgs args;
    auto add_common = [&](CLI::App* sub, bool with_format = true) {
        sub->add_option("--scenario", args.scenario_path, "scenario JSON file")
            ->required();
        sub->add_option("--out", args.out_dir, "output directory");
        sub->add_option("--seed", args.seed, "override the scenario seed");
        if (with_format)
            sub->add_option("--format", args.format, "trace format")
                ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--max-steps", args.max_steps, "override process step cap");
    };

    auto* validate = app.add_subcommand("validate", "metric and schema checks only");
    add_common(validate, false);
    auto* run_wtm = app.add_subcommand("run-wtm", "run the finite process + verifiers");
    add_common(run_wtm);
    auto* run_lsp = app.add_subcommand("run-lsp", "run the proximal solver + checks");
    add_common(run_lsp);
    auto* rest = app.add_subcommand("rest-points", "classify every state");
    add_common(rest, false);
    auto* ekeland =
        app.add_subcommand("ekeland-check", "search and verify a certificate");
    add_common(ekeland, false);
    auto* compare =
        app.add_subcommand("compare", "worthwhile process vs hill climbing");
    add_common(compare, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) return cmd_validate(args);
        if (run_wtm->parsed()) return cmd_run_wtm(args);
        if (run_lsp->parsed()) return cmd_run_lsp(args);
        if (rest->parsed()) return cmd_rest_points(args);
        if (ekeland->parsed()) return cmd_ekeland(args);
        if (compare->parsed()) return cmd_compare(args);
    } catch (const std::exception& ex) {
        std::fprintf(stderr, "error: %s\n", ex.what());
        return kExitEnvFail;
    }
    return kExitEnvFail;
}
