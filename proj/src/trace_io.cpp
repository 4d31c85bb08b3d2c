#include "wtm/trace_io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace wtm {

namespace {

using nlohmann::json;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

std::string trace_to_csv(const Trace& trace, const FiniteMetricSpace& space) {
    std::string out =
        "n,state,gain,move_distance,advantage,cost,opportunity,theta_pair,epsilon,"
        "rho_enclosing,phase_time,exploit_time,explore_time,move_time,terminal\n";
    for (const TraceRecord& r : trace.records) {
        out += std::to_string(r.n) + ',' + space.label(r.state) + ',' + fmt(r.gain) +
               ',' + fmt(r.move_distance) + ',' + fmt(r.advantage) + ',' +
               fmt(r.cost) + ',' + fmt(r.opportunity) + ',' + fmt(r.theta_pair) +
               ',' + fmt(r.epsilon) + ',' + fmt(r.rho_enclosing) + ',' +
               fmt(r.phase_time) + ',' + fmt(r.exploit_time) + ',' +
               fmt(r.explore_time) + ',' + fmt(r.move_time) + ',' +
               (r.terminal ? "1" : "0") + '\n';
    }
    return out;
}

nlohmann::json trace_to_json(const Trace& trace, const FiniteMetricSpace& space) {
    json records = json::array();
    for (const TraceRecord& r : trace.records) {
        records.push_back({{"n", r.n},
                           {"state", r.state},
                           {"label", space.label(r.state)},
                           {"gain", r.gain},
                           {"move_distance", r.move_distance},
                           {"advantage", r.advantage},
                           {"cost", r.cost},
                           {"opportunity", r.opportunity},
                           {"theta_pair", r.theta_pair},
                           {"epsilon", r.epsilon},
                           {"rho_enclosing", r.rho_enclosing},
                           {"phase_time", r.phase_time},
                           {"exploit_time", r.exploit_time},
                           {"explore_time", r.explore_time},
                           {"move_time", r.move_time},
                           {"terminal", r.terminal}});
    }
    json terminal = {
        {"state", trace.terminal_state},
        {"label", space.label(trace.terminal_state)},
        {"classification", to_string(trace.classification)},
    };
    if (!trace.records.empty()) {
        terminal["rho_enclosing"] = trace.records.back().rho_enclosing;
        terminal["epsilon"] = trace.records.back().epsilon;
        terminal["gain"] = trace.records.back().gain;
    }
    return json{{"kind", trace.kind == TraceKind::HillClimb ? "hill-climb" : "process"},
                {"mode", to_string(trace.mode)},
                {"theta", trace.theta},
                {"sigma", trace.sigma},
                {"completed", trace.completed},
                {"moves", trace.moves()},
                {"config",
                 {{"mode", to_string(trace.config.mode)},
                  {"radius", trace.config.radius},
                  {"policy", to_string(trace.config.policy)},
                  {"max_steps", trace.config.max_steps},
                  {"alpha", trace.config.alpha},
                  {"exploit_time", trace.config.exploit_time},
                  {"explore_spend", trace.config.explore_spend},
                  {"p", trace.config.p},
                  {"q", trace.config.q},
                  {"start", trace.config.start}}},
                {"records", std::move(records)},
                {"terminal", std::move(terminal)}};
}

namespace {

ProcessMode mode_from_string(const std::string& s) {
    return s == "muddling-through" ? ProcessMode::MuddlingThrough
                                   : ProcessMode::ImprovingEnough;
}

SelectionPolicy policy_from_string(const std::string& s) {
    if (s == "min-distance") return SelectionPolicy::MinDistance;
    if (s == "first-found") return SelectionPolicy::FirstFound;
    return SelectionPolicy::MaxGain;
}

TerminalKind terminal_from_string(const std::string& s) {
    if (s == "strong-rest-point") return TerminalKind::StrongRestPoint;
    if (s == "weak-rest-point") return TerminalKind::WeakRestPoint;
    if (s == "not-rest-point") return TerminalKind::NotRestPoint;
    if (s == "local-maximum") return TerminalKind::LocalMaximum;
    return TerminalKind::Unterminated;
}

} // namespace

Trace trace_from_json(const nlohmann::json& doc) {
    Trace trace;
    trace.kind = doc.at("kind").get<std::string>() == "hill-climb"
                     ? TraceKind::HillClimb
                     : TraceKind::Process;
    trace.mode = mode_from_string(doc.at("mode").get<std::string>());
    trace.theta = doc.at("theta").get<double>();
    trace.sigma = doc.at("sigma").get<double>();
    trace.completed = doc.at("completed").get<bool>();
    const json& cfg = doc.at("config");
    trace.config.mode = mode_from_string(cfg.at("mode").get<std::string>());
    trace.config.radius = cfg.at("radius").get<double>();
    trace.config.policy = policy_from_string(cfg.at("policy").get<std::string>());
    trace.config.max_steps = cfg.at("max_steps").get<int>();
    trace.config.alpha = cfg.at("alpha").get<double>();
    trace.config.exploit_time = cfg.at("exploit_time").get<double>();
    trace.config.explore_spend = cfg.at("explore_spend").get<double>();
    trace.config.p = cfg.at("p").get<double>();
    trace.config.q = cfg.at("q").get<double>();
    trace.config.start = cfg.at("start").get<std::size_t>();
    for (const json& r : doc.at("records")) {
        TraceRecord rec;
        rec.n = r.at("n").get<int>();
        rec.state = r.at("state").get<std::size_t>();
        rec.gain = r.at("gain").get<double>();
        rec.move_distance = r.at("move_distance").get<double>();
        rec.advantage = r.at("advantage").get<double>();
        rec.cost = r.at("cost").get<double>();
        rec.opportunity = r.at("opportunity").get<double>();
        rec.theta_pair = r.at("theta_pair").get<double>();
        rec.epsilon = r.at("epsilon").get<double>();
        rec.rho_enclosing = r.at("rho_enclosing").get<double>();
        rec.phase_time = r.at("phase_time").get<double>();
        rec.exploit_time = r.at("exploit_time").get<double>();
        rec.explore_time = r.at("explore_time").get<double>();
        rec.move_time = r.at("move_time").get<double>();
        rec.terminal = r.at("terminal").get<bool>();
        trace.records.push_back(rec);
    }
    trace.terminal_state = doc.at("terminal").at("state").get<std::size_t>();
    trace.classification =
        terminal_from_string(doc.at("terminal").at("classification").get<std::string>());
    return trace;
}

std::string lsp_trace_to_csv(const LspTrace& trace) {
    std::string out;
    if (!trace.records.empty()) {
        const std::size_t p = trace.records.front().point.size();
        for (std::size_t i = 0; i < p; ++i) out += "x" + std::to_string(i) + ',';
    }
    out += "value,step_norm,slack,residual\n";
    for (const LspRecord& r : trace.records) {
        for (double c : r.point) out += fmt(c) + ',';
        out += fmt(r.value) + ',' + fmt(r.step_norm) + ',' + fmt(r.slack) + ',' +
               fmt(r.residual) + '\n';
    }
    return out;
}

nlohmann::json lsp_trace_to_json(const LspTrace& trace) {
    json records = json::array();
    for (const LspRecord& r : trace.records) {
        records.push_back({{"point", r.point},
                           {"value", r.value},
                           {"step_norm", r.step_norm},
                           {"slack", r.slack},
                           {"residual", r.residual},
                           {"cum_sq_steps", r.cum_sq_steps},
                           {"ball_active", r.ball_active}});
    }
    json out{{"converged", trace.converged},
             {"iterations", trace.iterations()},
             {"sum_squared_steps", trace.sum_squared_steps},
             {"records", std::move(records)}};
    if (!trace.records.empty()) {
        out["terminal"] = {{"point", trace.records.back().point},
                           {"value", trace.records.back().value},
                           {"residual", trace.records.back().residual}};
    }
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

} // namespace wtm
