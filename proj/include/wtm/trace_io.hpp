// Trace persistence: CSV with a fixed, documented column order and JSON with
// the terminal certificate embedded. Runs with the same seed write
// byte-identical files.
#pragma once

#include <string>

#include <json.hpp>

#include "wtm/dynamics.hpp"
#include "wtm/lsp.hpp"

namespace wtm {

// Column order:
// n,state,gain,move_distance,advantage,cost,opportunity,theta_pair,epsilon,
// rho_enclosing,phase_time,exploit_time,explore_time,move_time,terminal
std::string trace_to_csv(const Trace& trace, const FiniteMetricSpace& space);

nlohmann::json trace_to_json(const Trace& trace, const FiniteMetricSpace& space);
Trace trace_from_json(const nlohmann::json& doc);

// Column order: x0..x{p-1},value,step_norm,slack,residual
std::string lsp_trace_to_csv(const LspTrace& trace);
nlohmann::json lsp_trace_to_json(const LspTrace& trace);

// Writes content to path; throws std::runtime_error on failure.
void write_file(const std::string& path, const std::string& content);

} // namespace wtm
