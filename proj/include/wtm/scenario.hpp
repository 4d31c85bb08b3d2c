// Scenario documents: the JSON surface of the harness. A scenario selects
// exactly one engine (the finite worthwhile-to-move process or the Euclidean
// proximal solver), carries every model parameter, and validates strictly:
// unknown keys are rejected and every error names the offending field.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "wtm/behavior.hpp"
#include "wtm/dynamics.hpp"
#include "wtm/lsp.hpp"

namespace wtm {

struct EkelandParams {
    double theta = 1.0;
    double epsilon = 1.0;
    std::size_t start = 0;
};

struct VerifierToggles {
    bool budget = true;
    bool shrinking = true;
    bool time = true;
};

struct Scenario {
    enum class Engine { FiniteProcess, EuclideanLsp };

    std::string name = "scenario";
    std::uint64_t seed = 0;
    Engine engine = Engine::FiniteProcess;

    // Finite engine.
    std::vector<std::string> points;
    std::vector<std::vector<double>> dist; // raw table, validated separately
    std::vector<double> gain_values;
    AgentProfile profile;
    CostModel cost;
    ProcessConfig process;

    // Euclidean engine.
    EuclideanSpace euclidean;
    std::string gain_builtin;
    std::vector<double> gain_vec_a; // builtin parameters (meaning per builtin)
    std::vector<double> gain_vec_b;
    std::vector<std::vector<double>> gain_mat;
    double gain_scalar = 0.0;
    std::optional<ConstraintSet> constraints;
    std::vector<double> lsp_start;
    LspConfig lsp;

    std::optional<EkelandParams> ekeland;
    VerifierToggles verify;
    std::optional<double> gbar_supplied;
    std::optional<std::string> output_dir; // default for the CLI's --out

    FiniteMetricSpace make_space() const { return {points, dist}; }
    GainFunction make_table_gain() const { return GainFunction::table(gain_values); }
    // The smooth gain named by gain_builtin (Euclidean engine only).
    GainFunction make_smooth_gain() const;

    // Exact maximum of the table, or the supplied bound.
    double gbar() const;
};

struct ParseResult {
    std::optional<Scenario> scenario;
    std::vector<std::string> errors; // "path.to.field: message"
    bool ok() const { return errors.empty() && scenario.has_value(); }
};

ParseResult parse_scenario(const nlohmann::json& doc);
// Parses text and surfaces JSON syntax errors as a single parse error.
ParseResult parse_scenario_text(const std::string& text);

} // namespace wtm
