#include "wtm/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace wtm {

namespace {

using nlohmann::json;

// Error collector with dotted field paths.
struct Errors {
    std::vector<std::string> list;
    void add(const std::string& path, const std::string& msg) {
        list.push_back(path + ": " + msg);
    }
};

void check_keys(const json& obj, const std::string& path,
                const std::set<std::string>& allowed, Errors& errs) {
    for (const auto& item : obj.items())
        if (!allowed.count(item.key()))
            errs.add(path.empty() ? item.key() : path + "." + item.key(),
                     "unknown key");
}

bool expect_object(const json& j, const std::string& path, Errors& errs) {
    if (j.is_object()) return true;
    errs.add(path, "expected an object");
    return false;
}

double get_number(const json& obj, const std::string& path, const char* key,
                  double fallback, Errors& errs, bool* present = nullptr) {
    if (present) *present = false;
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number()) {
        errs.add(path + "." + key, "expected a number");
        return fallback;
    }
    if (present) *present = true;
    return v.get<double>();
}

bool get_bool(const json& obj, const std::string& path, const char* key,
              bool fallback, Errors& errs) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_boolean()) {
        errs.add(path + "." + key, "expected a boolean");
        return fallback;
    }
    return v.get<bool>();
}

std::string get_string(const json& obj, const std::string& path, const char* key,
                       const std::string& fallback, Errors& errs) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_string()) {
        errs.add(path + "." + key, "expected a string");
        return fallback;
    }
    return v.get<std::string>();
}

std::vector<double> get_vector(const json& obj, const std::string& path,
                               const char* key, Errors& errs) {
    std::vector<double> out;
    if (!obj.contains(key)) {
        errs.add(path + "." + key, "missing required array");
        return out;
    }
    const json& v = obj.at(key);
    if (!v.is_array()) {
        errs.add(path + "." + key, "expected an array of numbers");
        return out;
    }
    for (const json& e : v) {
        if (!e.is_number()) {
            errs.add(path + "." + key, "expected numeric entries");
            return {};
        }
        out.push_back(e.get<double>());
    }
    return out;
}

std::vector<std::vector<double>> get_matrix(const json& obj, const std::string& path,
                                            const char* key, Errors& errs) {
    std::vector<std::vector<double>> out;
    if (!obj.contains(key)) {
        errs.add(path + "." + key, "missing required matrix");
        return out;
    }
    const json& v = obj.at(key);
    if (!v.is_array()) {
        errs.add(path + "." + key, "expected an array of rows");
        return out;
    }
    for (const json& row : v) {
        if (!row.is_array()) {
            errs.add(path + "." + key, "expected rows to be arrays");
            return {};
        }
        std::vector<double> r;
        for (const json& e : row) {
            if (!e.is_number()) {
                errs.add(path + "." + key, "expected numeric entries");
                return {};
            }
            r.push_back(e.get<double>());
        }
        out.push_back(std::move(r));
    }
    return out;
}

// Resolves a state given either an index or a point label.
std::size_t get_state(const json& obj, const std::string& path, const char* key,
                      const std::vector<std::string>& points, std::size_t fallback,
                      Errors& errs) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (v.is_number_unsigned() || v.is_number_integer()) {
        const auto idx = v.get<long long>();
        if (idx < 0 || static_cast<std::size_t>(idx) >= points.size()) {
            errs.add(path + "." + key, "state index out of range");
            return fallback;
        }
        return static_cast<std::size_t>(idx);
    }
    if (v.is_string()) {
        const auto label = v.get<std::string>();
        const auto it = std::find(points.begin(), points.end(), label);
        if (it == points.end()) {
            errs.add(path + "." + key, "unknown point label '" + label + "'");
            return fallback;
        }
        return static_cast<std::size_t>(it - points.begin());
    }
    errs.add(path + "." + key, "expected a state index or label");
    return fallback;
}

void parse_profile(const json& doc, Scenario& s, Errors& errs) {
    AgentProfile& p = s.profile;
    bool have_bounds = false;
    json bounds;
    if (doc.contains("profile")) {
        const json& j = doc.at("profile");
        if (!expect_object(j, "profile", errs)) return;
        check_keys(j, "profile",
                   {"satisfaction_weight", "disappointment_weight", "utility_weight",
                    "non_sacrificing_rate", "bounds"},
                   errs);
        p.satisfaction_weight =
            get_number(j, "profile", "satisfaction_weight", 0.0, errs);
        p.disappointment_weight =
            get_number(j, "profile", "disappointment_weight", 0.0, errs);
        p.utility_weight = get_number(j, "profile", "utility_weight", 1.0, errs);
        p.non_sacrificing_rate =
            get_number(j, "profile", "non_sacrificing_rate", 1.0, errs);
        if (j.contains("bounds")) {
            bounds = j.at("bounds");
            if (!expect_object(bounds, "profile.bounds", errs)) return;
            check_keys(bounds, "profile.bounds",
                       {"min_non_sacrificing", "min_effort", "max_exploit_time",
                        "max_character", "min_speed", "max_speed",
                        "min_exploit_fraction"},
                       errs);
            have_bounds = true;
        }
    }

    // Bounds default tight at the actuals, which makes the enclosing relation
    // coincide with the exact worthwhile relation.
    ProfileBounds& b = p.bounds;
    const std::string bp = "profile.bounds";
    b.min_non_sacrificing =
        have_bounds ? get_number(bounds, bp, "min_non_sacrificing",
                                 p.non_sacrificing_rate, errs)
                    : p.non_sacrificing_rate;
    b.min_effort = have_bounds
                       ? get_number(bounds, bp, "min_effort", s.cost.min_effort, errs)
                       : s.cost.min_effort;
    bool t_max_present = false;
    if (have_bounds)
        b.max_exploit_time =
            get_number(bounds, bp, "max_exploit_time", 1.0, errs, &t_max_present);
    b.max_character =
        have_bounds
            ? get_number(bounds, bp, "max_character", p.character_index(), errs)
            : p.character_index();
    if (have_bounds && bounds.contains("min_speed"))
        b.min_speed = get_number(bounds, bp, "min_speed", s.cost.speed, errs);
    else
        b.min_speed = s.cost.speed;
    if (have_bounds && bounds.contains("max_speed"))
        b.max_speed = get_number(bounds, bp, "max_speed", s.cost.speed, errs);
    else
        b.max_speed = s.cost.speed;

    // Exploit-time bound and per-visit exploit time default to each other.
    bool exploit_present = false;
    double exploit = 1.0;
    if (doc.contains("process") && doc.at("process").is_object())
        exploit = get_number(doc.at("process"), "process", "exploit_time", 1.0, errs,
                             &exploit_present);
    if (!t_max_present) b.max_exploit_time = exploit_present ? exploit : 1.0;
    s.process.exploit_time = exploit_present ? exploit : b.max_exploit_time;

    bool alpha_present = false;
    double alpha = 0.5;
    if (doc.contains("process") && doc.at("process").is_object())
        alpha = get_number(doc.at("process"), "process", "alpha", 0.5, errs,
                           &alpha_present);
    s.process.alpha = alpha;
    if (have_bounds && bounds.contains("min_exploit_fraction"))
        b.min_exploit_fraction =
            get_number(bounds, bp, "min_exploit_fraction", alpha, errs);
    else
        b.min_exploit_fraction = alpha;
}

void parse_cost(const json& doc, Scenario& s, Errors& errs) {
    if (!doc.contains("cost")) return;
    const json& j = doc.at("cost");
    if (!expect_object(j, "cost", errs)) return;
    check_keys(j, "cost",
               {"friction", "min_effort", "speed", "opportunity", "effort_table",
                "affine_effort_law", "law_max_speed"},
               errs);
    const std::string friction = get_string(j, "cost", "friction", "dry", errs);
    if (friction == "dry")
        s.cost.friction = FrictionClass::Dry;
    else if (friction == "viscous")
        s.cost.friction = FrictionClass::Viscous;
    else if (friction == "table")
        s.cost.friction = FrictionClass::Table;
    else
        errs.add("cost.friction", "expected dry, viscous, or table");
    s.cost.min_effort = get_number(j, "cost", "min_effort", 1.0, errs);
    s.cost.speed = get_number(j, "cost", "speed", 1.0, errs);
    s.cost.opportunity = get_bool(j, "cost", "opportunity", false, errs);
    s.cost.affine_effort_law = get_bool(j, "cost", "affine_effort_law", false, errs);
    s.cost.law_max_speed = get_number(j, "cost", "law_max_speed", 1.0, errs);
    if (j.contains("effort_table")) {
        const auto table = get_matrix(j, "cost", "effort_table", errs);
        s.cost.effort_table.clear();
        for (const auto& row : table)
            for (double v : row) s.cost.effort_table.push_back(v);
        if (!table.empty() && table.size() != s.points.size())
            errs.add("cost.effort_table", "table size does not match point count");
    }
}

void parse_process(const json& doc, Scenario& s, double default_radius,
                   Errors& errs) {
    ProcessConfig& c = s.process;
    c.radius = default_radius;
    if (!doc.contains("process")) return;
    const json& j = doc.at("process");
    if (!expect_object(j, "process", errs)) return;
    check_keys(j, "process",
               {"mode", "radius", "policy", "max_steps", "alpha", "exploit_time",
                "explore_spend", "p", "q", "start"},
               errs);
    const std::string mode = get_string(j, "process", "mode", "improving-enough", errs);
    if (mode == "improving-enough")
        c.mode = ProcessMode::ImprovingEnough;
    else if (mode == "muddling-through")
        c.mode = ProcessMode::MuddlingThrough;
    else
        errs.add("process.mode", "expected improving-enough or muddling-through");
    const std::string policy = get_string(j, "process", "policy", "max-gain", errs);
    if (policy == "max-gain")
        c.policy = SelectionPolicy::MaxGain;
    else if (policy == "min-distance")
        c.policy = SelectionPolicy::MinDistance;
    else if (policy == "first-found")
        c.policy = SelectionPolicy::FirstFound;
    else
        errs.add("process.policy", "expected max-gain, min-distance, or first-found");
    c.radius = get_number(j, "process", "radius", default_radius, errs);
    c.max_steps =
        static_cast<int>(get_number(j, "process", "max_steps", 1000.0, errs));
    c.explore_spend = get_number(j, "process", "explore_spend", 1.0, errs);
    c.p = get_number(j, "process", "p", 0.5, errs);
    c.q = get_number(j, "process", "q", 0.5, errs);
    c.start = get_state(j, "process", "start", s.points, 0, errs);
    // alpha and exploit_time were resolved with the profile bounds.
}

void parse_constraints(const json& arr, Scenario& s, Errors& errs) {
    std::vector<ConstraintSet> parts;
    std::size_t idx = 0;
    for (const json& e : arr) {
        const std::string path = "lsp.constraints[" + std::to_string(idx++) + "]";
        if (!expect_object(e, path, errs)) continue;
        const std::string kind = get_string(e, path, "kind", "", errs);
        try {
            if (kind == "box") {
                check_keys(e, path, {"kind", "lower", "upper"}, errs);
                parts.push_back(ConstraintSet::box(get_vector(e, path, "lower", errs),
                                                   get_vector(e, path, "upper", errs)));
            } else if (kind == "ball") {
                check_keys(e, path, {"kind", "center", "radius"}, errs);
                parts.push_back(
                    ConstraintSet::ball(get_vector(e, path, "center", errs),
                                        get_number(e, path, "radius", 0.0, errs)));
            } else if (kind == "halfspace") {
                check_keys(e, path, {"kind", "normal", "offset"}, errs);
                parts.push_back(
                    ConstraintSet::halfspace(get_vector(e, path, "normal", errs),
                                             get_number(e, path, "offset", 0.0, errs)));
            } else {
                errs.add(path + ".kind", "expected box, ball, or halfspace");
            }
        } catch (const std::exception& ex) {
            errs.add(path, ex.what());
        }
    }
    if (parts.empty()) {
        errs.add("lsp.constraints", "needs at least one constraint");
        return;
    }
    for (const ConstraintSet& p : parts)
        if (p.dimension() != static_cast<std::size_t>(s.euclidean.dimension))
            errs.add("lsp.constraints", "constraint dimension mismatch");
    s.constraints = parts.size() == 1 ? parts.front()
                                      : ConstraintSet::intersection(std::move(parts));
}

void parse_lsp(const json& doc, Scenario& s, Errors& errs) {
    if (!doc.contains("lsp")) {
        errs.add("lsp", "euclidean scenarios need an lsp block");
        return;
    }
    const json& j = doc.at("lsp");
    if (!expect_object(j, "lsp", errs)) return;
    check_keys(j, "lsp",
               {"theta", "radius", "eps_n", "x0", "constraints", "inner", "stop",
                "probe_step", "opial_point"},
               errs);
    s.lsp.theta = get_number(j, "lsp", "theta", 1.0, errs);
    s.lsp.radius = get_number(j, "lsp", "radius", 1.0, errs);
    s.lsp.eps_n = get_number(j, "lsp", "eps_n", 0.0, errs);
    s.lsp.probe_step = get_number(j, "lsp", "probe_step", 1e-3, errs);
    if (!(s.lsp.theta > 0)) errs.add("lsp.theta", "must be positive");
    if (!(s.lsp.radius > 0)) errs.add("lsp.radius", "must be positive");
    if (s.lsp.eps_n < 0) errs.add("lsp.eps_n", "must be nonnegative");

    s.lsp_start = get_vector(j, "lsp", "x0", errs);
    if (s.lsp_start.size() != static_cast<std::size_t>(s.euclidean.dimension))
        errs.add("lsp.x0", "dimension mismatch");

    if (j.contains("constraints") && j.at("constraints").is_array())
        parse_constraints(j.at("constraints"), s, errs);
    else
        errs.add("lsp.constraints", "missing constraint list");

    if (j.contains("inner")) {
        const json& in = j.at("inner");
        if (expect_object(in, "lsp.inner", errs)) {
            check_keys(in, "lsp.inner",
                       {"step_init", "backtrack", "restarts", "max_iterations",
                        "tolerance"},
                       errs);
            s.lsp.inner.step_init =
                get_number(in, "lsp.inner", "step_init", 1.0, errs);
            s.lsp.inner.backtrack =
                get_number(in, "lsp.inner", "backtrack", 0.5, errs);
            s.lsp.inner.restarts = static_cast<int>(
                get_number(in, "lsp.inner", "restarts", 3.0, errs));
            s.lsp.inner.max_iterations = static_cast<int>(
                get_number(in, "lsp.inner", "max_iterations", 2000.0, errs));
            s.lsp.inner.tolerance =
                get_number(in, "lsp.inner", "tolerance", 1e-11, errs);
            if (!(s.lsp.inner.tolerance > 0))
                errs.add("lsp.inner.tolerance", "must be positive");
            if (!(s.lsp.inner.backtrack > 0) || !(s.lsp.inner.backtrack < 1))
                errs.add("lsp.inner.backtrack", "must lie in (0, 1)");
        }
    }
    if (j.contains("stop")) {
        const json& st = j.at("stop");
        if (expect_object(st, "lsp.stop", errs)) {
            check_keys(st, "lsp.stop",
                       {"step_tolerance", "residual_tolerance", "max_outer"}, errs);
            s.lsp.stop.step_tolerance =
                get_number(st, "lsp.stop", "step_tolerance", 1e-8, errs);
            s.lsp.stop.residual_tolerance =
                get_number(st, "lsp.stop", "residual_tolerance", 1e-6, errs);
            s.lsp.stop.max_outer = static_cast<int>(
                get_number(st, "lsp.stop", "max_outer", 1000.0, errs));
            if (!(s.lsp.stop.step_tolerance > 0))
                errs.add("lsp.stop.step_tolerance", "must be positive");
            if (!(s.lsp.stop.residual_tolerance > 0))
                errs.add("lsp.stop.residual_tolerance", "must be positive");
        }
    }
    if (j.contains("opial_point")) {
        s.lsp.opial_point = get_vector(j, "lsp", "opial_point", errs);
        if (s.lsp.opial_point->size() !=
            static_cast<std::size_t>(s.euclidean.dimension))
            errs.add("lsp.opial_point", "dimension mismatch");
    }
}

// Accepted builtin gains and their parameters:
//   neg_sq_norm      {center}          g(y) = -||y - center||^2
//   diag_quadratic   {a, b, c}         g(y) = c - sum a_i (y_i - b_i)^2
//   inv_sq_norm      {center}          g(y) = 1 / (1 + ||y - center||^2)
//   linear           {c}               g(y) = dot(c, y)
//   dense_quadratic  {q, b, c}         g(y) = c + dot(b, y) - y'Qy / 2
void parse_gain_builtin(const json& gain, Scenario& s, Errors& errs) {
    const std::size_t p = static_cast<std::size_t>(s.euclidean.dimension);
    const std::string path = "space.gain";
    s.gain_builtin = get_string(gain, path, "builtin", "", errs);
    auto need_dim = [&](const std::vector<double>& v, const char* key) {
        if (v.size() != p) errs.add(path + "." + key, "dimension mismatch");
    };
    if (s.gain_builtin == "neg_sq_norm" || s.gain_builtin == "inv_sq_norm") {
        check_keys(gain, path, {"builtin", "center"}, errs);
        if (gain.contains("center")) {
            s.gain_vec_b = get_vector(gain, path, "center", errs);
            need_dim(s.gain_vec_b, "center");
        } else {
            s.gain_vec_b.assign(p, 0.0);
        }
    } else if (s.gain_builtin == "diag_quadratic") {
        check_keys(gain, path, {"builtin", "a", "b", "c"}, errs);
        s.gain_vec_a = get_vector(gain, path, "a", errs);
        s.gain_vec_b = get_vector(gain, path, "b", errs);
        s.gain_scalar = get_number(gain, path, "c", 0.0, errs);
        need_dim(s.gain_vec_a, "a");
        need_dim(s.gain_vec_b, "b");
        for (double a : s.gain_vec_a)
            if (!(a > 0)) errs.add(path + ".a", "curvatures must be positive");
    } else if (s.gain_builtin == "linear") {
        check_keys(gain, path, {"builtin", "c"}, errs);
        s.gain_vec_a = get_vector(gain, path, "c", errs);
        need_dim(s.gain_vec_a, "c");
    } else if (s.gain_builtin == "dense_quadratic") {
        check_keys(gain, path, {"builtin", "q", "b", "c"}, errs);
        s.gain_mat = get_matrix(gain, path, "q", errs);
        s.gain_vec_b = get_vector(gain, path, "b", errs);
        s.gain_scalar = get_number(gain, path, "c", 0.0, errs);
        need_dim(s.gain_vec_b, "b");
        if (s.gain_mat.size() != p)
            errs.add(path + ".q", "matrix must be dimension x dimension");
        for (const auto& row : s.gain_mat)
            if (row.size() != p)
                errs.add(path + ".q", "matrix must be dimension x dimension");
    } else {
        errs.add(path + ".builtin", "unknown builtin gain '" + s.gain_builtin + "'");
    }
}

} // namespace

GainFunction Scenario::make_smooth_gain() const {
    const std::size_t p = static_cast<std::size_t>(euclidean.dimension);
    if (gain_builtin == "neg_sq_norm") {
        const std::vector<double> c = gain_vec_b;
        return GainFunction::smooth(
            [c](const std::vector<double>& y) {
                double s = 0.0;
                for (std::size_t i = 0; i < y.size(); ++i)
                    s += (y[i] - c[i]) * (y[i] - c[i]);
                return -s;
            },
            [c](const std::vector<double>& y) {
                std::vector<double> g(y.size());
                for (std::size_t i = 0; i < y.size(); ++i)
                    g[i] = -2.0 * (y[i] - c[i]);
                return g;
            },
            gbar_supplied);
    }
    if (gain_builtin == "inv_sq_norm") {
        const std::vector<double> c = gain_vec_b;
        return GainFunction::smooth(
            [c](const std::vector<double>& y) {
                double s = 0.0;
                for (std::size_t i = 0; i < y.size(); ++i)
                    s += (y[i] - c[i]) * (y[i] - c[i]);
                return 1.0 / (1.0 + s);
            },
            [c](const std::vector<double>& y) {
                double s = 0.0;
                for (std::size_t i = 0; i < y.size(); ++i)
                    s += (y[i] - c[i]) * (y[i] - c[i]);
                const double f = 1.0 / ((1.0 + s) * (1.0 + s));
                std::vector<double> g(y.size());
                for (std::size_t i = 0; i < y.size(); ++i)
                    g[i] = -2.0 * (y[i] - c[i]) * f;
                return g;
            },
            gbar_supplied);
    }
    if (gain_builtin == "diag_quadratic") {
        const std::vector<double> a = gain_vec_a, b = gain_vec_b;
        const double c0 = gain_scalar;
        return GainFunction::smooth(
            [a, b, c0](const std::vector<double>& y) {
                double s = c0;
                for (std::size_t i = 0; i < y.size(); ++i)
                    s -= a[i] * (y[i] - b[i]) * (y[i] - b[i]);
                return s;
            },
            [a, b](const std::vector<double>& y) {
                std::vector<double> g(y.size());
                for (std::size_t i = 0; i < y.size(); ++i)
                    g[i] = -2.0 * a[i] * (y[i] - b[i]);
                return g;
            },
            gbar_supplied);
    }
    if (gain_builtin == "linear") {
        const std::vector<double> c = gain_vec_a;
        return GainFunction::smooth(
            [c](const std::vector<double>& y) {
                double s = 0.0;
                for (std::size_t i = 0; i < y.size(); ++i) s += c[i] * y[i];
                return s;
            },
            [c](const std::vector<double>&) { return c; }, gbar_supplied);
    }
    if (gain_builtin == "dense_quadratic") {
        const std::vector<std::vector<double>> q = gain_mat;
        const std::vector<double> b = gain_vec_b;
        const double c0 = gain_scalar;
        return GainFunction::smooth(
            [q, b, c0, p](const std::vector<double>& y) {
                double s = c0;
                for (std::size_t i = 0; i < p; ++i) {
                    s += b[i] * y[i];
                    for (std::size_t j = 0; j < p; ++j)
                        s -= 0.5 * y[i] * q[i][j] * y[j];
                }
                return s;
            },
            [q, b, p](const std::vector<double>& y) {
                std::vector<double> g(p);
                for (std::size_t i = 0; i < p; ++i) {
                    g[i] = b[i];
                    for (std::size_t j = 0; j < p; ++j)
                        g[i] -= 0.5 * (q[i][j] + q[j][i]) * y[j];
                }
                return g;
            },
            gbar_supplied);
    }
    throw std::runtime_error("unknown builtin gain '" + gain_builtin + "'");
}

double Scenario::gbar() const {
    if (gbar_supplied) return *gbar_supplied;
    if (engine == Engine::FiniteProcess && !gain_values.empty())
        return *std::max_element(gain_values.begin(), gain_values.end());
    throw std::runtime_error("no gain upper bound available for this scenario");
}

ParseResult parse_scenario(const nlohmann::json& doc) {
    ParseResult result;
    Errors errs;
    if (!doc.is_object()) {
        result.errors = {"document: expected a JSON object"};
        return result;
    }
    check_keys(doc, "",
               {"name", "seed", "space", "profile", "cost", "process", "lsp",
                "ekeland", "verify", "gbar", "output"},
               errs);

    Scenario s;
    s.name = get_string(doc, "", "name", "scenario", errs);
    if (doc.contains("seed")) {
        const json& v = doc.at("seed");
        if (v.is_number_unsigned() || v.is_number_integer())
            s.seed = v.get<std::uint64_t>();
        else
            errs.add("seed", "expected an unsigned integer");
    }
    s.lsp.seed = s.seed;

    if (!doc.contains("space")) {
        errs.add("space", "missing required block");
        result.errors = errs.list;
        return result;
    }
    const json& space = doc.at("space");
    if (!expect_object(space, "space", errs)) {
        result.errors = errs.list;
        return result;
    }
    const std::string type = get_string(space, "space", "type", "finite", errs);

    if (type == "finite") {
        s.engine = Scenario::Engine::FiniteProcess;
        check_keys(space, "space", {"type", "points", "dist", "g"}, errs);
        if (space.contains("points") && space.at("points").is_array()) {
            for (const json& p : space.at("points")) {
                if (p.is_string())
                    s.points.push_back(p.get<std::string>());
                else
                    errs.add("space.points", "expected string labels");
            }
        } else {
            errs.add("space.points", "missing point labels");
        }
        s.dist = get_matrix(space, "space", "dist", errs);
        s.gain_values = get_vector(space, "space", "g", errs);
        if (!s.points.empty() && s.gain_values.size() != s.points.size())
            errs.add("space.g", "gain table size does not match point count");
        if (!s.points.empty() && !s.dist.empty() && s.dist.size() != s.points.size())
            errs.add("space.dist", "row count does not match point count");
        if (doc.contains("lsp"))
            errs.add("lsp", "conflicts with the finite engine; remove one of the two");

        parse_cost(doc, s, errs);
        parse_profile(doc, s, errs);
        double default_radius = 1.0;
        if (validate_metric(s.dist).valid() && !s.dist.empty())
            default_radius = FiniteMetricSpace(s.points, s.dist).diameter();
        parse_process(doc, s, default_radius, errs);

        try {
            s.profile.validate();
        } catch (const std::exception& ex) {
            errs.add("profile", ex.what());
        }
        try {
            s.cost.validate(s.points.size());
        } catch (const std::exception& ex) {
            errs.add("cost", ex.what());
        }
        try {
            const double g0 =
                s.process.start < s.gain_values.size() ? s.gain_values[s.process.start]
                                                       : 0.0;
            satisficing_theta(s.profile.bounds, s.cost.opportunity, g0);
        } catch (const std::exception& ex) {
            errs.add("profile.bounds", ex.what());
        }
        if (!(s.process.p > 0) || s.process.p > 1)
            errs.add("process.p", "must lie in (0, 1]");
        if (!(s.process.q > 0) || !(s.process.q < 1))
            errs.add("process.q", "must lie in (0, 1)");
        if (!(s.process.radius > 0)) errs.add("process.radius", "must be positive");
        if (s.process.max_steps < 1) errs.add("process.max_steps", "must be >= 1");
        if (s.process.alpha < s.profile.bounds.min_exploit_fraction ||
            s.process.alpha > 1.0)
            errs.add("process.alpha", "outside [min_exploit_fraction, 1]");
        if (!(s.process.exploit_time > 0) ||
            s.process.exploit_time > s.profile.bounds.max_exploit_time)
            errs.add("process.exploit_time", "outside (0, max_exploit_time]");
    } else if (type == "euclidean") {
        s.engine = Scenario::Engine::EuclideanLsp;
        check_keys(space, "space", {"type", "dimension", "gain"}, errs);
        s.euclidean.dimension =
            static_cast<int>(get_number(space, "space", "dimension", 1.0, errs));
        if (s.euclidean.dimension < 1)
            errs.add("space.dimension", "must be at least 1");
        if (space.contains("gain") && space.at("gain").is_object()) {
            parse_gain_builtin(space.at("gain"), s, errs);
        } else {
            errs.add("space.gain", "missing builtin gain block");
        }
        if (doc.contains("process"))
            errs.add("process",
                     "conflicts with the euclidean engine; remove one of the two");
        parse_lsp(doc, s, errs);
    } else {
        errs.add("space.type", "expected finite or euclidean");
    }

    if (doc.contains("ekeland")) {
        const json& j = doc.at("ekeland");
        if (expect_object(j, "ekeland", errs)) {
            check_keys(j, "ekeland", {"theta", "epsilon", "start"}, errs);
            EkelandParams ek;
            ek.theta = get_number(j, "ekeland", "theta", 1.0, errs);
            ek.epsilon = get_number(j, "ekeland", "epsilon", 1.0, errs);
            ek.start = get_state(j, "ekeland", "start", s.points, 0, errs);
            if (!(ek.theta > 0)) errs.add("ekeland.theta", "must be positive");
            if (!(ek.epsilon > 0)) errs.add("ekeland.epsilon", "must be positive");
            s.ekeland = ek;
        }
    }
    if (doc.contains("verify")) {
        const json& j = doc.at("verify");
        if (expect_object(j, "verify", errs)) {
            check_keys(j, "verify", {"budget", "shrinking", "time"}, errs);
            s.verify.budget = get_bool(j, "verify", "budget", true, errs);
            s.verify.shrinking = get_bool(j, "verify", "shrinking", true, errs);
            s.verify.time = get_bool(j, "verify", "time", true, errs);
        }
    }
    if (doc.contains("gbar"))
        s.gbar_supplied = get_number(doc, "", "gbar", 0.0, errs);
    if (doc.contains("output")) {
        const json& j = doc.at("output");
        if (expect_object(j, "output", errs)) {
            check_keys(j, "output", {"dir"}, errs);
            s.output_dir = get_string(j, "output", "dir", ".", errs);
        }
    }

    result.errors = errs.list;
    if (result.errors.empty()) result.scenario = std::move(s);
    return result;
}

ParseResult parse_scenario_text(const std::string& text) {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) {
        ParseResult r;
        r.errors = {"document: not valid JSON"};
        return r;
    }
    return parse_scenario(doc);
}

} // namespace wtm
