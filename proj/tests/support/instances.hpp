// Shared fixtures and random instance generators for the test suites. Edge
// weights are dyadic rationals so path sums stay exact in double precision
// and triangle checks hold with no tolerance.
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "wtm/behavior.hpp"
#include "wtm/dynamics.hpp"
#include "wtm/gain.hpp"
#include "wtm/metric_space.hpp"
#include "wtm/rng.hpp"

namespace wtm::testing {

inline std::vector<std::string> index_labels(std::size_t n) {
    std::vector<std::string> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = std::to_string(i);
    return labels;
}

// Three points on a line at coordinates 0, 1, 2.
inline std::vector<std::vector<double>> line3_table() {
    return {{0, 1, 2}, {1, 0, 1}, {2, 1, 0}};
}

inline FiniteMetricSpace line3_space() {
    return {index_labels(3), line3_table()};
}

// The tie instance: gains 0, 2, 3 on the 3-point line; with theta = 1 the
// classifications are NotRest, WeakOnly, Strong.
inline GainFunction t3_gain() { return GainFunction::table({0, 2, 3}); }

// The gap instance: gains 0, 0.5, 0.9 on the same line; a worthwhile process
// with theta = 1 is stuck at 0 while hill climbing reaches the maximum.
inline GainFunction g3_gain() { return GainFunction::table({0, 0.5, 0.9}); }

// Improving character (delta = 1), xi = 1, all bounds tight at 1: the uniform
// transition ratio is exactly 1 and the pairwise ratios all equal it.
inline AgentProfile t3_profile() {
    AgentProfile p;
    p.satisfaction_weight = 0.0;
    p.disappointment_weight = 0.0;
    p.utility_weight = 1.0;
    p.non_sacrificing_rate = 1.0;
    p.bounds.min_non_sacrificing = 1.0;
    p.bounds.min_effort = 1.0;
    p.bounds.max_exploit_time = 1.0;
    p.bounds.max_character = 1.0;
    p.bounds.min_exploit_fraction = 0.5;
    return p;
}

// Unit profile: all weights 1, xi = 1, bounds tight at 1 (so theta = 1).
inline AgentProfile unit_profile() {
    AgentProfile p;
    p.satisfaction_weight = 1.0;
    p.disappointment_weight = 1.0;
    p.utility_weight = 1.0;
    p.non_sacrificing_rate = 1.0;
    p.bounds.min_non_sacrificing = 1.0;
    p.bounds.min_effort = 1.0;
    p.bounds.max_exploit_time = 1.0;
    p.bounds.max_character = 3.0;
    p.bounds.min_exploit_fraction = 0.5;
    return p;
}

inline CostModel dry_cost(double effort = 1.0, double speed = 1.0) {
    CostModel m;
    m.friction = FrictionClass::Dry;
    m.min_effort = effort;
    m.speed = speed;
    return m;
}

// Dyadic step in [1/16, 1/2], an exact multiple of 1/64.
inline double dyadic_step(Rng& rng) {
    return static_cast<double>(4 + rng.uniform_index(29)) * 0.015625;
}

// Points on a line with dyadic gaps; distances are coordinate differences.
inline std::vector<std::vector<double>> random_line_metric(Rng& rng, std::size_t n) {
    std::vector<double> coord(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) coord[i] = coord[i - 1] + dyadic_step(rng);
    std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            d[i][j] = coord[i] > coord[j] ? coord[i] - coord[j] : coord[j] - coord[i];
    return d;
}

// Random tree with dyadic edge weights; distances are path sums.
inline std::vector<std::vector<double>> random_tree_metric(Rng& rng, std::size_t n) {
    std::vector<std::size_t> parent(n, 0);
    std::vector<double> weight(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) {
        parent[i] = rng.uniform_index(i);
        weight[i] = dyadic_step(rng);
    }
    // depth[i] = exact distance to the root; d(i,j) via lowest common ancestor.
    std::vector<double> depth(n, 0.0);
    std::vector<std::size_t> level(n, 0);
    for (std::size_t i = 1; i < n; ++i) {
        depth[i] = depth[parent[i]] + weight[i];
        level[i] = level[parent[i]] + 1;
    }
    auto dist = [&](std::size_t a, std::size_t b) {
        double d = 0.0;
        while (level[a] > level[b]) {
            d += weight[a];
            a = parent[a];
        }
        while (level[b] > level[a]) {
            d += weight[b];
            b = parent[b];
        }
        while (a != b) {
            d += weight[a] + weight[b];
            a = parent[a];
            b = parent[b];
        }
        return d;
    };
    std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) d[i][j] = d[j][i] = dist(i, j);
    return d;
}

inline std::vector<double> random_gain(Rng& rng, std::size_t n, double lo = 0.0,
                                       double hi = 10.0) {
    std::vector<double> g(n);
    for (double& v : g) v = rng.uniform(lo, hi);
    return g;
}

struct RandomInstance {
    FiniteMetricSpace space;
    GainFunction gain;
    AgentProfile profile;
    CostModel cost;
    double theta = 0.0; // satisficing ratio of the profile bounds
};

// Instance whose actual controls sit exactly at the enclosing bounds, so the
// pairwise worthwhile relation coincides with the uniform enclosing relation.
inline RandomInstance tight_instance(Rng& rng, std::size_t n, bool tree) {
    auto table = tree ? random_tree_metric(rng, n) : random_line_metric(rng, n);
    FiniteMetricSpace space(index_labels(n), table);
    GainFunction gain = GainFunction::table(random_gain(rng, n));

    AgentProfile profile;
    profile.satisfaction_weight = rng.uniform(0.0, 1.0);
    profile.disappointment_weight = rng.uniform(0.0, 1.0);
    profile.utility_weight = rng.uniform(0.1, 1.0);
    profile.non_sacrificing_rate = rng.uniform(0.5, 2.0);
    profile.bounds.min_non_sacrificing = profile.non_sacrificing_rate;
    profile.bounds.min_effort = rng.uniform(0.2, 1.5);
    profile.bounds.max_exploit_time = rng.uniform(0.5, 2.0);
    profile.bounds.max_character = profile.character_index();
    profile.bounds.min_exploit_fraction = 0.5;

    CostModel cost = dry_cost(profile.bounds.min_effort, 1.0);
    const double theta = satisficing_theta(profile.bounds, false);
    return {std::move(space), std::move(gain), profile, cost, theta};
}

// Instance whose actual controls sit strictly inside the bounds, so the
// worthwhile set is strictly dominated by the enclosing set.
inline RandomInstance slack_instance(Rng& rng, std::size_t n, bool tree) {
    RandomInstance inst = tight_instance(rng, n, tree);
    auto& b = inst.profile.bounds;
    b.min_non_sacrificing = inst.profile.non_sacrificing_rate * rng.uniform(0.3, 0.9);
    b.max_character = inst.profile.character_index() * rng.uniform(1.1, 2.0);
    b.max_exploit_time = rng.uniform(1.0, 1.5) * b.max_exploit_time;
    b.min_effort = inst.cost.min_effort * rng.uniform(0.3, 0.9);
    inst.theta = satisficing_theta(b, false);
    return inst;
}

inline ProcessConfig process_config(const RandomInstance& inst, ProcessMode mode,
                                    SelectionPolicy policy, std::size_t start) {
    ProcessConfig c;
    c.mode = mode;
    c.policy = policy;
    c.radius = inst.space.diameter() + 1.0; // explore enough
    c.max_steps = static_cast<int>(inst.space.size()) + 1;
    c.alpha = 0.5;
    c.exploit_time = inst.profile.bounds.max_exploit_time;
    c.p = 0.5;
    c.q = 0.5;
    c.start = start;
    return c;
}

} // namespace wtm::testing
