#include "wtm/metric_space.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace wtm {

std::string MetricViolation::message() const {
    char buf[160];
    switch (kind) {
    case Kind::NotSquare:
        std::snprintf(buf, sizeof buf, "row %zu has %zu entries, expected %zu",
                      i, j, k);
        break;
    case Kind::NegativeEntry:
        std::snprintf(buf, sizeof buf, "dist[%zu][%zu] = %g is negative", i, j, lhs);
        break;
    case Kind::NonZeroDiagonal:
        std::snprintf(buf, sizeof buf, "dist[%zu][%zu] = %g, diagonal must be 0",
                      i, i, lhs);
        break;
    case Kind::ZeroOffDiagonal:
        std::snprintf(buf, sizeof buf,
                      "dist[%zu][%zu] = 0 but points differ", i, j);
        break;
    case Kind::Asymmetry:
        std::snprintf(buf, sizeof buf, "dist[%zu][%zu] = %g != dist[%zu][%zu] = %g",
                      i, j, lhs, j, i, rhs);
        break;
    case Kind::TriangleInequality:
        std::snprintf(buf, sizeof buf,
                      "triangle violated at (%zu,%zu,%zu): %g > %g", i, j, k, lhs,
                      rhs);
        break;
    }
    return buf;
}

MetricValidationReport validate_metric(const std::vector<std::vector<double>>& dist) {
    MetricValidationReport report;
    const std::size_t n = dist.size();
    bool square = true;
    for (std::size_t i = 0; i < n; ++i) {
        if (dist[i].size() != n) {
            report.violations.push_back(
                {MetricViolation::Kind::NotSquare, i, dist[i].size(), n, 0.0, 0.0});
            square = false;
        }
    }
    if (!square) return report; // index-based checks need a square table

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double d = dist[i][j];
            if (!(d >= 0.0) || !std::isfinite(d)) {
                report.violations.push_back(
                    {MetricViolation::Kind::NegativeEntry, i, j, 0, d, 0.0});
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (dist[i][i] != 0.0) {
            report.violations.push_back(
                {MetricViolation::Kind::NonZeroDiagonal, i, i, 0, dist[i][i], 0.0});
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (dist[i][j] == 0.0 || dist[j][i] == 0.0) {
                report.violations.push_back(
                    {MetricViolation::Kind::ZeroOffDiagonal, i, j, 0, 0.0, 0.0});
            }
            if (dist[i][j] != dist[j][i]) {
                report.violations.push_back({MetricViolation::Kind::Asymmetry, i, j,
                                             0, dist[i][j], dist[j][i]});
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            for (std::size_t k = 0; k < n; ++k) {
                if (k == i || k == j) continue;
                const double direct = dist[i][k];
                const double via = dist[i][j] + dist[j][k];
                if (direct > via) {
                    report.violations.push_back(
                        {MetricViolation::Kind::TriangleInequality, i, j, k, direct,
                         via});
                }
            }
        }
    }
    return report;
}

FiniteMetricSpace::FiniteMetricSpace(std::vector<std::string> labels,
                                     const std::vector<std::vector<double>>& dist)
    : labels_(std::move(labels)) {
    const std::size_t n = labels_.size();
    if (dist.size() != n)
        throw std::invalid_argument("distance table size does not match point count");
    dist_.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        if (dist[i].size() != n)
            throw std::invalid_argument("distance table is not square");
        for (std::size_t j = 0; j < n; ++j) dist_[i * n + j] = dist[i][j];
    }
}

double FiniteMetricSpace::diameter() const {
    double d = 0.0;
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            d = std::max(d, distance(i, j));
    return d;
}

MetricValidationReport FiniteMetricSpace::validate() const {
    const std::size_t n = size();
    std::vector<std::vector<double>> table(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) table[i][j] = distance(i, j);
    return validate_metric(table);
}

double euclidean_distance(const std::vector<double>& x, const std::vector<double>& y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - y[i];
        s += d * d;
    }
    return std::sqrt(s);
}

double euclidean_norm(const std::vector<double>& x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

} // namespace wtm
