// Finite metric spaces with validated distance tables, plus the trivial
// Euclidean space descriptor used by the continuous solver.
#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace wtm {

// One distance-axiom violation found by validate_metric.
struct MetricViolation {
    enum class Kind {
        NotSquare,
        NegativeEntry,
        NonZeroDiagonal,
        ZeroOffDiagonal,
        Asymmetry,
        TriangleInequality,
    };
    Kind kind;
    std::size_t i = 0, j = 0, k = 0; // offending indices (k only for triangles)
    double lhs = 0.0, rhs = 0.0;     // violated comparison, lhs vs rhs
    std::string message() const;
};

struct MetricValidationReport {
    std::vector<MetricViolation> violations;
    bool valid() const { return violations.empty(); }
};

// Checks every distance axiom on a raw square table: zero diagonal, positive
// off-diagonal, symmetry, and the triangle inequality over all triples.
// An empty report means the table is a metric.
MetricValidationReport validate_metric(const std::vector<std::vector<double>>& dist);

class FiniteMetricSpace {
public:
    // The table is stored as given; callers that accept untrusted input run
    // validate_metric first. Throws std::invalid_argument on a non-square
    // table or a label/table size mismatch.
    FiniteMetricSpace(std::vector<std::string> labels,
                      const std::vector<std::vector<double>>& dist);

    std::size_t size() const { return labels_.size(); }
    double distance(std::size_t i, std::size_t j) const {
        return dist_[i * labels_.size() + j];
    }
    const std::string& label(std::size_t i) const { return labels_[i]; }
    const std::vector<std::string>& labels() const { return labels_; }

    // Largest pairwise distance.
    double diameter() const;

    MetricValidationReport validate() const;

private:
    std::vector<std::string> labels_;
    std::vector<double> dist_; // row-major
};

// A Euclidean state space of fixed dimension; distance is the 2-norm.
struct EuclideanSpace {
    int dimension = 1;
};

double euclidean_distance(const std::vector<double>& x, const std::vector<double>& y);
double euclidean_norm(const std::vector<double>& x);

} // namespace wtm
