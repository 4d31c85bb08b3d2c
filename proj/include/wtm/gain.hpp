// Per-unit-of-time gain functions: a value table over a finite point set, or
// a smooth callable with gradient on Euclidean space. Either form carries its
// upper bound; an optional gross-utility/maintenance-cost split is validated
// at construction.
#pragma once

#include <functional>
#include <optional>
#include <vector>

namespace wtm {

class GainFunction {
public:
    using Evaluator = std::function<double(const std::vector<double>&)>;
    using Gradient = std::function<std::vector<double>(const std::vector<double>&)>;

    enum class Mode { Table, Smooth };

    // Table over a finite space; the upper bound is the exact maximum.
    static GainFunction table(std::vector<double> values);
    // Table given as gross utility minus maintenance cost, g = phi - m.
    static GainFunction table_decomposed(std::vector<double> gross,
                                         std::vector<double> maintenance);
    // Smooth gain on Euclidean space; the upper bound is a scenario input.
    static GainFunction smooth(Evaluator value, Gradient gradient,
                               std::optional<double> upper_bound = std::nullopt);

    Mode mode() const { return mode_; }

    // Table access.
    double at(std::size_t i) const { return values_[i]; }
    std::size_t size() const { return values_.size(); }
    const std::vector<double>& values() const { return values_; }

    // Smooth access.
    double value(const std::vector<double>& x) const { return value_(x); }
    std::vector<double> gradient(const std::vector<double>& x) const {
        return gradient_(x);
    }

    // Supremum over the feasible set: exact on tables, supplied on smooth gains.
    std::optional<double> upper_bound() const { return upper_bound_; }

private:
    Mode mode_ = Mode::Table;
    std::vector<double> values_;
    Evaluator value_;
    Gradient gradient_;
    std::optional<double> upper_bound_;
};

// Max-norm gap between the supplied gradient and central finite differences
// with step h. Throws std::invalid_argument unless g is smooth and h > 0, and
// std::runtime_error on non-finite evaluations.
double gradient_check(const GainFunction& g, const std::vector<double>& point, double h);

} // namespace wtm
