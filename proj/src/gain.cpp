#include "wtm/gain.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wtm {

GainFunction GainFunction::table(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("gain table is empty");
    GainFunction g;
    g.mode_ = Mode::Table;
    g.upper_bound_ = *std::max_element(values.begin(), values.end());
    g.values_ = std::move(values);
    return g;
}

GainFunction GainFunction::table_decomposed(std::vector<double> gross,
                                            std::vector<double> maintenance) {
    if (gross.size() != maintenance.size())
        throw std::invalid_argument("gross/maintenance tables differ in size");
    std::vector<double> values(gross.size());
    for (std::size_t i = 0; i < gross.size(); ++i)
        values[i] = gross[i] - maintenance[i];
    return table(std::move(values));
}

GainFunction GainFunction::smooth(Evaluator value, Gradient gradient,
                                  std::optional<double> upper_bound) {
    if (!value || !gradient)
        throw std::invalid_argument("smooth gain needs value and gradient callables");
    GainFunction g;
    g.mode_ = Mode::Smooth;
    g.value_ = std::move(value);
    g.gradient_ = std::move(gradient);
    g.upper_bound_ = upper_bound;
    return g;
}

double gradient_check(const GainFunction& g, const std::vector<double>& point,
                      double h) {
    if (g.mode() != GainFunction::Mode::Smooth)
        throw std::invalid_argument("gradient_check needs a smooth gain");
    if (!(h > 0.0)) throw std::invalid_argument("finite-difference step must be > 0");

    const std::vector<double> grad = g.gradient(point);
    double residual = 0.0;
    std::vector<double> probe = point;
    for (std::size_t i = 0; i < point.size(); ++i) {
        probe[i] = point[i] + h;
        const double fp = g.value(probe);
        probe[i] = point[i] - h;
        const double fm = g.value(probe);
        probe[i] = point[i];
        if (!std::isfinite(fp) || !std::isfinite(fm))
            throw std::runtime_error("gain evaluated to a non-finite value");
        const double fd = (fp - fm) / (2.0 * h);
        residual = std::max(residual, std::abs(fd - grad[i]));
    }
    return residual;
}

} // namespace wtm
