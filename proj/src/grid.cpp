#include "fpls/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fpls {

VelocityGrid::VelocityGrid(int n_per_axis, double extent)
    : n_(n_per_axis), extent_(extent), h_(2.0 * extent / n_per_axis) {
    if (n_per_axis < 8)
        throw std::invalid_argument("grid: n_per_axis must be >= 8, got " +
                                    std::to_string(n_per_axis));
    if (n_per_axis % 2 != 0)
        throw std::invalid_argument("grid: n_per_axis must be even, got " +
                                    std::to_string(n_per_axis));
    if (!(extent > 0.0) || !std::isfinite(extent))
        throw std::invalid_argument("grid: extent must be positive and finite");
}

std::size_t VelocityGrid::reflect(std::size_t i) const {
    const std::size_t n = static_cast<std::size_t>(n_);
    const std::size_t a = i % n;
    const std::size_t b = (i / n) % n;
    const std::size_t c = i / (n * n);
    return (n - 1 - a) + n * ((n - 1 - b) + n * (n - 1 - c));
}

namespace {

struct Kahan {
    double sum = 0.0, comp = 0.0;
    void add(double v) {
        const double y = v - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

} // namespace

double VelocityGrid::integrate(std::span<const double> field) const {
    if (field.size() != total_cells())
        throw std::invalid_argument("integrate: field size mismatch");
    Kahan acc;
    for (std::size_t i = 0; i < field.size(); ++i) {
        const std::size_t r = reflect(i);
        if (i > r) continue;
        const double a = field[i];
        const double b = field[r];
        if (!std::isfinite(a) || !std::isfinite(b))
            throw std::invalid_argument("integrate: non-finite field value");
        acc.add(a + b);
    }
    return acc.sum * cell_volume();
}

double VelocityGrid::integrate_weighted(std::span<const double> field,
                                        std::span<const double> w) const {
    if (field.size() != total_cells() || w.size() != total_cells())
        throw std::invalid_argument("integrate_weighted: size mismatch");
    Kahan acc;
    for (std::size_t i = 0; i < field.size(); ++i) {
        const std::size_t r = reflect(i);
        if (i > r) continue;
        acc.add(field[i] * w[i] + field[r] * w[r]);
    }
    return acc.sum * cell_volume();
}

} // namespace fpls
