#include "fpls/diagnostics.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace fpls {

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

ConservedTotals conserved_totals(const PlasmaState& state) {
    const int n = state.grid.n_per_axis();
    const double vol = state.grid.cell_volume();
    ConservedTotals out;
    out.species_mass.resize(state.species_count());
    Kahan px, py, pz, en;
    for (std::size_t i = 0; i < state.species_count(); ++i) {
        const auto& f = state.distributions[i];
        const double m = state.species[i].mass;
        out.species_mass[i] = state.grid.integrate(f);
        for (int c = 0; c < n; ++c)
            for (int b = 0; b < n; ++b)
                for (int a = 0; a < n; ++a) {
                    const std::size_t q = state.grid.index(a, b, c);
                    const std::size_t r = state.grid.reflect(q);
                    if (q > r) continue;
                    const Vec3 v = state.grid.center(a, b, c);
                    const double fp = f[q], fm = f[r];
                    px.add(m * v.x * (fp - fm));
                    py.add(m * v.y * (fp - fm));
                    pz.add(m * v.z * (fp - fm));
                    en.add(m * norm2(v) * (fp + fm));
                }
    }
    out.momentum = Vec3{px.sum, py.sum, pz.sum} * vol;
    out.energy = en.sum * vol;
    return out;
}

double entropy(const PlasmaState& state) {
    Kahan acc;
    for (const auto& f : state.distributions)
        for (double v : f)
            if (v > 0.0) acc.add(v * std::log(v));
    return acc.sum * state.grid.cell_volume();
}

double relative_entropy(const PlasmaState& state, std::span<const Field> equilibrium) {
    if (equilibrium.size() != state.species_count())
        throw std::invalid_argument("relative_entropy: equilibrium count mismatch");
    Kahan acc;
    for (std::size_t i = 0; i < state.species_count(); ++i) {
        const auto& f = state.distributions[i];
        const auto& M = equilibrium[i];
        for (std::size_t q = 0; q < f.size(); ++q) {
            if (!(M[q] > 0.0))
                throw std::invalid_argument("relative_entropy: equilibrium not positive");
            if (f[q] > 0.0)
                acc.add(f[q] * std::log(f[q] / M[q]) - f[q] + M[q]);
            else
                acc.add(M[q]);
        }
    }
    return acc.sum * state.grid.cell_volume();
}

TemperatureFloorReport temperature_floor_monitor(std::span<const double> min_T_history,
                                                 double analytic_candidate) {
    TemperatureFloorReport out;
    out.analytic_candidate = analytic_candidate;
    if (min_T_history.empty()) {
        out.positive = false;
        return out;
    }
    out.min_over_time = min_T_history[0];
    for (double t : min_T_history) out.min_over_time = std::min(out.min_over_time, t);
    out.positive = out.min_over_time > 0.0;
    return out;
}

double temperature_floor_candidate(const PlasmaState& state) {
    // lambda = [C0 exp(-2 C1/n_i)]^{1/3}, floor ~ m_i lambda^2 / 6, with
    // C0 the (1+f) log(1+f) entropy integral of the initial state and
    // C1 = C0 (1 + 4 pi / 3). Constants are existential; this is the
    // shape of the bound, reported for context only.
    Kahan c0;
    for (const auto& f : state.distributions)
        for (double v : f)
            if (v > 0.0) c0.add((1.0 + v) * std::log1p(v));
    const double C0 = c0.sum * state.grid.cell_volume();
    const double C1 = C0 * (1.0 + 4.0 * std::numbers::pi / 3.0);

    double floor = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < state.species_count(); ++i) {
        const double ni = state.grid.integrate(state.distributions[i]);
        const double lambda = std::cbrt(C0 * std::exp(-2.0 * C1 / ni));
        floor = std::min(floor, state.species[i].mass * lambda * lambda / 6.0);
    }
    return floor;
}

} // namespace fpls
