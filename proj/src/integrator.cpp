#include "fpls/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fpls/collision.hpp"
#include "fpls/parallel.hpp"

namespace fpls {

Scheme scheme_from_string(const std::string& name) {
    if (name == "explicit-rk4") return Scheme::explicit_rk4;
    if (name == "semi-implicit-split") return Scheme::semi_implicit_split;
    throw std::invalid_argument("unknown scheme '" + name +
                                "' (expected explicit-rk4 or semi-implicit-split)");
}

std::string to_string(Scheme s) {
    return s == Scheme::explicit_rk4 ? "explicit-rk4" : "semi-implicit-split";
}

double StableDt::value(Scheme scheme, double output_every) const {
    if (scheme == Scheme::explicit_rk4)
        return std::min({diffusion_cap, drift_cap, scaled_diffusion_cap});
    return std::min(output_every, relaxation_cap);
}

StableDt stable_dt(const PlasmaState& state, const CoefficientSet& coeffs, double safety) {
    const int s = coeffs.s;
    const double h = state.grid.spacing();
    const double L = state.grid.extent();

    double max_c_row = 0.0;          // max_i sum_j c_ji
    double max_scaled_row = 0.0;     // same with corner-face scale folded in
    double max_drift = 0.0;          // max |m_i (v_f - u_ji) / T_ji|
    double min_relax = std::numeric_limits<double>::infinity();
    for (int i = 0; i < s; ++i) {
        double row = 0.0, scaled_row = 0.0;
        for (int j = 0; j < s; ++j) {
            const double c = coeffs.c_at(j, i);
            const double T = coeffs.T_at(j, i);
            const double m = state.species[i].mass;
            const Vec3& u = coeffs.u_at(j, i);
            row += c;
            double a = 0.0;
            for (int d = 0; d < 3; ++d)
                a = std::max(a, m * ((L - h) + std::abs(u[d])) / T);
            max_drift = std::max(max_drift, a);
            scaled_row += c * bernoulli_mean(a * h);
            min_relax = std::min(min_relax, T / (2.0 * c * m));
        }
        max_c_row = std::max(max_c_row, row);
        max_scaled_row = std::max(max_scaled_row, scaled_row);
    }

    StableDt out;
    out.diffusion_cap = safety * h * h / (6.0 * max_c_row);
    out.scaled_diffusion_cap = safety * h * h / (6.0 * max_scaled_row);
    out.drift_cap = safety * h / max_drift;
    out.relaxation_cap = safety * min_relax;
    return out;
}

namespace {

struct AxisWalk {
    std::size_t lines, stride;
};

AxisWalk axis_walk(int axis, int n) {
    const std::size_t nn = static_cast<std::size_t>(n);
    return {nn * nn, axis == 0 ? 1 : (axis == 1 ? nn : nn * nn)};
}

std::size_t line_base(int axis, int n, std::size_t l) {
    const std::size_t nn = static_cast<std::size_t>(n);
    switch (axis) {
        case 0: return l * nn;
        case 1: return (l % nn) + nn * nn * (l / nn);
        default: return (l % nn) + nn * (l / nn);
    }
}

} // namespace

namespace detail {

/// Backward-Euler solve of one pair operator along one axis, all lines.
/// The tridiagonal of (I - dt A) is shared by every line, so the Thomas
/// elimination factors are computed once. diag_k = 1 + r(wp_k + wm_{k-1}),
/// off-diagonals -r wm_k and -r wp_{k-1}: an M-matrix, so nonnegative input
/// stays nonnegative for any dt.
void backward_euler_axis(const VelocityGrid& grid, Field& f, double c, double mass,
                         double u_axis, double T, double dt, int axis) {
    const int n = grid.n_per_axis();
    const double h = grid.spacing();
    const double r = dt * c / (h * h);
    const FaceWeights w = face_weights(grid, mass, u_axis, T);

    std::vector<double> upper(n - 1), elim(n - 1), inv_diag(n);
    {
        std::vector<double> diag(n);
        for (int k = 0; k < n; ++k) {
            double d = 1.0;
            if (k < n - 1) d += r * w.wp[k];
            if (k > 0) d += r * w.wm[k - 1];
            diag[k] = d;
        }
        for (int k = 0; k < n - 1; ++k) upper[k] = -r * w.wm[k];
        inv_diag[0] = 1.0 / diag[0];
        for (int k = 1; k < n; ++k) {
            const double lower = -r * w.wp[k - 1];
            elim[k - 1] = lower * inv_diag[k - 1];
            inv_diag[k] = 1.0 / (diag[k] - elim[k - 1] * upper[k - 1]);
        }
    }

    const AxisWalk walk = axis_walk(axis, n);
    parallel_for(walk.lines, [&](std::size_t lb, std::size_t le) {
        std::vector<double> y(n);
        for (std::size_t l = lb; l < le; ++l) {
            const std::size_t base = line_base(axis, n, l);
            const std::size_t st = walk.stride;
            y[0] = f[base];
            for (int k = 1; k < n; ++k) y[k] = f[base + k * st] - elim[k - 1] * y[k - 1];
            double x = y[n - 1] * inv_diag[n - 1];
            f[base + (n - 1) * st] = x;
            for (int k = n - 2; k >= 0; --k) {
                x = (y[k] - upper[k] * x) * inv_diag[k];
                f[base + k * st] = x;
            }
        }
    });
}

} // namespace detail

namespace {

StepStats clamp_negatives(PlasmaState& state) {
    StepStats stats;
    for (std::size_t i = 0; i < state.species_count(); ++i) {
        auto& f = state.distributions[i];
        double maxf = 0.0, minf = 0.0;
        for (double v : f) {
            maxf = std::max(maxf, v);
            minf = std::min(minf, v);
        }
        if (!std::isfinite(maxf) || !std::isfinite(minf))
            throw std::runtime_error("step: non-finite distribution for species '" +
                                     state.species[i].label + "'");
        if (minf >= 0.0) continue;
        if (minf < -1e-13 * maxf)
            throw std::runtime_error("step: negative distribution value " +
                                     std::to_string(minf) + " for species '" +
                                     state.species[i].label + "'");
        stats.max_negative = std::min(stats.max_negative, minf);
        const double mass_before = state.grid.integrate(f);
        for (double& v : f)
            if (v < 0.0) {
                v = 0.0;
                ++stats.clamped_cells;
            }
        const double mass_after = state.grid.integrate(f);
        if (mass_after > 0.0) {
            const double scale = mass_before / mass_after;
            for (double& v : f) v *= scale;
        }
    }
    return stats;
}

void check_mass_drift(const PlasmaState& state, const std::vector<double>& mass_before) {
    for (std::size_t i = 0; i < state.species_count(); ++i) {
        const double m = state.grid.integrate(state.distributions[i]);
        if (!std::isfinite(m) ||
            std::abs(m - mass_before[i]) > 1e-10 * std::abs(mass_before[i]))
            throw std::runtime_error("step: mass drift detected for species '" +
                                     state.species[i].label + "'");
    }
}

} // namespace

StepStats step(PlasmaState& state, const CoefficientProvider& provider,
               const StepPolicy& policy, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be > 0");
    const std::size_t s = state.species_count();
    const std::size_t N = state.grid.total_cells();

    std::vector<double> mass_before(s);
    for (std::size_t i = 0; i < s; ++i)
        mass_before[i] = state.grid.integrate(state.distributions[i]);

    if (policy.scheme == Scheme::explicit_rk4) {
        const std::vector<Field> f0 = state.distributions;
        auto rate_at = [&](const PlasmaState& st) {
            return apply_collision_operator(st, provider.coefficients(st));
        };
        const std::vector<Field> k1 = rate_at(state);
        PlasmaState tmp = state;
        for (std::size_t i = 0; i < s; ++i)
            for (std::size_t q = 0; q < N; ++q)
                tmp.distributions[i][q] = f0[i][q] + 0.5 * dt * k1[i][q];
        const std::vector<Field> k2 = rate_at(tmp);
        for (std::size_t i = 0; i < s; ++i)
            for (std::size_t q = 0; q < N; ++q)
                tmp.distributions[i][q] = f0[i][q] + 0.5 * dt * k2[i][q];
        const std::vector<Field> k3 = rate_at(tmp);
        for (std::size_t i = 0; i < s; ++i)
            for (std::size_t q = 0; q < N; ++q)
                tmp.distributions[i][q] = f0[i][q] + dt * k3[i][q];
        const std::vector<Field> k4 = rate_at(tmp);
        for (std::size_t i = 0; i < s; ++i)
            for (std::size_t q = 0; q < N; ++q)
                state.distributions[i][q] =
                    f0[i][q] + dt / 6.0 *
                                   (k1[i][q] + 2.0 * k2[i][q] + 2.0 * k3[i][q] + k4[i][q]);
    } else {
        const CoefficientSet coeffs = provider.coefficients(state);
        for (std::size_t i = 0; i < s; ++i)
            for (int j = 0; j < coeffs.s; ++j) {
                const double c = coeffs.c_at(j, static_cast<int>(i));
                if (c == 0.0) continue;
                for (int axis = 0; axis < 3; ++axis)
                    detail::backward_euler_axis(
                        state.grid, state.distributions[i], c, state.species[i].mass,
                        coeffs.u_at(j, static_cast<int>(i))[axis],
                        coeffs.T_at(j, static_cast<int>(i)), dt, axis);
            }
    }

    const StepStats stats = clamp_negatives(state);
    check_mass_drift(state, mass_before);
    state.time += dt;
    return stats;
}

} // namespace fpls
