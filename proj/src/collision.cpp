#include "fpls/collision.hpp"

#include <cmath>
#include <stdexcept>

#include "fpls/parallel.hpp"

namespace fpls {

double bernoulli(double x) {
    const double ax = std::abs(x);
    double b;
    if (ax < 1e-4)
        b = 1.0 - ax / 2.0 + ax * ax / 12.0;
    else
        b = ax / std::expm1(ax);  // expm1 overflow -> b = 0, the correct limit
    return x >= 0.0 ? b : b + ax;
}

double bernoulli_mean(double x) {
    const double ax = std::abs(x);
    if (ax < 1e-4) return 1.0 + ax * ax / 12.0;
    return 0.5 * ax / std::tanh(0.5 * ax);
}

FaceWeights face_weights(const VelocityGrid& grid, double mass, double u_axis, double T) {
    if (!(T > 0.0)) throw std::invalid_argument("face_weights: T must be > 0");
    const int n = grid.n_per_axis();
    const double h = grid.spacing();
    FaceWeights w;
    w.wp.resize(n - 1);
    w.wm.resize(n - 1);
    for (int k = 0; k + 1 < n; ++k) {
        const double P = mass * (grid.face(k + 1) - u_axis) * h / T;
        const double s = bernoulli_mean(P);
        w.wp[k] = s * bernoulli(P);
        w.wm[k] = s * bernoulli(-P);
    }
    return w;
}

namespace {

struct AxisWalk {
    std::size_t lines;    // number of 1D lines
    std::size_t stride;   // cell stride along the axis
    // base index of line l
    std::size_t base(int axis, int n, std::size_t l) const {
        const std::size_t nn = static_cast<std::size_t>(n);
        switch (axis) {
            case 0: return l * nn;  // lines over (b,c), contiguous in a
            case 1: {
                const std::size_t a = l % nn, c = l / nn;
                return a + nn * nn * c;
            }
            default: {
                const std::size_t a = l % nn, b = l / nn;
                return a + nn * b;
            }
        }
    }
};

AxisWalk axis_walk(int axis, int n) {
    const std::size_t nn = static_cast<std::size_t>(n);
    AxisWalk w{};
    w.lines = nn * nn;
    w.stride = axis == 0 ? 1 : (axis == 1 ? nn : nn * nn);
    return w;
}

} // namespace

void accumulate_pair_rate(const VelocityGrid& grid, std::span<const double> f, double c,
                          double mass, const Vec3& u, double T, std::span<double> rate) {
    const int n = grid.n_per_axis();
    const double h = grid.spacing();
    const double ch2 = c / (h * h);
    for (int axis = 0; axis < 3; ++axis) {
        const FaceWeights w = face_weights(grid, mass, u[axis], T);
        const AxisWalk walk = axis_walk(axis, n);
        parallel_for(walk.lines, [&](std::size_t lb, std::size_t le) {
            for (std::size_t l = lb; l < le; ++l) {
                const std::size_t base = walk.base(axis, n, l);
                const std::size_t st = walk.stride;
                double Gprev = 0.0;  // no-flux boundary
                for (int k = 0; k + 1 < n; ++k) {
                    const double G =
                        ch2 * (w.wm[k] * f[base + (k + 1) * st] - w.wp[k] * f[base + k * st]);
                    rate[base + k * st] += G - Gprev;
                    Gprev = G;
                }
                rate[base + (n - 1) * st] -= Gprev;
            }
        });
    }
}

std::vector<Field> apply_collision_operator(const PlasmaState& state,
                                            const CoefficientSet& coeffs) {
    const int s = static_cast<int>(state.species_count());
    if (coeffs.s != s)
        throw std::invalid_argument("apply_collision_operator: coefficient size mismatch");
    std::vector<Field> rates(s, Field(state.grid.total_cells(), 0.0));
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) {
            const double c = coeffs.c_at(j, i);
            if (!(c > 0.0) && c != 0.0)
                throw std::invalid_argument("apply_collision_operator: invalid c");
            if (c == 0.0) continue;
            accumulate_pair_rate(state.grid, state.distributions[i], c,
                                 state.species[i].mass, coeffs.u_at(j, i),
                                 coeffs.T_at(j, i), rates[i]);
        }
    return rates;
}

double entropy_dissipation_rate(const PlasmaState& state, const CoefficientSet& coeffs) {
    const int s = static_cast<int>(state.species_count());
    const int n = state.grid.n_per_axis();
    const double h = state.grid.spacing();
    const double h2 = h * h;

    double D = 0.0;
    for (int i = 0; i < s; ++i) {
        const auto& f = state.distributions[i];
        double mass_i = 0.0;
        for (double v : f) mass_i += v;
        const double floor = 1e-300 * mass_i;  // mass_i * h^3 / h^3
        for (int j = 0; j < s; ++j) {
            const double c = coeffs.c_at(j, i);
            const double mi = state.species[i].mass;
            const double T = coeffs.T_at(j, i);
            const Vec3& u = coeffs.u_at(j, i);
            for (int axis = 0; axis < 3; ++axis) {
                const FaceWeights w = face_weights(state.grid, mi, u[axis], T);
                std::vector<double> P(n - 1);
                for (int k = 0; k + 1 < n; ++k)
                    P[k] = mi * (state.grid.face(k + 1) - u[axis]) * h / T;
                const AxisWalk walk = axis_walk(axis, n);
                double acc = 0.0;
                for (std::size_t l = 0; l < walk.lines; ++l) {
                    const std::size_t base = walk.base(axis, n, l);
                    const std::size_t st = walk.stride;
                    for (int k = 0; k + 1 < n; ++k) {
                        const double fl = f[base + k * st];
                        const double fr = f[base + (k + 1) * st];
                        if (fl <= floor || fr <= floor) continue;
                        // jump of log(f/M) across the face; log M drops by P
                        const double dl = std::log(fr / fl) + P[k];
                        const double G = (c / h) * (w.wm[k] * fr - w.wp[k] * fl);
                        acc += G * dl;
                    }
                }
                D += acc * h2;
            }
        }
    }
    return D;
}

PlaneSums compute_plane_sums(const VelocityGrid& grid, std::span<const double> f) {
    const int n = grid.n_per_axis();
    PlaneSums out;
    out.n = n;
    for (auto& v : out.sums) v.assign(n, 0.0);
    std::size_t idx = 0;
    for (int c = 0; c < n; ++c)
        for (int b = 0; b < n; ++b) {
            double row = 0.0;
            for (int a = 0; a < n; ++a) {
                const double fv = f[idx++];
                out.sums[0][a] += fv;
                row += fv;
            }
            out.sums[1][b] += row;
            out.sums[2][c] += row;
        }
    return out;
}

PairRateMoments pair_flux_moments(const VelocityGrid& grid, const PlaneSums& planes,
                                  double c, double mass, const Vec3& u, double T) {
    const int n = grid.n_per_axis();
    const double h = grid.spacing();
    const double vol = grid.cell_volume();
    PairRateMoments out;
    for (int axis = 0; axis < 3; ++axis) {
        const auto& C = planes.sums[axis];
        double mom = 0.0, en = 0.0;
        for (int k = 0; k + 1 < n; ++k) {
            const double vf = grid.face(k + 1);
            const double P = mass * (vf - u[axis]) * h / T;
            const double s = bernoulli_mean(P);
            const double G = (c / h) * s * (bernoulli(-P) * C[k + 1] - bernoulli(P) * C[k]);
            mom += G;
            en += vf * G;
        }
        out.momentum[axis] = -vol * mom;
        out.energy += -2.0 * vol * en;
    }
    return out;
}

} // namespace fpls
