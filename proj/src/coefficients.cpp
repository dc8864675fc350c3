#include "fpls/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fpls {

double CoefficientSet::min_T() const {
    double m = T.empty() ? 0.0 : T[0];
    for (double t : T) m = std::min(m, t);
    return m;
}

std::vector<double> compute_cji(std::span<const SpeciesMoments> moments,
                                std::span<const SpeciesParams> species,
                                const PhysicalConstants& constants) {
    const int s = static_cast<int>(species.size());
    if (moments.size() != species.size())
        throw std::invalid_argument("compute_cji: size mismatch");
    std::vector<double> c(static_cast<std::size_t>(s) * s);
    for (int j = 0; j < s; ++j) {
        const double Tj = moments[j].temperature;
        if (!(Tj > 0.0))
            throw std::invalid_argument("compute_cji: non-positive temperature for species " +
                                        species[j].label);
        const double thermal = std::pow(Tj / species[j].mass, constants.gamma / 2.0);
        for (int i = 0; i < s; ++i) {
            const double qq = species[i].charge * species[i].charge *
                              species[j].charge * species[j].charge;
            const double pref = constants.coulomb_log * qq /
                                (8.0 * std::numbers::pi *
                                 constants.vacuum_permittivity * constants.vacuum_permittivity *
                                 species[i].mass * species[i].mass);
            c[static_cast<std::size_t>(j) * s + i] = pref * moments[j].number_density * thermal;
        }
    }
    return c;
}

std::vector<Vec3> compute_uji(std::span<const SpeciesMoments> moments,
                              std::span<const SpeciesParams> species,
                              std::span<const double> c) {
    const int s = static_cast<int>(species.size());
    std::vector<Vec3> u(static_cast<std::size_t>(s) * s);
    for (int j = 0; j < s; ++j)
        for (int i = 0; i < s; ++i) {
            if (i == j) {
                u[static_cast<std::size_t>(j) * s + i] = moments[i].bulk_velocity;
                continue;
            }
            const double wi = c[static_cast<std::size_t>(j) * s + i] * species[i].mass *
                              moments[i].mass_density;
            const double wj = c[static_cast<std::size_t>(i) * s + j] * species[j].mass *
                              moments[j].mass_density;
            u[static_cast<std::size_t>(j) * s + i] =
                (wi * moments[i].bulk_velocity + wj * moments[j].bulk_velocity) / (wi + wj);
        }
    return u;
}

std::vector<double> compute_Tji(std::span<const SpeciesMoments> moments,
                                std::span<const SpeciesParams> species,
                                std::span<const double> c) {
    const int s = static_cast<int>(species.size());
    std::vector<double> T(static_cast<std::size_t>(s) * s);
    for (int j = 0; j < s; ++j)
        for (int i = 0; i < s; ++i) {
            if (i == j) {
                T[static_cast<std::size_t>(j) * s + i] = moments[i].temperature;
                continue;
            }
            const double cji = c[static_cast<std::size_t>(j) * s + i];
            const double cij = c[static_cast<std::size_t>(i) * s + j];
            const double ai = cji * moments[i].mass_density;         // c_ji rho_i
            const double aj = cij * moments[j].mass_density;         // c_ij rho_j
            const double bi = ai * species[i].mass;                  // c_ji m_i rho_i
            const double bj = aj * species[j].mass;                  // c_ij m_j rho_j
            const double du2 =
                norm2(moments[i].bulk_velocity - moments[j].bulk_velocity);
            T[static_cast<std::size_t>(j) * s + i] =
                (ai * moments[i].temperature + aj * moments[j].temperature) / (ai + aj) +
                bi * bj * du2 / (3.0 * (ai + aj) * (bi + bj));
        }
    return T;
}

CoefficientSet compute_coefficients(std::span<const SpeciesMoments> moments,
                                    std::span<const SpeciesParams> species,
                                    const PhysicalConstants& constants) {
    CoefficientSet out;
    out.s = static_cast<int>(species.size());
    out.c = compute_cji(moments, species, constants);
    out.u = compute_uji(moments, species, out.c);
    out.T = compute_Tji(moments, species, out.c);
    return out;
}

std::vector<Field> compute_pairwise_maxwellians(std::span<const SpeciesMoments> moments,
                                                std::span<const SpeciesParams> species,
                                                const CoefficientSet& coeffs,
                                                const VelocityGrid& grid) {
    const int s = coeffs.s;
    std::vector<Field> fields(static_cast<std::size_t>(s) * s);
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j)
            fields[static_cast<std::size_t>(i) * s + j] =
                maxwellian_field(grid, moments[i].number_density, species[i].mass,
                                 coeffs.u_at(j, i), coeffs.T_at(j, i));
    return fields;
}

namespace {

// g(v) = pi^{-3/2} exp(-|v|^2), the unit-mass Gaussian envelope.
double envelope(const Vec3& v) {
    return std::pow(std::numbers::pi, -1.5) * std::exp(-norm2(v));
}

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

TruncatedMoments compute_truncated_moments(const VelocityGrid& grid,
                                           std::span<const double> f, double mass,
                                           double initial_density, double eps) {
    if (!(eps > 0.0 && eps < 1.0))
        throw std::invalid_argument("truncated moments: eps must be in (0,1)");
    const int n = grid.n_per_axis();
    const double vol = grid.cell_volume();

    TruncatedMoments out;
    out.n = initial_density;

    Kahan ux, uy, uz;
    for (int c = 0; c < n; ++c)
        for (int b = 0; b < n; ++b)
            for (int a = 0; a < n; ++a) {
                const Vec3 v = grid.center(a, b, c);
                const double fp = std::max(0.0, f[grid.index(a, b, c)]);
                const double clipped = std::min(fp, envelope(v) / eps);
                ux.add(clipped * v.x);
                uy.add(clipped * v.y);
                uz.add(clipped * v.z);
            }
    out.u = Vec3{ux.sum, uy.sum, uz.sum} * (vol / initial_density);

    Kahan up, down;
    for (int c = 0; c < n; ++c)
        for (int b = 0; b < n; ++b)
            for (int a = 0; a < n; ++a) {
                const Vec3 v = grid.center(a, b, c);
                const double w2 = norm2(v - out.u);
                const double fv = f[grid.index(a, b, c)];
                const double g = envelope(v);
                up.add(std::min(std::max(0.0, fv), g / eps) * w2);
                down.add(std::max(fv, eps * g) * w2);
            }
    out.T_up = mass * up.sum * vol / (3.0 * initial_density);
    out.T_down = mass * down.sum * vol / (3.0 * initial_density);
    return out;
}

CoefficientSet compute_truncated_coefficients(const PlasmaState& state,
                                              std::span<const double> initial_densities,
                                              double eps,
                                              const PhysicalConstants& constants,
                                              TruncationIndexReading reading) {
    if (!(eps > 0.0 && eps < 1.0))
        throw std::invalid_argument("truncated coefficients: eps must be in (0,1)");
    const int s = static_cast<int>(state.species_count());
    if (initial_densities.size() != static_cast<std::size_t>(s))
        throw std::invalid_argument("truncated coefficients: density count mismatch");

    std::vector<TruncatedMoments> tm(s);
    for (int i = 0; i < s; ++i)
        tm[i] = compute_truncated_moments(state.grid, state.distributions[i],
                                          state.species[i].mass, initial_densities[i], eps);

    CoefficientSet out;
    out.s = s;
    out.truncation = eps;
    out.c.resize(static_cast<std::size_t>(s) * s);
    out.u.resize(static_cast<std::size_t>(s) * s);
    out.T.resize(static_cast<std::size_t>(s) * s);

    const bool up_branch = constants.gamma >= 0.0;
    for (int j = 0; j < s; ++j)
        for (int i = 0; i < s; ++i) {
            // `consistent`: the clipped temperature of species j throughout.
            // `verbatim`: the pair's self species i feeds the factor instead,
            // still divided by m_j.
            const int src = reading == TruncationIndexReading::consistent ? j : i;
            const double Tfac = up_branch ? tm[src].T_up : tm[src].T_down;
            const double qq = state.species[i].charge * state.species[i].charge *
                              state.species[j].charge * state.species[j].charge;
            const double pref =
                constants.coulomb_log * qq /
                (8.0 * std::numbers::pi * constants.vacuum_permittivity *
                 constants.vacuum_permittivity * state.species[i].mass *
                 state.species[i].mass);
            out.c_at(j, i) =
                pref * initial_densities[j] *
                    std::pow(Tfac / state.species[j].mass, constants.gamma / 2.0) +
                eps;
        }

    for (int j = 0; j < s; ++j)
        for (int i = 0; i < s; ++i) {
            const double rho_i = state.species[i].mass * initial_densities[i];
            const double rho_j = state.species[j].mass * initial_densities[j];
            const double bi = out.c_at(j, i) * state.species[i].mass * rho_i;
            const double bj = out.c_at(i, j) * state.species[j].mass * rho_j;
            out.u_at(j, i) = (bi * tm[i].u + bj * tm[j].u) / (bi + bj);
            const double ai = out.c_at(j, i) * rho_i;
            const double aj = out.c_at(i, j) * rho_j;
            const double du2 = norm2(tm[i].u - tm[j].u);
            out.T_at(j, i) = (ai * tm[i].T_down + aj * tm[j].T_down) / (ai + aj) +
                             bi * bj * du2 / (3.0 * (ai + aj) * (bi + bj));
        }
    return out;
}

} // namespace fpls
