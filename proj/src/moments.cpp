#include "fpls/moments.hpp"

#include <cmath>
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

SpeciesMoments compute_moments(const VelocityGrid& grid, std::span<const double> f,
                               double mass) {
    const std::size_t N = grid.total_cells();
    if (f.size() != N) throw std::invalid_argument("compute_moments: field size mismatch");
    const int n = grid.n_per_axis();

    // Pass 1: mass and momentum. Mirror-paired so that symmetric states give
    // an exactly zero bulk velocity.
    Kahan m0, m1x, m1y, m1z;
    for (int c = 0; c < n; ++c)
        for (int b = 0; b < n; ++b)
            for (int a = 0; a < n; ++a) {
                const std::size_t i = grid.index(a, b, c);
                const std::size_t r = grid.reflect(i);
                if (i > r) continue;
                const double fi = f[i], fr = f[r];
                const Vec3 v = grid.center(a, b, c);
                m0.add(fi + fr);
                m1x.add(v.x * (fi - fr));
                m1y.add(v.y * (fi - fr));
                m1z.add(v.z * (fi - fr));
            }
    const double vol = grid.cell_volume();
    const double density = m0.sum * vol;
    if (!(density > 0.0) || !std::isfinite(density))
        throw std::invalid_argument("compute_moments: non-positive total mass");
    const Vec3 u = Vec3{m1x.sum, m1y.sum, m1z.sum} * (vol / density);

    // Pass 2: second central moment.
    Kahan m2;
    for (int c = 0; c < n; ++c)
        for (int b = 0; b < n; ++b)
            for (int a = 0; a < n; ++a) {
                const std::size_t i = grid.index(a, b, c);
                const Vec3 w = grid.center(a, b, c) - u;
                m2.add(f[i] * norm2(w));
            }
    const double T = mass * m2.sum * vol / (3.0 * density);

    SpeciesMoments out;
    out.number_density = density;
    out.mass_density = mass * density;
    out.bulk_velocity = u;
    out.temperature = T;
    return out;
}

std::vector<SpeciesMoments> compute_all_moments(const PlasmaState& state) {
    std::vector<SpeciesMoments> out;
    out.reserve(state.species_count());
    for (std::size_t i = 0; i < state.species_count(); ++i)
        out.push_back(compute_moments(state.grid, state.distributions[i],
                                      state.species[i].mass));
    return out;
}

Field maxwellian_field(const VelocityGrid& grid, double n, double mass, const Vec3& u,
                       double T) {
    if (!(n > 0.0)) throw std::invalid_argument("maxwellian_field: n must be > 0");
    if (!(T > 0.0)) throw std::invalid_argument("maxwellian_field: T must be > 0");

    const int np = grid.n_per_axis();
    const double norm = n * std::pow(mass / (2.0 * std::numbers::pi * T), 1.5);
    // Separable Gaussian: three 1D factor tables instead of n^3 exp calls.
    std::vector<double> gx(np), gy(np), gz(np);
    for (int k = 0; k < np; ++k) {
        const double v = grid.coord(k);
        const auto g1 = [&](double c) {
            const double d = v - c;
            return std::exp(-mass * d * d / (2.0 * T));
        };
        gx[k] = g1(u.x);
        gy[k] = g1(u.y);
        gz[k] = g1(u.z);
    }
    Field f(grid.total_cells());
    std::size_t idx = 0;
    for (int c = 0; c < np; ++c)
        for (int b = 0; b < np; ++b) {
            const double gyz = norm * gy[b] * gz[c];
            for (int a = 0; a < np; ++a) f[idx++] = gyz * gx[a];
        }
    return f;
}

GlobalEquilibrium global_equilibrium(const VelocityGrid& grid,
                                     std::span<const SpeciesParams> species,
                                     std::span<const SpeciesMoments> moments,
                                     bool build_fields) {
    if (species.size() != moments.size() || species.empty())
        throw std::invalid_argument("global_equilibrium: bad inputs");

    double rho_tot = 0.0, n_tot = 0.0;
    Vec3 p_tot{};
    for (const auto& m : moments) {
        rho_tot += m.mass_density;
        n_tot += m.number_density;
        p_tot += m.mass_density * m.bulk_velocity;
    }
    const Vec3 u_star = p_tot / rho_tot;

    double e_centered = 0.0;
    for (const auto& m : moments)
        e_centered += 3.0 * m.number_density * m.temperature +
                      m.mass_density * norm2(m.bulk_velocity - u_star);
    const double T_star = e_centered / (3.0 * n_tot);

    GlobalEquilibrium eq{u_star, T_star, {}};
    if (build_fields) {
        eq.maxwellians.reserve(species.size());
        for (std::size_t i = 0; i < species.size(); ++i)
            eq.maxwellians.push_back(maxwellian_field(
                grid, moments[i].number_density, species[i].mass, u_star, T_star));
    }
    return eq;
}

} // namespace fpls
