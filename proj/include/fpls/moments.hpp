#pragma once

#include <span>
#include <vector>

#include "fpls/grid.hpp"
#include "fpls/model.hpp"
#include "fpls/vec3.hpp"

namespace fpls {

/// (n_i, u_i, T_i) of one species; rho_i = m_i n_i.
struct SpeciesMoments {
    double number_density = 0.0;
    double mass_density = 0.0;
    Vec3 bulk_velocity{};
    double temperature = 0.0;

    bool degenerate() const { return temperature == 0.0; }
};

/// n = integral f, u = (1/n) integral f v, T = (m/3n) integral f |v-u|^2.
/// Throws if the field has non-positive quadrature mass.
SpeciesMoments compute_moments(const VelocityGrid& grid, std::span<const double> f,
                               double mass);

std::vector<SpeciesMoments> compute_all_moments(const PlasmaState& state);

/// n (m/(2 pi T))^{3/2} exp(-m|v-u|^2 / 2T) sampled at cell centers.
Field maxwellian_field(const VelocityGrid& grid, double n, double mass, const Vec3& u,
                       double T);

struct GlobalEquilibrium {
    Vec3 u_star{};
    double T_star = 0.0;
    std::vector<Field> maxwellians;  // one per species, parameters (n_i, m_i, u*, T*)
};

/// Long-time limit parameters from conserved totals:
///   u* = sum rho_i u_i / sum rho_i
///   T* = sum_i (3 n_i T_i + rho_i |u_i - u*|^2) / (3 sum_i n_i)
/// The second formula is the total energy re-centered about u*, so momentum
/// and energy computed back from (n_i, m_i, u*, T*) match the inputs exactly.
GlobalEquilibrium global_equilibrium(const VelocityGrid& grid,
                                     std::span<const SpeciesParams> species,
                                     std::span<const SpeciesMoments> moments,
                                     bool build_fields = true);

} // namespace fpls
