#pragma once

#include <optional>
#include <span>
#include <vector>

#include "fpls/grid.hpp"
#include "fpls/model.hpp"
#include "fpls/moments.hpp"
#include "fpls/vec3.hpp"

namespace fpls {

/// Pair coupling arrays. Index convention, fixed everywhere: entry (j,i)
/// is the coefficient of the operator acting on species i with partner j,
/// i.e. row = partner j, column = self i. c(j,i) carries the 1/m_i^2
/// prefactor and the partner density/temperature n_j, T_j.
struct CoefficientSet {
    int s = 0;
    std::vector<double> c;  // s*s, c[j*s + i] > 0
    std::vector<Vec3> u;    // s*s, symmetric, u[i*s+i] = u_i
    std::vector<double> T;  // s*s, symmetric, T[i*s+i] = T_i
    std::optional<double> truncation;  // epsilon when the regularized variants were used

    double& c_at(int j, int i) { return c[static_cast<std::size_t>(j) * s + i]; }
    double c_at(int j, int i) const { return c[static_cast<std::size_t>(j) * s + i]; }
    Vec3& u_at(int j, int i) { return u[static_cast<std::size_t>(j) * s + i]; }
    const Vec3& u_at(int j, int i) const { return u[static_cast<std::size_t>(j) * s + i]; }
    double& T_at(int j, int i) { return T[static_cast<std::size_t>(j) * s + i]; }
    double T_at(int j, int i) const { return T[static_cast<std::size_t>(j) * s + i]; }

    double min_T() const;
};

/// c(j,i) = |log Lambda| q_i^2 q_j^2 / (8 pi eps0^2 m_i^2) * n_j (T_j/m_j)^{gamma/2}.
std::vector<double> compute_cji(std::span<const SpeciesMoments> moments,
                                std::span<const SpeciesParams> species,
                                const PhysicalConstants& constants);

/// u(j,i) = (c_ji m_i rho_i u_i + c_ij m_j rho_j u_j) / (c_ji m_i rho_i + c_ij m_j rho_j).
std::vector<Vec3> compute_uji(std::span<const SpeciesMoments> moments,
                              std::span<const SpeciesParams> species,
                              std::span<const double> c);

/// T(j,i) = convex combination of T_i, T_j plus the |u_i - u_j|^2 heating term.
std::vector<double> compute_Tji(std::span<const SpeciesMoments> moments,
                                std::span<const SpeciesParams> species,
                                std::span<const double> c);

CoefficientSet compute_coefficients(std::span<const SpeciesMoments> moments,
                                    std::span<const SpeciesParams> species,
                                    const PhysicalConstants& constants);

/// M_ij = maxwellian_field(n_i, m_i, u_ij, T_ij); returned in row-major
/// order fields[i*s + j].
std::vector<Field> compute_pairwise_maxwellians(std::span<const SpeciesMoments> moments,
                                                std::span<const SpeciesParams> species,
                                                const CoefficientSet& coeffs,
                                                const VelocityGrid& grid);

/// Which species' distribution feeds the clipped temperatures entering
/// c^eps. The displayed formulas carry mismatched indices; `consistent`
/// reads them per species (the default), `verbatim` uses the partner pair's
/// own distribution instead.
enum class TruncationIndexReading { consistent, verbatim };

struct TruncatedMoments {
    double n = 0.0;        // frozen at the initial datum
    Vec3 u{};              // from min{f+, g/eps}
    double T_up = 0.0;     // from min{f+, g/eps}
    double T_down = 0.0;   // from max{f, eps g}
};

TruncatedMoments compute_truncated_moments(const VelocityGrid& grid,
                                           std::span<const double> f, double mass,
                                           double initial_density, double eps);

/// Regularized coefficient set: c^eps gets the +eps shift and the clipped
/// temperature factor (T_up branch for gamma >= 0, T_down for gamma < 0);
/// u^eps and T^eps use the clipped moments throughout. eps must be in (0,1).
CoefficientSet compute_truncated_coefficients(
    const PlasmaState& state, std::span<const double> initial_densities,
    double eps, const PhysicalConstants& constants,
    TruncationIndexReading reading = TruncationIndexReading::consistent);

} // namespace fpls
