#pragma once

#include <string>
#include <vector>

#include "fpls/grid.hpp"
#include "fpls/vec3.hpp"

namespace fpls {

struct SpeciesParams {
    double mass = 1.0;    // m_i > 0
    double charge = 1.0;  // q_i != 0; only q^2 enters the dynamics
    std::string label;
};

struct PhysicalConstants {
    double coulomb_log = 1.0;          // |log Lambda| > 0
    double vacuum_permittivity = 1.0;  // eps0 > 0
    double gamma = 0.0;                // interaction exponent, any sign

    bool hard_potential() const { return gamma >= 2.0; }
};

/// Per-species Maxwellian initial data (n, u, T).
struct MaxwellianInit {
    double density = 1.0;
    Vec3 velocity{};
    double temperature = 1.0;  // energy units, no Boltzmann constant anywhere
};

/// Gridded simulation state: one distribution field per species.
struct PlasmaState {
    VelocityGrid grid;
    std::vector<SpeciesParams> species;
    std::vector<Field> distributions;
    double time = 0.0;

    std::size_t species_count() const { return species.size(); }
};

void validate_species(const SpeciesParams& sp);
void validate_constants(const PhysicalConstants& pc);

/// Samples per-species Maxwellians at cell centers. Rejects non-positive n
/// or T; a bulk velocity outside the box is allowed but the caller should
/// warn (tails get clipped).
PlasmaState init_maxwellian_state(const VelocityGrid& grid,
                                  const std::vector<SpeciesParams>& species,
                                  const std::vector<MaxwellianInit>& init);

} // namespace fpls
