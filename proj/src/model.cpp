#include "fpls/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "fpls/moments.hpp"

namespace fpls {

void validate_species(const SpeciesParams& sp) {
    if (!(sp.mass > 0.0) || !std::isfinite(sp.mass))
        throw std::invalid_argument("species '" + sp.label + "': mass must be > 0");
    if (sp.charge == 0.0 || !std::isfinite(sp.charge))
        throw std::invalid_argument("species '" + sp.label + "': charge must be nonzero");
}

void validate_constants(const PhysicalConstants& pc) {
    if (!(pc.coulomb_log > 0.0))
        throw std::invalid_argument("constants: coulomb_log must be > 0");
    if (!(pc.vacuum_permittivity > 0.0))
        throw std::invalid_argument("constants: eps0 must be > 0");
    if (!std::isfinite(pc.gamma))
        throw std::invalid_argument("constants: gamma must be finite");
}

PlasmaState init_maxwellian_state(const VelocityGrid& grid,
                                  const std::vector<SpeciesParams>& species,
                                  const std::vector<MaxwellianInit>& init) {
    if (species.empty())
        throw std::invalid_argument("init: at least one species required");
    if (species.size() != init.size())
        throw std::invalid_argument("init: species/init size mismatch");

    PlasmaState state{grid, species, {}, 0.0};
    state.distributions.reserve(species.size());
    for (std::size_t i = 0; i < species.size(); ++i) {
        validate_species(species[i]);
        const auto& mi = init[i];
        if (!(mi.density > 0.0))
            throw std::invalid_argument("species '" + species[i].label +
                                        "': initial n must be > 0");
        if (!(mi.temperature > 0.0))
            throw std::invalid_argument("species '" + species[i].label +
                                        "': initial T must be > 0");
        state.distributions.push_back(
            maxwellian_field(grid, mi.density, species[i].mass, mi.velocity,
                             mi.temperature));
    }
    return state;
}

} // namespace fpls
