#pragma once

#include <span>
#include <string>
#include <vector>

#include "fpls/coefficients.hpp"
#include "fpls/model.hpp"
#include "fpls/moments.hpp"

namespace fpls {

/// Reduced state for the closed moment system. The collision operator is a
/// linear drift-diffusion whose coefficients depend on f only through
/// (n_i, u_i, T_i), so integrating it against 1, v, |v|^2 closes exactly:
/// this ODE is the reference trajectory, not an approximation.
struct MomentState {
    std::vector<double> n;  // constant in time
    std::vector<Vec3> u;
    std::vector<double> T;
    double time = 0.0;

    std::size_t species_count() const { return n.size(); }
};

MomentState moments_to_state(std::span<const SpeciesMoments> moments, double time);

struct MomentDerivative {
    std::vector<Vec3> du;
    std::vector<double> dT;
};

/// dn_i/dt = 0,
/// du_i/dt = sum_j c_ji (m_i/T_ji)(u_ji - u_i),
/// dE_i/dt = sum_j 2 c_ji [3 n_i - (m_i/T_ji)(E_i - n_i u_ji . u_i)],
/// with E_i = 3 n_i T_i / m_i + n_i |u_i|^2 and dT_i by the chain rule.
MomentDerivative moment_derivative(const MomentState& state,
                                   std::span<const SpeciesParams> species,
                                   const PhysicalConstants& constants);

/// Classical fourth-order integration of the moment system, sampled every
/// `cadence` in time (the endpoint is always included). Throws if any
/// temperature leaves the positive range.
std::vector<MomentState> integrate_moments(MomentState initial,
                                           std::span<const SpeciesParams> species,
                                           const PhysicalConstants& constants,
                                           double t_end, double dt, double cadence);

/// Named sup deviations between two aligned moment trajectories. Each
/// quantity is normalized by its sup magnitude on the reference series
/// (floored at 1e-9 to keep identically-zero components quiet).
struct TrajectoryDeviation {
    struct Entry {
        std::string quantity;
        double deviation = 0.0;
    };
    std::vector<Entry> entries;
    double max = 0.0;
};

TrajectoryDeviation compare_trajectories(std::span<const MomentState> reference,
                                         std::span<const MomentState> other);

} // namespace fpls
