#pragma once

#include <optional>
#include <string>

#include "fpls/coefficients.hpp"
#include "fpls/model.hpp"
#include "fpls/provider.hpp"

namespace fpls {

enum class Scheme { explicit_rk4, semi_implicit_split };

Scheme scheme_from_string(const std::string& name);
std::string to_string(Scheme s);

struct StepPolicy {
    Scheme scheme = Scheme::semi_implicit_split;
    std::optional<double> dt;  // empty = auto from stable_dt
    double safety = 0.8;
    double t_end = 1.0;
    double output_every = 0.1;
};

/// Stability-controlled step size. For the explicit scheme the binding caps
/// are the parabolic bound safety h^2 / (6 max_i sum_j c_ji), the drift CFL
/// |m_i (v - u_ji)/T_ji| dt <= safety h, and the same parabolic bound with
/// the face-scale growth at the box corners folded in. The semi-implicit
/// scheme has no stability limit; its auto step is the output cadence
/// capped by safety times the fastest pair relaxation time T_ji/(2 c_ji m_i).
struct StableDt {
    double diffusion_cap = 0.0;
    double drift_cap = 0.0;
    double scaled_diffusion_cap = 0.0;
    double relaxation_cap = 0.0;  // semi-implicit accuracy heuristic
    double value(Scheme scheme, double output_every) const;
};
StableDt stable_dt(const PlasmaState& state, const CoefficientSet& coeffs, double safety);

struct StepStats {
    long clamped_cells = 0;     // negatives zeroed by the positivity clamp
    double max_negative = 0.0;  // most negative value seen before clamping
};

/// Advances the state by dt. Explicit: classical four-stage update with
/// coefficients re-queried per stage. Semi-implicit: coefficients frozen at
/// step start, then per species, per pair (fixed order), per axis one
/// backward-Euler tridiagonal solve. Negative entries beyond
/// -1e-13 * max f are an error; smaller ones are zeroed with the species
/// mass restored by rescaling.
StepStats step(PlasmaState& state, const CoefficientProvider& provider,
               const StepPolicy& policy, double dt);

namespace detail {
/// One backward-Euler solve of a single pair operator along one axis
/// (every grid line). Exposed for the positivity and stationarity tests.
void backward_euler_axis(const VelocityGrid& grid, Field& f, double c, double mass,
                         double u_axis, double T, double dt, int axis);
} // namespace detail

} // namespace fpls
