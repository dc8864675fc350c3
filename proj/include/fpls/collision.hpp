#pragma once

#include <array>
#include <span>
#include <vector>

#include "fpls/coefficients.hpp"
#include "fpls/grid.hpp"
#include "fpls/model.hpp"

namespace fpls {

/// B(x) = x / (e^x - 1), evaluated without overflow or cancellation.
double bernoulli(double x);

/// (B(x) + B(-x)) / 2 = (x/2) coth(x/2); the face-flux scale factor.
double bernoulli_mean(double x);

/// Exponential-fitting face weights for one pair operator along one axis.
/// The flux through interior face k (between cells k and k+1) is
///   G_k = (c/h) * (wm[k] f_{k+1} - wp[k] f_k),
/// with wp = s(P) B(P), wm = s(P) B(-P), Peclet P = mass (v_face - u) h / T
/// and scale s(P) = (P/2) coth(P/2). The B-ratio pins the discrete null
/// state to the cell-sampled Maxwellian; the scale keeps that exactness
/// while cancelling the leading error in the operator's relaxation rates.
/// Boundary faces carry no flux.
struct FaceWeights {
    std::vector<double> wp, wm;  // size n-1
};
FaceWeights face_weights(const VelocityGrid& grid, double mass, double u_axis, double T);

/// Adds c * div(grad f + mass (v-u)/T f) to rate, discretized per axis.
void accumulate_pair_rate(const VelocityGrid& grid, std::span<const double> f, double c,
                          double mass, const Vec3& u, double T, std::span<double> rate);

/// Per-species rate sum_j Q_ji. The cell sum of each species' rate field
/// telescopes to zero (no-flux boundaries).
std::vector<Field> apply_collision_operator(const PlasmaState& state,
                                            const CoefficientSet& coeffs);

/// Discrete entropy production D >= 0: sum over ordered pairs and faces of
/// G * [log(f_i/M_ij) jump] * h^2, the scheme's own dissipation terms.
/// Faces adjacent to cells below 1e-300 * n_i / h^3 are excluded.
double entropy_dissipation_rate(const PlasmaState& state, const CoefficientSet& coeffs);

/// Per-axis plane sums of a field: sums[d][k] = sum of f over the plane
/// with axis-d cell index k. The first two velocity moments of every pair
/// flux reduce to O(n) sums over these, which makes the moment-constraint
/// solves in the provider cheap.
struct PlaneSums {
    int n = 0;
    std::array<std::vector<double>, 3> sums;
};
PlaneSums compute_plane_sums(const VelocityGrid& grid, std::span<const double> f);

/// Rates of integral(f v) and integral(f |v|^2) induced by one pair
/// operator (no species mass factor), evaluated from plane sums.
struct PairRateMoments {
    Vec3 momentum{};
    double energy = 0.0;
};
PairRateMoments pair_flux_moments(const VelocityGrid& grid, const PlaneSums& planes,
                                  double c, double mass, const Vec3& u, double T);

} // namespace fpls
