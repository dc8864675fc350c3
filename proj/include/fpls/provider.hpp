#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "fpls/coefficients.hpp"
#include "fpls/collision.hpp"
#include "fpls/model.hpp"

namespace fpls {

/// Supplies the pair parameters (c, u, T) the collision operator runs with.
/// Implementations differ in how faithfully the discrete operator then
/// reproduces the moment exchange of the continuous one.
class CoefficientProvider {
public:
    virtual ~CoefficientProvider() = default;
    virtual CoefficientSet coefficients(const PlasmaState& state) const = 0;

    /// Count of parameter solves that failed to converge and fell back to
    /// the analytic values (zero in any healthy run).
    virtual long fallback_count() const { return 0; }
};

/// The closed-form coefficients evaluated on the current moments.
class AnalyticProvider : public CoefficientProvider {
public:
    explicit AnalyticProvider(PhysicalConstants constants) : constants_(constants) {}
    CoefficientSet coefficients(const PlasmaState& state) const override;

private:
    PhysicalConstants constants_;
};

/// Returns a caller-supplied set regardless of the state (forcing; used to
/// drive a species toward a prescribed Maxwellian).
class FixedProvider : public CoefficientProvider {
public:
    explicit FixedProvider(CoefficientSet set) : set_(std::move(set)) {}
    CoefficientSet coefficients(const PlasmaState&) const override { return set_; }

private:
    CoefficientSet set_;
};

/// The regularized coefficients with clipped moments; densities stay frozen
/// at the initial datum.
class TruncatedProvider : public CoefficientProvider {
public:
    TruncatedProvider(PhysicalConstants constants, std::vector<double> initial_densities,
                      double eps,
                      TruncationIndexReading reading = TruncationIndexReading::consistent)
        : constants_(constants), initial_densities_(std::move(initial_densities)),
          eps_(eps), reading_(reading) {}
    CoefficientSet coefficients(const PlasmaState& state) const override;

private:
    PhysicalConstants constants_;
    std::vector<double> initial_densities_;
    double eps_;
    TruncationIndexReading reading_;
};

/// Analytic coefficients with (u, T) of every pair re-solved so that the
/// discrete flux moments satisfy the pairwise conservation constraints
/// exactly: for i != j the momentum and energy exchange of the pair sums
/// to zero, and each self pair moves neither. This is the same closure
/// condition that defines the mixture values in the continuum, imposed on
/// the grid instead, and it shifts the parameters by O(h^2). Momentum,
/// energy, and the discrete entropy inequality then hold to round-off
/// under any explicit stepping.
class ConservativeProvider : public CoefficientProvider {
public:
    explicit ConservativeProvider(PhysicalConstants constants) : constants_(constants) {}
    CoefficientSet coefficients(const PlasmaState& state) const override;
    long fallback_count() const override { return fallbacks_; }

private:
    PhysicalConstants constants_;
    mutable std::vector<Vec3> warm_u_;
    mutable std::vector<double> warm_T_;
    mutable long fallbacks_ = 0;
};

/// Fixed forcing targets (c, u, T) with the discrete (u, T) solved per
/// species so that the operator's first and second moment rates equal the
/// analytic drift-diffusion rates toward the target. Forced relaxation
/// runs then track the closed moment law up to time integration error.
class MatchedFixedProvider : public CoefficientProvider {
public:
    MatchedFixedProvider(double c, const Vec3& u_target, double T_target)
        : c_(c), u_target_(u_target), T_target_(T_target) {}
    CoefficientSet coefficients(const PlasmaState& state) const override;
    long fallback_count() const override { return fallbacks_; }

private:
    double c_;
    Vec3 u_target_;
    double T_target_;
    mutable long fallbacks_ = 0;
};

/// Newton solve of F(u, log T) = 0 for a 4-component moment constraint.
/// `eval` maps trial (u, T) to (momentum residual, energy residual).
/// Returns false if it failed to converge; u/T then keep the initial guess.
bool solve_pair_parameters(
    const std::function<void(const Vec3&, double, Vec3&, double&)>& eval, Vec3& u,
    double& T, double mom_scale, double en_scale);

} // namespace fpls
