#include "fpls/provider.hpp"

#include <cmath>
#include <stdexcept>

namespace fpls {

CoefficientSet AnalyticProvider::coefficients(const PlasmaState& state) const {
    const auto moments = compute_all_moments(state);
    return compute_coefficients(moments, state.species, constants_);
}

CoefficientSet TruncatedProvider::coefficients(const PlasmaState& state) const {
    return compute_truncated_coefficients(state, initial_densities_, eps_, constants_,
                                          reading_);
}

namespace {

// 4x4 linear solve, partial pivoting. Returns false on a singular matrix.
bool solve4(double A[4][4], double b[4], double x[4]) {
    int piv[4] = {0, 1, 2, 3};
    for (int col = 0; col < 4; ++col) {
        int best = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::abs(A[piv[r]][col]) > std::abs(A[piv[best]][col])) best = r;
        std::swap(piv[col], piv[best]);
        const double p = A[piv[col]][col];
        if (p == 0.0 || !std::isfinite(p)) return false;
        for (int r = col + 1; r < 4; ++r) {
            const double m = A[piv[r]][col] / p;
            for (int cc = col; cc < 4; ++cc) A[piv[r]][cc] -= m * A[piv[col]][cc];
            b[piv[r]] -= m * b[piv[col]];
        }
    }
    for (int row = 3; row >= 0; --row) {
        double acc = b[piv[row]];
        for (int cc = row + 1; cc < 4; ++cc) acc -= A[piv[row]][cc] * x[cc];
        x[row] = acc / A[piv[row]][row];
    }
    return true;
}

} // namespace

bool solve_pair_parameters(
    const std::function<void(const Vec3&, double, Vec3&, double&)>& eval, Vec3& u,
    double& T, double mom_scale, double en_scale) {
    const double mtol = 1e-13 * mom_scale + 1e-300;
    const double etol = 1e-13 * en_scale + 1e-300;

    Vec3 uc = u;
    double lT = std::log(T);

    Vec3 fm;
    double fe;
    eval(uc, std::exp(lT), fm, fe);

    for (int iter = 0; iter < 40; ++iter) {
        if (max_abs(fm) <= mtol && std::abs(fe) <= etol) {
            u = uc;
            T = std::exp(lT);
            return true;
        }
        // finite-difference Jacobian in (u, log T)
        const double du = 1e-6 * std::sqrt(std::exp(lT)) + 1e-12;
        const double dl = 1e-6;
        double J[4][4];
        for (int col = 0; col < 4; ++col) {
            Vec3 up = uc;
            double lp = lT;
            if (col < 3)
                up[col] += du;
            else
                lp += dl;
            Vec3 gm;
            double ge;
            eval(up, std::exp(lp), gm, ge);
            const double step = col < 3 ? du : dl;
            for (int row = 0; row < 3; ++row) J[row][col] = (gm[row] - fm[row]) / step;
            J[3][col] = (ge - fe) / step;
        }
        double rhs[4] = {-fm.x, -fm.y, -fm.z, -fe};
        double dz[4];
        if (!solve4(J, rhs, dz)) return false;

        // damped update, accept on residual decrease
        const double r0 = max_abs(fm) / (mom_scale + 1e-300) +
                          std::abs(fe) / (en_scale + 1e-300);
        double lambda = 1.0;
        bool accepted = false;
        for (int back = 0; back < 8; ++back) {
            const Vec3 ut{uc.x + lambda * dz[0], uc.y + lambda * dz[1],
                          uc.z + lambda * dz[2]};
            const double lt = lT + lambda * dz[3];
            Vec3 gm;
            double ge;
            eval(ut, std::exp(lt), gm, ge);
            const double r1 = max_abs(gm) / (mom_scale + 1e-300) +
                              std::abs(ge) / (en_scale + 1e-300);
            if (r1 < r0 || r1 < 1e-15) {
                uc = ut;
                lT = lt;
                fm = gm;
                fe = ge;
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if (!accepted) return false;
    }
    if (max_abs(fm) <= mtol && std::abs(fe) <= etol) {
        u = uc;
        T = std::exp(lT);
        return true;
    }
    return false;
}

CoefficientSet ConservativeProvider::coefficients(const PlasmaState& state) const {
    const auto moments = compute_all_moments(state);
    CoefficientSet set = compute_coefficients(moments, state.species, constants_);
    const int s = set.s;

    std::vector<PlaneSums> planes(s);
    for (int i = 0; i < s; ++i)
        planes[i] = compute_plane_sums(state.grid, state.distributions[i]);

    if (warm_u_.size() != set.u.size()) {
        warm_u_ = set.u;
        warm_T_ = set.T;
    }

    for (int i = 0; i < s; ++i)
        for (int j = i; j < s; ++j) {
            const double cji = set.c_at(j, i);
            const double cij = set.c_at(i, j);
            const double mi = state.species[i].mass;
            const double mj = state.species[j].mass;

            auto eval = [&](const Vec3& u, double T, Vec3& fm, double& fe) {
                const PairRateMoments a =
                    pair_flux_moments(state.grid, planes[i], cji, mi, u, T);
                if (i == j) {
                    fm = a.momentum;
                    fe = a.energy;
                    return;
                }
                const PairRateMoments b =
                    pair_flux_moments(state.grid, planes[j], cij, mj, u, T);
                fm = mi * a.momentum + mj * b.momentum;
                fe = mi * a.energy + mj * b.energy;
            };

            // residual scale: the one-sided exchange magnitudes
            const double Ti = moments[i].temperature, Tj = moments[j].temperature;
            const double mom_scale =
                cji * mi * mi / Ti * moments[i].number_density *
                    (std::sqrt(Ti / mi) + norm(moments[i].bulk_velocity)) +
                cij * mj * mj / Tj * moments[j].number_density *
                    (std::sqrt(Tj / mj) + norm(moments[j].bulk_velocity));
            const double en_scale = 6.0 * (cji * mi * moments[i].number_density +
                                           cij * mj * moments[j].number_density) +
                                    mom_scale;

            Vec3 u = warm_u_[static_cast<std::size_t>(j) * s + i];
            double T = warm_T_[static_cast<std::size_t>(j) * s + i];
            if (!(T > 0.0)) {
                u = set.u_at(j, i);
                T = set.T_at(j, i);
            }
            bool ok = solve_pair_parameters(eval, u, T, mom_scale, en_scale);
            if (!ok) {
                // retry from the analytic values before giving up
                u = set.u_at(j, i);
                T = set.T_at(j, i);
                ok = solve_pair_parameters(eval, u, T, mom_scale, en_scale);
            }
            if (ok) {
                set.u_at(j, i) = u;
                set.T_at(j, i) = T;
                set.u_at(i, j) = u;
                set.T_at(i, j) = T;
                warm_u_[static_cast<std::size_t>(j) * s + i] = u;
                warm_T_[static_cast<std::size_t>(j) * s + i] = T;
            } else {
                ++fallbacks_;
            }
        }
    return set;
}

CoefficientSet MatchedFixedProvider::coefficients(const PlasmaState& state) const {
    if (state.species_count() != 1)
        throw std::invalid_argument("MatchedFixedProvider: single species only");
    const double mass = state.species[0].mass;
    const auto mom = compute_moments(state.grid, state.distributions[0], mass);
    const PlaneSums planes = compute_plane_sums(state.grid, state.distributions[0]);

    // analytic rates of (integral f v, integral f |v|^2) for the target operator
    const double n = mom.number_density;
    const double E2 = 3.0 * n * mom.temperature / mass + n * norm2(mom.bulk_velocity);
    const Vec3 mom_target = c_ * (mass / T_target_) * n * (u_target_ - mom.bulk_velocity);
    const double en_target =
        2.0 * c_ * (3.0 * n - (mass / T_target_) * (E2 - n * dot(u_target_, mom.bulk_velocity)));

    auto eval = [&](const Vec3& u, double T, Vec3& fm, double& fe) {
        const PairRateMoments r = pair_flux_moments(state.grid, planes, c_, mass, u, T);
        fm = r.momentum - mom_target;
        fe = r.energy - en_target;
    };
    const double mom_scale = c_ * (mass / T_target_) * n *
                                 (std::sqrt(T_target_ / mass) + norm(mom.bulk_velocity)) +
                             max_abs(mom_target);
    const double en_scale = 6.0 * c_ * n + std::abs(en_target);

    Vec3 u = u_target_;
    double T = T_target_;
    CoefficientSet set;
    set.s = 1;
    set.c = {c_};
    if (solve_pair_parameters(eval, u, T, mom_scale, en_scale)) {
        set.u = {u};
        set.T = {T};
    } else {
        ++fallbacks_;
        set.u = {u_target_};
        set.T = {T_target_};
    }
    return set;
}

} // namespace fpls
