#include "fpls/check.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "fpls/collision.hpp"
#include "fpls/integrator.hpp"
#include "fpls/moment_oracle.hpp"

namespace fpls {

namespace {

std::vector<SpeciesMoments> random_moments(std::mt19937& rng,
                                           const std::vector<SpeciesParams>& species) {
    std::uniform_real_distribution<double> un(0.2, 3.0), uu(-1.5, 1.5), uT(0.2, 4.0);
    std::vector<SpeciesMoments> out(species.size());
    for (std::size_t i = 0; i < species.size(); ++i) {
        out[i].number_density = un(rng);
        out[i].mass_density = species[i].mass * out[i].number_density;
        out[i].bulk_velocity = Vec3{uu(rng), uu(rng), uu(rng)};
        out[i].temperature = uT(rng);
    }
    return out;
}

std::string fmt(double v) {
    std::ostringstream o;
    o.precision(6);
    o << v;
    return o.str();
}

SuiteResult symmetry_suite(const RunDescription& desc, std::mt19937& rng) {
    SuiteResult res{"symmetry", true, ""};
    const int s = static_cast<int>(desc.species.size());
    for (int trial = 0; trial < 200 && res.passed; ++trial) {
        auto mom = random_moments(rng, desc.species);
        CoefficientSet set = compute_coefficients(mom, desc.species, desc.constants);
        if (desc.corrupt_symmetry && s > 1) set.T_at(0, 1) *= 1.0 + 1e-6;
        for (int i = 0; i < s && res.passed; ++i)
            for (int j = 0; j < s && res.passed; ++j) {
                const double dT = std::abs(set.T_at(i, j) - set.T_at(j, i));
                const double du = max_abs(set.u_at(i, j) - set.u_at(j, i));
                if (dT > 1e-12 * std::abs(set.T_at(i, j)) ||
                    du > 1e-12 * (1.0 + max_abs(set.u_at(i, j)))) {
                    res.passed = false;
                    res.detail = "trial " + std::to_string(trial) + ": pair (" +
                                 std::to_string(i) + "," + std::to_string(j) +
                                 ") T mismatch " + fmt(dT) + ", u mismatch " + fmt(du);
                }
                if (i == j && (set.T_at(i, i) != mom[i].temperature ||
                               max_abs(set.u_at(i, i) - mom[i].bulk_velocity) != 0.0)) {
                    res.passed = false;
                    res.detail = "diagonal entry differs from species moments";
                }
            }
    }
    return res;
}

SuiteResult conservation_suite(const RunDescription& desc, std::mt19937& rng) {
    SuiteResult res{"conservation-identities", true, ""};
    const int s = static_cast<int>(desc.species.size());
    for (int trial = 0; trial < 200 && res.passed; ++trial) {
        auto mom = random_moments(rng, desc.species);
        MomentState st = moments_to_state(mom, 0.0);
        const CoefficientSet set = compute_coefficients(mom, desc.species, desc.constants);
        for (int i = 0; i < s && res.passed; ++i)
            for (int j = 0; j < s && res.passed; ++j) {
                const double mi = desc.species[i].mass, mj = desc.species[j].mass;
                // pairwise momentum: c_ji m_i rho_i (u_ji - u_i) + mirrored = 0
                const Vec3 a = set.c_at(j, i) * mi * mom[i].mass_density *
                               (set.u_at(j, i) - st.u[i]);
                const Vec3 b = set.c_at(i, j) * mj * mom[j].mass_density *
                               (set.u_at(i, j) - st.u[j]);
                const double scale = max_abs(a) + max_abs(b) + 1e-30;
                if (max_abs(a + b) > 1e-12 * scale) {
                    res.passed = false;
                    res.detail = "trial " + std::to_string(trial) +
                                 ": momentum identity residual " +
                                 fmt(max_abs(a + b) / scale);
                }
            }
        // energy: the full moment derivative conserves the totals
        const MomentDerivative d = moment_derivative(st, desc.species, desc.constants);
        Vec3 dp{};
        double de = 0.0, scale_p = 0.0, scale_e = 0.0;
        for (int i = 0; i < s; ++i) {
            const double mi = desc.species[i].mass;
            dp += mom[i].mass_density * d.du[i];
            de += 3.0 * st.n[i] * d.dT[i] +
                  2.0 * mom[i].mass_density * dot(st.u[i], d.du[i]);
            scale_p += mom[i].mass_density * (max_abs(d.du[i]) + 1.0);
            scale_e += 3.0 * st.n[i] * (std::abs(d.dT[i]) + 1.0);
            (void)mi;
        }
        if (max_abs(dp) > 1e-12 * scale_p || std::abs(de) > 1e-12 * scale_e) {
            res.passed = false;
            res.detail = "trial " + std::to_string(trial) + ": total derivative P=" +
                         fmt(max_abs(dp)) + " E=" + fmt(std::abs(de));
        }
    }
    return res;
}

SuiteResult equilibrium_suite(const RunDescription& desc, std::mt19937& rng) {
    SuiteResult res{"equilibrium-annihilation", true, ""};
    const VelocityGrid grid(std::min(desc.n_per_axis, 24), desc.extent);
    std::uniform_real_distribution<double> uT(0.5, 1.5), uu(-0.5, 0.5);
    for (int trial = 0; trial < 5 && res.passed; ++trial) {
        for (std::size_t i = 0; i < desc.species.size() && res.passed; ++i) {
            const double m = desc.species[i].mass;
            const double T = uT(rng) * desc.init[i].temperature;
            const Vec3 u{uu(rng), uu(rng), uu(rng)};
            const Field f = maxwellian_field(grid, desc.init[i].density, m, u, T);
            Field rate(grid.total_cells(), 0.0);
            accumulate_pair_rate(grid, f, 1.0, m, u, T, rate);
            double peak = 0.0, worst = 0.0;
            for (std::size_t q = 0; q < f.size(); ++q) {
                peak = std::max(peak, std::abs(f[q]));
                worst = std::max(worst, std::abs(rate[q]));
            }
            const double h2 = grid.spacing() * grid.spacing();
            if (worst > 1e-12 * peak / h2) {
                res.passed = false;
                res.detail = "species " + desc.species[i].label +
                             ": stationary rate residual " + fmt(worst * h2 / peak);
            }
        }
    }
    return res;
}

SuiteResult positivity_suite(const RunDescription& desc, std::mt19937& rng) {
    SuiteResult res{"positivity", true, ""};
    const VelocityGrid grid(std::min(desc.n_per_axis, 16), desc.extent);
    std::uniform_real_distribution<double> uf(0.0, 1.0), udt(0.0, 3.0), uu(-1.0, 1.0),
        uT(0.3, 3.0);
    for (int trial = 0; trial < 5 && res.passed; ++trial) {
        Field f(grid.total_cells());
        for (auto& v : f) v = uf(rng);
        const double dt = std::pow(10.0, udt(rng));  // any dt > 0
        const double T = uT(rng);
        const Vec3 u{uu(rng), uu(rng), uu(rng)};
        for (int axis = 0; axis < 3 && res.passed; ++axis) {
            Field g = f;
            detail::backward_euler_axis(grid, g, 1.0, desc.species[0].mass, u[axis], T,
                                        dt, axis);
            for (double v : g)
                if (v < 0.0) {
                    res.passed = false;
                    res.detail = "negative value " + fmt(v) + " after implicit step dt=" +
                                 fmt(dt);
                    break;
                }
        }
    }
    return res;
}

} // namespace

std::vector<SuiteResult> run_property_suites(const RunDescription& desc) {
    std::mt19937 rng(static_cast<std::mt19937::result_type>(desc.seed + 17));
    std::vector<SuiteResult> out;
    out.push_back(symmetry_suite(desc, rng));
    out.push_back(conservation_suite(desc, rng));
    out.push_back(equilibrium_suite(desc, rng));
    out.push_back(positivity_suite(desc, rng));
    return out;
}

} // namespace fpls
