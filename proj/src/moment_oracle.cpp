#include "fpls/moment_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fpls {

MomentState moments_to_state(std::span<const SpeciesMoments> moments, double time) {
    MomentState st;
    st.time = time;
    for (const auto& m : moments) {
        st.n.push_back(m.number_density);
        st.u.push_back(m.bulk_velocity);
        st.T.push_back(m.temperature);
    }
    return st;
}

namespace {

std::vector<SpeciesMoments> to_moments(const MomentState& st,
                                       std::span<const SpeciesParams> species) {
    std::vector<SpeciesMoments> out(st.species_count());
    for (std::size_t i = 0; i < st.species_count(); ++i) {
        out[i].number_density = st.n[i];
        out[i].mass_density = species[i].mass * st.n[i];
        out[i].bulk_velocity = st.u[i];
        out[i].temperature = st.T[i];
    }
    return out;
}

} // namespace

MomentDerivative moment_derivative(const MomentState& state,
                                   std::span<const SpeciesParams> species,
                                   const PhysicalConstants& constants) {
    const int s = static_cast<int>(state.species_count());
    for (int i = 0; i < s; ++i)
        if (!(state.T[i] > 0.0))
            throw std::invalid_argument("moment_derivative: non-positive temperature");

    const auto moments = to_moments(state, species);
    const CoefficientSet coeffs = compute_coefficients(moments, species, constants);

    MomentDerivative d;
    d.du.assign(s, Vec3{});
    d.dT.assign(s, 0.0);
    for (int i = 0; i < s; ++i) {
        const double mi = species[i].mass;
        const double Ei = 3.0 * state.n[i] * state.T[i] / mi + state.n[i] * norm2(state.u[i]);
        Vec3 du{};
        double dE = 0.0;
        for (int j = 0; j < s; ++j) {
            const double c = coeffs.c_at(j, i);
            const double Tji = coeffs.T_at(j, i);
            const Vec3& uji = coeffs.u_at(j, i);
            du += c * (mi / Tji) * (uji - state.u[i]);
            dE += 2.0 * c * (3.0 * state.n[i] -
                             (mi / Tji) * (Ei - state.n[i] * dot(uji, state.u[i])));
        }
        d.du[i] = du;
        d.dT[i] = (mi / 3.0) * (dE / state.n[i] - 2.0 * dot(state.u[i], du));
    }
    return d;
}

namespace {

MomentState axpy(const MomentState& base, double a, const MomentDerivative& d) {
    MomentState out = base;
    for (std::size_t i = 0; i < base.species_count(); ++i) {
        out.u[i] = base.u[i] + a * d.du[i];
        out.T[i] = base.T[i] + a * d.dT[i];
    }
    return out;
}

} // namespace

std::vector<MomentState> integrate_moments(MomentState state,
                                           std::span<const SpeciesParams> species,
                                           const PhysicalConstants& constants,
                                           double t_end, double dt, double cadence) {
    if (!(dt > 0.0)) throw std::invalid_argument("integrate_moments: dt must be > 0");
    if (cadence <= 0.0) cadence = t_end > 0.0 ? t_end : dt;

    std::vector<MomentState> out{state};
    double next_sample = cadence;
    while (state.time < t_end - 1e-15 * std::max(1.0, t_end)) {
        const double step = std::min(dt, t_end - state.time);
        const MomentDerivative k1 = moment_derivative(state, species, constants);
        const MomentDerivative k2 =
            moment_derivative(axpy(state, 0.5 * step, k1), species, constants);
        const MomentDerivative k3 =
            moment_derivative(axpy(state, 0.5 * step, k2), species, constants);
        const MomentDerivative k4 =
            moment_derivative(axpy(state, step, k3), species, constants);
        for (std::size_t i = 0; i < state.species_count(); ++i) {
            state.u[i] += (step / 6.0) *
                          (k1.du[i] + 2.0 * k2.du[i] + 2.0 * k3.du[i] + k4.du[i]);
            state.T[i] += (step / 6.0) *
                          (k1.dT[i] + 2.0 * k2.dT[i] + 2.0 * k3.dT[i] + k4.dT[i]);
            if (!(state.T[i] > 0.0))
                throw std::runtime_error("integrate_moments: temperature left (0, inf)");
        }
        state.time += step;
        if (state.time >= next_sample - 1e-12 * std::max(1.0, t_end) ||
            state.time >= t_end - 1e-15 * std::max(1.0, t_end)) {
            out.push_back(state);
            while (next_sample <= state.time + 1e-12 * std::max(1.0, t_end))
                next_sample += cadence;
        }
    }
    return out;
}

TrajectoryDeviation compare_trajectories(std::span<const MomentState> reference,
                                         std::span<const MomentState> other) {
    if (reference.empty() || other.empty())
        throw std::invalid_argument("compare_trajectories: empty series");
    const std::size_t s = reference.front().species_count();
    if (other.front().species_count() != s)
        throw std::invalid_argument("compare_trajectories: species count mismatch");
    const double t0 = std::max(reference.front().time, other.front().time);
    const double t1 = std::min(reference.back().time, other.back().time);
    if (!(t1 >= t0))
        throw std::invalid_argument("compare_trajectories: non-overlapping time ranges");

    // linear interpolation of the other series onto the reference samples
    auto interp = [&](double t, std::size_t i, int q) {
        std::size_t hi = 1;
        while (hi + 1 < other.size() && other[hi].time < t) ++hi;
        const auto& a = other[hi - 1];
        const auto& b = other[hi];
        const double w = b.time > a.time ? (t - a.time) / (b.time - a.time) : 0.0;
        auto value = [&](const MomentState& st) {
            if (q == 0) return st.n[i];
            if (q <= 3) return st.u[i][q - 1];
            return st.T[i];
        };
        return (1.0 - w) * value(a) + w * value(b);
    };

    static const char* names[5] = {"n", "ux", "uy", "uz", "T"};
    TrajectoryDeviation dev;
    for (std::size_t i = 0; i < s; ++i)
        for (int q = 0; q < 5; ++q) {
            double scale = 0.0, worst = 0.0;
            for (const auto& r : reference) {
                if (r.time < t0 - 1e-12 || r.time > t1 + 1e-12) continue;
                const double rv = q == 0 ? r.n[i] : (q <= 3 ? r.u[i][q - 1] : r.T[i]);
                scale = std::max(scale, std::abs(rv));
            }
            scale = std::max(scale, 1e-9);
            for (const auto& r : reference) {
                if (r.time < t0 - 1e-12 || r.time > t1 + 1e-12) continue;
                const double rv = q == 0 ? r.n[i] : (q <= 3 ? r.u[i][q - 1] : r.T[i]);
                worst = std::max(worst, std::abs(rv - interp(r.time, i, q)) / scale);
            }
            dev.entries.push_back(
                {std::string(names[q]) + "_" + std::to_string(i), worst});
            dev.max = std::max(dev.max, worst);
        }
    return dev;
}

} // namespace fpls
