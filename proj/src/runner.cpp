#include "fpls/runner.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <sstream>

#include "fpls/collision.hpp"
#include "fpls/integrator.hpp"
#include "fpls/io.hpp"

namespace fpls {

std::unique_ptr<CoefficientProvider> make_provider(const RunDescription& desc,
                                                   const PlasmaState& initial) {
    if (desc.epsilon_truncation > 0.0) {
        std::vector<double> densities;
        for (std::size_t i = 0; i < initial.species_count(); ++i)
            densities.push_back(initial.grid.integrate(initial.distributions[i]));
        return std::make_unique<TruncatedProvider>(desc.constants, std::move(densities),
                                                   desc.epsilon_truncation,
                                                   desc.epsilon_reading);
    }
    if (desc.conserve_exact)
        return std::make_unique<ConservativeProvider>(desc.constants);
    return std::make_unique<AnalyticProvider>(desc.constants);
}

namespace {

DiagnosticRow make_row(const PlasmaState& state, const CoefficientSet& coeffs,
                       const std::vector<Field>& equilibria, long clamped) {
    DiagnosticRow row;
    row.time = state.time;
    row.moments = compute_all_moments(state);
    const ConservedTotals totals = conserved_totals(state);
    row.momentum = totals.momentum;
    row.energy = totals.energy;
    row.entropy = entropy(state);
    row.dissipation = entropy_dissipation_rate(state, coeffs);
    row.relative_entropy = relative_entropy(state, equilibria);
    row.min_pair_temperature = coeffs.min_T();
    row.negative_cells = clamped;
    return row;
}

} // namespace

TrajectoryRecord run_simulation(const RunDescription& desc, bool write_outputs) {
    TrajectoryRecord record;
    record.min_pair_temperature = std::numeric_limits<double>::infinity();

    std::unique_ptr<CsvWriter> csv;
    std::string manifest_file;
    try {
        const VelocityGrid grid(desc.n_per_axis, desc.extent);
        PlasmaState state = init_maxwellian_state(grid, desc.species, desc.init);
        record.temperature_floor_estimate = temperature_floor_candidate(state);
        const auto provider = make_provider(desc, state);

        // equilibrium target from the conserved totals of the initial state
        const auto initial_moments = compute_all_moments(state);
        const GlobalEquilibrium eq =
            global_equilibrium(grid, state.species, initial_moments);

        if (write_outputs) {
            std::filesystem::create_directories(desc.directory);
            csv = std::make_unique<CsvWriter>(csv_path(desc.directory, desc.prefix),
                                              desc.species);
            std::ostringstream manifest;
            manifest << "# run manifest\n"
                     << "build = " << build_identifier() << "\n";
            for (const auto& w : desc.warnings) manifest << "warning = " << w << "\n";
            manifest << describe(desc);
            manifest_file = manifest_path(desc.directory, desc.prefix);
            write_text_file(manifest_file, manifest.str());
        }

        CoefficientSet coeffs = provider->coefficients(state);
        DiagnosticRow row = make_row(state, coeffs, eq.maxwellians, 0);
        record.rows.push_back(row);
        record.moment_series.push_back(moments_to_state(row.moments, state.time));
        record.min_pair_temperature = std::min(record.min_pair_temperature, coeffs.min_T());
        if (csv) csv->write_row(row);

        int snapshot_seq = 0;
        double next_snapshot = desc.snapshot_every > 0.0
                                   ? desc.snapshot_every
                                   : std::numeric_limits<double>::infinity();
        if (write_outputs && desc.snapshot_every > 0.0)
            write_snapshot(snapshot_path(desc.directory, desc.prefix, snapshot_seq++),
                           state);

        const double t_end = desc.policy.t_end;
        const double tiny = 1e-12 * std::max(1.0, t_end);
        double next_output = desc.policy.output_every;
        double H_prev = row.entropy;

        while (state.time < t_end - tiny) {
            coeffs = provider->coefficients(state);
            const double dt_auto =
                desc.policy.dt ? *desc.policy.dt
                               : stable_dt(state, coeffs, desc.policy.safety)
                                     .value(desc.policy.scheme, desc.policy.output_every);
            const double target = std::min({next_output, next_snapshot, t_end});
            double dt = std::min(dt_auto, target - state.time);
            if (dt <= 0.0) dt = tiny;

            const StepStats stats = step(state, *provider, desc.policy, dt);
            record.clamped_cells += stats.clamped_cells;
            record.max_clamped_magnitude =
                std::max(record.max_clamped_magnitude, -stats.max_negative);
            ++record.steps;

            const double H_now = entropy(state);
            record.max_entropy_uptick =
                std::max(record.max_entropy_uptick, H_now - H_prev);
            H_prev = H_now;

            const bool at_output = state.time >= next_output - tiny;
            const bool at_snapshot = state.time >= next_snapshot - tiny;
            const bool at_end = state.time >= t_end - tiny;
            if (at_output || at_end) {
                const CoefficientSet now = provider->coefficients(state);
                row = make_row(state, now, eq.maxwellians, record.clamped_cells);
                record.rows.push_back(row);
                record.moment_series.push_back(moments_to_state(row.moments, state.time));
                record.min_pair_temperature =
                    std::min(record.min_pair_temperature, now.min_T());
                if (csv) csv->write_row(row);
                while (next_output <= state.time + tiny)
                    next_output += desc.policy.output_every;
            }
            if (at_snapshot) {
                if (write_outputs)
                    write_snapshot(
                        snapshot_path(desc.directory, desc.prefix, snapshot_seq++), state);
                next_snapshot += desc.snapshot_every;
            }
        }
        record.provider_fallbacks = provider->fallback_count();
    } catch (const std::exception& e) {
        record.error = e.what();
        if (!manifest_file.empty()) {
            try {
                std::ostringstream manifest;
                manifest << "# run manifest (failed)\n"
                         << "error = " << record.error << "\n"
                         << "build = " << build_identifier() << "\n"
                         << describe(desc);
                write_text_file(manifest_file, manifest.str());
            } catch (...) {
            }
        }
    }
    return record;
}

OracleResult run_oracle(const RunDescription& desc, bool write_outputs) {
    OracleResult result;
    result.pde = run_simulation(desc, false);
    if (!result.pde.ok()) return result;

    const MomentState initial = result.pde.moment_series.front();
    const double dt = std::min(desc.policy.output_every / 20.0,
                               0.02 / std::max(1.0, desc.constants.coulomb_log));
    result.ode = integrate_moments(initial, desc.species, desc.constants,
                                   desc.policy.t_end, dt, desc.policy.output_every);
    result.deviation = compare_trajectories(result.ode, result.pde.moment_series);

    if (write_outputs) {
        std::filesystem::create_directories(desc.directory);
        std::string out = "# fpls-oracle-csv 1\nsource,t";
        for (const auto& sp : desc.species)
            out += ",n_" + sp.label + ",ux_" + sp.label + ",uy_" + sp.label + ",uz_" +
                   sp.label + ",T_" + sp.label;
        out += "\n";
        char buf[32];
        auto append_series = [&](const char* tag, const std::vector<MomentState>& series) {
            for (const auto& st : series) {
                out += tag;
                std::snprintf(buf, sizeof buf, ",%.17g", st.time);
                out += buf;
                for (std::size_t i = 0; i < st.species_count(); ++i) {
                    std::snprintf(buf, sizeof buf, ",%.17g", st.n[i]);
                    out += buf;
                    for (int d = 0; d < 3; ++d) {
                        std::snprintf(buf, sizeof buf, ",%.17g", st.u[i][d]);
                        out += buf;
                    }
                    std::snprintf(buf, sizeof buf, ",%.17g", st.T[i]);
                    out += buf;
                }
                out += "\n";
            }
        };
        append_series("pde", result.pde.moment_series);
        append_series("ode", result.ode);
        write_text_file(oracle_csv_path(desc.directory, desc.prefix), out);
    }
    return result;
}

} // namespace fpls
