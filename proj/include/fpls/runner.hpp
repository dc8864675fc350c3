#pragma once

#include <memory>
#include <string>
#include <vector>

#include "fpls/config.hpp"
#include "fpls/diagnostics.hpp"
#include "fpls/moment_oracle.hpp"
#include "fpls/provider.hpp"

namespace fpls {

struct TrajectoryRecord {
    std::vector<DiagnosticRow> rows;
    std::vector<MomentState> moment_series;  // sampled with the rows
    long clamped_cells = 0;
    double max_clamped_magnitude = 0.0;      // largest |negative| zeroed
    double min_pair_temperature = 0.0;       // over the whole run
    double max_entropy_uptick = 0.0;         // worst per-step H increase
    double temperature_floor_estimate = 0.0;
    long provider_fallbacks = 0;
    long steps = 0;
    std::string error;                       // empty on success

    bool ok() const { return error.empty(); }
};

std::unique_ptr<CoefficientProvider> make_provider(const RunDescription& desc,
                                                   const PlasmaState& initial);

/// Runs the configured simulation. When write_outputs is set, emits the
/// diagnostics CSV, optional snapshots, and the run manifest into the
/// configured directory; on failure the partial CSV is kept and the error
/// is recorded in both the return value and the manifest.
TrajectoryRecord run_simulation(const RunDescription& desc, bool write_outputs);

/// PDE and moment-ODE trajectories side by side, for the oracle command.
struct OracleResult {
    TrajectoryRecord pde;
    std::vector<MomentState> ode;
    TrajectoryDeviation deviation;
};
OracleResult run_oracle(const RunDescription& desc, bool write_outputs);

} // namespace fpls
