#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "fpls/check.hpp"
#include "fpls/config.hpp"
#include "fpls/io.hpp"
#include "fpls/runner.hpp"

namespace {

// exit codes: 0 ok, 1 validation error, 2 runtime/numerical failure,
// 3 threshold failure
constexpr int kOk = 0;
constexpr int kValidationError = 1;
constexpr int kRuntimeError = 2;
constexpr int kThresholdError = 3;

int load_or_complain(const std::string& path, fpls::RunDescription& desc) {
    fpls::ConfigResult cfg = fpls::load_config(path);
    if (!cfg.ok()) {
        std::fprintf(stderr, "config '%s' is invalid:\n", path.c_str());
        for (const auto& e : cfg.errors) std::fprintf(stderr, "  %s\n", e.c_str());
        return kValidationError;
    }
    desc = *cfg.description;
    for (const auto& w : desc.warnings)
        std::fprintf(stderr, "warning: %s\n", w.c_str());
    return kOk;
}

int cmd_simulate(const std::string& path) {
    fpls::RunDescription desc;
    if (int rc = load_or_complain(path, desc)) return rc;
    const fpls::TrajectoryRecord record = fpls::run_simulation(desc, true);
    if (!record.ok()) {
        std::fprintf(stderr, "run failed: %s\n", record.error.c_str());
        return kRuntimeError;
    }
    std::printf("wrote %s (%zu rows, %ld steps, %ld clamped cells)\n",
                fpls::csv_path(desc.directory, desc.prefix).c_str(), record.rows.size(),
                record.steps, record.clamped_cells);
    std::printf("min pair temperature %.6g (entropy-floor estimate %.3g), "
                "max entropy uptick %.3g\n",
                record.min_pair_temperature, record.temperature_floor_estimate,
                record.max_entropy_uptick);
    return kOk;
}

int cmd_check(const std::string& path) {
    fpls::RunDescription desc;
    if (int rc = load_or_complain(path, desc)) return rc;
    bool all = true;
    for (const auto& suite : fpls::run_property_suites(desc)) {
        std::printf("suite %-26s %s\n", suite.name.c_str(),
                    suite.passed ? "PASS" : "FAIL");
        if (!suite.passed) {
            std::printf("  first counterexample: %s\n", suite.detail.c_str());
            all = false;
        }
    }
    return all ? kOk : kRuntimeError;
}

int cmd_oracle(const std::string& path) {
    fpls::RunDescription desc;
    if (int rc = load_or_complain(path, desc)) return rc;
    const fpls::OracleResult result = fpls::run_oracle(desc, true);
    if (!result.pde.ok()) {
        std::fprintf(stderr, "run failed: %s\n", result.pde.error.c_str());
        return kRuntimeError;
    }
    for (const auto& e : result.deviation.entries)
        if (e.deviation > 0.0)
            std::printf("deviation %-8s %.3e\n", e.quantity.c_str(), e.deviation);
    std::printf("max deviation %.3e (threshold %.3e)\n", result.deviation.max,
                desc.oracle_threshold);
    return result.deviation.max <= desc.oracle_threshold ? kOk : kThresholdError;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"multispecies velocity-space collisional relaxation solver"};
    app.require_subcommand(1);

    std::string sim_cfg, check_cfg, oracle_cfg;
    auto* sim = app.add_subcommand("simulate", "run a simulation from a config file");
    sim->add_option("config", sim_cfg, "config file")->required();
    auto* check = app.add_subcommand("check", "run the property suites");
    check->add_option("config", check_cfg, "config file")->required();
    auto* oracle =
        app.add_subcommand("oracle", "compare the solver against the moment system");
    oracle->add_option("config", oracle_cfg, "config file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? kValidationError : kOk;
    }

    try {
        if (sim->parsed()) return cmd_simulate(sim_cfg);
        if (check->parsed()) return cmd_check(check_cfg);
        if (oracle->parsed()) return cmd_oracle(oracle_cfg);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kRuntimeError;
    }
    return kValidationError;
}
