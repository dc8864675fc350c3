#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fpls/coefficients.hpp"
#include "fpls/integrator.hpp"
#include "fpls/model.hpp"

namespace fpls {

/// Fully resolved run description. Produced only by validate_config; every
/// field is usable as-is.
struct RunDescription {
    int n_per_axis = 32;
    double extent = 8.0;
    PhysicalConstants constants;
    std::vector<SpeciesParams> species;
    std::vector<MaxwellianInit> init;
    StepPolicy policy;
    double snapshot_every = 0.0;       // 0 = never
    double epsilon_truncation = 0.0;   // 0 = off
    TruncationIndexReading epsilon_reading = TruncationIndexReading::consistent;
    bool conserve_exact = true;        // pair parameters from discrete constraints
    unsigned long seed = 0;
    double oracle_threshold = 0.01;
    bool corrupt_symmetry = false;     // test hook for the check command
    std::string directory = ".";
    std::string prefix = "fpls";
    std::vector<std::string> warnings;
};

struct ConfigResult {
    std::optional<RunDescription> description;
    std::vector<std::string> errors;

    bool ok() const { return description.has_value(); }
};

/// Parses and validates key = value text with [section] headers. Unknown
/// keys and malformed values are reported with their field path; all
/// violations are collected rather than stopping at the first.
ConfigResult validate_config(const std::string& text);

ConfigResult load_config(const std::string& path);

/// Canonical text form of a resolved description (defaults filled in);
/// echoed into the run manifest.
std::string describe(const RunDescription& desc);

} // namespace fpls
