#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fpls/diagnostics.hpp"
#include "fpls/model.hpp"

namespace fpls {

/// Diagnostics CSV. First line is a schema-version comment, then the
/// header: t, per-species n,ux,uy,uz,T (suffixed with the species label),
/// then P_x,P_y,P_z,E,H,D,Hrel,minTij,negcells. Values are written with
/// round-trip precision.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<SpeciesParams>& species);
    void write_row(const DiagnosticRow& row);
    void flush();

private:
    std::string path_;
    std::vector<std::string> labels_;
    std::string buffer_;
};

/// Flat binary snapshot:
///   "FPLS" | u16 version | u16 s | u32 n_per_axis | f64 extent | f64 time
///   per species: u16 label length | label bytes
///   payload: per species n^3 little-endian f64, x-fastest.
/// write/read round-trip bitwise.
void write_snapshot(const std::string& path, const PlasmaState& state);
PlasmaState read_snapshot(const std::string& path);

void write_text_file(const std::string& path, const std::string& content);

std::string csv_path(const std::string& dir, const std::string& prefix);
std::string manifest_path(const std::string& dir, const std::string& prefix);
std::string snapshot_path(const std::string& dir, const std::string& prefix, int seq);
std::string oracle_csv_path(const std::string& dir, const std::string& prefix);

/// Build identifier recorded in run manifests.
std::string build_identifier();

} // namespace fpls
