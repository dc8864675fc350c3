#include "fpls/io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fpls {

namespace {

void append_number(std::string& out, double v) {
    char buf[32];
    const int len = std::snprintf(buf, sizeof buf, "%.17g", v);
    out.append(buf, static_cast<std::size_t>(len));
}

} // namespace

CsvWriter::CsvWriter(const std::string& path, const std::vector<SpeciesParams>& species)
    : path_(path) {
    for (const auto& sp : species) labels_.push_back(sp.label);
    buffer_ = "# fpls-csv 1\n";
    buffer_ += "t";
    for (const auto& l : labels_)
        buffer_ += ",n_" + l + ",ux_" + l + ",uy_" + l + ",uz_" + l + ",T_" + l;
    buffer_ += ",P_x,P_y,P_z,E,H,D,Hrel,minTij,negcells\n";
    flush();
}

void CsvWriter::write_row(const DiagnosticRow& row) {
    std::string& b = buffer_;
    append_number(b, row.time);
    for (const auto& m : row.moments) {
        b += ',';
        append_number(b, m.number_density);
        b += ',';
        append_number(b, m.bulk_velocity.x);
        b += ',';
        append_number(b, m.bulk_velocity.y);
        b += ',';
        append_number(b, m.bulk_velocity.z);
        b += ',';
        append_number(b, m.temperature);
    }
    b += ',';
    append_number(b, row.momentum.x);
    b += ',';
    append_number(b, row.momentum.y);
    b += ',';
    append_number(b, row.momentum.z);
    b += ',';
    append_number(b, row.energy);
    b += ',';
    append_number(b, row.entropy);
    b += ',';
    append_number(b, row.dissipation);
    b += ',';
    append_number(b, row.relative_entropy);
    b += ',';
    append_number(b, row.min_pair_temperature);
    b += ',' + std::to_string(row.negative_cells) + '\n';
    flush();
}

void CsvWriter::flush() {
    if (buffer_.empty()) return;
    std::ofstream out(path_, std::ios::app | std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path_ + "'");
    out.write(buffer_.data(), static_cast<std::streamsize>(buffer_.size()));
    if (!out) throw std::runtime_error("write failed for '" + path_ + "'");
    buffer_.clear();
}

namespace {

// serialize scalars explicitly little-endian so snapshots are portable
template <typename T>
void put(std::string& out, T v) {
    static_assert(std::is_trivially_copyable_v<T>);
    unsigned char bytes[sizeof(T)];
    std::memcpy(bytes, &v, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) {
        for (std::size_t k = 0; k < sizeof(T) / 2; ++k)
            std::swap(bytes[k], bytes[sizeof(T) - 1 - k]);
    }
    out.append(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <typename T>
T get(std::istream& in) {
    unsigned char bytes[sizeof(T)];
    if (!in.read(reinterpret_cast<char*>(bytes), sizeof(T)))
        throw std::runtime_error("snapshot: truncated file");
    if constexpr (std::endian::native == std::endian::big) {
        for (std::size_t k = 0; k < sizeof(T) / 2; ++k)
            std::swap(bytes[k], bytes[sizeof(T) - 1 - k]);
    }
    T v;
    std::memcpy(&v, bytes, sizeof(T));
    return v;
}

constexpr std::uint16_t kSnapshotVersion = 1;

} // namespace

void write_snapshot(const std::string& path, const PlasmaState& state) {
    std::string out;
    out += "FPLS";
    put<std::uint16_t>(out, kSnapshotVersion);
    put<std::uint16_t>(out, static_cast<std::uint16_t>(state.species_count()));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(state.grid.n_per_axis()));
    put<double>(out, state.grid.extent());
    put<double>(out, state.time);
    for (const auto& sp : state.species) {
        put<std::uint16_t>(out, static_cast<std::uint16_t>(sp.label.size()));
        out += sp.label;
    }
    for (const auto& f : state.distributions)
        for (double v : f) put<double>(out, v);

    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot write '" + path + "'");
    os.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!os) throw std::runtime_error("write failed for '" + path + "'");
}

PlasmaState read_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read '" + path + "'");
    char magic[4];
    if (!in.read(magic, 4) || std::memcmp(magic, "FPLS", 4) != 0)
        throw std::runtime_error("snapshot: bad magic in '" + path + "'");
    const auto version = get<std::uint16_t>(in);
    if (version != kSnapshotVersion)
        throw std::runtime_error("snapshot: unsupported version " + std::to_string(version));
    const auto s = get<std::uint16_t>(in);
    const auto n = get<std::uint32_t>(in);
    const double extent = get<double>(in);
    const double time = get<double>(in);

    std::vector<SpeciesParams> species(s);
    for (auto& sp : species) {
        const auto len = get<std::uint16_t>(in);
        sp.label.resize(len);
        if (!in.read(sp.label.data(), len))
            throw std::runtime_error("snapshot: truncated label");
    }
    PlasmaState state{VelocityGrid(static_cast<int>(n), extent), species, {}, time};
    const std::size_t N = state.grid.total_cells();
    state.distributions.assign(s, Field(N));
    for (auto& f : state.distributions)
        for (auto& v : f) v = get<double>(in);
    return state;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::trunc | std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

std::string csv_path(const std::string& dir, const std::string& prefix) {
    return dir + "/" + prefix + "_diagnostics.csv";
}
std::string manifest_path(const std::string& dir, const std::string& prefix) {
    return dir + "/" + prefix + "_manifest.txt";
}
std::string snapshot_path(const std::string& dir, const std::string& prefix, int seq) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%06d", seq);
    return dir + "/" + prefix + "_" + buf + ".snap";
}
std::string oracle_csv_path(const std::string& dir, const std::string& prefix) {
    return dir + "/" + prefix + "_oracle.csv";
}

std::string build_identifier() {
    std::ostringstream out;
    out << "fpls 1.0.0";
#if defined(__clang__)
    out << " clang " << __clang_major__ << "." << __clang_minor__;
#elif defined(__GNUC__)
    out << " gcc " << __GNUC__ << "." << __GNUC_MINOR__;
#endif
    out << " c++" << (__cplusplus / 100 % 100);
    return out.str();
}

} // namespace fpls
