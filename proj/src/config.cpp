#include "fpls/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace fpls {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

struct RawConfig {
    // section -> key -> value, plus species section order
    std::map<std::string, std::map<std::string, std::string>> sections;
    std::vector<std::string> species_order;
    std::vector<std::string> errors;
};

RawConfig parse_raw(const std::string& text) {
    RawConfig raw;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                raw.errors.push_back("line " + std::to_string(lineno) +
                                     ": malformed section header");
                continue;
            }
            section = trim(line.substr(1, line.size() - 2));
            if (section.rfind("species.", 0) == 0) {
                const std::string label = section.substr(8);
                if (label.empty())
                    raw.errors.push_back("line " + std::to_string(lineno) +
                                         ": species section needs a label");
                else if (raw.sections.count(section))
                    raw.errors.push_back("species." + label + ": duplicate section");
                else
                    raw.species_order.push_back(label);
            }
            raw.sections[section];
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            raw.errors.push_back("line " + std::to_string(lineno) +
                                 ": expected key = value");
            continue;
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (section.empty()) {
            raw.errors.push_back("line " + std::to_string(lineno) + ": key '" + key +
                                 "' outside any section");
            continue;
        }
        auto& sec = raw.sections[section];
        if (sec.count(key))
            raw.errors.push_back(section + "." + key + ": duplicate key");
        else
            sec[key] = value;
    }
    return raw;
}

class SectionReader {
public:
    SectionReader(RawConfig& raw, std::string section, std::vector<std::string>& errors)
        : raw_(raw), section_(std::move(section)), errors_(errors) {}

    std::optional<std::string> take(const std::string& key) {
        auto sec = raw_.sections.find(section_);
        if (sec == raw_.sections.end()) return std::nullopt;
        auto it = sec->second.find(key);
        if (it == sec->second.end()) return std::nullopt;
        std::string v = it->second;
        sec->second.erase(it);
        return v;
    }

    double number(const std::string& key, std::optional<double> fallback,
                  bool required = false) {
        auto v = take(key);
        if (!v) {
            if (required) errors_.push_back(section_ + "." + key + ": missing");
            return fallback.value_or(0.0);
        }
        try {
            std::size_t pos = 0;
            const double d = std::stod(*v, &pos);
            if (pos != v->size()) throw std::invalid_argument("trailing characters");
            if (!std::isfinite(d)) throw std::invalid_argument("not finite");
            return d;
        } catch (const std::exception&) {
            errors_.push_back(section_ + "." + key + ": not a number ('" + *v + "')");
            return fallback.value_or(0.0);
        }
    }

    std::string text(const std::string& key, const std::string& fallback) {
        auto v = take(key);
        return v ? *v : fallback;
    }

    std::optional<Vec3> vec3(const std::string& key) {
        auto v = take(key);
        if (!v) return std::nullopt;
        std::istringstream in(*v);
        Vec3 out;
        if (!(in >> out.x >> out.y >> out.z) || !(in >> std::ws).eof()) {
            errors_.push_back(section_ + "." + key + ": expected 3 reals ('" + *v + "')");
            return Vec3{};
        }
        return out;
    }

    bool flag(const std::string& key, bool fallback) {
        auto v = take(key);
        if (!v) return fallback;
        if (*v == "true" || *v == "1" || *v == "on") return true;
        if (*v == "false" || *v == "0" || *v == "off") return false;
        errors_.push_back(section_ + "." + key + ": expected a boolean ('" + *v + "')");
        return fallback;
    }

private:
    RawConfig& raw_;
    std::string section_;
    std::vector<std::string>& errors_;
};

} // namespace

ConfigResult validate_config(const std::string& text) {
    ConfigResult result;
    RawConfig raw = parse_raw(text);
    std::vector<std::string>& errors = result.errors;
    errors = raw.errors;

    RunDescription d;

    {
        SectionReader grid(raw, "grid", errors);
        d.n_per_axis = static_cast<int>(grid.number("n_per_axis", std::nullopt, true));
        d.extent = grid.number("extent", std::nullopt, true);
        if (d.n_per_axis < 8) errors.push_back("grid.n_per_axis: must be >= 8");
        else if (d.n_per_axis % 2 != 0) errors.push_back("grid.n_per_axis: must be even");
        if (!(d.extent > 0.0)) errors.push_back("grid.extent: must be > 0");
    }
    {
        SectionReader cs(raw, "constants", errors);
        d.constants.coulomb_log = cs.number("coulomb_log", 1.0);
        d.constants.vacuum_permittivity = cs.number("eps0", 1.0);
        d.constants.gamma = cs.number("gamma", std::nullopt, true);
        if (!(d.constants.coulomb_log > 0.0))
            errors.push_back("constants.coulomb_log: must be > 0");
        if (!(d.constants.vacuum_permittivity > 0.0))
            errors.push_back("constants.eps0: must be > 0");
    }

    if (raw.species_order.empty()) errors.push_back("species: at least one required");
    for (const std::string& label : raw.species_order) {
        const std::string section = "species." + label;
        SectionReader sp(raw, section, errors);
        SpeciesParams params;
        params.label = label;
        params.mass = sp.number("mass", std::nullopt, true);
        params.charge = sp.number("charge", std::nullopt, true);
        MaxwellianInit init;
        init.density = sp.number("n", std::nullopt, true);
        init.temperature = sp.number("T", std::nullopt, true);
        init.velocity = sp.vec3("u").value_or(Vec3{});
        if (!(params.mass > 0.0)) errors.push_back(section + ".mass: must be > 0");
        if (params.charge == 0.0) errors.push_back(section + ".charge: must be nonzero");
        if (!(init.density > 0.0)) errors.push_back(section + ".n: must be > 0");
        if (!(init.temperature > 0.0)) errors.push_back(section + ".T: must be > 0");
        for (int c = 0; c < 3; ++c)
            if (std::abs(init.velocity[c]) > d.extent)
                d.warnings.push_back(section + ".u: outside the velocity box, tails clipped");
        d.species.push_back(params);
        d.init.push_back(init);
    }

    {
        SectionReader run(raw, "run", errors);
        const std::string scheme = run.text("scheme", "semi-implicit-split");
        try {
            d.policy.scheme = scheme_from_string(scheme);
        } catch (const std::exception& e) {
            errors.push_back(std::string("run.scheme: ") + e.what());
        }
        const std::string dt = run.text("dt", "auto");
        if (dt != "auto") {
            try {
                const double v = std::stod(dt);
                if (!(v > 0.0)) throw std::invalid_argument("non-positive");
                d.policy.dt = v;
            } catch (const std::exception&) {
                errors.push_back("run.dt: expected 'auto' or a positive number");
            }
        }
        d.policy.safety = run.number("safety", 0.8);
        if (!(d.policy.safety > 0.0 && d.policy.safety <= 1.0))
            errors.push_back("run.safety: must be in (0, 1]");
        d.policy.t_end = run.number("t_end", std::nullopt, true);
        if (d.policy.t_end < 0.0) errors.push_back("run.t_end: must be >= 0");
        d.policy.output_every = run.number(
            "output_every", d.policy.t_end > 0.0 ? d.policy.t_end / 50.0 : 1.0);
        if (!(d.policy.output_every > 0.0))
            errors.push_back("run.output_every: must be > 0");
        d.snapshot_every = run.number("snapshot_every", 0.0);
        if (d.snapshot_every < 0.0) errors.push_back("run.snapshot_every: must be >= 0");
        d.epsilon_truncation = run.number("epsilon_truncation", 0.0);
        if (d.epsilon_truncation < 0.0 || d.epsilon_truncation >= 1.0)
            errors.push_back("run.epsilon_truncation: must be 0 (off) or in (0, 1)");
        const std::string reading = run.text("epsilon_index_reading", "consistent");
        if (reading == "consistent")
            d.epsilon_reading = TruncationIndexReading::consistent;
        else if (reading == "verbatim")
            d.epsilon_reading = TruncationIndexReading::verbatim;
        else
            errors.push_back("run.epsilon_index_reading: expected consistent or verbatim");
        const std::string conservation = run.text("conservation", "exact");
        if (conservation == "exact")
            d.conserve_exact = true;
        else if (conservation == "analytic")
            d.conserve_exact = false;
        else
            errors.push_back("run.conservation: expected exact or analytic");
        d.seed = static_cast<unsigned long>(run.number("seed", 0.0));
        d.oracle_threshold = run.number("oracle_threshold", 0.01);
        if (!(d.oracle_threshold > 0.0))
            errors.push_back("run.oracle_threshold: must be > 0");
        d.corrupt_symmetry = run.flag("corrupt_symmetry", false);
    }
    {
        SectionReader out(raw, "output", errors);
        d.directory = out.text("directory", ".");
        d.prefix = out.text("prefix", "fpls");
    }

    // anything left over is an unknown key (typo protection)
    for (const auto& [section, keys] : raw.sections)
        for (const auto& [key, value] : keys)
            errors.push_back(section + "." + key + ": unknown key");

    if (errors.empty()) result.description = std::move(d);
    return result;
}

ConfigResult load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        ConfigResult r;
        r.errors.push_back("cannot read config file '" + path + "'");
        return r;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return validate_config(buf.str());
}

std::string describe(const RunDescription& d) {
    std::ostringstream out;
    out.precision(17);
    out << "[grid]\n"
        << "n_per_axis = " << d.n_per_axis << "\n"
        << "extent = " << d.extent << "\n"
        << "[constants]\n"
        << "coulomb_log = " << d.constants.coulomb_log << "\n"
        << "eps0 = " << d.constants.vacuum_permittivity << "\n"
        << "gamma = " << d.constants.gamma
        << (d.constants.hard_potential() ? "  # hard" : "  # soft") << "\n";
    for (std::size_t i = 0; i < d.species.size(); ++i) {
        out << "[species." << d.species[i].label << "]\n"
            << "mass = " << d.species[i].mass << "\n"
            << "charge = " << d.species[i].charge << "\n"
            << "n = " << d.init[i].density << "\n"
            << "u = " << d.init[i].velocity.x << " " << d.init[i].velocity.y << " "
            << d.init[i].velocity.z << "\n"
            << "T = " << d.init[i].temperature << "\n";
    }
    out << "[run]\n"
        << "scheme = " << to_string(d.policy.scheme) << "\n"
        << "dt = ";
    if (d.policy.dt)
        out << *d.policy.dt << "\n";
    else
        out << "auto\n";
    out << "safety = " << d.policy.safety << "\n"
        << "t_end = " << d.policy.t_end << "\n"
        << "output_every = " << d.policy.output_every << "\n"
        << "snapshot_every = " << d.snapshot_every << "\n"
        << "epsilon_truncation = " << d.epsilon_truncation << "\n"
        << "epsilon_index_reading = "
        << (d.epsilon_reading == TruncationIndexReading::consistent ? "consistent"
                                                                    : "verbatim")
        << "\n"
        << "conservation = " << (d.conserve_exact ? "exact" : "analytic") << "\n"
        << "seed = " << d.seed << "\n"
        << "oracle_threshold = " << d.oracle_threshold << "\n"
        << "[output]\n"
        << "directory = " << d.directory << "\n"
        << "prefix = " << d.prefix << "\n";
    return out.str();
}

} // namespace fpls
