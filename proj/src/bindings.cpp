#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fpls/check.hpp"
#include "fpls/collision.hpp"
#include "fpls/config.hpp"
#include "fpls/diagnostics.hpp"
#include "fpls/integrator.hpp"
#include "fpls/io.hpp"
#include "fpls/moment_oracle.hpp"
#include "fpls/runner.hpp"

namespace py = pybind11;
using namespace fpls;

namespace {

py::array_t<double> field_to_array(const VelocityGrid& grid, const Field& f) {
    const int n = grid.n_per_axis();
    // x-fastest storage -> numpy index order (z, y, x)
    py::array_t<double> out({n, n, n});
    std::copy(f.begin(), f.end(), out.mutable_data());
    return out;
}

Field array_to_field(const VelocityGrid& grid, py::array_t<double, py::array::c_style> a) {
    if (a.size() != static_cast<py::ssize_t>(grid.total_cells()))
        throw std::invalid_argument("field size does not match the grid");
    Field f(grid.total_cells());
    std::copy(a.data(), a.data() + a.size(), f.begin());
    return f;
}

Vec3 to_vec3(const std::array<double, 3>& v) { return {v[0], v[1], v[2]}; }

py::dict moments_dict(const SpeciesMoments& m) {
    py::dict d;
    d["n"] = m.number_density;
    d["rho"] = m.mass_density;
    d["u"] = py::make_tuple(m.bulk_velocity.x, m.bulk_velocity.y, m.bulk_velocity.z);
    d["T"] = m.temperature;
    return d;
}

RunDescription parse_description(const std::string& text) {
    ConfigResult cfg = validate_config(text);
    if (!cfg.ok()) {
        std::string msg = "invalid config:";
        for (const auto& e : cfg.errors) msg += "\n  " + e;
        throw std::invalid_argument(msg);
    }
    return *cfg.description;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "velocity-space multispecies collisional relaxation solver";

    py::class_<VelocityGrid>(m, "VelocityGrid")
        .def(py::init<int, double>(), py::arg("n_per_axis"), py::arg("extent"))
        .def_property_readonly("n_per_axis", &VelocityGrid::n_per_axis)
        .def_property_readonly("extent", &VelocityGrid::extent)
        .def_property_readonly("spacing", &VelocityGrid::spacing)
        .def_property_readonly("total_cells", &VelocityGrid::total_cells)
        .def("coord", &VelocityGrid::coord)
        .def("integrate", [](const VelocityGrid& g, py::array_t<double, py::array::c_style> a) {
            return g.integrate(array_to_field(g, a));
        });

    m.def(
        "maxwellian",
        [](const VelocityGrid& grid, double n, double mass, std::array<double, 3> u,
           double T) { return field_to_array(grid, maxwellian_field(grid, n, mass, to_vec3(u), T)); },
        py::arg("grid"), py::arg("n"), py::arg("mass"), py::arg("u"), py::arg("T"));

    m.def(
        "moments",
        [](const VelocityGrid& grid, py::array_t<double, py::array::c_style> f, double mass) {
            return moments_dict(compute_moments(grid, array_to_field(grid, f), mass));
        },
        py::arg("grid"), py::arg("f"), py::arg("mass"));

    m.def(
        "collision_rate",
        [](const VelocityGrid& grid, py::array_t<double, py::array::c_style> f, double c,
           double mass, std::array<double, 3> u, double T) {
            Field rate(grid.total_cells(), 0.0);
            accumulate_pair_rate(grid, array_to_field(grid, f), c, mass, to_vec3(u), T,
                                 rate);
            return field_to_array(grid, rate);
        },
        py::arg("grid"), py::arg("f"), py::arg("c"), py::arg("mass"), py::arg("u"),
        py::arg("T"), "rate of one pair operator c div(grad f + mass (v-u)/T f)");

    m.def("validate_config", [](const std::string& text) {
        ConfigResult cfg = validate_config(text);
        py::dict d;
        d["ok"] = cfg.ok();
        d["errors"] = cfg.errors;
        if (cfg.ok()) d["resolved"] = describe(*cfg.description);
        return d;
    });

    m.def(
        "simulate",
        [](const std::string& config_text, bool write_outputs) {
            const RunDescription desc = parse_description(config_text);
            const TrajectoryRecord rec = run_simulation(desc, write_outputs);
            if (!rec.ok()) throw std::runtime_error(rec.error);
            py::dict d;
            py::list t, H, D, Hrel, minT, E;
            py::list moments;
            for (const auto& row : rec.rows) {
                t.append(row.time);
                H.append(row.entropy);
                D.append(row.dissipation);
                Hrel.append(row.relative_entropy);
                minT.append(row.min_pair_temperature);
                E.append(row.energy);
                py::list per_species;
                for (const auto& mm : row.moments) per_species.append(moments_dict(mm));
                moments.append(per_species);
            }
            d["t"] = t;
            d["H"] = H;
            d["D"] = D;
            d["Hrel"] = Hrel;
            d["minTij"] = minT;
            d["E"] = E;
            d["moments"] = moments;
            d["steps"] = rec.steps;
            d["clamped_cells"] = rec.clamped_cells;
            return d;
        },
        py::arg("config_text"), py::arg("write_outputs") = false);

    m.def(
        "oracle_deviation",
        [](const std::string& config_text) {
            const RunDescription desc = parse_description(config_text);
            const OracleResult res = run_oracle(desc, false);
            if (!res.pde.ok()) throw std::runtime_error(res.pde.error);
            py::dict d;
            for (const auto& e : res.deviation.entries) d[e.quantity.c_str()] = e.deviation;
            d["max"] = res.deviation.max;
            return d;
        },
        py::arg("config_text"));

    m.def("read_snapshot", [](const std::string& path) {
        const PlasmaState st = read_snapshot(path);
        py::dict d;
        d["time"] = st.time;
        d["n_per_axis"] = st.grid.n_per_axis();
        d["extent"] = st.grid.extent();
        py::list fields, labels;
        for (std::size_t i = 0; i < st.species_count(); ++i) {
            fields.append(field_to_array(st.grid, st.distributions[i]));
            labels.append(st.species[i].label);
        }
        d["labels"] = labels;
        d["fields"] = fields;
        return d;
    });
}
