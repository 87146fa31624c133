#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "qdrive/coherence.hpp"
#include "qdrive/io.hpp"
#include "qdrive/lewis.hpp"
#include "qdrive/scenario.hpp"

namespace py = pybind11;
using namespace qdrive;

namespace {

py::array_t<Complex> to_array(const Mat2& m) {
    py::array_t<Complex> a({2, 2});
    auto r = a.mutable_unchecked<2>();
    r(0, 0) = m.a00;
    r(0, 1) = m.a01;
    r(1, 0) = m.a10;
    r(1, 1) = m.a11;
    return a;
}

Mat2 from_array(const py::array_t<Complex, py::array::c_style | py::array::forcecast>& a) {
    if (a.ndim() != 2 || a.shape(0) != 2 || a.shape(1) != 2) throw py::value_error("expected a 2x2 array");
    auto r = a.unchecked<2>();
    return {r(0, 0), r(0, 1), r(1, 0), r(1, 1)};
}

DensityMatrix density(const py::array_t<Complex, py::array::c_style | py::array::forcecast>& a) {
    return dm_new(from_array(a));
}

// Columns of a series as numpy arrays, keyed like the CSV header.
py::dict series_dict(const TimeSeries& ts) {
    const auto n = static_cast<py::ssize_t>(ts.size());
    const std::vector<py::ssize_t> shape{n};
    py::array_t<double> t(shape), purity(shape), l1(shape), frob(shape);
    py::array_t<Complex> rho({n, py::ssize_t{2}, py::ssize_t{2}});
    auto rt = t.mutable_unchecked<1>();
    auto rp = purity.mutable_unchecked<1>();
    auto rl = l1.mutable_unchecked<1>();
    auto rf = frob.mutable_unchecked<1>();
    auto rr = rho.mutable_unchecked<3>();
    for (py::ssize_t i = 0; i < n; ++i) {
        const auto& s = ts[static_cast<std::size_t>(i)];
        rt(i) = s.t;
        rp(i) = s.purity;
        rl(i) = s.c_l1;
        rf(i) = s.c_frob;
        const Mat2& m = s.rho.matrix();
        rr(i, 0, 0) = m.a00;
        rr(i, 0, 1) = m.a01;
        rr(i, 1, 0) = m.a10;
        rr(i, 1, 1) = m.a11;
    }
    py::dict d;
    d["t"] = t;
    d["rho"] = rho;
    d["purity"] = purity;
    d["c_l1"] = l1;
    d["c_frobenius"] = frob;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Driven two-level systems: closed-form and numeric density-matrix dynamics";

    py::register_exception<Error>(m, "QdriveError", PyExc_ValueError);

    py::class_<RabiParams>(m, "RabiParams")
        .def(py::init(&RabiParams::make), py::arg("e_g") = 0.0, py::arg("e_e") = 1.0, py::arg("omega0") = 1.0,
             py::arg("coupling") = Complex{0.5, 0.0})
        .def_readonly("e_g", &RabiParams::e_g)
        .def_readonly("e_e", &RabiParams::e_e)
        .def_readonly("omega0", &RabiParams::omega0)
        .def_readonly("coupling", &RabiParams::coupling)
        .def_property_readonly("theta", &RabiParams::theta)
        .def_property_readonly("omega_rabi", &RabiParams::omega_rabi)
        .def_property_readonly("rabi_period", &RabiParams::rabi_period);

    py::class_<PulseParams>(m, "PulseParams")
        .def(py::init(&PulseParams::make), py::arg("e0") = 1.0, py::arg("f0") = 1.0, py::arg("n_period") = 1)
        .def_readonly("e0", &PulseParams::e0)
        .def_readonly("f0", &PulseParams::f0)
        .def_readonly("n_period", &PulseParams::n_period)
        .def_property_readonly("period", &PulseParams::period)
        .def_property_readonly("eps0", &PulseParams::eps0);

    m.def("rabi_density", [](const RabiParams& p, double t) { return to_array(rabi_density(p, t).matrix()); },
          py::arg("p"), py::arg("t"));
    m.def("rabi_state", [](const RabiParams& p, double t) {
        const auto s = rabi_state(p, t);
        return std::pair{s.c0, s.c1};
    });
    m.def("floquet_quasienergy", &floquet_quasienergy);
    m.def("rabi_hamiltonian", [](const RabiParams& p, double t) { return to_array(rabi_hamiltonian(p, t)); });

    m.def("periodicity_T", &periodicity_T, py::arg("e0"), py::arg("f0"), py::arg("n"));
    m.def("pulse_f", &pulse_f);
    m.def("pulse_density", [](const PulseParams& p, double t) { return to_array(pulse_density(p, t).matrix()); },
          py::arg("p"), py::arg("t"));
    m.def("pulse_state", [](const PulseParams& p, double t) {
        const auto s = pulse_state(p, t);
        return std::pair{s.c0, s.c1};
    });

    m.def("xi_squared", &xi_squared, py::arg("p"), py::arg("t"), py::arg("c_const") = 1.0);
    m.def("invariant_operator",
          [](const RabiParams& p, double t, double c) { return to_array(invariant_operator(p, t, c)); },
          py::arg("p"), py::arg("t"), py::arg("c_const") = 1.0);
    m.def("invariance_residual", &invariance_residual, py::arg("p"), py::arg("t"), py::arg("h"),
          py::arg("c_const") = 1.0);
    m.def("lewis_phase", &lewis_phase);

    m.def("purity", [](const py::array_t<Complex, py::array::c_style | py::array::forcecast>& a) {
        return dm_purity(density(a));
    });
    m.def("l1_coherence", [](const py::array_t<Complex, py::array::c_style | py::array::forcecast>& a) {
        return l1_coherence(density(a));
    });
    m.def("frobenius_coherence", [](const py::array_t<Complex, py::array::c_style | py::array::forcecast>& a) {
        return frobenius_coherence(density(a));
    });
    m.def("l1_pulse_closed_form", &l1_pulse_closed_form);

    m.def(
        "propagate",
        [](const std::variant<RabiParams, PulseParams>& drive, double t_start, double t_end, std::size_t steps,
           std::optional<py::array_t<Complex, py::array::c_style | py::array::forcecast>> rho0) {
            const DensityMatrix start = rho0 ? density(*rho0) : dm_new(Mat2::diag(1.0, 0.0));
            const DriveHamiltonian d = std::visit([](const auto& p) -> DriveHamiltonian { return p; }, drive);
            TimeSeries ts;
            {
                py::gil_scoped_release release;
                ts = propagate(d, start, TimeGrid::make(t_start, t_end, steps));
            }
            return series_dict(ts);
        },
        py::arg("drive"), py::arg("t_start"), py::arg("t_end"), py::arg("steps"), py::arg("rho0") = py::none());

    m.def(
        "run_config",
        [](const std::string& config_json) {
            const auto cfg = parse_config(nlohmann::json::parse(config_json));
            const auto result = run_scenario(cfg);
            py::dict d = series_dict(result.series);
            if (result.report) {
                py::dict r;
                r["max_entry_error"] = result.report->max_entry_error;
                r["max_trace_drift"] = result.report->max_trace_drift;
                r["max_purity_drift"] = result.report->max_purity_drift;
                r["passed"] = result.report->passed();
                d["report"] = r;
            }
            return d;
        },
        py::arg("config_json"));

    m.def(
        "to_csv",
        [](const std::string& config_json) {
            const auto cfg = parse_config(nlohmann::json::parse(config_json));
            std::ostringstream os;
            io::write_csv(os, run_scenario(cfg).series);
            return os.str();
        },
        py::arg("config_json"));

    m.attr("CSV_HEADER") = std::string(io::kCsvHeader);
}
