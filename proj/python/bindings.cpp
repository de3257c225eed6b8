#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "xxz/bethe.hpp"
#include "xxz/ed.hpp"
#include "xxz/errors.hpp"
#include "xxz/pipeline.hpp"
#include "xxz/thermo.hpp"

namespace py = pybind11;
using namespace xxz;

namespace {

py::dict row_dict(const ResultRow& r) {
    py::dict d;
    d["L"] = r.L;
    d["zeta"] = r.zeta;
    d["h_plus"] = r.h_plus;
    d["h1_minus"] = r.h1_minus;
    d["h2_minus"] = r.h2_minus;
    d["s_ed"] = r.s_ed;
    d["s_finite"] = r.s_finite;
    d["s_product"] = r.s_product;
    d["s_thermo"] = r.s_thermo;
    d["case_path"] = r.case_path;
    d["residual_max"] = r.residual_max;
    d["wall_time_ms"] = r.wall_time_ms;
    d["error"] = r.error;
    d["warnings"] = r.warnings;
    return d;
}

RowOptions row_options(bool ed, bool finite, bool product, bool thermo, double tol, bool extended) {
    RowOptions o;
    o.which = {ed, finite, product, thermo};
    o.tol = tol;
    o.extended = extended;
    return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Ground-state overlaps of the open XXZ chain under a change of boundary field";

    static py::exception<Error> exc(m, "XxzError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object err = exc;
            PyErr_SetObject(err.ptr(), py::make_tuple(e.what(), to_string(e.code())).ptr());
        }
    });

    py::class_<ChainParams>(m, "ChainParams")
        .def(py::init([](int L, double zeta, double h_minus, double h_plus) {
                 return ChainParams{L, zeta, h_minus, h_plus};
             }),
             py::arg("L"), py::arg("zeta"), py::arg("h_minus"), py::arg("h_plus"))
        .def_readwrite("L", &ChainParams::L)
        .def_readwrite("zeta", &ChainParams::zeta)
        .def_readwrite("h_minus", &ChainParams::h_minus)
        .def_readwrite("h_plus", &ChainParams::h_plus)
        .def("__repr__", [](const ChainParams& p) {
            std::ostringstream os;
            os << "ChainParams(L=" << p.L << ", zeta=" << p.zeta << ", h_minus=" << p.h_minus
               << ", h_plus=" << p.h_plus << ")";
            return os.str();
        });

    m.def("critical_fields", &critical_fields, py::arg("zeta"));

    m.def(
        "classify",
        [](const ChainParams& p) {
            const Regime r = classify(p);
            py::dict d;
            d["N"] = r.N;
            d["case"] = to_string(r.case_label);
            d["boundary_root_side"] = to_string(r.boundary_root_side);
            d["epsilon_sign"] = r.epsilon_sign;
            return d;
        },
        py::arg("params"));

    m.def("spin_reversal_image", &spin_reversal_image, py::arg("params"));

    m.def(
        "solve_ground_state",
        [](const ChainParams& p, double tol) {
            const BetheRoots b = solve_ground_state(p, SolverOptions{tol});
            py::dict d;
            d["N"] = b.N();
            d["case"] = to_string(b.regime.case_label);
            d["real_roots"] = b.real_roots;
            d["boundary_root"] = b.boundary_root ? py::cast(b.boundary_root->value()) : py::none();
            d["boundary_side"] = b.boundary_root ? to_string(b.boundary_root->side) : "none";
            d["spin_reversed"] = b.spin_reversed;
            d["residual_max"] = b.residual_max;
            d["energy"] = energy(b, p);
            d["warnings"] = b.warnings;
            return d;
        },
        py::arg("params"), py::arg("tol") = 1e-11);

    m.def(
        "ed_ground_state",
        [](const ChainParams& p) {
            const GroundStateVector g = ground_state(p);
            py::dict d;
            d["energy"] = g.energy;
            d["sector"] = g.sector;
            d["gap"] = g.gap;
            return d;
        },
        py::arg("params"));

    m.def(
        "overlap_thermo",
        [](const ChainParams& a, const ChainParams& b) {
            const ThermoOverlap t = overlap_thermo(a, b);
            return py::make_tuple(t.value, to_string(t.case_path), t.vanishing);
        },
        py::arg("params1"), py::arg("params2"));

    m.def(
        "compute_row",
        [](int L, double zeta, double h_plus, double h1, double h2, bool ed, bool finite, bool product, bool thermo,
           double tol, bool extended) {
            ResultRow r;
            {
                py::gil_scoped_release release;
                r = compute_row(L, zeta, h_plus, h1, h2, row_options(ed, finite, product, thermo, tol, extended));
            }
            return row_dict(r);
        },
        py::arg("L"), py::arg("zeta"), py::arg("h_plus"), py::arg("h1_minus"), py::arg("h2_minus"),
        py::arg("ed") = true, py::arg("finite") = true, py::arg("product") = true, py::arg("thermo") = true,
        py::arg("tol") = 1e-11, py::arg("extended") = false);

    m.def(
        "sweep",
        [](double zeta, double h_plus, double fixed_minus, const std::string& swept, const std::vector<double>& grid,
           const std::vector<int>& lengths, bool ed, int jobs) {
            SweepSpec s;
            s.zeta = zeta;
            s.h_plus = h_plus;
            s.fixed_minus = fixed_minus;
            if (swept == "h1_minus") s.swept = SweptField::h1_minus;
            else if (swept == "h2_minus") s.swept = SweptField::h2_minus;
            else throw Error(ErrorCode::Domain, "swept must be h1_minus or h2_minus");
            s.grid = grid;
            s.lengths = lengths;
            s.options.which.ed = ed;
            s.jobs = jobs;
            std::vector<ResultRow> rows;
            {
                py::gil_scoped_release release;
                rows = run_sweep(s);
            }
            py::list out;
            for (const auto& r : rows) out.append(row_dict(r));
            return out;
        },
        py::arg("zeta"), py::arg("h_plus"), py::arg("fixed_minus"), py::arg("swept"), py::arg("grid"),
        py::arg("lengths"), py::arg("ed") = true, py::arg("jobs") = 0);

    m.def("lieb_residual", &lieb_residual, py::arg("lambda_"), py::arg("zeta"), py::arg("nodes") = 512);

    m.def("selftest", [] {
        std::ostringstream os;
        const bool ok = run_selftest(os);
        return py::make_tuple(ok, os.str());
    });
}
