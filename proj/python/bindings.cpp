#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "starconn/runner.hpp"

namespace py = pybind11;
using namespace starconn;

namespace {

std::vector<std::string> series_strings(const HSeries& s, const Roster& roster) {
    std::vector<std::string> out;
    for (int k = 0; k <= s.order(); ++k) out.push_back(to_string(s[k], roster));
    return out;
}

// Star product of a scenario, extracted once.
class PyStar {
public:
    PyStar(const Scenario& sc, int order)
        : roster_(sc.roster()), sol_(sc.setup(), fedosov_truncation(order)), star_(extract_bidiff(sol_, order)) {}

    std::vector<std::string> apply(const std::string& f, const std::string& g) const {
        return series_strings(star_.apply(parse_poly(f, roster_), parse_poly(g, roster_)), roster_);
    }
    std::string op() const { return star_.op.str(roster_); }
    int order() const { return star_.order; }

private:
    Roster roster_;
    FedosovSolution sol_;
    StarTruncation star_;
};

py::dict check_dict(const CheckResult& c) {
    py::dict d;
    d["name"] = c.name;
    d["anchor"] = c.anchor;
    d["status"] = status_name(c.status);
    d["witness"] = c.witness;
    return d;
}

}  // namespace

PYBIND11_MODULE(_starconn, m) {
    m.doc() = "Exact Fedosov star products and connections on families of them";

    py::exception<ScenarioError>(m, "ScenarioError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const ScenarioError& e) {
            py::object cls = py::module_::import("starconn._starconn").attr("ScenarioError");
            py::object err = cls(e.what());
            err.attr("line") = e.line();
            PyErr_SetObject(cls.ptr(), err.ptr());
        } catch (const MathError& e) {
            PyErr_SetString(PyExc_ArithmeticError, e.what());
        } catch (const ParseError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        }
    });

    py::class_<Scenario>(m, "Scenario")
        .def_readonly("source", &Scenario::source)
        .def_readonly("dimension", &Scenario::dim)
        .def_readonly("parameters", &Scenario::nparams)
        .def_readwrite("order", &Scenario::order)
        .def_readwrite("basis_degree", &Scenario::basis_degree)
        .def_readwrite("seed", &Scenario::seed)
        .def_property_readonly("has_complex_structure", [](const Scenario& s) { return s.complex_structure.has_value(); })
        .def("__repr__", [](const Scenario& s) {
            return "<Scenario " + s.source + " dim=" + std::to_string(s.dim) + " params=" + std::to_string(s.nparams) + ">";
        });

    m.def("parse_scenario", &parse_scenario, py::arg("text"), py::arg("source") = "<scenario>");
    m.def("load_scenario", &load_scenario, py::arg("path"));

    m.def("commands", &commands);
    m.def(
        "run",
        [](const std::string& command, const Scenario& sc) {
            Report r;
            {
                py::gil_scoped_release release;
                r = run_command(command, sc);
            }
            py::list checks;
            for (const auto& c : r.checks) checks.append(check_dict(c));
            py::list tables;
            for (const auto& t : r.tables) {
                py::dict d;
                d["title"] = t.title;
                d["rows"] = t.rows;
                tables.append(d);
            }
            py::dict out;
            out["command"] = r.command;
            out["scenario"] = r.scenario;
            out["order"] = r.order;
            out["seed"] = r.seed;
            out["tables"] = tables;
            out["checks"] = checks;
            out["exit_code"] = r.exit_code();
            return out;
        },
        py::arg("command"), py::arg("scenario"));
    m.def(
        "report_text", [](const std::string& command, const Scenario& sc) { return report_text(run_command(command, sc)); },
        py::arg("command"), py::arg("scenario"));
    m.def(
        "report_json", [](const std::string& command, const Scenario& sc) { return report_json(run_command(command, sc)); },
        py::arg("command"), py::arg("scenario"));
    m.def("check_catalog", [] {
        std::vector<std::tuple<std::string, std::string, std::string>> out;
        for (const auto& c : check_catalog()) out.emplace_back(c.command, c.name, c.anchor);
        return out;
    });

    py::class_<PyStar>(m, "StarProduct")
        .def(py::init<const Scenario&, int>(), py::arg("scenario"), py::arg("order"),
             py::call_guard<py::gil_scoped_release>())
        .def("apply", &PyStar::apply, py::arg("f"), py::arg("g"),
             "Coefficients c^0(f,g)..c^K(f,g) as canonical polynomial strings")
        .def("operator", &PyStar::op)
        .def_property_readonly("order", &PyStar::order);
}
