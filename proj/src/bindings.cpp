#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "resolvent_lab/geometry.hpp"
#include "resolvent_lab/grid.hpp"
#include "resolvent_lab/json_io.hpp"
#include "resolvent_lab/resolvent.hpp"
#include "resolvent_lab/semigroup.hpp"
#include "resolvent_lab/verify.hpp"

namespace py = pybind11;
namespace rl = resolvent_lab;

namespace {

rl::Grid make_grid(int radii, int angles, double max_radius) {
    rl::Grid grid;
    grid.radius_count = radii;
    grid.angle_count = angles;
    grid.max_radius = max_radius;
    return grid;
}

py::dict report_dict(const rl::VerificationReport& rep) {
    py::dict d;
    d["check_id"] = rep.check_id;
    d["seed"] = rep.seed;
    d["parameters"] = rep.parameters;
    d["margin"] = rep.margin;
    d["pass"] = rep.pass;
    d["runtime_ms"] = rep.runtime_ms;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "nonlinear resolvents of holomorphic semigroup generators on the unit disk";

    py::register_exception<rl::Error>(m, "ResolventError", PyExc_RuntimeError);

    py::class_<rl::BoundaryAtom>(m, "BoundaryAtom")
        .def(py::init([](double angle, double mass) {
                 rl::BoundaryAtom a;
                 a.angle = angle;
                 a.mass = mass;
                 return a;
             }),
             py::arg("angle"), py::arg("mass"))
        .def_readwrite("angle", &rl::BoundaryAtom::angle)
        .def_readwrite("mass", &rl::BoundaryAtom::mass)
        .def("__repr__", [](const rl::BoundaryAtom& a) {
            return "BoundaryAtom(angle=" + std::to_string(a.angle) +
                   ", mass=" + std::to_string(a.mass) + ")";
        });

    py::class_<rl::Eval>(m, "Eval")
        .def_readonly("value", &rl::Eval::value)
        .def_readonly("deriv", &rl::Eval::deriv);

    py::class_<rl::Generator>(m, "Generator")
        .def_static(
            "herglotz",
            [](const std::vector<std::pair<double, double>>& atoms, double gamma) {
                std::vector<rl::BoundaryAtom> parsed;
                parsed.reserve(atoms.size());
                for (const auto& [angle, mass] : atoms) parsed.push_back({angle, mass});
                return rl::Generator::herglotz(rl::make_herglotz(std::move(parsed), gamma));
            },
            py::arg("atoms"), py::arg("gamma") = 0.0,
            "atoms: list of (angle, mass) pairs on the unit circle")
        .def_static("omega", &rl::Generator::omega, py::arg("q"), py::arg("c"), py::arg("m"))
        .def_property_readonly("q", &rl::Generator::q)
        .def("p", &rl::Generator::p, py::arg("z"))
        .def("f", &rl::Generator::f, py::arg("z"))
        .def("to_json", [](const rl::Generator& gen) { return rl::generator_to_json(gen); })
        .def_static("from_json", [](const std::string& text) { return rl::parse_generator(text); },
                    py::arg("text"));

    py::class_<rl::ResolventValue>(m, "ResolventValue")
        .def_readonly("w", &rl::ResolventValue::w)
        .def_readonly("deriv", &rl::ResolventValue::deriv)
        .def_readonly("residual", &rl::ResolventValue::residual)
        .def_readonly("iterations", &rl::ResolventValue::iterations);

    m.def("solve_resolvent", &rl::solve_resolvent, py::arg("gen"), py::arg("r"), py::arg("z"),
          py::arg("tol") = 1e-12, "solve w + r f(w) = z");

    m.def("extension_radius", &rl::extension_radius, py::arg("x"));
    m.def("distortion_bound", &rl::distortion_bound, py::arg("x"));
    m.def("amplitude", &rl::amplitude, py::arg("x"));
    m.def("amplitude_in_range", &rl::amplitude_in_range, py::arg("x"));
    m.def("containment_threshold", &rl::containment_threshold);

    py::class_<rl::TheoreticalOrders>(m, "TheoreticalOrders")
        .def_readonly("amplitude", &rl::TheoreticalOrders::amplitude)
        .def_readonly("starlike_order", &rl::TheoreticalOrders::starlike_order)
        .def_readonly("strong_order", &rl::TheoreticalOrders::strong_order)
        .def_readonly("squeeze_exponent", &rl::TheoreticalOrders::squeeze_exponent)
        .def_readonly("quasiconformal_constant", &rl::TheoreticalOrders::quasiconformal_constant)
        .def_readonly("spirallike_order", &rl::TheoreticalOrders::spirallike_order);

    m.def("theoretical_orders", &rl::theoretical_orders, py::arg("x"), py::arg("theta") = 0.0);

    py::class_<rl::ClassRadii>(m, "ClassRadii")
        .def_readonly("M", &rl::ClassRadii::M)
        .def_readonly("R", &rl::ClassRadii::R)
        .def_readonly("R1", &rl::ClassRadii::R1)
        .def_readonly("R2", &rl::ClassRadii::R2);

    m.def("class_radii", &rl::class_radii, py::arg("alpha"), py::arg("beta"));

    py::class_<rl::ResolventRadii>(m, "ResolventRadii")
        .def_readonly("x", &rl::ResolventRadii::x)
        .def_readonly("rho", &rl::ResolventRadii::rho)
        .def_readonly("rho1", &rl::ResolventRadii::rho1)
        .def_readonly("rho2", &rl::ResolventRadii::rho2)
        .def_readonly("rho3", &rl::ResolventRadii::rho3)
        .def_readonly("rho4", &rl::ResolventRadii::rho4)
        .def_readonly("extended", &rl::ResolventRadii::extended);

    m.def("resolvent_radii", &rl::resolvent_radii, py::arg("r"), py::arg("q"));

    m.def("shape_ratio", &rl::shape_ratio, py::arg("gen"), py::arg("r"), py::arg("z"),
          py::arg("tol") = 1e-12);

    py::class_<rl::OrderEstimate>(m, "OrderEstimate")
        .def_readonly("starlike_order", &rl::OrderEstimate::starlike_order)
        .def_readonly("strong_order", &rl::OrderEstimate::strong_order)
        .def_readonly("spirallike_order", &rl::OrderEstimate::spirallike_order)
        .def_readonly("theta", &rl::OrderEstimate::theta);

    m.def(
        "estimate_resolvent_orders",
        [](const rl::Generator& gen, double r, int radii, int angles, double max_radius,
           double theta, double tol) {
            return rl::estimate_orders(rl::resolvent_evaluator(gen, r, tol),
                                       make_grid(radii, angles, max_radius), theta);
        },
        py::arg("gen"), py::arg("r"), py::arg("radii") = 64, py::arg("angles") = 256,
        py::arg("max_radius") = 0.999, py::arg("theta") = 0.0, py::arg("tol") = 1e-12);

    m.def(
        "flow",
        [](const rl::Generator& gen, rl::Complex t, rl::Complex z) {
            return rl::flow(gen, t, z);
        },
        py::arg("gen"), py::arg("t"), py::arg("z"),
        "semigroup element u(t, z) by adaptive integration of du/dt = -f(u)");

    m.def("exponential_formula", &rl::exponential_formula, py::arg("gen"), py::arg("t"),
          py::arg("z"), py::arg("n"), py::arg("tol") = 1e-12,
          "approximate u(t, z) by n iterated resolvent steps of size t/n");

    m.def(
        "run_checks",
        [](const std::vector<std::string>& checks, int threads) {
            rl::SuiteConfig config;
            if (!checks.empty()) config.checks = checks;
            config.threads = threads;
            py::list out;
            for (const auto& rep : rl::run_suite(config)) out.append(report_dict(rep));
            return out;
        },
        py::arg("checks") = std::vector<std::string>{}, py::arg("threads") = 0,
        "run certification checks; empty list means the full suite");

    m.def("known_checks", [] { return rl::known_checks(); });
}
