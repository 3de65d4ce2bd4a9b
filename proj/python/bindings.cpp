#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "orlicz/asymptotics.hpp"
#include "orlicz/cli.hpp"
#include "orlicz/distortion.hpp"
#include "orlicz/errors.hpp"
#include "orlicz/gauge.hpp"
#include "orlicz/hausdorff_net.hpp"
#include "orlicz/sobolev_conjugate.hpp"

namespace py = pybind11;
using namespace orlicz;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Distortion of Orlicz-Sobolev maps on gauge Hausdorff measures";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<RangeError>(m, "RangeError", PyExc_ArithmeticError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);

  py::class_<BisectionOptions>(m, "BisectionOptions")
      .def(py::init<>())
      .def_readwrite("rtol", &BisectionOptions::rtol)
      .def_readwrite("atol", &BisectionOptions::atol)
      .def_readwrite("max_iter", &BisectionOptions::max_iter);

  py::class_<YoungFunction>(m, "YoungFunction")
      .def_static("power", &YoungFunction::power, py::arg("p"), py::arg("coef") = 1.0)
      .def_static("power_log", &YoungFunction::power_log, py::arg("p"), py::arg("q"),
                  py::arg("shift") = 2.718281828459045)
      .def_static("exponential", &YoungFunction::exponential, py::arg("gamma"), py::arg("head") = 2.0)
      .def_static("table", &YoungFunction::table, py::arg("log_t"), py::arg("log_a"))
      .def("__call__", &YoungFunction::operator(), py::arg("t"))
      .def("log_value", &YoungFunction::log_value, py::arg("x"))
      .def_property_readonly("family", &YoungFunction::family)
      .def_property_readonly("params", &YoungFunction::params);

  m.def("conjugate", [](const YoungFunction& A) { return conjugate(A); }, py::arg("A"));
  m.def("inverse", py::overload_cast<const YoungFunction&, double, const BisectionOptions&>(&inverse),
        py::arg("F"), py::arg("y"), py::arg("options") = BisectionOptions{});
  m.def("sobolev_conjugate", [](const YoungFunction& A, int n) { return sobolev_conjugate(A, n); },
        py::arg("A"), py::arg("n"));

  py::class_<GaugeFunction>(m, "GaugeFunction")
      .def_static("power", &GaugeFunction::power, py::arg("alpha"), py::arg("n"))
      .def_static("power_log", &GaugeFunction::power_log, py::arg("alpha"), py::arg("beta"), py::arg("n"))
      .def_static("log_power", &GaugeFunction::log_power, py::arg("beta"), py::arg("n"))
      .def_static("table", &GaugeFunction::table, py::arg("log_r"), py::arg("log_phi"), py::arg("n"))
      .def("__call__", &GaugeFunction::operator(), py::arg("r"))
      .def("raw_value", &GaugeFunction::raw_value, py::arg("r"))
      .def_property_readonly("dim", &GaugeFunction::dim)
      .def_property_readonly("was_normalized", &GaugeFunction::was_normalized)
      .def_property_readonly("family", &GaugeFunction::family);

  py::enum_<Stability>(m, "Stability")
      .value("vanishing", Stability::vanishing)
      .value("stable", Stability::stable)
      .value("inconclusive", Stability::inconclusive);

  py::class_<DistortionBundle>(m, "DistortionBundle")
      .def(py::init([](const YoungFunction& A, const GaugeFunction& phi, int n) {
             return DistortionBundle(A, phi, n);
           }),
           py::arg("A"), py::arg("phi"), py::arg("n"))
      .def("psi", &DistortionBundle::psi, py::arg("r"))
      .def("log_psi", &DistortionBundle::log_psi, py::arg("x"))
      .def("J", &DistortionBundle::J, py::arg("s"))
      .def("J_inverse", &DistortionBundle::J_inverse, py::arg("y"))
      .def("B", &DistortionBundle::B_value, py::arg("s"))
      .def("J_r", &DistortionBundle::J_r, py::arg("r"), py::arg("s"))
      .def("stability", [](const DistortionBundle& b) {
        return classify_stability(*b.psi_curve(), *b.binv_curve()).verdict;
      })
      .def("key_gap", [](const DistortionBundle& b, double s, double t) {
        return key_inequality_gap(b, s, t).relative;
      }, py::arg("s"), py::arg("t"));

  py::class_<LogPowerForm>(m, "LogPowerForm")
      .def_static("gauge", &LogPowerForm::gauge, py::arg("a"), py::arg("b"), py::arg("c") = 0.0)
      .def_static("young", &LogPowerForm::young, py::arg("p"), py::arg("q"))
      .def_static("young_exp", &LogPowerForm::young_exp, py::arg("gamma"))
      .def_readonly("a", &LogPowerForm::a)
      .def_readonly("b", &LogPowerForm::b)
      .def_readonly("c", &LogPowerForm::c)
      .def_readonly("note", &LogPowerForm::note)
      .def("log_value", &LogPowerForm::log_value, py::arg("x"))
      .def("__str__", &LogPowerForm::describe);

  m.def("distort_form", &distort_form, py::arg("A_form"), py::arg("phi_form"), py::arg("n"));
  m.def("crosscheck_spread",
        [](const DistortionBundle& b, const LogPowerForm& f) { return crosscheck(b, f).spread; },
        py::arg("bundle"), py::arg("form"));
  m.def("kaufman_constant", &kaufman_constant, py::arg("n"), py::arg("p"), py::arg("alpha"),
        py::arg("c_n"));
  m.def("default_cn", &default_cn, py::arg("n"));

  m.def(
      "net_premeasure",
      [](int dim, const std::vector<std::pair<int, std::vector<std::int64_t>>>& cubes,
         const GaugeFn& phi, double sigma) {
        std::vector<DyadicCube> cs;
        for (const auto& [level, coords] : cubes) cs.push_back({level, coords});
        return net_premeasure(CubeSet(dim, std::move(cs)), phi, sigma).value;
      },
      py::arg("dim"), py::arg("cubes"), py::arg("phi"), py::arg("sigma") = kInf,
      "Exact dyadic net premeasure of a set of (level, coords) cubes.");

  m.def(
      "run_cli",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "orlicz-distort");
        std::vector<char*> argv;
        for (auto& a : args) argv.push_back(a.data());
        py::gil_scoped_release release;
        return cli_main(static_cast<int>(argv.size()), argv.data());
      },
      py::arg("args"), "Runs the command line tool in-process and returns its exit code.");
}
