#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "zetalab/cli.hpp"
#include "zetalab/errors.hpp"
#include "zetalab/numerics.hpp"
#include "zetalab/zetas.hpp"

namespace py = pybind11;
using namespace zetalab;

PYBIND11_MODULE(_zetalab, m) {
    m.doc() = "zeta families, discrete shifts and universality densities";

    auto base = py::register_exception<Error>(m, "Error");
    auto domain = py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<PoleError>(m, "PoleError", domain.ptr());
    py::register_exception<TruncationError>(m, "TruncationError", domain.ptr());
    py::register_exception<InsufficientDataError>(m, "InsufficientDataError", domain.ptr());
    py::register_exception<GridMismatchError>(m, "GridMismatchError", domain.ptr());
    py::register_exception<RegionError>(m, "RegionError", domain.ptr());
    py::register_exception<AccuracyError>(m, "AccuracyError", base.ptr());
    py::register_exception<RegimeError>(m, "RegimeError", base.ptr());

    m.def("hurwitz_zeta", [](Complex s, double alpha, double abs_tol) { return hurwitz_zeta(s, alpha, {abs_tol}); },
          py::arg("s"), py::arg("alpha"), py::arg("abs_tol") = 1e-10);
    m.def("riemann_zeta", [](Complex s, double abs_tol) { return riemann_zeta(s, {abs_tol}); }, py::arg("s"),
          py::arg("abs_tol") = 1e-10);
    m.def(
        "periodic_hurwitz",
        [](Complex s, double alpha, std::vector<Complex> seq, double abs_tol) {
            return periodic_hurwitz(s, alpha, PeriodicSequence::reduced(std::move(seq)), {abs_tol});
        },
        py::arg("s"), py::arg("alpha"), py::arg("sequence"), py::arg("abs_tol") = 1e-10);

    // JSON crosses the boundary as text; the Python side parses it
    m.def(
        "run_command",
        [](const std::string& command, const std::string& config) {
            const auto out = run_command(command, nlohmann::json::parse(config));
            return py::make_tuple(out.json.dump(), out.csv);
        },
        py::arg("command"), py::arg("config"));
    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            int code;
            {
                py::gil_scoped_release release;
                code = run_cli(args, out, err);
            }
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"));
}
