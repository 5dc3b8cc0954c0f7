// pylump: thin python bindings over the exact-algebra core.

#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lump/backlund.hpp"
#include "lump/balance.hpp"
#include "lump/catalog.hpp"
#include "lump/spectral.hpp"

namespace py = pybind11;
using namespace lump;

namespace {

ParamPoly bind_AB(const ParamPoly& p, double A, double B) {
    auto to_scalar = [](double v) {
        // accept only exactly representable inputs so the algebra stays exact
        Rational r(v);
        return ParamScalar(FieldElem(r));
    };
    return p.substitute_params(
        {{symbols::A(), to_scalar(A)}, {symbols::B(), to_scalar(B)}});
}

}  // namespace

PYBIND11_MODULE(pylump, m) {
    m.doc() = "polynomial tau functions, Backlund transforms and spectral checks "
              "for the Boussinesq lump hierarchy";

    py::class_<ParamPoly>(m, "Poly")
        .def("__str__", &ParamPoly::str)
        .def("degree", &ParamPoly::degree)
        .def("__eq__", [](const ParamPoly& a, const ParamPoly& b) { return a == b; })
        .def("eval", [](const ParamPoly& p, std::complex<double> x, std::complex<double> y) {
            return p.eval(x, y);
        });

    m.def("parse", &parse_poly, py::arg("text"), "parse an x/y polynomial");
    m.def("tau2", &catalog::tau2);
    m.def("g4", &catalog::g4);
    m.def("h6", &catalog::h6);
    m.def("hAB", &catalog::hAB, "h_{A,B} with symbolic A, B");
    m.def("realize", &bind_AB, py::arg("poly"), py::arg("A"), py::arg("B"),
          "substitute numeric A, B into a symbolic family");
    m.def("h00", &catalog::h00);

    m.def("boussinesq_residual", &boussinesq_residual, py::arg("tau"));
    m.def("verify", [](const ParamPoly& tau) { return boussinesq_residual(tau).is_zero(); },
          py::arg("tau"), "does tau satisfy the bilinear Boussinesq equation?");

    m.def("u", [](const ParamPoly& tau, double x, double y) {
        CompiledRatFn f(catalog::solution_from_tau(tau).u);
        return f(x, y);
    }, py::arg("tau"), py::arg("x"), py::arg("y"), "u = 2 dxx log tau at a point");

    m.def("peaks", [](double B) {
        auto pk = catalog::peaks(B);
        return std::make_pair(pk.gamma, pk.points);
    }, py::arg("B"), "(gamma, [P1, P2, P3]) for u_{0,B}");

    m.def("sup_error", &catalog::sup_error, py::arg("B"),
          py::arg("extent_factor") = 4.0, py::arg("n") = 160);

    m.def("interaction_constants", [](double rel_tol) {
        auto ic = balance::interaction_constants(rel_tol);
        py::dict d;
        d["dstar"] = ic.dstar;
        d["astar"] = ic.astar;
        d["bstar"] = ic.bstar;
        d["cstar"] = ic.cstar;
        d["rel_err"] = ic.rel_err;
        return d;
    }, py::arg("rel_tol") = 1e-7);

    m.def("lowest_eigs", [](const ParamPoly& tau, double L, unsigned N, unsigned m_) {
        CompiledRatFn cu(catalog::solution_from_tau(tau).u);
        spectral::SpectralProblem p({L, L, N, N},
                                    [&](double x, double y) { return cu(x, y); });
        return spectral::lowest_eigs(p, m_).values;
    }, py::arg("tau"), py::arg("L"), py::arg("N"), py::arg("m"),
       "lowest eigenvalues of the second-variation operator at u = 2 dxx log tau");
}
