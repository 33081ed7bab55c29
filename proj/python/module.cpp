#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "psp/approx.hpp"
#include "psp/dirac.hpp"
#include "psp/formal.hpp"
#include "psp/runner.hpp"
#include "psp/transmute.hpp"

namespace py = pybind11;
using namespace psp;

namespace {

using CArray1 = py::array_t<Cx, py::array::c_style | py::array::forcecast>;
using CArray2 = py::array_t<Cx, py::array::c_style | py::array::forcecast>;

ComplexField1D to_field1d(const SymmetricGrid1D& g, const CArray1& a) {
    if (a.ndim() != 1 || a.shape(0) != g.size())
        throw GridMismatchError("array length != grid point count");
    ComplexField1D f(g);
    const auto r = a.unchecked<1>();
    for (int j = 0; j < g.size(); ++j) f[j] = r(j);
    return f;
}

py::array_t<Cx> from_field1d(const ComplexField1D& f) {
    py::array_t<Cx> out(static_cast<py::ssize_t>(f.size()));
    auto r = out.mutable_unchecked<1>();
    for (int j = 0; j < f.size(); ++j) r(j) = f[j];
    return out;
}

// bicomplex fields cross the boundary as a pair of complex (ny, nx) arrays
// (scalar part u, vector part v)
BicomplexField2D to_field2d(const Grid2D& g, const CArray2& u, const CArray2& v) {
    if (u.ndim() != 2 || v.ndim() != 2 || u.shape(0) != g.ny() || u.shape(1) != g.nx() ||
        v.shape(0) != g.ny() || v.shape(1) != g.nx())
        throw GridMismatchError("arrays must have shape (ny, nx)");
    BicomplexField2D f(g);
    const auto ru = u.unchecked<2>();
    const auto rv = v.unchecked<2>();
    for (int iy = 0; iy < g.ny(); ++iy)
        for (int ix = 0; ix < g.nx(); ++ix)
            f.at(ix, iy) = Bicomplex::from_parts(ru(iy, ix), rv(iy, ix));
    return f;
}

py::tuple from_field2d(const BicomplexField2D& f) {
    const Grid2D& g = f.grid;
    py::array_t<Cx> u({g.ny(), g.nx()});
    py::array_t<Cx> v({g.ny(), g.nx()});
    auto ru = u.mutable_unchecked<2>();
    auto rv = v.mutable_unchecked<2>();
    for (int iy = 0; iy < g.ny(); ++iy) {
        for (int ix = 0; ix < g.nx(); ++ix) {
            const Bicomplex w = f.at(ix, iy);
            ru(iy, ix) = w.sc();
            rv(iy, ix) = w.vec();
        }
    }
    return py::make_tuple(u, v);
}

PotentialSpec make_spec(const std::string& kind, double c, const std::vector<double>& coeffs,
                        double m, double omega, const Grid2D& domain) {
    PotentialSpec s;
    if (kind == "zero") s.kind = PotentialKind::zero;
    else if (kind == "constant") s.kind = PotentialKind::constant;
    else if (kind == "linear") s.kind = PotentialKind::linear;
    else if (kind == "polynomial") s.kind = PotentialKind::polynomial;
    else throw ParseError("unknown potential kind '" + kind + "'");
    s.c = c;
    s.coeffs = coeffs;
    s.m = m;
    s.omega = omega;
    s.domain = domain;
    return s;
}

/// Bundles the derived data, kernels and generating sequence for one
/// potential on one grid; the unit the Python surface works with.
struct Problem {
    Grid2D grid;
    PotentialData data;
    TransmutationOps ops;
    GeneratingSequence seq;

    Problem(const std::string& kind, double c, const std::vector<double>& coeffs, double m,
            double omega, double a, int nx, double b, int ny, double picard_tol,
            int picard_max_iter)
        : grid(a, nx, b, ny),
          data(derive_potential_data(make_spec(kind, c, coeffs, m, omega, grid))),
          ops(make_transmutation_ops(data.f, data.g, data.q, data.q_tilde, data.slope_f,
                                     data.slope_g, picard_tol, picard_max_iter)),
          seq(make_main_sequence(data.f, data.g, grid)) {}
};

}  // namespace

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "Bicomplex formal powers and transmutation operators for the 2-D Dirac equation";

    py::register_exception<ZeroDivisorError>(mod, "ZeroDivisorError");
    py::register_exception<DegeneratePairError>(mod, "DegeneratePairError");
    py::register_exception<NotCompatibleError>(mod, "NotCompatibleError");
    py::register_exception<NotASolutionError>(mod, "NotASolutionError");
    py::register_exception<RadiusTooLargeError>(mod, "RadiusTooLargeError");

    py::class_<Bicomplex>(mod, "Bicomplex")
        .def(py::init<double, double, double, double>(), py::arg("re"), py::arg("im_i") = 0.0,
             py::arg("im_k") = 0.0, py::arg("im_ik") = 0.0)
        .def_readwrite("re", &Bicomplex::re)
        .def_readwrite("im_i", &Bicomplex::im_i)
        .def_readwrite("im_k", &Bicomplex::im_k)
        .def_readwrite("im_ik", &Bicomplex::im_ik)
        .def("sc", &Bicomplex::sc)
        .def("vec", &Bicomplex::vec)
        .def("plus", &Bicomplex::plus)
        .def("minus", &Bicomplex::minus)
        .def("conj", &Bicomplex::conj)
        .def("abs", &Bicomplex::abs)
        .def("inverse", [](const Bicomplex& w) { return bc_inverse(w); })
        .def("__add__", [](const Bicomplex& a, const Bicomplex& b) { return a + b; })
        .def("__sub__", [](const Bicomplex& a, const Bicomplex& b) { return a - b; })
        .def("__mul__", [](const Bicomplex& a, const Bicomplex& b) { return a * b; })
        .def("__neg__", [](const Bicomplex& a) { return -a; })
        .def("__eq__", [](const Bicomplex& a, const Bicomplex& b) { return a == b; })
        .def("__repr__", [](const Bicomplex& w) {
            return "Bicomplex(" + std::to_string(w.re) + ", " + std::to_string(w.im_i) + ", " +
                   std::to_string(w.im_k) + ", " + std::to_string(w.im_ik) + ")";
        });

    mod.def("idempotent_split", [](const Bicomplex& w) { return idempotent_split(w); });
    mod.def("from_idempotent", &Bicomplex::from_idempotent);

    mod.def(
        "cumulative_integral",
        [](const CArray1& u, double half_width) {
            const SymmetricGrid1D g(half_width, static_cast<int>(u.shape(0)));
            return from_field1d(cumulative_integral(to_field1d(g, u)));
        },
        py::arg("samples"), py::arg("half_width"),
        "Antiderivative from 0 on a symmetric uniform grid (odd sample count).");

    py::class_<Problem>(mod, "Problem")
        .def(py::init<const std::string&, double, const std::vector<double>&, double, double,
                      double, int, double, int, double, int>(),
             py::arg("kind") = "zero", py::arg("c") = 0.0,
             py::arg("coefficients") = std::vector<double>{}, py::arg("m") = 0.0,
             py::arg("omega") = 0.0, py::arg("a") = 1.0, py::arg("nx") = 201, py::arg("b") = 1.0,
             py::arg("ny") = 201, py::arg("picard_tol") = 1e-12, py::arg("picard_max_iter") = 50)
        .def_property_readonly("x_nodes",
                               [](const Problem& p) {
                                   py::array_t<double> out(static_cast<py::ssize_t>(p.grid.nx()));
                                   auto r = out.mutable_unchecked<1>();
                                   for (int j = 0; j < p.grid.nx(); ++j) r(j) = p.grid.x.node(j);
                                   return out;
                               })
        .def_property_readonly("y_nodes",
                               [](const Problem& p) {
                                   py::array_t<double> out(static_cast<py::ssize_t>(p.grid.ny()));
                                   auto r = out.mutable_unchecked<1>();
                                   for (int j = 0; j < p.grid.ny(); ++j) r(j) = p.grid.y.node(j);
                                   return out;
                               })
        .def_property_readonly("f", [](const Problem& p) { return from_field1d(p.data.f); })
        .def_property_readonly("g", [](const Problem& p) { return from_field1d(p.data.g); })
        .def_property_readonly("nu", [](const Problem& p) { return from_field1d(p.data.nu); })
        .def_property_readonly("mu", [](const Problem& p) { return from_field1d(p.data.mu); })
        .def_property_readonly("picard_iterations",
                               [](const Problem& p) { return p.ops.kf.base.picard_iterations; })
        .def(
            "formal_power",
            [](const Problem& p, int n, const std::string& coeff, int member) {
                const XSystems xs = build_x_systems(p.data.f, n);
                const XSystems ys = build_x_systems(p.data.g, n);
                const XSystems xsw{xs.tilde, xs.direct};
                BicomplexField2D phi(p.grid);
                for (int iy = 0; iy < p.grid.ny(); ++iy)
                    for (int ix = 0; ix < p.grid.nx(); ++ix)
                        phi.at(ix, iy) =
                            Bicomplex(member == 0 ? p.data.f[ix] * p.data.g[iy]
                                                  : p.data.g[iy] / p.data.f[ix]);
                const Bicomplex alpha = (coeff == "k") ? bc_k : bc_one;
                return from_field2d(formal_power_closed(n, alpha, member == 0 ? xs : xsw, ys, phi));
            },
            py::arg("n"), py::arg("coeff") = "1", py::arg("member") = 0,
            "Closed-form formal power Z^(n)(coeff, 0; .) for the main equation "
            "(member=0) or its successor (member=1).")
        .def(
            "formal_power_recursive",
            [](const Problem& p, int n, const std::string& coeff, int member) {
                const Bicomplex alpha = (coeff == "k") ? bc_k : bc_one;
                return from_field2d(formal_power_recursive(n, alpha, p.seq, member));
            },
            py::arg("n"), py::arg("coeff") = "1", py::arg("member") = 0)
        .def(
            "apply_T0",
            [](const Problem& p, const CArray2& u, const CArray2& v) {
                return from_field2d(apply_T0(to_field2d(p.grid, u, v), p.ops));
            },
            py::arg("u"), py::arg("v"))
        .def(
            "apply_T1",
            [](const Problem& p, const CArray2& u, const CArray2& v) {
                return from_field2d(apply_T1(to_field2d(p.grid, u, v), p.ops));
            },
            py::arg("u"), py::arg("v"))
        .def(
            "apply_T0_inverse",
            [](const Problem& p, const CArray2& u, const CArray2& v) {
                return from_field2d(apply_T0_inverse(to_field2d(p.grid, u, v), p.ops));
            },
            py::arg("u"), py::arg("v"))
        .def(
            "transmute",
            [](const Problem& p, const CArray1& u) {
                return from_field1d(apply_transmutation(p.ops.kf, to_field1d(p.grid.x, u)));
            },
            py::arg("u"), "T_f applied to 1-D samples on the x grid.")
        .def(
            "transmute_recip",
            [](const Problem& p, const CArray1& u) {
                return from_field1d(
                    apply_recip_transmutation(p.data.f, p.ops.kf, to_field1d(p.grid.x, u)));
            },
            py::arg("u"))
        .def(
            "vekua_residual_main",
            [](const Problem& p, const CArray2& u, const CArray2& v) {
                return main_vekua_residual(to_field2d(p.grid, u, v), p.data.phi);
            },
            py::arg("u"), py::arg("v"))
        .def(
            "vekua_residual_successor",
            [](const Problem& p, const CArray2& u, const CArray2& v) {
                return successor_vekua_residual(to_field2d(p.grid, u, v), p.data.phi);
            },
            py::arg("u"), py::arg("v"))
        .def(
            "schrodinger_residual",
            [](const Problem& p, const CArray2& u, const std::string& which) {
                ComplexField2D field(p.grid);
                const auto r = u.unchecked<2>();
                for (int iy = 0; iy < p.grid.ny(); ++iy)
                    for (int ix = 0; ix < p.grid.nx(); ++ix) field.at(ix, iy) = r(iy, ix);
                return schrodinger_residual(field, which == "mu" ? p.data.mu : p.data.nu);
            },
            py::arg("u"), py::arg("potential") = "nu")
        .def(
            "taylor_coefficients",
            [](const Problem& p, const CArray2& u, const CArray2& v, int n_max, double radius) {
                const TaylorExpansion e = taylor_coefficients(to_field2d(p.grid, u, v), p.ops,
                                                              p.data.phi, n_max, radius);
                py::list coeffs;
                for (const Bicomplex& a : e.coefficients) coeffs.append(a);
                return py::make_tuple(coeffs, e.radius_estimate);
            },
            py::arg("u"), py::arg("v"), py::arg("n_max"), py::arg("radius"))
        .def(
            "runge_fit",
            [](const Problem& p, const CArray2& u, const CArray2& v, int degree) {
                FormalPowerSet powers(p.data.f, p.data.g, p.grid, degree);
                const RungeFit fit = runge_fit(to_field2d(p.grid, u, v), powers, degree);
                py::dict out;
                out["degree"] = fit.degree;
                out["sup_error"] = fit.sup_error;
                out["l2_error"] = fit.l2_error;
                out["condition"] = fit.condition;
                return out;
            },
            py::arg("u"), py::arg("v"), py::arg("degree"));

    mod.def("run_command", &run_command, py::arg("command"), py::arg("config"),
            py::arg("out_dir") = "");
    mod.def("load_config", &load_config, py::arg("path"));

    py::class_<RunConfig>(mod, "RunConfig");
}
