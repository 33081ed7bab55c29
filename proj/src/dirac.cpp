#include "psp/dirac.hpp"

#include <string>

#include "psp/quadrature.hpp"

namespace psp {

double compatibility_defect(const BicomplexField2D& w) {
    const ComplexField2D w1 = w.sc_part();
    const ComplexField2D w2 = w.vec_part();
    const ComplexField2D d1 = dy_field(w1);
    const ComplexField2D d2 = dx_field(w2);
    // interior nodes only: the outer rings mix one-sided and central
    // stencils, whose differing error constants masquerade as incompatibility
    // when the input itself came through a chain of difference operators
    const int margin = 3;
    double m = 0.0;
    for (int iy = margin; iy + margin < w.grid.ny(); ++iy)
        for (int ix = margin; ix + margin < w.grid.nx(); ++ix)
            m = std::max(m, std::abs(d1.at(ix, iy) - d2.at(ix, iy)));
    return m;
}

namespace {

void check_compatible(const BicomplexField2D& w, double tol_scale) {
    const double defect = compatibility_defect(w);
    // the absolute floor keeps numerically-zero fields compatible: their
    // defect is rounding noise amplified by the difference stencils, while
    // the scaled tolerance underflows
    const double tol = tol_scale * w.max_abs() + 1e-9;
    if (defect > tol)
        throw NotCompatibleError("abar: compatibility defect " + std::to_string(defect) +
                                 " exceeds tolerance " + std::to_string(tol) +
                                 " (field is not a gradient)");
}

// cumulative 4-point integral of a complex fiber, outward from center
void cumulative_cx_fiber(const Cx* u, int n, int stride, int center, double h, Cx* out) {
    auto val = [&](int j) { return u[static_cast<std::ptrdiff_t>(j) * stride]; };
    auto step = [&](int j) -> Cx {
        if (n < 4) return 0.5 * h * (val(j) + val(j + 1));
        if (j >= 1 && j + 2 < n)
            return (h / 24.0) * (-val(j - 1) + 13.0 * val(j) + 13.0 * val(j + 1) - val(j + 2));
        if (j == 0) return (h / 24.0) * (9.0 * val(0) + 19.0 * val(1) - 5.0 * val(2) + val(3));
        return (h / 24.0) * (val(n - 4) - 5.0 * val(n - 3) + 19.0 * val(n - 2) + 9.0 * val(n - 1));
    };
    out[center] = Cx(0.0);
    for (int j = center; j + 1 < n; ++j) out[j + 1] = out[j] + step(j);
    for (int j = center; j - 1 >= 0; --j) out[j - 1] = out[j] - step(j - 1);
}

ComplexField2D abar_unchecked(const BicomplexField2D& w, bool x_first) {
    const Grid2D& g = w.grid;
    const int nx = g.nx(), ny = g.ny();
    const int cx = g.x.center(), cy = g.y.center();
    const double hx = g.x.step(), hy = g.y.step();
    const ComplexField2D w1 = w.sc_part();
    const ComplexField2D w2 = w.vec_part();
    ComplexField2D out(g);

    if (x_first) {
        std::vector<Cx> along_x(static_cast<std::size_t>(nx));
        cumulative_cx_fiber(&w1.v[g.index(0, cy)], nx, 1, cx, hx, along_x.data());
        std::vector<Cx> column(static_cast<std::size_t>(ny));
        for (int ix = 0; ix < nx; ++ix) {
            cumulative_cx_fiber(&w2.v[g.index(ix, 0)], ny, nx, cy, hy, column.data());
            for (int iy = 0; iy < ny; ++iy)
                out.at(ix, iy) = 2.0 * (along_x[static_cast<std::size_t>(ix)] +
                                        column[static_cast<std::size_t>(iy)]);
        }
    } else {
        std::vector<Cx> along_y(static_cast<std::size_t>(ny));
        cumulative_cx_fiber(&w2.v[g.index(cx, 0)], ny, nx, cy, hy, along_y.data());
        std::vector<Cx> row(static_cast<std::size_t>(nx));
        for (int iy = 0; iy < ny; ++iy) {
            cumulative_cx_fiber(&w1.v[g.index(0, iy)], nx, 1, cx, hx, row.data());
            for (int ix = 0; ix < nx; ++ix)
                out.at(ix, iy) = 2.0 * (along_y[static_cast<std::size_t>(iy)] +
                                        row[static_cast<std::size_t>(ix)]);
        }
    }
    return out;
}

}  // namespace

ComplexField2D abar_field(const BicomplexField2D& w, double tol_scale, bool x_first) {
    check_compatible(w, tol_scale);
    return abar_unchecked(w, x_first);
}

Cx abar(const BicomplexField2D& w, int ix, int iy, double tol_scale) {
    return abar_field(w, tol_scale).at(ix, iy);
}

ComplexField2D transfer_W1_to_W2(const ComplexField2D& W1, const BicomplexField2D& phi, Cx c1,
                                 double compat_mult) {
    if (W1.grid != phi.grid) throw GridMismatchError("transfer_W1_to_W2: grids differ");
    const Grid2D& g = W1.grid;
    ComplexField2D ratio(g);
    for (std::size_t n = 0; n < ratio.v.size(); ++n) ratio.v[n] = W1.v[n] / phi.v[n].sc();

    BicomplexField2D arg = wirtinger_scalar(ratio, Wirtinger::dbar);
    for (std::size_t n = 0; n < arg.v.size(); ++n) {
        const Cx p2 = phi.v[n].sc() * phi.v[n].sc();
        arg.v[n] = bc_k * (p2 * arg.v[n]);
    }

    const double h = std::max(g.x.step(), g.y.step());
    const double tol_scale = std::max(kCompatTolScale, compat_mult * h * h);
    const ComplexField2D av = abar_field(arg, tol_scale);

    ComplexField2D out(g);
    for (std::size_t n = 0; n < out.v.size(); ++n)
        out.v[n] = (av.v[n] + c1) / phi.v[n].sc();
    return out;
}

ComplexField2D transfer_W2_to_W1(const ComplexField2D& W2, const BicomplexField2D& phi, Cx c2,
                                 double compat_mult) {
    if (W2.grid != phi.grid) throw GridMismatchError("transfer_W2_to_W1: grids differ");
    const Grid2D& g = W2.grid;
    ComplexField2D prod(g);
    for (std::size_t n = 0; n < prod.v.size(); ++n) prod.v[n] = W2.v[n] * phi.v[n].sc();

    BicomplexField2D arg = wirtinger_scalar(prod, Wirtinger::dbar);
    for (std::size_t n = 0; n < arg.v.size(); ++n) {
        const Cx p2 = phi.v[n].sc() * phi.v[n].sc();
        arg.v[n] = bc_k * (arg.v[n] * (1.0 / p2));
    }

    const double h = std::max(g.x.step(), g.y.step());
    const double tol_scale = std::max(kCompatTolScale, compat_mult * h * h);
    const ComplexField2D av = abar_field(arg, tol_scale);

    ComplexField2D out(g);
    for (std::size_t n = 0; n < out.v.size(); ++n)
        out.v[n] = -phi.v[n].sc() * av.v[n] + c2 * phi.v[n].sc();
    return out;
}

double vekua_residual(const BicomplexField2D& W, const BicomplexField2D& a_coef,
                      const BicomplexField2D& b_coef, int margin) {
    const BicomplexField2D dbarW = wirtinger_fd(W, Wirtinger::dbar);
    double m = 0.0;
    for (int iy = margin; iy + margin < W.grid.ny(); ++iy) {
        for (int ix = margin; ix + margin < W.grid.nx(); ++ix) {
            const std::size_t n = W.grid.index(ix, iy);
            const Bicomplex r =
                dbarW.v[n] - a_coef.v[n] * W.v[n] - b_coef.v[n] * W.v[n].conj();
            m = std::max(m, r.abs());
        }
    }
    return m;
}

BicomplexField2D main_vekua_coefficient(const BicomplexField2D& phi) {
    BicomplexField2D b = wirtinger_fd(phi, Wirtinger::dbar);
    for (std::size_t n = 0; n < b.v.size(); ++n) b.v[n] = b.v[n] * bc_inverse(phi.v[n]);
    return b;
}

double main_vekua_residual(const BicomplexField2D& W, const BicomplexField2D& phi,
                           int margin) {
    const BicomplexField2D b = main_vekua_coefficient(phi);
    const BicomplexField2D a(W.grid);
    return vekua_residual(W, a, b, margin);
}

double successor_vekua_residual(const BicomplexField2D& W, const BicomplexField2D& phi,
                                int margin) {
    BicomplexField2D b = wirtinger_fd(phi, Wirtinger::d);
    for (std::size_t n = 0; n < b.v.size(); ++n) b.v[n] = -(b.v[n] * bc_inverse(phi.v[n]));
    const BicomplexField2D a(W.grid);
    return vekua_residual(W, a, b, margin);
}

double schrodinger_residual(const ComplexField2D& u, const ComplexField1D& potential) {
    if (u.grid.x != potential.grid)
        throw GridMismatchError("schrodinger_residual: potential grid != field x grid");
    const ComplexField2D lap = laplacian5(u);
    double m = 0.0;
    for (int iy = 1; iy + 1 < u.grid.ny(); ++iy)
        for (int ix = 1; ix + 1 < u.grid.nx(); ++ix)
            m = std::max(m, std::abs(-lap.at(ix, iy) + potential[ix] * u.at(ix, iy)));
    return m;
}

double associated_potential_defect(const PotentialData& data) {
    const BicomplexField2D db = wirtinger_fd(data.phi, Wirtinger::dbar);
    const BicomplexField2D d = wirtinger_fd(data.phi, Wirtinger::d);
    double m = 0.0;
    const Grid2D& g = data.phi.grid;
    for (int iy = 1; iy + 1 < g.ny(); ++iy) {
        for (int ix = 1; ix + 1 < g.nx(); ++ix) {
            const std::size_t n = g.index(ix, iy);
            const Cx p = data.phi.v[n].sc();
            const Bicomplex lhs = 8.0 * (db.v[n] * d.v[n]) * bc_inverse(Bicomplex(p * p));
            const Bicomplex rhs = Bicomplex(data.nu[ix] + data.mu[ix]);
            m = std::max(m, (lhs - rhs).abs());
        }
    }
    return m;
}

}  // namespace psp
