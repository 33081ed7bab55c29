#include "psp/wirtinger.hpp"

namespace psp {

void fd_derivative_buf(std::span<const Cx> u, double h, std::span<Cx> out) {
    const int n = static_cast<int>(u.size());
    if (n < 3) throw GridTooSmallError("fd_derivative: need at least 3 nodes");
    const double inv2h = 1.0 / (2.0 * h);
    out[0] = (-3.0 * u[0] + 4.0 * u[1] - u[2]) * inv2h;
    for (int j = 1; j + 1 < n; ++j) out[j] = (u[j + 1] - u[j - 1]) * inv2h;
    out[n - 1] = (3.0 * u[n - 1] - 4.0 * u[n - 2] + u[n - 3]) * inv2h;
}

ComplexField1D fd_derivative(const ComplexField1D& u) {
    ComplexField1D out(u.grid);
    fd_derivative_buf(u.v, u.grid.step(), out.v);
    return out;
}

namespace {

// Differentiate one component along x (contiguous) or y (strided).
template <typename Get, typename Set>
void differentiate_axis(int n, double h, Get get, Set set) {
    const double inv2h = 1.0 / (2.0 * h);
    set(0, (-3.0 * get(0) + 4.0 * get(1) - get(2)) * inv2h);
    for (int j = 1; j + 1 < n; ++j) set(j, (get(j + 1) - get(j - 1)) * inv2h);
    set(n - 1, (3.0 * get(n - 1) - 4.0 * get(n - 2) + get(n - 3)) * inv2h);
}

void require_min_size(const Grid2D& g) {
    if (g.nx() < 3 || g.ny() < 3)
        throw GridTooSmallError("wirtinger_fd: need at least 3 points per axis");
}

}  // namespace

ComplexField2D dx_field(const ComplexField2D& u) {
    require_min_size(u.grid);
    ComplexField2D out(u.grid);
    const int nx = u.grid.nx(), ny = u.grid.ny();
    const double h = u.grid.x.step();
    for (int iy = 0; iy < ny; ++iy) {
        differentiate_axis(
            nx, h, [&](int j) { return u.at(j, iy); },
            [&](int j, Cx val) { out.at(j, iy) = val; });
    }
    return out;
}

ComplexField2D dy_field(const ComplexField2D& u) {
    require_min_size(u.grid);
    ComplexField2D out(u.grid);
    const int nx = u.grid.nx(), ny = u.grid.ny();
    const double h = u.grid.y.step();
    for (int ix = 0; ix < nx; ++ix) {
        differentiate_axis(
            ny, h, [&](int j) { return u.at(ix, j); },
            [&](int j, Cx val) { out.at(ix, j) = val; });
    }
    return out;
}

BicomplexField2D wirtinger_fd(const BicomplexField2D& w, Wirtinger which) {
    require_min_size(w.grid);
    const int nx = w.grid.nx(), ny = w.grid.ny();
    const double hx = w.grid.x.step(), hy = w.grid.y.step();
    const double sign = (which == Wirtinger::dbar) ? 1.0 : -1.0;

    BicomplexField2D dx(w.grid), dy(w.grid);
    for (int iy = 0; iy < ny; ++iy) {
        differentiate_axis(
            nx, hx, [&](int j) { return w.at(j, iy); },
            [&](int j, Bicomplex val) { dx.at(j, iy) = val; });
    }
    for (int ix = 0; ix < nx; ++ix) {
        differentiate_axis(
            ny, hy, [&](int j) { return w.at(ix, j); },
            [&](int j, Bicomplex val) { dy.at(ix, j) = val; });
    }

    BicomplexField2D out(w.grid);
    for (std::size_t n = 0; n < out.v.size(); ++n)
        out.v[n] = 0.5 * (dx.v[n] + sign * (bc_k * dy.v[n]));
    return out;
}

BicomplexField2D wirtinger_scalar(const ComplexField2D& u, Wirtinger which) {
    ComplexField2D ux = dx_field(u), uy = dy_field(u);
    const double sign = (which == Wirtinger::dbar) ? 1.0 : -1.0;
    BicomplexField2D out(u.grid);
    for (std::size_t n = 0; n < out.v.size(); ++n)
        out.v[n] = Bicomplex::from_parts(0.5 * ux.v[n], 0.5 * sign * uy.v[n]);
    return out;
}

ComplexField2D laplacian5(const ComplexField2D& u) {
    require_min_size(u.grid);
    ComplexField2D out(u.grid);
    const int nx = u.grid.nx(), ny = u.grid.ny();
    const double ihx2 = 1.0 / (u.grid.x.step() * u.grid.x.step());
    const double ihy2 = 1.0 / (u.grid.y.step() * u.grid.y.step());
    for (int iy = 1; iy + 1 < ny; ++iy) {
        for (int ix = 1; ix + 1 < nx; ++ix) {
            out.at(ix, iy) = (u.at(ix + 1, iy) - 2.0 * u.at(ix, iy) + u.at(ix - 1, iy)) * ihx2 +
                             (u.at(ix, iy + 1) - 2.0 * u.at(ix, iy) + u.at(ix, iy - 1)) * ihy2;
        }
    }
    return out;
}

}  // namespace psp
