#include "psp/transmute.hpp"

#include <string>
#include <vector>

#include "psp/parallel.hpp"
#include "psp/quadrature.hpp"
#include "psp/wirtinger.hpp"

namespace psp {

void apply_transmutation_buf(const DressedKernel& kern, std::span<const Cx> u,
                             std::span<Cx> out) {
    const SymmetricGrid1D& g = kern.grid();
    const int n = g.size(), c = g.center();
    const double h = g.step();
    if (static_cast<int>(u.size()) != n)
        throw GridMismatchError("apply_transmutation: sample count != kernel grid");

    out[static_cast<std::size_t>(c)] = u[static_cast<std::size_t>(c)];
    for (int j = 1; j <= c; ++j) {
        const int ip = c + j, im = c - j;
        const Cx* rp = kern.row(ip);
        const Cx* rm = kern.row(im);
        Cx accp = 0.5 * (rp[im] * u[static_cast<std::size_t>(im)] +
                         rp[ip] * u[static_cast<std::size_t>(ip)]);
        Cx accm = 0.5 * (rm[im] * u[static_cast<std::size_t>(im)] +
                         rm[ip] * u[static_cast<std::size_t>(ip)]);
        for (int l = im + 1; l < ip; ++l) {
            accp += rp[l] * u[static_cast<std::size_t>(l)];
            accm += rm[l] * u[static_cast<std::size_t>(l)];
        }
        out[static_cast<std::size_t>(ip)] = u[static_cast<std::size_t>(ip)] + h * accp;
        out[static_cast<std::size_t>(im)] = u[static_cast<std::size_t>(im)] - h * accm;
    }
}

ComplexField1D apply_transmutation(const DressedKernel& kern, const ComplexField1D& u) {
    if (u.grid != kern.grid())
        throw GridMismatchError("apply_transmutation: field grid != kernel grid");
    ComplexField1D out(u.grid);
    apply_transmutation_buf(kern, u.v, out.v);
    return out;
}

void apply_recip_transmutation_buf(const ComplexField1D& f, const DressedKernel& kern_f,
                                   std::span<const Cx> u, std::span<Cx> out) {
    const int n = f.size();
    const double h = f.grid.step();
    std::vector<Cx> du(static_cast<std::size_t>(n)), tu(static_cast<std::size_t>(n));
    fd_derivative_buf(u, h, du);
    apply_transmutation_buf(kern_f, du, tu);
    for (int j = 0; j < n; ++j) tu[static_cast<std::size_t>(j)] *= f[j];
    std::vector<Cx> integral(static_cast<std::size_t>(n));
    cumulative_from_center(tu, f.grid.center(), h, integral);
    const Cx u0 = u[static_cast<std::size_t>(f.grid.center())];
    for (int j = 0; j < n; ++j)
        out[static_cast<std::size_t>(j)] = (integral[static_cast<std::size_t>(j)] + u0) / f[j];
}

ComplexField1D apply_recip_transmutation(const ComplexField1D& f, const DressedKernel& kern_f,
                                         const ComplexField1D& u) {
    if (u.grid != f.grid || f.grid != kern_f.grid())
        throw GridMismatchError("apply_recip_transmutation: grids differ");
    ComplexField1D out(u.grid);
    apply_recip_transmutation_buf(f, kern_f, u.v, out.v);
    return out;
}

void invert_transmutation_buf(const DressedKernel& kern, std::span<const Cx> v,
                              std::span<Cx> out) {
    const SymmetricGrid1D& g = kern.grid();
    const int n = g.size(), c = g.center();
    const double h = g.step();
    if (static_cast<int>(v.size()) != n)
        throw GridMismatchError("invert_transmutation: sample count != kernel grid");

    out[static_cast<std::size_t>(c)] = v[static_cast<std::size_t>(c)];
    for (int j = 1; j <= c; ++j) {
        const int ip = c + j, im = c - j;
        const Cx* rp = kern.row(ip);
        const Cx* rm = kern.row(im);
        // interior contributions from already-known nodes
        Cx sp(0.0), sm(0.0);
        for (int l = im + 1; l < ip; ++l) {
            sp += rp[l] * out[static_cast<std::size_t>(l)];
            sm += rm[l] * out[static_cast<std::size_t>(l)];
        }
        // 2x2 system for (u[ip], u[im])
        Cx a11 = 1.0 + 0.5 * h * rp[ip];
        Cx a12 = 0.5 * h * rp[im];
        Cx b1 = v[static_cast<std::size_t>(ip)] - h * sp;
        Cx a21 = -0.5 * h * rm[ip];
        Cx a22 = 1.0 - 0.5 * h * rm[im];
        Cx b2 = v[static_cast<std::size_t>(im)] + h * sm;

        if (std::abs(a11) < std::abs(a21)) {
            std::swap(a11, a21);
            std::swap(a12, a22);
            std::swap(b1, b2);
        }
        if (std::abs(a11) < 1e-12)
            throw SingularStepError("invert_transmutation: zero pivot at level " +
                                    std::to_string(j));
        const Cx m = a21 / a11;
        const Cx r22 = a22 - m * a12;
        if (std::abs(r22) < 1e-12)
            throw SingularStepError("invert_transmutation: singular 2x2 step at level " +
                                    std::to_string(j));
        const Cx um = (b2 - m * b1) / r22;
        const Cx up = (b1 - a12 * um) / a11;
        out[static_cast<std::size_t>(ip)] = up;
        out[static_cast<std::size_t>(im)] = um;
    }
}

ComplexField1D invert_transmutation(const DressedKernel& kern, const ComplexField1D& v) {
    if (v.grid != kern.grid())
        throw GridMismatchError("invert_transmutation: field grid != kernel grid");
    ComplexField1D out(v.grid);
    invert_transmutation_buf(kern, v.v, out.v);
    return out;
}

void invert_recip_transmutation_buf(const ComplexField1D& f, const DressedKernel& kern_f,
                                    std::span<const Cx> v, std::span<Cx> out) {
    const int n = f.size(), c = f.grid.center();
    const double h = f.grid.step();
    std::vector<Cx> fv(static_cast<std::size_t>(n)), dfv(static_cast<std::size_t>(n)),
        s(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) fv[static_cast<std::size_t>(j)] = f[j] * v[static_cast<std::size_t>(j)];
    fd_derivative_buf(fv, h, dfv);
    for (int j = 0; j < n; ++j) dfv[static_cast<std::size_t>(j)] /= f[j];
    invert_transmutation_buf(kern_f, dfv, s);
    cumulative_from_center(s, c, h, out);
    const Cx v0 = v[static_cast<std::size_t>(c)];
    for (int j = 0; j < n; ++j) out[static_cast<std::size_t>(j)] += v0;
}

ComplexField1D invert_recip_transmutation(const ComplexField1D& f, const DressedKernel& kern_f,
                                          const ComplexField1D& v) {
    if (v.grid != f.grid || f.grid != kern_f.grid())
        throw GridMismatchError("invert_recip_transmutation: grids differ");
    ComplexField1D out(v.grid);
    invert_recip_transmutation_buf(f, kern_f, v.v, out.v);
    return out;
}

TransmutationOps make_transmutation_ops(const ComplexField1D& f, const ComplexField1D& g,
                                        const ComplexField1D& q, const ComplexField1D& q_tilde,
                                        Cx slope_f, Cx slope_g, double picard_tol,
                                        int picard_max_iter) {
    TransmutationOps ops;
    ops.f = f;
    ops.g = g;
    ops.kf = dress_kernel(goursat_kernel(q, picard_tol, picard_max_iter), slope_f);
    ops.kg = dress_kernel(goursat_kernel(q_tilde, picard_tol, picard_max_iter), slope_g);
    return ops;
}

ComplexField2D apply_fiberwise(const ComplexField2D& field, Axis axis,
                               const std::function<void(std::span<const Cx>, std::span<Cx>)>& op) {
    const Grid2D& grid = field.grid;
    const int nx = grid.nx(), ny = grid.ny();
    ComplexField2D out(grid);
    if (axis == Axis::x) {
        parallel_for(ny, [&](int iy) {
            const std::span<const Cx> in(&field.v[grid.index(0, iy)], static_cast<std::size_t>(nx));
            const std::span<Cx> dst(&out.v[grid.index(0, iy)], static_cast<std::size_t>(nx));
            op(in, dst);
        });
    } else {
        parallel_for(nx, [&](int ix) {
            std::vector<Cx> in(static_cast<std::size_t>(ny)), dst(static_cast<std::size_t>(ny));
            for (int iy = 0; iy < ny; ++iy) in[static_cast<std::size_t>(iy)] = field.at(ix, iy);
            op(in, dst);
            for (int iy = 0; iy < ny; ++iy) out.at(ix, iy) = dst[static_cast<std::size_t>(iy)];
        });
    }
    return out;
}

namespace {

using FiberOp = std::function<void(std::span<const Cx>, std::span<Cx>)>;

FiberOp direct_op(const DressedKernel& kern) {
    return [&kern](std::span<const Cx> in, std::span<Cx> out) {
        apply_transmutation_buf(kern, in, out);
    };
}
FiberOp recip_op(const ComplexField1D& f, const DressedKernel& kern) {
    return [&f, &kern](std::span<const Cx> in, std::span<Cx> out) {
        apply_recip_transmutation_buf(f, kern, in, out);
    };
}
FiberOp direct_inv_op(const DressedKernel& kern) {
    return [&kern](std::span<const Cx> in, std::span<Cx> out) {
        invert_transmutation_buf(kern, in, out);
    };
}
FiberOp recip_inv_op(const ComplexField1D& f, const DressedKernel& kern) {
    return [&f, &kern](std::span<const Cx> in, std::span<Cx> out) {
        invert_recip_transmutation_buf(f, kern, in, out);
    };
}

void check_ops_grid(const BicomplexField2D& W, const TransmutationOps& ops) {
    if (W.grid.x != ops.f.grid || W.grid.y != ops.g.grid)
        throw GridMismatchError("2-D transmutation: field grid != operator grids");
}

}  // namespace

BicomplexField2D apply_T0(const BicomplexField2D& W, const TransmutationOps& ops) {
    check_ops_grid(W, ops);
    ComplexField2D u = apply_fiberwise(W.sc_part(), Axis::x, direct_op(ops.kf));
    u = apply_fiberwise(u, Axis::y, direct_op(ops.kg));
    ComplexField2D v = apply_fiberwise(W.vec_part(), Axis::x, recip_op(ops.f, ops.kf));
    v = apply_fiberwise(v, Axis::y, recip_op(ops.g, ops.kg));
    return BicomplexField2D::from_parts(u, v);
}

BicomplexField2D apply_T1(const BicomplexField2D& W, const TransmutationOps& ops) {
    check_ops_grid(W, ops);
    ComplexField2D u = apply_fiberwise(W.sc_part(), Axis::x, recip_op(ops.f, ops.kf));
    u = apply_fiberwise(u, Axis::y, direct_op(ops.kg));
    ComplexField2D v = apply_fiberwise(W.vec_part(), Axis::x, direct_op(ops.kf));
    v = apply_fiberwise(v, Axis::y, recip_op(ops.g, ops.kg));
    return BicomplexField2D::from_parts(u, v);
}

BicomplexField2D apply_T0_inverse(const BicomplexField2D& W, const TransmutationOps& ops) {
    check_ops_grid(W, ops);
    ComplexField2D u = apply_fiberwise(W.sc_part(), Axis::y, direct_inv_op(ops.kg));
    u = apply_fiberwise(u, Axis::x, direct_inv_op(ops.kf));
    ComplexField2D v = apply_fiberwise(W.vec_part(), Axis::y, recip_inv_op(ops.g, ops.kg));
    v = apply_fiberwise(v, Axis::x, recip_inv_op(ops.f, ops.kf));
    return BicomplexField2D::from_parts(u, v);
}

BicomplexField2D apply_T1_inverse(const BicomplexField2D& W, const TransmutationOps& ops) {
    check_ops_grid(W, ops);
    ComplexField2D u = apply_fiberwise(W.sc_part(), Axis::y, direct_inv_op(ops.kg));
    u = apply_fiberwise(u, Axis::x, recip_inv_op(ops.f, ops.kf));
    ComplexField2D v = apply_fiberwise(W.vec_part(), Axis::y, recip_inv_op(ops.g, ops.kg));
    v = apply_fiberwise(v, Axis::x, direct_inv_op(ops.kf));
    return BicomplexField2D::from_parts(u, v);
}

}  // namespace psp
