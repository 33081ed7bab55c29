#include "psp/genpair.hpp"

#include <string>

#include "psp/quadrature.hpp"

namespace psp {

namespace {

// Nodewise inverse of D = F conj(G) - conj(F) G = -2k Vec(conj(F) G), with the
// degeneracy check on |Vec(conj(F) G)|.
BicomplexField2D pair_denominator_inverse(const BicomplexField2D& F, const BicomplexField2D& G,
                                          double eps) {
    if (F.grid != G.grid) throw GridMismatchError("generating pair: F and G grids differ");
    BicomplexField2D inv(F.grid);
    for (std::size_t n = 0; n < F.v.size(); ++n) {
        const Bicomplex fbar_g = F.v[n].conj() * G.v[n];
        if (std::abs(fbar_g.vec()) < eps)
            throw DegeneratePairError("generating pair degenerate: |Vec(conj(F)G)| < eps at node " +
                                      std::to_string(n));
        const Bicomplex den = F.v[n] * G.v[n].conj() - fbar_g;
        inv.v[n] = bc_inverse(den);
    }
    return inv;
}

}  // namespace

CharCoeffs characteristic_coefficients(const BicomplexField2D& F, const BicomplexField2D& G,
                                       double eps) {
    const BicomplexField2D inv_den = pair_denominator_inverse(F, G, eps);
    const BicomplexField2D dbarF = wirtinger_fd(F, Wirtinger::dbar);
    const BicomplexField2D dbarG = wirtinger_fd(G, Wirtinger::dbar);
    const BicomplexField2D dF = wirtinger_fd(F, Wirtinger::d);
    const BicomplexField2D dG = wirtinger_fd(G, Wirtinger::d);

    CharCoeffs cc{BicomplexField2D(F.grid), BicomplexField2D(F.grid), BicomplexField2D(F.grid),
                  BicomplexField2D(F.grid)};
    for (std::size_t n = 0; n < F.v.size(); ++n) {
        const Bicomplex Fb = F.v[n].conj(), Gb = G.v[n].conj();
        cc.a.v[n] = -(Fb * dbarG.v[n] - Gb * dbarF.v[n]) * inv_den.v[n];
        cc.b.v[n] = (F.v[n] * dbarG.v[n] - G.v[n] * dbarF.v[n]) * inv_den.v[n];
        cc.A.v[n] = -(Fb * dG.v[n] - Gb * dF.v[n]) * inv_den.v[n];
        cc.B.v[n] = (F.v[n] * dG.v[n] - G.v[n] * dF.v[n]) * inv_den.v[n];
    }
    return cc;
}

const CharCoeffs& GeneratingPair::coeffs() const {
    if (!cache_) cache_ = std::make_shared<CharCoeffs>(characteristic_coefficients(F_, G_));
    return *cache_;
}

std::pair<BicomplexField2D, BicomplexField2D> adjoint_pair(const GeneratingPair& pair,
                                                           double eps) {
    const BicomplexField2D& F = pair.F();
    const BicomplexField2D& G = pair.G();
    const BicomplexField2D inv_den = pair_denominator_inverse(F, G, eps);
    BicomplexField2D Fs(F.grid), Gs(F.grid);
    for (std::size_t n = 0; n < F.v.size(); ++n) {
        Fs.v[n] = -2.0 * F.v[n].conj() * inv_den.v[n];
        Gs.v[n] = 2.0 * G.v[n].conj() * inv_den.v[n];
    }
    return {std::move(Fs), std::move(Gs)};
}

BicomplexField2D fg_derivative(const BicomplexField2D& W, const GeneratingPair& pair) {
    if (W.grid != pair.F().grid) throw GridMismatchError("fg_derivative: grids differ");
    const CharCoeffs& cc = pair.coeffs();
    BicomplexField2D out = wirtinger_fd(W, Wirtinger::d);
    for (std::size_t n = 0; n < W.v.size(); ++n)
        out.v[n] -= cc.A.v[n] * W.v[n] + cc.B.v[n] * W.v[n].conj();
    return out;
}

GridPath l_path(const Grid2D& grid, int ix, int iy, bool x_first) {
    const int cx = grid.x.center(), cy = grid.y.center();
    GridPath path;
    path.emplace_back(cx, cy);
    auto walk_x = [&](int from_y) {
        const int dir = (ix >= cx) ? 1 : -1;
        for (int j = cx; j != ix; j += dir) path.emplace_back(j + dir, from_y);
    };
    auto walk_y = [&](int from_x) {
        const int dir = (iy >= cy) ? 1 : -1;
        for (int j = cy; j != iy; j += dir) path.emplace_back(from_x, j + dir);
    };
    if (x_first) {
        walk_x(cy);
        walk_y(ix);
    } else {
        walk_y(cx);
        walk_x(iy);
    }
    return path;
}

Bicomplex fg_integral(const BicomplexField2D& W, const GeneratingPair& pair,
                      const GridPath& path) {
    if (W.grid != pair.F().grid) throw GridMismatchError("fg_integral: grids differ");
    if (path.empty()) throw PathOffGridError("fg_integral: empty path");
    const Grid2D& g = W.grid;
    if (path.front() != std::make_pair(g.x.center(), g.y.center()))
        throw PathOffGridError("fg_integral: path must start at the origin node");
    for (const auto& [ix, iy] : path) {
        if (ix < 0 || ix >= g.nx() || iy < 0 || iy >= g.ny())
            throw PathOffGridError("fg_integral: node outside grid");
    }

    auto [Fs, Gs] = adjoint_pair(pair);
    Bicomplex IG{}, IF{};
    for (std::size_t s = 0; s + 1 < path.size(); ++s) {
        const auto [x0, y0] = path[s];
        const auto [x1, y1] = path[s + 1];
        const int dx = x1 - x0, dy = y1 - y0;
        if (std::abs(dx) + std::abs(dy) != 1)
            throw PathOffGridError("fg_integral: path step is not a single grid edge");
        const Bicomplex u0 = Gs.at(x0, y0) * W.at(x0, y0);
        const Bicomplex u1 = Gs.at(x1, y1) * W.at(x1, y1);
        const Bicomplex v0 = Fs.at(x0, y0) * W.at(x0, y0);
        const Bicomplex v1 = Fs.at(x1, y1) * W.at(x1, y1);
        if (dx != 0) {
            const double step = g.x.node(x1) - g.x.node(x0);
            IG += 0.5 * step * (u0 + u1);
            IF += 0.5 * step * (v0 + v1);
        } else {
            const double step = g.y.node(y1) - g.y.node(y0);
            IG += 0.5 * step * (bc_k * (u0 + u1));
            IF += 0.5 * step * (bc_k * (v0 + v1));
        }
    }
    // no 1/2 prefactor: the adjoint pair already carries the factor 2, which
    // is what makes the (1,k) case reduce to the plain contour integral
    const auto [ex, ey] = path.back();
    return pair.F().at(ex, ey) * Bicomplex(IG.sc()) +
           pair.G().at(ex, ey) * Bicomplex(IF.sc());
}

namespace {

// Cumulative 4-point rule on a strided bicomplex fiber, outward from the
// center index.
void cumulative_fiber(const Bicomplex* u, int n, int stride, int center, double h,
                      Bicomplex* out, int out_stride) {
    auto val = [&](int j) { return u[static_cast<std::ptrdiff_t>(j) * stride]; };
    auto step = [&](int j) -> Bicomplex {
        if (n < 4) return 0.5 * h * (val(j) + val(j + 1));
        if (j >= 1 && j + 2 < n)
            return (h / 24.0) * (-val(j - 1) + 13.0 * val(j) + 13.0 * val(j + 1) - val(j + 2));
        if (j == 0) return (h / 24.0) * (9.0 * val(0) + 19.0 * val(1) - 5.0 * val(2) + val(3));
        return (h / 24.0) * (val(n - 4) - 5.0 * val(n - 3) + 19.0 * val(n - 2) + 9.0 * val(n - 1));
    };
    auto put = [&](int j, const Bicomplex& w) { out[static_cast<std::ptrdiff_t>(j) * out_stride] = w; };
    put(center, Bicomplex{});
    Bicomplex acc{};
    for (int j = center; j + 1 < n; ++j) {
        acc += step(j);
        put(j + 1, acc);
    }
    acc = Bicomplex{};
    for (int j = center; j - 1 >= 0; --j) {
        acc -= step(j - 1);
        put(j - 1, acc);
    }
}

// Line integral int U dz over L-paths to every node, dz = dx + k dy.
BicomplexField2D line_integral_field(const BicomplexField2D& U, bool x_first) {
    const Grid2D& g = U.grid;
    const int nx = g.nx(), ny = g.ny();
    const int cx = g.x.center(), cy = g.y.center();
    const double hx = g.x.step(), hy = g.y.step();
    BicomplexField2D out(g);

    if (x_first) {
        // first leg along the center row, second leg vertical
        std::vector<Bicomplex> along_x(static_cast<std::size_t>(nx));
        cumulative_fiber(&U.v[g.index(0, cy)], nx, 1, cx, hx, along_x.data(), 1);
        std::vector<Bicomplex> column(static_cast<std::size_t>(ny));
        for (int ix = 0; ix < nx; ++ix) {
            cumulative_fiber(&U.v[g.index(ix, 0)], ny, nx, cy, hy, column.data(), 1);
            for (int iy = 0; iy < ny; ++iy)
                out.at(ix, iy) = along_x[static_cast<std::size_t>(ix)] + bc_k * column[static_cast<std::size_t>(iy)];
        }
    } else {
        std::vector<Bicomplex> along_y(static_cast<std::size_t>(ny));
        cumulative_fiber(&U.v[g.index(cx, 0)], ny, nx, cy, hy, along_y.data(), 1);
        std::vector<Bicomplex> row(static_cast<std::size_t>(nx));
        for (int iy = 0; iy < ny; ++iy) {
            cumulative_fiber(&U.v[g.index(0, iy)], nx, 1, cx, hx, row.data(), 1);
            for (int ix = 0; ix < nx; ++ix)
                out.at(ix, iy) = bc_k * along_y[static_cast<std::size_t>(iy)] + row[static_cast<std::size_t>(ix)];
        }
    }
    return out;
}

}  // namespace

BicomplexField2D fg_antiderivative(const BicomplexField2D& W, const GeneratingPair& pair,
                                   bool x_first) {
    if (W.grid != pair.F().grid) throw GridMismatchError("fg_antiderivative: grids differ");
    auto [Fs, Gs] = adjoint_pair(pair);
    const BicomplexField2D U = hadamard(Gs, W);
    const BicomplexField2D V = hadamard(Fs, W);
    const BicomplexField2D IU = line_integral_field(U, x_first);
    const BicomplexField2D IV = line_integral_field(V, x_first);

    BicomplexField2D out(W.grid);
    for (std::size_t n = 0; n < out.v.size(); ++n) {
        out.v[n] = pair.F().v[n] * Bicomplex(IU.v[n].sc()) +
                   pair.G().v[n] * Bicomplex(IV.v[n].sc());
    }
    return out;
}

GeneratingSequence make_main_sequence(const ComplexField1D& f, const ComplexField1D& g,
                                      const Grid2D& grid) {
    if (f.grid != grid.x || g.grid != grid.y)
        throw GridMismatchError("make_main_sequence: generator grids do not match the 2-D grid");
    BicomplexField2D F0(grid), G0(grid), F1(grid), G1(grid);
    for (int iy = 0; iy < grid.ny(); ++iy) {
        for (int ix = 0; ix < grid.nx(); ++ix) {
            const Cx fx = f[ix], gy = g[iy];
            const Cx phi = fx * gy;
            const std::size_t n = grid.index(ix, iy);
            F0.v[n] = Bicomplex(phi);
            G0.v[n] = Bicomplex::from_parts(Cx(0.0), 1.0 / phi);
            F1.v[n] = Bicomplex(gy / fx);
            G1.v[n] = Bicomplex::from_parts(Cx(0.0), fx / gy);
        }
    }
    GeneratingSequence seq;
    seq.pairs[0] = GeneratingPair(std::move(F0), std::move(G0));
    seq.pairs[1] = GeneratingPair(std::move(F1), std::move(G1));
    return seq;
}

}  // namespace psp
