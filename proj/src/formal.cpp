#include "psp/formal.hpp"

#include <string>

namespace psp {

namespace {

double binomial(int n, int m) {
    double acc = 1.0;
    for (int j = 1; j <= m; ++j) acc = acc * static_cast<double>(n - m + j) / static_cast<double>(j);
    return acc;
}

// T(x,y) = sum_m binom(n,m) XX^(n-m)(x) k^m YY^(m)(y) with the parity choice
// of (Znstar); `direct_x` selects X vs Xt for the x-factor, dually for y.
BicomplexField2D parity_sum(int n, const XSystems& xs, const XSystems& ys, bool direct_x,
                            bool direct_y, const Grid2D& grid) {
    BicomplexField2D out(grid);
    for (int m = 0; m <= n; ++m) {
        const ComplexField1D& xf = direct_x ? xs.direct[static_cast<std::size_t>(n - m)]
                                            : xs.tilde[static_cast<std::size_t>(n - m)];
        const ComplexField1D& yf = direct_y ? ys.direct[static_cast<std::size_t>(m)]
                                            : ys.tilde[static_cast<std::size_t>(m)];
        const double c = binomial(n, m);
        const Bicomplex km = k_power(m);
        for (int iy = 0; iy < grid.ny(); ++iy) {
            const Cx ym = c * yf[iy];
            for (int ix = 0; ix < grid.nx(); ++ix) {
                out.at(ix, iy) += (xf[ix] * ym) * km;
            }
        }
    }
    return out;
}

BicomplexField2D recombine_with_phi(const BicomplexField2D& zstar, const BicomplexField2D& phi) {
    BicomplexField2D out(zstar.grid);
    for (std::size_t j = 0; j < out.v.size(); ++j) {
        const Bicomplex p = phi.v[j];
        out.v[j] = p * Bicomplex(zstar.v[j].sc()) +
                   (bc_k * bc_inverse(p)) * Bicomplex(zstar.v[j].vec());
    }
    return out;
}

}  // namespace

BicomplexField2D formal_power_closed(int n, const Bicomplex& alpha, const XSystems& xs,
                                     const XSystems& ys, const BicomplexField2D& phi) {
    if (n < 0 || n > xs.n_max() || n > ys.n_max())
        throw DegreeOutOfRangeError("formal_power_closed: degree " + std::to_string(n) +
                                    " outside the built systems");
    const Grid2D& grid = phi.grid;
    const bool odd = (n % 2 != 0);

    // (Znstar): n odd pairs X with Yt (coefficient alpha') and Xt with Y
    // (coefficient alpha''); n even swaps the tildes on the x-side.
    const BicomplexField2D sum_sc = parity_sum(n, xs, ys, /*direct_x=*/odd, /*direct_y=*/false, grid);
    const BicomplexField2D sum_vec = parity_sum(n, xs, ys, /*direct_x=*/!odd, /*direct_y=*/true, grid);

    const Cx ap = alpha.sc(), app = alpha.vec();
    BicomplexField2D zstar(grid);
    for (std::size_t j = 0; j < zstar.v.size(); ++j)
        zstar.v[j] = ap * sum_sc.v[j] + app * (bc_k * sum_vec.v[j]);
    return recombine_with_phi(zstar, phi);
}

BicomplexField2D formal_power_recursive(int n, const Bicomplex& alpha,
                                        const GeneratingSequence& seq, int level) {
    if (n < 0) throw DegreeOutOfRangeError("formal_power_recursive: n must be >= 0");

    // Z^(0) for the pair the chain starts at: lambda F + mu G matching alpha
    // at the origin.
    const int start = (level + n) % 2;
    const GeneratingPair& p0 = seq.pair(start);
    const Bicomplex F0 = p0.F().at_origin(), G0 = p0.G().at_origin();
    const Cx det = F0.sc() * G0.vec() - F0.vec() * G0.sc();
    if (std::abs(det) < kDegenerateEps)
        throw DegeneratePairError("formal_power_recursive: pair degenerate at the origin");
    const Cx lambda = (alpha.sc() * G0.vec() - alpha.vec() * G0.sc()) / det;
    const Cx mu = (F0.sc() * alpha.vec() - F0.vec() * alpha.sc()) / det;

    BicomplexField2D cur(p0.F().grid);
    for (std::size_t j = 0; j < cur.v.size(); ++j)
        cur.v[j] = lambda * p0.F().v[j] + mu * p0.G().v[j];

    for (int j = 1; j <= n; ++j) {
        const int m = (level + n - j) % 2;
        cur = fg_antiderivative(cur, seq.pair(m));
        for (Bicomplex& w : cur.v) w = static_cast<double>(j) * w;
    }
    return cur;
}

FormalPowerSet::FormalPowerSet(const ComplexField1D& f, const ComplexField1D& g,
                               const Grid2D& grid, int max_degree)
    : grid_(grid), max_degree_(max_degree) {
    if (max_degree < 0) throw DegreeOutOfRangeError("FormalPowerSet: max_degree must be >= 0");

    // Systems for f and for 1/f; inverting f swaps the direct/tilde roles, so
    // one build serves both members of the period-two sequence.
    const XSystems xs = build_x_systems(f, max_degree);
    const XSystems ys = build_x_systems(g, max_degree);
    XSystems xs_swapped{xs.tilde, xs.direct};

    BicomplexField2D phi0(grid), phi1(grid);
    for (int iy = 0; iy < grid.ny(); ++iy) {
        for (int ix = 0; ix < grid.nx(); ++ix) {
            phi0.at(ix, iy) = Bicomplex(f[ix] * g[iy]);
            phi1.at(ix, iy) = Bicomplex(g[iy] / f[ix]);
        }
    }

    for (int m = 0; m < 2; ++m) {
        const XSystems& x_sys = (m == 0) ? xs : xs_swapped;
        const BicomplexField2D& phi = (m == 0) ? phi0 : phi1;
        for (int coeff = 0; coeff < 2; ++coeff) {
            auto& slot = powers_[static_cast<std::size_t>(m)][static_cast<std::size_t>(coeff)];
            slot.reserve(static_cast<std::size_t>(max_degree) + 1);
            const Bicomplex alpha = (coeff == 0) ? bc_one : bc_k;
            for (int n = 0; n <= max_degree; ++n)
                slot.push_back(formal_power_closed(n, alpha, x_sys, ys, phi));
        }
    }
}

const BicomplexField2D& FormalPowerSet::power(int n, int coeff, int m) const {
    if (n < 0 || n > max_degree_)
        throw DegreeOutOfRangeError("FormalPowerSet::power: degree out of range");
    return powers_[static_cast<std::size_t>(m & 1)][static_cast<std::size_t>(coeff & 1)]
                  [static_cast<std::size_t>(n)];
}

BicomplexField2D FormalPowerSet::combine(int n, const Bicomplex& alpha, int m) const {
    const BicomplexField2D& z1 = power(n, 0, m);
    const BicomplexField2D& zk = power(n, 1, m);
    const Cx ap = alpha.sc(), app = alpha.vec();
    BicomplexField2D out(grid_);
    for (std::size_t j = 0; j < out.v.size(); ++j)
        out.v[j] = ap * z1.v[j] + app * zk.v[j];
    return out;
}

}  // namespace psp
