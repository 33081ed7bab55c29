#include "psp/goursat.hpp"

#include <string>

#include "psp/quadrature.hpp"

namespace psp {

namespace {

// q resampled on the half-step lattice x = sgn * S * h/2, S = 0..n-1, by
// cubic midpoint interpolation between grid nodes.
std::vector<Cx> half_grid_potential(const ComplexField1D& q, int sgn) {
    const int n = q.size();
    const int c = q.grid.center();
    std::vector<Cx> qh(static_cast<std::size_t>(n));
    for (int S = 0; S < n; ++S) {
        const int off = sgn * S;
        if (S % 2 == 0) {
            qh[static_cast<std::size_t>(S)] = q[c + off / 2];
            continue;
        }
        // midpoint of the node interval [lo, lo+1] containing sgn*S*h/2
        const int lo = (sgn > 0) ? c + (S - 1) / 2 : c - (S + 1) / 2;
        if (lo - 1 >= 0 && lo + 2 < n) {
            qh[static_cast<std::size_t>(S)] =
                (-q[lo - 1] + 9.0 * q[lo] + 9.0 * q[lo + 1] - q[lo + 2]) / 16.0;
        } else if (lo - 1 < 0) {
            qh[static_cast<std::size_t>(S)] =
                (5.0 * q[lo] + 15.0 * q[lo + 1] - 5.0 * q[lo + 2] + q[lo + 3]) / 16.0;
        } else {
            qh[static_cast<std::size_t>(S)] =
                (q[lo - 2] - 5.0 * q[lo - 1] + 15.0 * q[lo] + 5.0 * q[lo + 1]) / 16.0;
        }
    }
    return qh;
}

// One quadrant of the Goursat solve: H on the triangle i + j <= n-1 with
// H(i,0) = (1/2) int q, H(0,j) = 0, and the double-integral fixed point
// H = B + int int q(s+sigma) H.  sgn = +1 handles x >= 0, sgn = -1 mirrors.
struct QuadrantSolve {
    std::vector<Cx> H;
    int iterations;
};

// Prefix cumulative with the 4-point Newton-Cotes rule (cubic steps, exact on
// cubics, O(h^4)); fibers shorter than the stencil fall back to trapezoid.
template <typename Get>
void prefix_cumulative(int len, double h, Get val, Cx* out) {
    out[0] = Cx(0.0);
    if (len < 2) return;
    if (len < 4) {
        for (int j = 1; j < len; ++j) out[j] = out[j - 1] + 0.5 * h * (val(j - 1) + val(j));
        return;
    }
    for (int j = 0; j + 1 < len; ++j) {
        Cx step;
        if (j >= 1 && j + 2 < len)
            step = (h / 24.0) * (-val(j - 1) + 13.0 * val(j) + 13.0 * val(j + 1) - val(j + 2));
        else if (j == 0)
            step = (h / 24.0) * (9.0 * val(0) + 19.0 * val(1) - 5.0 * val(2) + val(3));
        else
            step = (h / 24.0) *
                   (val(len - 4) - 5.0 * val(len - 3) + 19.0 * val(len - 2) + 9.0 * val(len - 1));
        out[j + 1] = out[j] + step;
    }
}

QuadrantSolve solve_quadrant(const ComplexField1D& q, int sgn, double tol, int max_iter) {
    const int n = q.size();
    const double hc = 0.5 * q.grid.step() * static_cast<double>(sgn);  // signed char step
    const std::vector<Cx> qh = half_grid_potential(q, sgn);

    // boundary data B(i) = (1/2) int_0^{xi_i} q on the half lattice
    std::vector<Cx> B(static_cast<std::size_t>(n));
    prefix_cumulative(n, hc, [&](int i) { return qh[static_cast<std::size_t>(i)]; }, B.data());
    for (Cx& b : B) b *= 0.5;

    const std::size_t nn = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
    std::vector<Cx> H(nn, Cx(0.0)), M(nn, Cx(0.0)), Hn(nn, Cx(0.0));
    std::vector<Cx> fiber(static_cast<std::size_t>(n));
    auto idx = [n](int i, int j) {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
               static_cast<std::size_t>(j);
    };
    for (int i = 0; i < n; ++i)
        for (int j = 0; i + j < n; ++j) Hn[idx(i, j)] = B[static_cast<std::size_t>(i)];

    int it = 0;
    double change = 0.0;
    for (it = 1; it <= max_iter; ++it) {
        std::swap(H, Hn);
        // M(i,j) = int_0^{eta_j} q(xi_i + sigma) H(xi_i, sigma) d sigma
        for (int i = 0; i < n; ++i) {
            const int len = n - i;
            prefix_cumulative(
                len, hc,
                [&](int j) { return qh[static_cast<std::size_t>(i + j)] * H[idx(i, j)]; },
                fiber.data());
            for (int j = 0; j < len; ++j) M[idx(i, j)] = fiber[static_cast<std::size_t>(j)];
        }
        // Hn(i,j) = B(i) + int_0^{xi_i} M(s, eta_j) ds
        change = 0.0;
        for (int j = 0; j < n; ++j) {
            const int len = n - j;
            prefix_cumulative(len, hc, [&](int i) { return M[idx(i, j)]; }, fiber.data());
            for (int i = 0; i < len; ++i) {
                const Cx next = B[static_cast<std::size_t>(i)] + fiber[static_cast<std::size_t>(i)];
                change = std::max(change, std::abs(next - H[idx(i, j)]));
                Hn[idx(i, j)] = next;
            }
        }
        if (change < tol) break;
    }
    if (change >= tol && it > max_iter)
        throw NoConvergenceError("goursat_kernel: Picard did not reach tol within " +
                                 std::to_string(max_iter) + " iterations (change = " +
                                 std::to_string(change) + ")");
    return {std::move(Hn), std::min(it, max_iter)};
}

}  // namespace

TriangularKernel goursat_kernel(const ComplexField1D& q, double tol, int max_iter) {
    const int n = q.size();
    const int c = q.grid.center();
    TriangularKernel K(q.grid);

    QuadrantSolve pos = solve_quadrant(q, +1, tol, max_iter);
    QuadrantSolve neg = solve_quadrant(q, -1, tol, max_iter);
    K.picard_iterations = std::max(pos.iterations, neg.iterations);

    auto idx = [n](int i, int j) {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
               static_cast<std::size_t>(j);
    };
    for (int i = 0; i < n; ++i) {
        for (int l = 0; l < n; ++l) {
            if (!K.in_triangle(i, l)) continue;
            if (i >= c) {
                const int si = (i - c) + (l - c);
                const int sj = (i - c) - (l - c);
                K.at(i, l) = pos.H[idx(si, sj)];
            } else {
                const int si = (c - i) + (c - l);
                const int sj = (l - c) - (i - c);
                K.at(i, l) = neg.H[idx(si, sj)];
            }
        }
    }
    return K;
}

DressedKernel dress_kernel(const TriangularKernel& K, Cx slope) {
    const SymmetricGrid1D& g = K.grid;
    const int n = g.size(), c = g.center();
    const double h = g.step();

    DressedKernel out;
    out.base = K;
    out.slope = slope;
    out.values.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), Cx(0.0));

    const Cx half_slope = 0.5 * slope;
    std::vector<Cx> R(static_cast<std::size_t>(n)), P(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const int w = std::abs(i - c);
        const int lo = c - w, hi = c + w;
        for (int l = lo; l <= hi; ++l)
            R[static_cast<std::size_t>(l)] = K.at(i, l) - K.at(i, 2 * c - l);
        // P(l) = int_{t_lo}^{t_l} R ds; then int_t^x = P(i) - P(l)
        P[static_cast<std::size_t>(lo)] = Cx(0.0);
        for (int l = lo + 1; l <= hi; ++l)
            P[static_cast<std::size_t>(l)] =
                P[static_cast<std::size_t>(l - 1)] +
                0.5 * h * (R[static_cast<std::size_t>(l - 1)] + R[static_cast<std::size_t>(l)]);
        const Cx Pi = P[static_cast<std::size_t>(i)];
        for (int l = lo; l <= hi; ++l) {
            out.values[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
                       static_cast<std::size_t>(l)] =
                half_slope + K.at(i, l) + half_slope * (Pi - P[static_cast<std::size_t>(l)]);
        }
    }
    return out;
}

}  // namespace psp
