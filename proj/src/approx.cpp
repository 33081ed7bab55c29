#include "psp/approx.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "psp/dirac.hpp"

namespace psp {

namespace {

Cx bilinear(const ComplexField2D& u, double x, double y) {
    const SymmetricGrid1D& gx = u.grid.x;
    const SymmetricGrid1D& gy = u.grid.y;
    const double fx = x / gx.step() + gx.center();
    const double fy = y / gy.step() + gy.center();
    int ix = static_cast<int>(std::floor(fx));
    int iy = static_cast<int>(std::floor(fy));
    ix = std::clamp(ix, 0, gx.size() - 2);
    iy = std::clamp(iy, 0, gy.size() - 2);
    const double tx = fx - ix, ty = fy - iy;
    return (1.0 - tx) * (1.0 - ty) * u.at(ix, iy) + tx * (1.0 - ty) * u.at(ix + 1, iy) +
           (1.0 - tx) * ty * u.at(ix, iy + 1) + tx * ty * u.at(ix + 1, iy + 1);
}

// least-squares slope of log|a_n| over the tail; radius = exp(-slope)
double radius_from_tail(const std::vector<Cx>& a) {
    const int n_max = static_cast<int>(a.size()) - 1;
    std::vector<std::pair<double, double>> pts;
    for (int n = std::max(1, n_max / 2); n <= n_max; ++n) {
        const double mag = std::abs(a[static_cast<std::size_t>(n)]);
        if (mag > 1e-280) pts.emplace_back(static_cast<double>(n), std::log(mag));
    }
    if (pts.size() < 2) return std::numeric_limits<double>::infinity();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : pts) {
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    const double npts = static_cast<double>(pts.size());
    const double denom = npts * sxx - sx * sx;
    if (denom == 0.0) return std::numeric_limits<double>::infinity();
    const double slope = (npts * sxy - sx * sy) / denom;
    return std::exp(-slope);
}

}  // namespace

TaylorExpansion taylor_coefficients(const BicomplexField2D& W, const TransmutationOps& ops,
                                    const BicomplexField2D& phi, int n_max, double radius,
                                    int circle_samples) {
    const Grid2D& g = W.grid;
    if (!(radius < std::min(g.x.half_width, g.y.half_width)))
        throw RadiusTooLargeError("taylor_coefficients: radius must be < min(a, b)");

    const double h = std::max(g.x.step(), g.y.step());
    const double residual = main_vekua_residual(W, phi);
    const double allowed = 100.0 * h * h * std::max(1.0, W.max_abs());
    if (residual > allowed)
        throw NotASolutionError("taylor_coefficients: Vekua residual " + std::to_string(residual) +
                                " exceeds " + std::to_string(allowed));

    const BicomplexField2D w = apply_T0_inverse(W, ops);

    // idempotent parts: w+ = u - iv antiholomorphic, w- = u + iv holomorphic
    ComplexField2D wp(g), wm(g);
    for (std::size_t j = 0; j < w.v.size(); ++j) {
        wp.v[j] = w.v[j].plus();
        wm.v[j] = w.v[j].minus();
    }

    const int M = (circle_samples > 0) ? circle_samples : std::max(256, 16 * (n_max + 1));
    std::vector<Cx> samples_p(static_cast<std::size_t>(M)), samples_m(static_cast<std::size_t>(M));
    for (int s = 0; s < M; ++s) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(s) / M;
        const double x = radius * std::cos(theta), y = radius * std::sin(theta);
        samples_p[static_cast<std::size_t>(s)] = bilinear(wp, x, y);
        samples_m[static_cast<std::size_t>(s)] = bilinear(wm, x, y);
    }

    std::vector<Cx> ap(static_cast<std::size_t>(n_max) + 1), am(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) {
        Cx accp(0.0), accm(0.0);
        for (int s = 0; s < M; ++s) {
            const double theta = 2.0 * std::numbers::pi * static_cast<double>(s) / M;
            const Cx em = std::exp(Cx(0.0, -n * theta));
            // w- = sum a_n^- (x+iy)^n, w+ = sum a_n^+ (x-iy)^n on the circle
            accm += samples_m[static_cast<std::size_t>(s)] * em;
            accp += samples_p[static_cast<std::size_t>(s)] * std::conj(em);
        }
        const double scale = 1.0 / (static_cast<double>(M) * std::pow(radius, n));
        am[static_cast<std::size_t>(n)] = accm * scale;
        ap[static_cast<std::size_t>(n)] = accp * scale;
    }

    TaylorExpansion out;
    out.coefficients.resize(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n)
        out.coefficients[static_cast<std::size_t>(n)] = Bicomplex::from_idempotent(
            ap[static_cast<std::size_t>(n)], am[static_cast<std::size_t>(n)]);
    out.radius_plus = radius_from_tail(ap);
    out.radius_minus = radius_from_tail(am);
    out.radius_estimate = std::min(out.radius_plus, out.radius_minus);
    return out;
}

std::vector<Bicomplex> taylor_coefficients_via_derivatives(const BicomplexField2D& W,
                                                           const GeneratingSequence& seq,
                                                           int n_max) {
    std::vector<Bicomplex> out;
    out.reserve(static_cast<std::size_t>(n_max) + 1);
    BicomplexField2D cur = W;
    double factorial = 1.0;
    for (int n = 0; n <= n_max; ++n) {
        if (n > 0) {
            cur = fg_derivative(cur, seq.pair(n - 1));
            factorial *= static_cast<double>(n);
        }
        out.push_back((1.0 / factorial) * cur.at_origin());
    }
    return out;
}

BicomplexField2D evaluate_formal_series(const TaylorExpansion& exp, const FormalPowerSet& powers,
                                        int truncation) {
    if (truncation < 0 || truncation > powers.max_degree())
        throw DegreeOutOfRangeError("evaluate_formal_series: truncation beyond available degree");
    if (truncation >= static_cast<int>(exp.coefficients.size()))
        throw DegreeOutOfRangeError("evaluate_formal_series: not enough coefficients");

    BicomplexField2D acc(powers.grid());
    for (int n = 0; n <= truncation; ++n)
        acc += powers.combine(n, exp.coefficients[static_cast<std::size_t>(n)]);
    return acc;
}

std::vector<std::pair<int, int>> default_compact_boundary(const Grid2D& grid, double scale) {
    const int cx = grid.x.center(), cy = grid.y.center();
    const int wx = std::max(1, static_cast<int>(std::lround(scale * cx)));
    const int wy = std::max(1, static_cast<int>(std::lround(scale * cy)));
    std::vector<std::pair<int, int>> nodes;
    for (int ix = cx - wx; ix <= cx + wx; ++ix) {
        nodes.emplace_back(ix, cy - wy);
        nodes.emplace_back(ix, cy + wy);
    }
    for (int iy = cy - wy + 1; iy <= cy + wy - 1; ++iy) {
        nodes.emplace_back(cx - wx, iy);
        nodes.emplace_back(cx + wx, iy);
    }
    return nodes;
}

namespace {

// Column-pivoted Householder QR least squares for complex systems.
struct LLSResult {
    std::vector<Cx> x;
    double condition;
    bool truncated;
};

LLSResult complex_lls(std::vector<std::vector<Cx>>& A, std::vector<Cx>& rhs, int rows, int cols) {
    std::vector<int> perm(static_cast<std::size_t>(cols));
    for (int j = 0; j < cols; ++j) perm[static_cast<std::size_t>(j)] = j;
    std::vector<double> colnorm(static_cast<std::size_t>(cols), 0.0);
    auto col_norm2 = [&](int j, int from) {
        double s = 0.0;
        for (int i = from; i < rows; ++i) s += std::norm(A[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
        return s;
    };

    std::vector<double> rdiag(static_cast<std::size_t>(cols), 0.0);
    const int steps = std::min(rows, cols);
    for (int k = 0; k < steps; ++k) {
        // pivot: largest remaining column
        int piv = k;
        double best = -1.0;
        for (int j = k; j < cols; ++j) {
            colnorm[static_cast<std::size_t>(j)] = col_norm2(j, k);
            if (colnorm[static_cast<std::size_t>(j)] > best) {
                best = colnorm[static_cast<std::size_t>(j)];
                piv = j;
            }
        }
        if (piv != k) {
            for (int i = 0; i < rows; ++i)
                std::swap(A[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)],
                          A[static_cast<std::size_t>(i)][static_cast<std::size_t>(piv)]);
            std::swap(perm[static_cast<std::size_t>(k)], perm[static_cast<std::size_t>(piv)]);
        }

        // Householder vector for column k
        double alpha = std::sqrt(col_norm2(k, k));
        rdiag[static_cast<std::size_t>(k)] = alpha;
        if (alpha == 0.0) continue;
        Cx& akk = A[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)];
        Cx phase = (std::abs(akk) > 0.0) ? akk / std::abs(akk) : Cx(1.0);
        const Cx vkk = akk + phase * alpha;
        akk = vkk;
        double vnorm2 = 0.0;
        for (int i = k; i < rows; ++i) vnorm2 += std::norm(A[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]);
        if (vnorm2 == 0.0) continue;

        auto reflect = [&](auto get, auto set) {
            Cx dot(0.0);
            for (int i = k; i < rows; ++i)
                dot += std::conj(A[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]) * get(i);
            const Cx scale = 2.0 * dot / vnorm2;
            for (int i = k; i < rows; ++i)
                set(i, get(i) - scale * A[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]);
        };
        for (int j = k + 1; j < cols; ++j) {
            reflect([&](int i) { return A[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; },
                    [&](int i, Cx val) { A[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = val; });
        }
        reflect([&](int i) { return rhs[static_cast<std::size_t>(i)]; },
                [&](int i, Cx val) { rhs[static_cast<std::size_t>(i)] = val; });
        // store the R diagonal value: after reflection column k has
        // A[k][k] = -phase*alpha; keep |.| in rdiag (already alpha)
        A[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] = -phase * alpha;
    }

    double rmax = 0.0, rmin = std::numeric_limits<double>::infinity();
    for (int k = 0; k < steps; ++k) {
        rmax = std::max(rmax, rdiag[static_cast<std::size_t>(k)]);
        rmin = std::min(rmin, rdiag[static_cast<std::size_t>(k)]);
    }
    const double condition = (rmin > 0.0) ? rmax / rmin : std::numeric_limits<double>::infinity();

    // rank truncation at 1e-12 relative pivot; fewer rows than columns is a
    // deficiency too (the unfactored columns get zero coefficients)
    int rank = 0;
    for (int k = 0; k < steps; ++k)
        if (rdiag[static_cast<std::size_t>(k)] > 1e-12 * rmax) ++rank;

    std::vector<Cx> y(static_cast<std::size_t>(cols), Cx(0.0));
    for (int i = rank - 1; i >= 0; --i) {
        Cx acc = rhs[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < rank; ++j)
            acc -= A[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * y[static_cast<std::size_t>(j)];
        y[static_cast<std::size_t>(i)] = acc / A[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
    }

    LLSResult out;
    out.x.assign(static_cast<std::size_t>(cols), Cx(0.0));
    for (int j = 0; j < cols; ++j)
        out.x[static_cast<std::size_t>(perm[static_cast<std::size_t>(j)])] = y[static_cast<std::size_t>(j)];
    out.condition = condition;
    out.truncated = rank < cols;
    return out;
}

}  // namespace

RungeFit runge_fit(const BicomplexField2D& W, const FormalPowerSet& powers, int degree,
                   const std::vector<std::pair<int, int>>& compact_nodes) {
    if (degree < 0 || degree > powers.max_degree())
        throw DegreeOutOfRangeError("runge_fit: degree beyond available powers");
    if (W.grid != powers.grid()) throw GridMismatchError("runge_fit: grids differ");

    const std::vector<std::pair<int, int>> nodes =
        compact_nodes.empty() ? default_compact_boundary(W.grid) : compact_nodes;

    const int n_basis = degree + 1;
    const int cols = 2 * n_basis;
    const int rows = 2 * static_cast<int>(nodes.size());

    std::vector<std::vector<Cx>> A(static_cast<std::size_t>(rows),
                                   std::vector<Cx>(static_cast<std::size_t>(cols), Cx(0.0)));
    std::vector<Cx> rhs(static_cast<std::size_t>(rows), Cx(0.0));
    for (std::size_t s = 0; s < nodes.size(); ++s) {
        const auto [ix, iy] = nodes[s];
        const std::size_t ru = 2 * s, rv = 2 * s + 1;
        for (int n = 0; n <= degree; ++n) {
            const Bicomplex z1 = powers.power(n, 0).at(ix, iy);
            const Bicomplex zk = powers.power(n, 1).at(ix, iy);
            A[ru][static_cast<std::size_t>(n)] = z1.sc();
            A[ru][static_cast<std::size_t>(n_basis + n)] = zk.sc();
            A[rv][static_cast<std::size_t>(n)] = z1.vec();
            A[rv][static_cast<std::size_t>(n_basis + n)] = zk.vec();
        }
        rhs[ru] = W.at(ix, iy).sc();
        rhs[rv] = W.at(ix, iy).vec();
    }

    LLSResult sol = complex_lls(A, rhs, rows, cols);

    RungeFit fit;
    fit.degree = degree;
    fit.lambda.assign(sol.x.begin(), sol.x.begin() + n_basis);
    fit.mu.assign(sol.x.begin() + n_basis, sol.x.end());
    fit.condition = sol.condition;
    fit.ill_conditioned = sol.condition > 1e12 || sol.truncated;

    double sup = 0.0, sum2 = 0.0;
    for (const auto& [ix, iy] : nodes) {
        Bicomplex approx{};
        for (int n = 0; n <= degree; ++n) {
            approx += fit.lambda[static_cast<std::size_t>(n)] * powers.power(n, 0).at(ix, iy);
            approx += fit.mu[static_cast<std::size_t>(n)] * powers.power(n, 1).at(ix, iy);
        }
        const double err = (W.at(ix, iy) - approx).abs();
        sup = std::max(sup, err);
        sum2 += err * err;
    }
    fit.sup_error = sup;
    fit.l2_error = std::sqrt(sum2 / static_cast<double>(nodes.size()));
    return fit;
}

}  // namespace psp
