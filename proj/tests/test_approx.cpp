#include <doctest.h>

#include <cmath>

#include "psp/approx.hpp"
#include "psp/dirac.hpp"
#include "psp/potential.hpp"

using namespace psp;

namespace {

struct Setup {
    Grid2D grid;
    PotentialData data;
    TransmutationOps ops;
    GeneratingSequence seq;
};

Setup make_setup(double slope_p, double m, double omega, int nx, int ny) {
    Grid2D grid(1.0, nx, 1.0, ny);
    PotentialSpec spec = PotentialSpec::linear(slope_p, m, omega, grid);
    if (slope_p == 0.0 && m == 0.0 && omega == 0.0) spec.kind = PotentialKind::zero;
    PotentialData data = derive_potential_data(spec);
    TransmutationOps ops = make_transmutation_ops(data.f, data.g, data.q, data.q_tilde,
                                                  data.slope_f, data.slope_g);
    GeneratingSequence seq = make_main_sequence(data.f, data.g, grid);
    return {grid, std::move(data), std::move(ops), std::move(seq)};
}

BicomplexField2D pole_target(const Grid2D& grid, double center) {
    const BicomplexField2D z = BicomplexField2D::z_field(grid);
    BicomplexField2D out(grid);
    const Bicomplex shift{center, 0.0, 0.0, 0.0};
    for (std::size_t j = 0; j < out.v.size(); ++j) out.v[j] = bc_inverse(z.v[j] - shift);
    return out;
}

}  // namespace

TEST_CASE("taylor coefficients of the generator") {
    const Setup s = make_setup(1.0, 0.5, 1.0, 401, 401);
    const TaylorExpansion e =
        taylor_coefficients(s.data.phi, s.ops, s.data.phi, 5, 0.5);
    CHECK((e.coefficients[0] - bc_one).abs() <= 1e-6);
    for (int n = 1; n <= 5; ++n) CHECK(e.coefficients[static_cast<std::size_t>(n)].abs() <= 1e-6);
}

TEST_CASE("expansion round trip recovers formal polynomial coefficients") {
    const Setup s = make_setup(1.0, 0.5, 1.0, 401, 401);
    FormalPowerSet powers(s.data.f, s.data.g, s.grid, 5);
    std::vector<Bicomplex> cs;
    BicomplexField2D W(s.grid);
    for (int n = 0; n <= 5; ++n) {
        const Bicomplex cn{std::cos(1.0 + n), 0.2 * n - 0.3, 1.0 / (1.0 + n), 0.1 * n};
        cs.push_back(cn);
        W += powers.combine(n, cn);
    }
    const TaylorExpansion e = taylor_coefficients(W, s.ops, s.data.phi, 5, 0.5);
    double err = 0.0;
    for (int n = 0; n <= 5; ++n)
        err = std::max(err, (e.coefficients[static_cast<std::size_t>(n)] -
                             cs[static_cast<std::size_t>(n)]).abs());
    CHECK(err <= 1e-4);

    // low-order cross-check through the iterated pseudoanalytic derivatives
    const std::vector<Bicomplex> via_der = taylor_coefficients_via_derivatives(W, s.seq, 3);
    const double h = s.grid.x.step();
    for (int n = 0; n <= 3; ++n)
        CHECK((via_der[static_cast<std::size_t>(n)] - cs[static_cast<std::size_t>(n)]).abs() <=
              5.0 * h);
}

TEST_CASE("radius estimate for a free-case pole") {
    const Setup s = make_setup(0.0, 0.0, 0.0, 401, 401);
    const double zc = 1.25;
    const BicomplexField2D W = pole_target(s.grid, zc);
    const TaylorExpansion e = taylor_coefficients(W, s.ops, s.data.phi, 20, 0.8);

    // geometric-series oracle: a_n = -zc^-(n+1) in both idempotent components
    double cerr = 0.0;
    for (int n = 0; n <= 8; ++n) {
        const Bicomplex want{-std::pow(zc, -(n + 1.0)), 0.0, 0.0, 0.0};
        cerr = std::max(cerr, (e.coefficients[static_cast<std::size_t>(n)] - want).abs());
    }
    CHECK(cerr <= 1e-5);

    CHECK(std::abs(e.radius_estimate - zc) / zc <= 0.10);
}

TEST_CASE("radius checks and solution checks throw") {
    const Setup s = make_setup(1.0, 0.5, 1.0, 101, 101);
    CHECK_THROWS_AS(
        (void)taylor_coefficients(s.data.phi, s.ops, s.data.phi, 3, 1.5), RadiusTooLargeError);

    const BicomplexField2D junk = BicomplexField2D::sample(s.grid, [](double x, double y) {
        return Bicomplex::from_parts(Cx(x * x * y), Cx(std::sin(5.0 * x)));
    });
    CHECK_THROWS_AS((void)taylor_coefficients(junk, s.ops, s.data.phi, 3, 0.5),
                    NotASolutionError);
}

TEST_CASE("evaluate_formal_series basics") {
    const Setup s = make_setup(1.0, 0.5, 1.0, 121, 121);
    FormalPowerSet powers(s.data.f, s.data.g, s.grid, 3);

    TaylorExpansion e;
    e.coefficients = {bc_one, Bicomplex{}, Bicomplex{}, Bicomplex{}};
    const BicomplexField2D out = evaluate_formal_series(e, powers, 3);
    CHECK(max_abs_diff(out, s.data.phi) == 0.0);  // only Z^(0)(1,0;.) = phi contributes

    CHECK_THROWS_AS((void)evaluate_formal_series(e, powers, 9), DegreeOutOfRangeError);
}

TEST_CASE("free-case exponential from its Taylor coefficients") {
    const Setup s = make_setup(0.0, 0.0, 0.0, 201, 201);
    const int N = 14;
    FormalPowerSet powers(s.data.f, s.data.g, s.grid, N);
    TaylorExpansion e;
    double fact = 1.0;
    for (int n = 0; n <= N; ++n) {
        if (n > 0) fact *= n;
        e.coefficients.push_back(Bicomplex{1.0 / fact});
    }
    const BicomplexField2D got = evaluate_formal_series(e, powers, N);
    // e^z = e^x (cos y + k sin y)
    const BicomplexField2D want = BicomplexField2D::sample(s.grid, [](double x, double y) {
        return Bicomplex::from_parts(Cx(std::exp(x) * std::cos(y)),
                                     Cx(std::exp(x) * std::sin(y)));
    });
    CHECK(max_abs_diff(got, want) <= 1e-6);  // truncation tail + quadrature
}

TEST_CASE("runge fit recovers formal polynomials") {
    const Setup s = make_setup(1.0, 0.5, 1.0, 201, 201);
    FormalPowerSet powers(s.data.f, s.data.g, s.grid, 3);
    BicomplexField2D W(s.grid);
    for (int n = 0; n <= 3; ++n)
        W += powers.combine(n, Bicomplex{0.5 - 0.1 * n, 0.2, -0.4 + 0.3 * n, 0.15});
    const RungeFit fit = runge_fit(W, powers, 3);
    CHECK(fit.sup_error <= 1e-8);
    CHECK_FALSE(fit.ill_conditioned);
}

TEST_CASE("runge fit of the generator needs only degree zero") {
    const Setup s = make_setup(1.0, 0.5, 1.0, 161, 161);
    FormalPowerSet powers(s.data.f, s.data.g, s.grid, 0);
    const RungeFit fit = runge_fit(s.data.phi, powers, 0);
    CHECK(fit.sup_error <= 1e-10);
}

TEST_CASE("runge decay on the pulled-back pole") {
    const Setup s = make_setup(1.0, 0.5, 1.0, 201, 201);
    FormalPowerSet powers(s.data.f, s.data.g, s.grid, 8);
    const BicomplexField2D target = apply_T0(pole_target(s.grid, 2.0), s.ops);

    double prev = -1.0, e4 = 0.0, e8 = 0.0;
    for (int deg : {2, 4, 6, 8}) {
        const RungeFit fit = runge_fit(target, powers, deg);
        if (prev >= 0.0) CHECK(fit.sup_error < prev);
        prev = fit.sup_error;
        if (deg == 4) e4 = fit.sup_error;
        if (deg == 8) e8 = fit.sup_error;
    }
    CHECK(e8 < 0.25 * e4);

    // non-increasing through the whole degree ladder
    double last = -1.0;
    for (int deg = 0; deg <= 8; ++deg) {
        const RungeFit fit = runge_fit(target, powers, deg);
        if (last >= 0.0) CHECK(fit.sup_error <= last * (1.0 + 1e-9));
        last = fit.sup_error;
    }
}

TEST_CASE("rank-deficient fits are flagged and still solved") {
    const Setup s = make_setup(1.0, 0.5, 1.0, 61, 61);
    FormalPowerSet powers(s.data.f, s.data.g, s.grid, 3);
    // 2 sample nodes = 4 scalar rows < 8 unknowns
    const std::vector<std::pair<int, int>> tiny{{10, 10}, {40, 45}};
    const RungeFit fit = runge_fit(s.data.phi, powers, 3, tiny);
    CHECK(fit.ill_conditioned);
    CHECK(fit.sup_error <= 1e-8);  // interpolation is still exact on the nodes
}
