#include <doctest.h>

#include <cmath>
#include <numbers>

#include "psp/dirac.hpp"
#include "psp/formal.hpp"
#include "psp/potential.hpp"

using namespace psp;

namespace {

struct Setup {
    Grid2D grid;
    PotentialData data;
    GeneratingSequence seq;
};

Setup make_setup(double slope_p, double m, double omega, int nx, int ny) {
    Grid2D grid(1.0, nx, 1.0, ny);
    PotentialSpec spec = PotentialSpec::linear(slope_p, m, omega, grid);
    if (slope_p == 0.0) spec.kind = PotentialKind::zero;
    PotentialData data = derive_potential_data(spec);
    GeneratingSequence seq = make_main_sequence(data.f, data.g, grid);
    return {grid, std::move(data), std::move(seq)};
}

Setup make_sine_setup(int nx, int ny) {
    Grid2D grid(1.0, nx, 1.0, ny);
    PotentialSpec spec;
    spec.kind = PotentialKind::table;
    spec.m = 0.5;
    spec.omega = 1.0;
    spec.domain = grid;
    spec.table_p = ComplexField1D::sample(
        grid.x, [](double x) { return Cx(std::sin(std::numbers::pi * x)); });
    spec.table_dp = ComplexField1D::sample(grid.x, [](double x) {
        return Cx(std::numbers::pi * std::cos(std::numbers::pi * x));
    });
    PotentialData data = derive_potential_data(spec);
    GeneratingSequence seq = make_main_sequence(data.f, data.g, grid);
    return {grid, std::move(data), std::move(seq)};
}

BicomplexField2D z_power(const Grid2D& grid, int n, const Bicomplex& alpha) {
    const BicomplexField2D z = BicomplexField2D::z_field(grid);
    BicomplexField2D out(grid);
    for (std::size_t j = 0; j < out.v.size(); ++j) {
        Bicomplex acc = alpha;
        for (int p = 0; p < n; ++p) acc = acc * z.v[j];
        out.v[j] = acc;
    }
    return out;
}

}  // namespace

TEST_CASE("characteristic coefficients of the constant pair vanish") {
    const Grid2D grid(1.0, 41, 1.0, 41);
    BicomplexField2D F(grid), G(grid);
    for (auto& w : F.v) w = bc_one;
    for (auto& w : G.v) w = bc_k;
    const CharCoeffs cc = characteristic_coefficients(F, G);
    CHECK(cc.a.max_abs() == 0.0);
    CHECK(cc.b.max_abs() == 0.0);
    CHECK(cc.A.max_abs() == 0.0);
    CHECK(cc.B.max_abs() == 0.0);
}

TEST_CASE("characteristic coefficients of the main pair") {
    const Setup s = make_setup(1.0, 0.5, 1.0, 161, 161);
    const double h = s.grid.x.step();
    const CharCoeffs& cc = s.seq.pair(0).coeffs();

    CHECK(cc.a.max_abs() <= 20.0 * h * h);

    // b = dbar(phi)/phi and B = d(phi)/phi up to the shared FD error
    const BicomplexField2D b_direct = main_vekua_coefficient(s.data.phi);
    CHECK(max_abs_diff(cc.b, b_direct) <= 20.0 * h * h);

    BicomplexField2D B_direct = wirtinger_fd(s.data.phi, Wirtinger::d);
    for (std::size_t j = 0; j < B_direct.v.size(); ++j)
        B_direct.v[j] = B_direct.v[j] * bc_inverse(s.data.phi.v[j]);
    CHECK(max_abs_diff(cc.B, B_direct) <= 20.0 * h * h);
}

TEST_CASE("generating sequence successor condition") {
    for (bool sine : {false, true}) {
        const Setup s = sine ? make_sine_setup(161, 161) : make_setup(1.0, 0.5, 1.0, 161, 161);
        const double h = s.grid.x.step();
        const CharCoeffs& c0 = s.seq.pair(0).coeffs();
        const CharCoeffs& c1 = s.seq.pair(1).coeffs();
        double da = 0.0, db = 0.0;
        for (std::size_t j = 0; j < c0.a.v.size(); ++j) {
            da = std::max(da, (c1.a.v[j] - c0.a.v[j]).abs());
            db = std::max(db, (c1.b.v[j] + c0.B.v[j]).abs());
        }
        CHECK(da <= 50.0 * h * h);
        CHECK(db <= 50.0 * h * h);
    }
}

TEST_CASE("generators have vanishing (F,G)-derivative") {
    const Setup s = make_setup(1.0, 0.5, 1.0, 161, 161);
    const double h = s.grid.x.step();
    for (int m = 0; m < 2; ++m) {
        const GeneratingPair& pair = s.seq.pair(m);
        CHECK(fg_derivative(pair.F(), pair).max_abs() <= 50.0 * h * h);
        CHECK(fg_derivative(pair.G(), pair).max_abs() <= 50.0 * h * h);
    }
}

TEST_CASE("(1,k)-derivative reduces to d") {
    const Grid2D grid(1.0, 81, 1.0, 81);
    BicomplexField2D F(grid), G(grid);
    for (auto& w : F.v) w = bc_one;
    for (auto& w : G.v) w = bc_k;
    const GeneratingPair pair(F, G);

    const BicomplexField2D z2 = z_power(grid, 2, bc_one);
    const BicomplexField2D dz2 = fg_derivative(z2, pair);
    const BicomplexField2D expect = z_power(grid, 1, Bicomplex{2.0});
    CHECK(max_abs_diff(dz2, expect) <= 1e-11);
}

TEST_CASE("formal power derivative relation") {
    const Setup s = make_setup(1.0, 0.5, 1.0, 121, 121);
    const double h = s.grid.x.step();
    FormalPowerSet powers(s.data.f, s.data.g, s.grid, 3);
    for (int n = 1; n <= 3; ++n) {
        const BicomplexField2D dz = fg_derivative(powers.power(n, 0, 0), s.seq.pair(0));
        BicomplexField2D expect = powers.power(n - 1, 0, 1);
        for (auto& w : expect.v) w = static_cast<double>(n) * w;
        CHECK(max_abs_diff(dz, expect) <= 100.0 * h * h);
    }
}

TEST_CASE("adjoint pair") {
    const Grid2D grid(1.0, 41, 1.0, 41);
    BicomplexField2D F(grid), G(grid);
    for (auto& w : F.v) w = bc_one;
    for (auto& w : G.v) w = bc_k;
    auto [Fs, Gs] = adjoint_pair(GeneratingPair(F, G));
    double err = 0.0;
    for (std::size_t j = 0; j < Fs.v.size(); ++j) {
        err = std::max(err, (Fs.v[j] - (-bc_k)).abs());
        err = std::max(err, (Gs.v[j] - bc_one).abs());
    }
    CHECK(err <= 1e-14);

    // separable main pair: F* = -k phi, G* = 1/phi (hand derivation)
    const Setup s = make_setup(1.0, 0.5, 1.0, 41, 41);
    auto [F0s, G0s] = adjoint_pair(s.seq.pair(0));
    double err2 = 0.0;
    for (std::size_t j = 0; j < F0s.v.size(); ++j) {
        const Bicomplex want_f = -(bc_k * s.data.phi.v[j]);
        const Bicomplex want_g = bc_inverse(s.data.phi.v[j]);
        err2 = std::max(err2, (F0s.v[j] - want_f).abs());
        err2 = std::max(err2, (G0s.v[j] - want_g).abs());
    }
    CHECK(err2 <= 1e-13);

    CHECK_THROWS_AS((void)adjoint_pair(GeneratingPair(F, F)), DegeneratePairError);
}

TEST_CASE("fg_integral reduces to the contour integral for (1,k)") {
    const Grid2D grid(1.0, 201, 1.0, 201);
    BicomplexField2D F(grid), G(grid);
    for (auto& w : F.v) w = bc_one;
    for (auto& w : G.v) w = bc_k;
    const GeneratingPair pair(F, G);
    const BicomplexField2D z2 = z_power(grid, 2, bc_one);
    const double h = grid.x.step();

    const int ix = grid.x.center() + 60, iy = grid.y.center() + 35;
    const Bicomplex z_end{grid.x.node(ix), 0.0, grid.y.node(iy), 0.0};
    const Bicomplex expect = (1.0 / 3.0) * (z_end * z_end * z_end);

    const Bicomplex got = fg_integral(z2, pair, l_path(grid, ix, iy, true));
    CHECK((got - expect).abs() <= 20.0 * h * h);
}

TEST_CASE("fg_integral path independence on pseudoanalytic integrands") {
    const Setup s = make_setup(1.0, 0.5, 1.0, 161, 161);
    const double h = s.grid.x.step();
    FormalPowerSet powers(s.data.f, s.data.g, s.grid, 2);
    BicomplexField2D w = powers.power(1, 0, 1);  // Z1^(1), a successor solution
    for (auto& v : w.v) v = 2.0 * v;             // = the (F,G)-derivative of Z^(2)

    const int ix = s.grid.x.center() - 40, iy = s.grid.y.center() + 55;
    const Bicomplex via_x = fg_integral(w, s.seq.pair(0), l_path(s.grid, ix, iy, true));
    const Bicomplex via_y = fg_integral(w, s.seq.pair(0), l_path(s.grid, ix, iy, false));
    CHECK((via_x - via_y).abs() <= 50.0 * h * h);

    // antiderivative identity: the integral reproduces Z^(2)
    CHECK((via_x - powers.power(2, 0, 0).at(ix, iy)).abs() <= 50.0 * h * h);
}

TEST_CASE("fg_integral path validation") {
    const Grid2D grid(1.0, 21, 1.0, 21);
    BicomplexField2D F(grid), G(grid);
    for (auto& w : F.v) w = bc_one;
    for (auto& w : G.v) w = bc_k;
    const GeneratingPair pair(F, G);
    const BicomplexField2D z = BicomplexField2D::z_field(grid);

    GridPath bad{{0, 0}, {2, 0}};
    CHECK_THROWS_AS((void)fg_integral(z, pair, bad), PathOffGridError);
    GridPath diag{{grid.x.center(), grid.y.center()},
                  {grid.x.center() + 1, grid.y.center() + 1}};
    CHECK_THROWS_AS((void)fg_integral(z, pair, diag), PathOffGridError);
}

TEST_CASE("free case: closed and recursive powers are plain powers") {
    const Setup s = make_setup(0.0, 0.0, 0.0, 201, 201);
    const double h = s.grid.x.step();
    const double tol = 10.0 * h * h * h * h;  // quadrature floor of the 4-point rule
    FormalPowerSet powers(s.data.f, s.data.g, s.grid, 6);
    for (int n = 0; n <= 6; ++n) {
        for (int coeff = 0; coeff < 2; ++coeff) {
            const Bicomplex alpha = coeff == 0 ? bc_one : bc_k;
            const BicomplexField2D expect = z_power(s.grid, n, alpha);
            const double scale = std::max(1.0, expect.max_abs());
            for (int m = 0; m < 2; ++m) {
                CHECK(max_abs_diff(powers.power(n, coeff, m), expect) / scale <= tol);
                const BicomplexField2D rec = formal_power_recursive(n, alpha, s.seq, m);
                CHECK(max_abs_diff(rec, expect) / scale <= tol);
            }
        }
    }
}

TEST_CASE("Z^(0) is the generator") {
    const Setup s = make_setup(1.0, 0.5, 1.0, 81, 81);
    FormalPowerSet powers(s.data.f, s.data.g, s.grid, 0);
    CHECK(max_abs_diff(powers.power(0, 0, 0), s.seq.pair(0).F()) <= 1e-13);
    CHECK(max_abs_diff(powers.power(0, 1, 0), s.seq.pair(0).G()) <= 1e-13);

    // recursive Z^(0)(k,0;.) = k/phi when phi(0,0) = 1
    const BicomplexField2D z0k = formal_power_recursive(0, bc_k, s.seq, 0);
    CHECK(max_abs_diff(z0k, s.seq.pair(0).G()) <= 1e-13);
}

TEST_CASE("closed vs recursive formal powers on both test potentials") {
    for (bool sine : {false, true}) {
        const Setup s = sine ? make_sine_setup(201, 201) : make_setup(1.0, 0.5, 1.0, 201, 201);
        const double h = s.grid.x.step();
        FormalPowerSet powers(s.data.f, s.data.g, s.grid, 6);
        for (int n = 0; n <= 6; ++n) {
            for (int coeff = 0; coeff < 2; ++coeff) {
                const Bicomplex alpha = coeff == 0 ? bc_one : bc_k;
                for (int m = 0; m < 2; ++m) {
                    const BicomplexField2D rec = formal_power_recursive(n, alpha, s.seq, m);
                    const double tol = (n == 1 ? 5.0 : 10.0) * h * h;
                    CHECK(max_abs_diff(powers.power(n, coeff, m), rec) <= tol);
                }
            }
        }
    }
}

TEST_CASE("every built power satisfies its Vekua equation") {
    const Setup s = make_setup(1.0, 0.5, 1.0, 201, 201);
    const double h = s.grid.x.step();
    FormalPowerSet powers(s.data.f, s.data.g, s.grid, 5);
    for (int n = 0; n <= 5; ++n) {
        for (int coeff = 0; coeff < 2; ++coeff) {
            const double s0 = std::max(1.0, powers.power(n, coeff, 0).max_abs());
            const double s1 = std::max(1.0, powers.power(n, coeff, 1).max_abs());
            CHECK(main_vekua_residual(powers.power(n, coeff, 0), s.data.phi) / s0 <=
                  50.0 * h * h);
            CHECK(successor_vekua_residual(powers.power(n, coeff, 1), s.data.phi) / s1 <=
                  50.0 * h * h);
        }
    }
}

TEST_CASE("asymptotics near the center") {
    const Setup s = make_setup(1.0, 0.5, 1.0, 201, 201);
    const double h = s.grid.x.step();
    const int cx = s.grid.x.center(), cy = s.grid.y.center();
    const std::pair<int, int> nearest[4] = {
        {cx + 1, cy}, {cx - 1, cy}, {cx, cy + 1}, {cx, cy - 1}};

    for (int n = 1; n <= 3; ++n) {
        const BicomplexField2D zn = formal_power_recursive(n, bc_one, s.seq, 0);
        for (const auto& [ix, iy] : nearest) {
            const Bicomplex z{s.grid.x.node(ix), 0.0, s.grid.y.node(iy), 0.0};
            Bicomplex zpow = bc_one;
            for (int p = 0; p < n; ++p) zpow = zpow * z;
            const Bicomplex ratio = zn.at(ix, iy) * bc_inverse(zpow);
            CHECK((ratio - bc_one).abs() <= 10.0 * h);
        }
    }

    // higher degrees: the quadrature cannot resolve rho^n over the first few
    // cells, so the O(|z|) asymptotic band is checked at physical distances
    FormalPowerSet powers(s.data.f, s.data.g, s.grid, 5);
    for (int n = 4; n <= 5; ++n) {
        for (double r : {0.1, 0.2, 0.4}) {
            const int ix = s.grid.x.nearest(r), iy = s.grid.y.nearest(r);
            const Bicomplex z{s.grid.x.node(ix), 0.0, s.grid.y.node(iy), 0.0};
            Bicomplex zpow = bc_one;
            for (int p = 0; p < n; ++p) zpow = zpow * z;
            const Bicomplex ratio = powers.power(n, 0, 0).at(ix, iy) * bc_inverse(zpow);
            CHECK((ratio - bc_one).abs() <= 10.0 * z.abs());
        }
    }
}

TEST_CASE("coefficient linearity is exact by construction") {
    const Setup s = make_setup(1.0, 0.5, 1.0, 61, 61);
    FormalPowerSet powers(s.data.f, s.data.g, s.grid, 4);
    const Bicomplex alpha{0.3, -1.2, 2.5, 0.7};
    for (int n = 0; n <= 4; ++n) {
        const BicomplexField2D combined = powers.combine(n, alpha);
        const Cx ap = alpha.sc(), app = alpha.vec();
        for (std::size_t j = 0; j < combined.v.size(); ++j) {
            const Bicomplex manual =
                ap * powers.power(n, 0).v[j] + app * powers.power(n, 1).v[j];
            CHECK(combined.v[j] == manual);
        }
    }
}

TEST_CASE("degree bounds are enforced") {
    const Setup s = make_setup(0.0, 0.0, 0.0, 21, 21);
    const XSystems xs = build_x_systems(s.data.f, 2);
    const XSystems ys = build_x_systems(s.data.g, 2);
    CHECK_THROWS_AS((void)formal_power_closed(3, bc_one, xs, ys, s.data.phi),
                    DegreeOutOfRangeError);
    FormalPowerSet powers(s.data.f, s.data.g, s.grid, 2);
    CHECK_THROWS_AS((void)powers.power(5, 0), DegreeOutOfRangeError);
}
