#include "psp/potential.hpp"

#include <cmath>

#include "psp/quadrature.hpp"

namespace psp {

namespace {

void eval_potential(const PotentialSpec& spec, ComplexField1D& p, ComplexField1D& dp) {
    const SymmetricGrid1D& gx = spec.domain.x;
    switch (spec.kind) {
        case PotentialKind::zero:
            break;  // already zero
        case PotentialKind::constant:
            for (int j = 0; j < gx.size(); ++j) p[j] = spec.c;
            break;
        case PotentialKind::linear:
            for (int j = 0; j < gx.size(); ++j) {
                p[j] = spec.c * gx.node(j);
                dp[j] = spec.c;
            }
            break;
        case PotentialKind::polynomial:
            for (int j = 0; j < gx.size(); ++j) {
                const double x = gx.node(j);
                double acc = 0.0, dacc = 0.0;
                for (std::size_t d = spec.coeffs.size(); d-- > 1;)
                    dacc = dacc * x + static_cast<double>(d) * spec.coeffs[d];
                for (std::size_t d = spec.coeffs.size(); d-- > 0;) acc = acc * x + spec.coeffs[d];
                p[j] = acc;
                dp[j] = dacc;
            }
            break;
        case PotentialKind::table: {
            if (!spec.table_p) throw ValidationError("table potential: samples missing");
            if (!spec.table_dp)
                throw DerivativeMissingError("table potential requires a derivative column");
            if (spec.table_p->grid != gx || spec.table_dp->grid != gx)
                throw GridMismatchError("table potential: sample grid != domain x grid");
            for (int j = 0; j < gx.size(); ++j) {
                if (spec.table_p->v[static_cast<std::size_t>(j)].imag() != 0.0 ||
                    spec.table_dp->v[static_cast<std::size_t>(j)].imag() != 0.0)
                    throw NonRealPotentialError("table potential must be real-valued");
                p[j] = spec.table_p->v[static_cast<std::size_t>(j)];
                dp[j] = spec.table_dp->v[static_cast<std::size_t>(j)];
            }
            break;
        }
    }
}

}  // namespace

PotentialData derive_potential_data(const PotentialSpec& spec) {
    const SymmetricGrid1D& gx = spec.domain.x;
    const SymmetricGrid1D& gy = spec.domain.y;

    PotentialData out;
    out.p = ComplexField1D(gx);
    out.dp = ComplexField1D(gx);
    eval_potential(spec, out.p, out.dp);

    // dp for the polynomial-free kinds where it is trivial
    if (spec.kind == PotentialKind::zero || spec.kind == PotentialKind::constant) {
        // dp stays zero
    }

    out.P = cumulative_integral(out.p);

    out.f = ComplexField1D(gx);
    for (int j = 0; j < gx.size(); ++j) {
        const Cx e = out.P[j] + spec.m * gx.node(j);
        out.f[j] = std::exp(e);
    }

    out.g = ComplexField1D(gy);
    for (int j = 0; j < gy.size(); ++j)
        out.g[j] = std::exp(Cx(0.0, spec.omega * gy.node(j)));

    out.q = ComplexField1D(gx);
    out.nu = ComplexField1D(gx);
    out.mu = ComplexField1D(gx);
    const double om2 = spec.omega * spec.omega;
    for (int j = 0; j < gx.size(); ++j) {
        const Cx pm = out.p[j] + spec.m;
        const Cx s = pm * pm - om2;
        out.q[j] = out.dp[j] + pm * pm;
        out.nu[j] = s + out.dp[j];
        out.mu[j] = s - out.dp[j];
    }

    out.q_tilde = ComplexField1D(gy);
    for (int j = 0; j < gy.size(); ++j) out.q_tilde[j] = Cx(-om2, 0.0);

    out.phi = BicomplexField2D(spec.domain);
    for (int iy = 0; iy < spec.domain.ny(); ++iy)
        for (int ix = 0; ix < spec.domain.nx(); ++ix)
            out.phi.at(ix, iy) = Bicomplex(out.f[ix] * out.g[iy]);

    out.slope_f = out.p[gx.center()] + spec.m;
    out.slope_g = Cx(0.0, spec.omega);
    return out;
}

}  // namespace psp
