#pragma once

#include <utility>
#include <vector>

#include "psp/formal.hpp"
#include "psp/transmute.hpp"

namespace psp {

/// Taylor series in formal powers around the origin.
struct TaylorExpansion {
    std::vector<Bicomplex> coefficients;  // a_0 .. a_N
    double radius_estimate{0.0};          // min(R+, R-)
    double radius_plus{0.0};
    double radius_minus{0.0};
};

/// Coefficients of the expansion W = sum Z^(n)(a_n, 0; .) via the analytic
/// pullback w = T0^{-1} W: the holomorphic/antiholomorphic idempotent parts
/// of w yield complex Taylor coefficients by discrete Fourier sums on the
/// circle |z| = radius (bilinear interpolation off-grid), recombined into
/// bicomplex a_n.  Throws RadiusTooLarge when the circle leaves the grid and
/// NotASolution when W fails the main-equation residual check.
TaylorExpansion taylor_coefficients(const BicomplexField2D& W, const TransmutationOps& ops,
                                    const BicomplexField2D& phi, int n_max, double radius,
                                    int circle_samples = 0);

/// Low-order cross-check: a_n = W^[n](0)/n! through iterated (F_m, G_m)-
/// derivatives (ill-conditioned beyond small n).
std::vector<Bicomplex> taylor_coefficients_via_derivatives(const BicomplexField2D& W,
                                                           const GeneratingSequence& seq,
                                                           int n_max);

/// sum_{n<=N} Z^(n)(a_n, 0; .) using the coefficient linearity of the power
/// set.
BicomplexField2D evaluate_formal_series(const TaylorExpansion& exp, const FormalPowerSet& powers,
                                        int truncation);

struct RungeFit {
    int degree{0};
    std::vector<Cx> lambda;  // coefficients of Z^(n)(1,0;.)
    std::vector<Cx> mu;      // coefficients of Z^(n)(k,0;.)
    double l2_error{0.0};    // root mean square over the fit nodes
    double sup_error{0.0};
    double condition{0.0};
    bool ill_conditioned{false};
};

/// Grid nodes on the boundary of the centered rectangle at `scale` of the
/// domain; the default compact set of the approximation experiments.
std::vector<std::pair<int, int>> default_compact_boundary(const Grid2D& grid, double scale = 0.8);

/// Discrete least squares for W on the nodes of K over the complete family
/// {Z^(n)(1,0;.), Z^(n)(k,0;.)}, n = 0..degree, solved by column-pivoted
/// Householder QR.  Condition estimates above 1e12 flag the result as
/// ill-conditioned and truncate the small pivots (regularized fallback).
RungeFit runge_fit(const BicomplexField2D& W, const FormalPowerSet& powers, int degree,
                   const std::vector<std::pair<int, int>>& compact_nodes = {});

}  // namespace psp
