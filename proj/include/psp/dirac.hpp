#pragma once

#include "psp/field.hpp"
#include "psp/potential.hpp"
#include "psp/wirtinger.hpp"

namespace psp {

inline constexpr double kCompatTolScale = 1e-6;

/// Max interior |d w1/dy - d w2/dx| (the compatibility defect of w as a
/// gradient field).
double compatibility_defect(const BicomplexField2D& w);

/// Abar w = 2 int_Gamma (w1 dx + w2 dy) from the origin along L-shaped grid
/// paths, for every endpoint.  Throws NotCompatible when the defect exceeds
/// tol_scale * max|w|.
ComplexField2D abar_field(const BicomplexField2D& w, double tol_scale = kCompatTolScale,
                          bool x_first = true);

/// Value at a single endpoint node.
Cx abar(const BicomplexField2D& w, int ix, int iy, double tol_scale = kCompatTolScale);

/// W2 = (1/phi) Abar(k phi^2 dbar(W1/phi)) + c1/phi.  compat_mult relaxes the
/// compatibility tolerance to compat_mult * h^2 (discrete solutions carry
/// O(h^2) defects).
ComplexField2D transfer_W1_to_W2(const ComplexField2D& W1, const BicomplexField2D& phi, Cx c1,
                                 double compat_mult = 100.0);

/// W1 = -phi Abar((k/phi^2) dbar(phi W2)) + c2 phi.
ComplexField2D transfer_W2_to_W1(const ComplexField2D& W2, const BicomplexField2D& phi, Cx c2,
                                 double compat_mult = 100.0);

/// Max interior |dbar W - a W - b conj(W)|; margin widens the excluded
/// boundary ring (fields produced through boundary stencils carry an O(h)
/// seam layer there).
double vekua_residual(const BicomplexField2D& W, const BicomplexField2D& a_coef,
                      const BicomplexField2D& b_coef, int margin = 1);

/// b = dbar(phi)/phi for the main equation; a = 0.
BicomplexField2D main_vekua_coefficient(const BicomplexField2D& phi);

/// Residual of the main equation dbar W = (dbar phi / phi) conj(W).
double main_vekua_residual(const BicomplexField2D& W, const BicomplexField2D& phi,
                           int margin = 1);

/// Residual of the succeeding equation dbar W = -(d phi / phi) conj(W).
double successor_vekua_residual(const BicomplexField2D& W, const BicomplexField2D& phi,
                                int margin = 1);

/// Max interior |-Laplace(u) + potential(x) u| (potential broadcast along y).
double schrodinger_residual(const ComplexField2D& u, const ComplexField1D& potential);

/// Max interior |8 dbar(phi) d(phi) / phi^2 - nu - mu|: the associated
/// potential identity of the Schroedinger link.
double associated_potential_defect(const PotentialData& data);

}  // namespace psp
