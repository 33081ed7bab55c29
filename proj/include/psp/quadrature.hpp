#pragma once

#include <complex>
#include <span>

#include "psp/field.hpp"

namespace psp {

/// Antiderivative v(x_j) = integral of u from 0 to x_j, accumulated outward
/// from the center node in both directions.  Steps use a 4-point Newton-Cotes
/// rule (cubic through the neighbouring nodes), exact on constants and linears
/// like the plain trapezoid and O(h^4) on smooth integrands; grids too small
/// for the stencil fall back to trapezoid steps.
ComplexField1D cumulative_integral(const ComplexField1D& u);

/// Same rule on a raw buffer: out[j] = integral from node c to node j.
void cumulative_from_center(std::span<const Cx> u, int center, double h, std::span<Cx> out);

/// Plain cumulative trapezoid on a raw buffer (the kernel-side quadratures
/// stay in the O(h^2) trapezoid regime).
void cumulative_from_center_trapezoid(std::span<const Cx> u, int center, double h,
                                      std::span<Cx> out);

/// Signed trapezoid of u over grid nodes from index i0 to index i1.
Cx trapezoid_between(std::span<const Cx> u, int i0, int i1, double h);

}  // namespace psp
