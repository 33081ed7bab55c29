#pragma once

#include <span>

#include "psp/field.hpp"

namespace psp {

enum class Wirtinger { dbar, d };

/// d/dx by central differences, second-order one-sided at the two ends.
ComplexField1D fd_derivative(const ComplexField1D& u);
void fd_derivative_buf(std::span<const Cx> u, double h, std::span<Cx> out);

ComplexField2D dx_field(const ComplexField2D& u);
ComplexField2D dy_field(const ComplexField2D& u);

/// dbar = (Dx + k Dy)/2, d = (Dx - k Dy)/2 on bicomplex fields; exact on
/// fields affine in (x, y).  Throws GridTooSmall below 3 points per axis.
BicomplexField2D wirtinger_fd(const BicomplexField2D& w, Wirtinger which);

/// Same operators applied to a scalar (complex-in-i) field; the result picks
/// up a k-component from the y-derivative.
BicomplexField2D wirtinger_scalar(const ComplexField2D& u, Wirtinger which);

/// 5-point Laplacian; boundary entries are set to zero (interior residuals
/// only).
ComplexField2D laplacian5(const ComplexField2D& u);

}  // namespace psp
