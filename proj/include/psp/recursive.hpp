#pragma once

#include <vector>

#include "psp/field.hpp"
#include "psp/quadrature.hpp"

namespace psp {

/// The recursive integral systems attached to a nonvanishing generator f with
/// f(0) = 1:
///   X^(0) = Xt^(0) = 1,
///   X^(n)  = n * int_0^x X^(n-1)(rho)  [f^2(rho)]^((-1)^n)     d rho,
///   Xt^(n) = n * int_0^x Xt^(n-1)(rho) [f^2(rho)]^((-1)^(n-1)) d rho.
/// The same type carries the Y systems when built from g on the y-grid.
struct XSystems {
    std::vector<ComplexField1D> direct;  // X^(0..n_max)
    std::vector<ComplexField1D> tilde;   // Xt^(0..n_max)

    int n_max() const { return static_cast<int>(direct.size()) - 1; }
};

inline constexpr double kGeneratorFloor = 1e-12;

/// Checks f nonvanishing (|f| >= eps_f) and normalized (|f(0) - 1| <= 1e-12),
/// throwing VanishingGenerator / Unnormalized.
void check_generator(const ComplexField1D& f, double eps_f = kGeneratorFloor);

XSystems build_x_systems(const ComplexField1D& f, int n_max, double eps_f = kGeneratorFloor);

enum class FunctionSystem { phi, phi_tilde };

/// The function systems of the generating sequence:
///   phi:       phi_k = f X^(k) (k odd),    f Xt^(k) (k even)
///   phi_tilde: phit_k = X^(k)/f (k even),  Xt^(k)/f (k odd)
/// The psi / psit systems are the same construction with f <- g on the
/// y-grid.
std::vector<ComplexField1D> build_function_system(const ComplexField1D& f, int n_max,
                                                  FunctionSystem variant,
                                                  double eps_f = kGeneratorFloor);

}  // namespace psp
