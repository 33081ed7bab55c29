#pragma once

#include <optional>
#include <vector>

#include "psp/field.hpp"

namespace psp {

enum class PotentialKind { zero, constant, linear, polynomial, table };

/// Physical data (p, m, omega) on a rectangular domain.  p is real-valued;
/// for the table variant the derivative column is mandatory (nu and mu are
/// sensitive to p', so noisy samples are never differentiated here).
struct PotentialSpec {
    PotentialKind kind = PotentialKind::zero;
    double c = 0.0;                      // constant value / linear slope
    std::vector<double> coeffs;          // polynomial coefficients, ascending
    std::optional<ComplexField1D> table_p;
    std::optional<ComplexField1D> table_dp;
    double m = 0.0;
    double omega = 0.0;
    Grid2D domain;

    static PotentialSpec zero_potential(double m, double omega, const Grid2D& domain) {
        PotentialSpec s;
        s.kind = PotentialKind::zero;
        s.m = m;
        s.omega = omega;
        s.domain = domain;
        return s;
    }
    static PotentialSpec linear(double slope, double m, double omega, const Grid2D& domain) {
        PotentialSpec s;
        s.kind = PotentialKind::linear;
        s.c = slope;
        s.m = m;
        s.omega = omega;
        s.domain = domain;
        return s;
    }
};

/// Everything the pipelines derive from (p, m, omega):
///   P = int_0^x p,  f = e^(P + m x),  g = e^(i omega y),  phi = f g,
///   q = p' + (p+m)^2,  qt = -omega^2,
///   nu = q - omega^2,  mu = -p' + (p+m)^2 - omega^2.
struct PotentialData {
    ComplexField1D p, dp, P;        // on the x grid
    ComplexField1D f;               // x grid
    ComplexField1D g;               // y grid
    ComplexField1D q;               // x grid
    ComplexField1D q_tilde;         // y grid
    ComplexField1D nu, mu;          // x grid
    BicomplexField2D phi;           // f(x) g(y)
    Cx slope_f{0.0};                // f'(0) = p(0) + m
    Cx slope_g{0.0};                // g'(0) = i omega
};

PotentialData derive_potential_data(const PotentialSpec& spec);

}  // namespace psp
