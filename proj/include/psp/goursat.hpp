#pragma once

#include <vector>

#include "psp/field.hpp"

namespace psp {

/// Goursat kernel K(x,t) on the triangle |t| <= |x| <= a, zero-extended to
/// the full (x,t) matrix.  K solves (d^2/dx^2 - q)K = d^2/dt^2 K with
/// K(x,x) = (1/2) int_0^x q and K(x,-x) = 0.
struct TriangularKernel {
    SymmetricGrid1D grid;
    std::vector<Cx> values;   // row i (x node) * n + column l (t node)
    int picard_iterations{0};

    TriangularKernel() = default;
    explicit TriangularKernel(const SymmetricGrid1D& g)
        : grid(g), values(static_cast<std::size_t>(g.size()) * static_cast<std::size_t>(g.size()),
                          Cx(0.0)) {}

    Cx at(int i, int l) const {
        return values[static_cast<std::size_t>(i) * static_cast<std::size_t>(grid.size()) +
                      static_cast<std::size_t>(l)];
    }
    Cx& at(int i, int l) {
        return values[static_cast<std::size_t>(i) * static_cast<std::size_t>(grid.size()) +
                      static_cast<std::size_t>(l)];
    }
    const Cx* row(int i) const {
        return values.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(grid.size());
    }

    /// True when |t_l| <= |x_i| (the node carries kernel data).
    bool in_triangle(int i, int l) const {
        const int c = grid.center();
        return std::abs(l - c) <= std::abs(i - c);
    }
};

/// Solves the Goursat problem by Picard iteration of the equivalent double
/// integral equation in characteristic coordinates xi = (x+t)/2,
/// eta = (x-t)/2.  Stops when the sup-norm change drops below tol; throws
/// NoConvergence if max_iter is exhausted first.
TriangularKernel goursat_kernel(const ComplexField1D& q, double tol = 1e-12, int max_iter = 50);

/// Transmutation kernel K(x,t;c) = c/2 + K(x,t)
///   + (c/2) int_t^x [K(x,s) - K(x,-s)] ds  on |t| <= |x|.
struct DressedKernel {
    TriangularKernel base;
    Cx slope{0.0};
    std::vector<Cx> values;

    const SymmetricGrid1D& grid() const { return base.grid; }
    Cx at(int i, int l) const {
        return values[static_cast<std::size_t>(i) * static_cast<std::size_t>(base.grid.size()) +
                      static_cast<std::size_t>(l)];
    }
    const Cx* row(int i) const {
        return values.data() +
               static_cast<std::size_t>(i) * static_cast<std::size_t>(base.grid.size());
    }
};

DressedKernel dress_kernel(const TriangularKernel& K, Cx slope);

}  // namespace psp
