#pragma once

#include <cmath>
#include <cstddef>
#include <string>

#include "psp/errors.hpp"

namespace psp {

/// Uniform grid on [-a, a] with an odd number of nodes, so that 0 is a node
/// and every node has its exact mirror -x_j on the grid.  Nodes are generated
/// as (j - c)*h with c the center index; negation of a node is then exact in
/// floating point, which the reflected transmutation integrals rely on.
struct SymmetricGrid1D {
    double half_width{1.0};
    int point_count{3};

    SymmetricGrid1D() = default;
    SymmetricGrid1D(double a, int n) : half_width(a), point_count(n) {
        if (!(a > 0.0)) throw ValidationError("SymmetricGrid1D: half_width must be > 0");
        if (n < 3 || n % 2 == 0)
            throw ValidationError("SymmetricGrid1D: point_count must be odd and >= 3");
    }

    int size() const { return point_count; }
    int center() const { return (point_count - 1) / 2; }
    double step() const { return half_width / static_cast<double>(center()); }
    double node(int j) const { return static_cast<double>(j - center()) * step(); }

    /// Index of the node closest to x.
    int nearest(double x) const {
        int j = center() + static_cast<int>(std::lround(x / step()));
        if (j < 0) j = 0;
        if (j >= point_count) j = point_count - 1;
        return j;
    }

    bool operator==(const SymmetricGrid1D& o) const {
        return half_width == o.half_width && point_count == o.point_count;
    }
    bool operator!=(const SymmetricGrid1D& o) const { return !(*this == o); }
};

/// Product of two symmetric 1-D grids; the rectangle [-a,a]x[-b,b] with the
/// reflection symmetry the 2-D transmutation operators require.
struct Grid2D {
    SymmetricGrid1D x;
    SymmetricGrid1D y;

    Grid2D() = default;
    Grid2D(SymmetricGrid1D gx, SymmetricGrid1D gy) : x(gx), y(gy) {}
    Grid2D(double a, int nx, double b, int ny)
        : x(a, nx), y(b, ny) {}

    int nx() const { return x.point_count; }
    int ny() const { return y.point_count; }
    std::size_t node_count() const {
        return static_cast<std::size_t>(nx()) * static_cast<std::size_t>(ny());
    }
    // x-fibers contiguous
    std::size_t index(int ix, int iy) const {
        return static_cast<std::size_t>(iy) * static_cast<std::size_t>(nx()) +
               static_cast<std::size_t>(ix);
    }

    bool operator==(const Grid2D& o) const { return x == o.x && y == o.y; }
    bool operator!=(const Grid2D& o) const { return !(*this == o); }
};

}  // namespace psp
