#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "psp/bicomplex.hpp"
#include "psp/grid.hpp"

namespace psp {

/// Complex-in-i samples on a symmetric 1-D grid.
struct ComplexField1D {
    SymmetricGrid1D grid;
    std::vector<Cx> v;

    ComplexField1D() = default;
    explicit ComplexField1D(const SymmetricGrid1D& g) : grid(g), v(g.size(), Cx(0.0)) {}
    ComplexField1D(const SymmetricGrid1D& g, std::vector<Cx> values)
        : grid(g), v(std::move(values)) {
        if (static_cast<int>(v.size()) != g.size())
            throw ValidationError("ComplexField1D: sample count != node count");
    }

    static ComplexField1D sample(const SymmetricGrid1D& g, const std::function<Cx(double)>& fn) {
        ComplexField1D out(g);
        for (int j = 0; j < g.size(); ++j) out.v[j] = fn(g.node(j));
        return out;
    }

    int size() const { return grid.size(); }
    Cx operator[](int j) const { return v[static_cast<std::size_t>(j)]; }
    Cx& operator[](int j) { return v[static_cast<std::size_t>(j)]; }
    Cx at_zero() const { return v[static_cast<std::size_t>(grid.center())]; }

    double max_abs() const {
        double m = 0.0;
        for (const Cx& z : v) m = std::max(m, std::abs(z));
        return m;
    }
};

/// Complex-in-i samples on a 2-D grid (x-fibers contiguous).
struct ComplexField2D {
    Grid2D grid;
    std::vector<Cx> v;

    ComplexField2D() = default;
    explicit ComplexField2D(const Grid2D& g) : grid(g), v(g.node_count(), Cx(0.0)) {}

    static ComplexField2D sample(const Grid2D& g, const std::function<Cx(double, double)>& fn) {
        ComplexField2D out(g);
        for (int iy = 0; iy < g.ny(); ++iy)
            for (int ix = 0; ix < g.nx(); ++ix)
                out.v[g.index(ix, iy)] = fn(g.x.node(ix), g.y.node(iy));
        return out;
    }

    Cx at(int ix, int iy) const { return v[grid.index(ix, iy)]; }
    Cx& at(int ix, int iy) { return v[grid.index(ix, iy)]; }
    Cx at_origin() const { return at(grid.x.center(), grid.y.center()); }

    double max_abs() const {
        double m = 0.0;
        for (const Cx& z : v) m = std::max(m, std::abs(z));
        return m;
    }
};

/// Bicomplex samples on a 2-D grid; the carrier of solutions, generators and
/// formal powers.
struct BicomplexField2D {
    Grid2D grid;
    std::vector<Bicomplex> v;

    BicomplexField2D() = default;
    explicit BicomplexField2D(const Grid2D& g) : grid(g), v(g.node_count()) {}

    static BicomplexField2D sample(const Grid2D& g,
                                   const std::function<Bicomplex(double, double)>& fn) {
        BicomplexField2D out(g);
        for (int iy = 0; iy < g.ny(); ++iy)
            for (int ix = 0; ix < g.nx(); ++ix)
                out.v[g.index(ix, iy)] = fn(g.x.node(ix), g.y.node(iy));
        return out;
    }

    /// z = x + k y sampled on the grid.
    static BicomplexField2D z_field(const Grid2D& g) {
        return sample(g, [](double x, double y) { return Bicomplex{x, 0.0, y, 0.0}; });
    }

    Bicomplex at(int ix, int iy) const { return v[grid.index(ix, iy)]; }
    Bicomplex& at(int ix, int iy) { return v[grid.index(ix, iy)]; }
    Bicomplex at_origin() const { return at(grid.x.center(), grid.y.center()); }

    ComplexField2D sc_part() const {
        ComplexField2D out(grid);
        for (std::size_t n = 0; n < v.size(); ++n) out.v[n] = v[n].sc();
        return out;
    }
    ComplexField2D vec_part() const {
        ComplexField2D out(grid);
        for (std::size_t n = 0; n < v.size(); ++n) out.v[n] = v[n].vec();
        return out;
    }
    BicomplexField2D conj() const {
        BicomplexField2D out(grid);
        for (std::size_t n = 0; n < v.size(); ++n) out.v[n] = v[n].conj();
        return out;
    }

    static BicomplexField2D from_parts(const ComplexField2D& u, const ComplexField2D& w) {
        if (u.grid != w.grid) throw GridMismatchError("from_parts: part grids differ");
        BicomplexField2D out(u.grid);
        for (std::size_t n = 0; n < out.v.size(); ++n)
            out.v[n] = Bicomplex::from_parts(u.v[n], w.v[n]);
        return out;
    }

    double max_abs() const {
        double m = 0.0;
        for (const Bicomplex& w : v) m = std::max(m, w.abs());
        return m;
    }

    BicomplexField2D& operator+=(const BicomplexField2D& o) {
        if (grid != o.grid) throw GridMismatchError("field +=: grids differ");
        for (std::size_t n = 0; n < v.size(); ++n) v[n] += o.v[n];
        return *this;
    }
    BicomplexField2D& operator-=(const BicomplexField2D& o) {
        if (grid != o.grid) throw GridMismatchError("field -=: grids differ");
        for (std::size_t n = 0; n < v.size(); ++n) v[n] -= o.v[n];
        return *this;
    }
};

inline BicomplexField2D operator+(BicomplexField2D a, const BicomplexField2D& b) { return a += b; }
inline BicomplexField2D operator-(BicomplexField2D a, const BicomplexField2D& b) { return a -= b; }

inline BicomplexField2D operator*(const Bicomplex& s, const BicomplexField2D& a) {
    BicomplexField2D out(a.grid);
    for (std::size_t n = 0; n < a.v.size(); ++n) out.v[n] = s * a.v[n];
    return out;
}

inline BicomplexField2D operator*(Cx s, const BicomplexField2D& a) {
    BicomplexField2D out(a.grid);
    for (std::size_t n = 0; n < a.v.size(); ++n) out.v[n] = s * a.v[n];
    return out;
}

/// Nodewise product.
inline BicomplexField2D hadamard(const BicomplexField2D& a, const BicomplexField2D& b) {
    if (a.grid != b.grid) throw GridMismatchError("hadamard: grids differ");
    BicomplexField2D out(a.grid);
    for (std::size_t n = 0; n < a.v.size(); ++n) out.v[n] = a.v[n] * b.v[n];
    return out;
}

inline double max_abs_diff(const BicomplexField2D& a, const BicomplexField2D& b) {
    if (a.grid != b.grid) throw GridMismatchError("max_abs_diff: grids differ");
    double m = 0.0;
    for (std::size_t n = 0; n < a.v.size(); ++n) m = std::max(m, (a.v[n] - b.v[n]).abs());
    return m;
}

inline double max_abs_diff(const ComplexField1D& a, const ComplexField1D& b) {
    if (a.grid != b.grid) throw GridMismatchError("max_abs_diff: grids differ");
    double m = 0.0;
    for (std::size_t n = 0; n < a.v.size(); ++n) m = std::max(m, std::abs(a.v[n] - b.v[n]));
    return m;
}

}  // namespace psp
