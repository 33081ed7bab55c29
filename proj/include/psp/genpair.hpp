#pragma once

#include <array>
#include <memory>
#include <utility>
#include <vector>

#include "psp/field.hpp"
#include "psp/wirtinger.hpp"

namespace psp {

/// The four fields a, b, A, B governing the pseudoanalytic derivative
/// calculus of a generating pair.
struct CharCoeffs {
    BicomplexField2D a, b, A, B;
};

inline constexpr double kDegenerateEps = 1e-10;

/// Quotient formulas for the characteristic coefficients, with the Wirtinger
/// derivatives taken by finite differences.  Throws DegeneratePair where
/// |Vec(conj(F) G)| < eps.
CharCoeffs characteristic_coefficients(const BicomplexField2D& F, const BicomplexField2D& G,
                                       double eps = kDegenerateEps);

/// Pair (F, G) with Vec(conj(F) G) != 0; coefficients are computed on first
/// use and cached.
class GeneratingPair {
  public:
    GeneratingPair() = default;
    GeneratingPair(BicomplexField2D F, BicomplexField2D G)
        : F_(std::move(F)), G_(std::move(G)) {}

    const BicomplexField2D& F() const { return F_; }
    const BicomplexField2D& G() const { return G_; }
    const CharCoeffs& coeffs() const;

  private:
    BicomplexField2D F_, G_;
    mutable std::shared_ptr<const CharCoeffs> cache_;
};

/// (F*, G*) = (-2 conj(F) / D, 2 conj(G) / D) with D = F conj(G) - conj(F) G.
std::pair<BicomplexField2D, BicomplexField2D> adjoint_pair(const GeneratingPair& pair,
                                                           double eps = kDegenerateEps);

/// (F,G)-derivative dW - A W - B conj(W).
BicomplexField2D fg_derivative(const BicomplexField2D& W, const GeneratingPair& pair);

/// Polyline of grid nodes; consecutive entries must differ by one step along
/// exactly one axis.
using GridPath = std::vector<std::pair<int, int>>;

/// L-shaped path from the center to (ix, iy), first along x then along y (or
/// the other order).
GridPath l_path(const Grid2D& grid, int ix, int iy, bool x_first = true);

/// (F,G)-integral of W along the path (trapezoid per segment); the path must
/// start at the grid center (the fixed integration base point).
Bicomplex fg_integral(const BicomplexField2D& W, const GeneratingPair& pair,
                      const GridPath& path);

/// int_0^z W d_(F,G) zeta for every grid node, along x-first (or y-first)
/// L-paths, with the cumulative 4-point rule on each straight run.
BicomplexField2D fg_antiderivative(const BicomplexField2D& W, const GeneratingPair& pair,
                                   bool x_first = true);

/// Generating sequence of period two; pair(m) cycles through the two entries.
struct GeneratingSequence {
    std::array<GeneratingPair, 2> pairs;

    const GeneratingPair& pair(int m) const { return pairs[static_cast<std::size_t>(m & 1)]; }
};

/// The sequence embedding (phi, k/phi) for separable phi = f(x) g(y):
/// (F0, G0) = (phi, k/phi), (F1, G1) = (phi/f^2, k f^2/phi).
GeneratingSequence make_main_sequence(const ComplexField1D& f, const ComplexField1D& g,
                                      const Grid2D& grid);

}  // namespace psp
