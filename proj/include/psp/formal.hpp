#pragma once

#include <array>
#include <vector>

#include "psp/genpair.hpp"
#include "psp/recursive.hpp"

namespace psp {

/// Closed-form formal power for the main equation's generating sequence: the
/// parity-split binomial double sums over the X/Y systems followed by the
/// phi-recombination.  phi must be the separable generator field of the pair
/// the power belongs to; xs/ys the systems of its x/y factors.
BicomplexField2D formal_power_closed(int n, const Bicomplex& alpha, const XSystems& xs,
                                     const XSystems& ys, const BicomplexField2D& phi);

/// Formal power by the integral recursion Z^(n+1) = (n+1) int Z1^(n) d_(Fm,Gm);
/// `level` selects which member of the period-two sequence the power belongs
/// to (0 = main equation, 1 = its successor).  Serves as the independent
/// oracle for the closed form.
BicomplexField2D formal_power_recursive(int n, const Bicomplex& alpha,
                                        const GeneratingSequence& seq, int level = 0);

/// The family {Z^(n)(1,0;.), Z^(n)(k,0;.)} for n = 0..max_degree, for the
/// main equation (m = 0) and its successor (m = 1), built from the closed
/// form.  Linear combinations in the coefficient are exact by construction.
class FormalPowerSet {
  public:
    FormalPowerSet() = default;
    FormalPowerSet(const ComplexField1D& f, const ComplexField1D& g, const Grid2D& grid,
                   int max_degree);

    int max_degree() const { return max_degree_; }
    const Grid2D& grid() const { return grid_; }

    /// coeff 0 -> a = 1, coeff 1 -> a = k.
    const BicomplexField2D& power(int n, int coeff, int m = 0) const;

    /// Z^(n)(alpha, 0; .) = Sc(alpha) Z^(n)(1,0;.) + Vec(alpha) Z^(n)(k,0;.).
    BicomplexField2D combine(int n, const Bicomplex& alpha, int m = 0) const;

  private:
    Grid2D grid_;
    int max_degree_ = -1;
    // [m][coeff][n]
    std::array<std::array<std::vector<BicomplexField2D>, 2>, 2> powers_;
};

}  // namespace psp
