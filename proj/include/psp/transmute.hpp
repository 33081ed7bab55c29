#pragma once

#include <functional>
#include <span>

#include "psp/goursat.hpp"

namespace psp {

/// (T u)(x) = u(x) + int_{-x}^{x} K(x,t) u(t) dt, trapezoid over the
/// reflected node pairs; the integral is signed (orientation reverses for
/// x < 0).
ComplexField1D apply_transmutation(const DressedKernel& kern, const ComplexField1D& u);
void apply_transmutation_buf(const DressedKernel& kern, std::span<const Cx> u, std::span<Cx> out);

/// T_{1/f} u = (1/f) ( int_0^x f(eta) T_f[u'](eta) d eta + u(0) ); the
/// integral representation through T_f is the normative one.
ComplexField1D apply_recip_transmutation(const ComplexField1D& f, const DressedKernel& kern_f,
                                         const ComplexField1D& u);
void apply_recip_transmutation_buf(const ComplexField1D& f, const DressedKernel& kern_f,
                                   std::span<const Cx> u, std::span<Cx> out);

/// Solves (I + K) u = v marching outward from the center; each level couples
/// the +-x_j unknowns through a 2x2 system.  Throws SingularStep when a pivot
/// drops below 1e-12.
ComplexField1D invert_transmutation(const DressedKernel& kern, const ComplexField1D& v);
void invert_transmutation_buf(const DressedKernel& kern, std::span<const Cx> v, std::span<Cx> out);

/// Inverse of T_{1/f}: u = v(0) + int_0^x T_f^{-1}[(f v)'/f].
ComplexField1D invert_recip_transmutation(const ComplexField1D& f, const DressedKernel& kern_f,
                                          const ComplexField1D& v);
void invert_recip_transmutation_buf(const ComplexField1D& f, const DressedKernel& kern_f,
                                    std::span<const Cx> v, std::span<Cx> out);

/// The four 1-D operators of the 2-D transmutations, bundled with the axis
/// generators they were built from.
struct TransmutationOps {
    ComplexField1D f;  // x-axis generator
    ComplexField1D g;  // y-axis generator
    DressedKernel kf;
    DressedKernel kg;
};

/// Builds the Goursat kernels for q = f''/f and qt = g''/g (passed in, not
/// differentiated here) and dresses them with the generator slopes at 0.
TransmutationOps make_transmutation_ops(const ComplexField1D& f, const ComplexField1D& g,
                                        const ComplexField1D& q, const ComplexField1D& q_tilde,
                                        Cx slope_f, Cx slope_g, double picard_tol = 1e-12,
                                        int picard_max_iter = 50);

enum class Axis { x, y };

/// Applies a 1-D fiber operation along every row (x) or column (y) of the
/// field; fibers are independent and processed in parallel.
ComplexField2D apply_fiberwise(const ComplexField2D& field, Axis axis,
                               const std::function<void(std::span<const Cx>, std::span<Cx>)>& op);

/// T0 = T_f T_g P+  +  k T_{1/f} T_{1/g} P-   (P+ = Sc, P- = Vec)
BicomplexField2D apply_T0(const BicomplexField2D& W, const TransmutationOps& ops);
/// T1 = T_{1/f} T_g P+  +  k T_f T_{1/g} P-
BicomplexField2D apply_T1(const BicomplexField2D& W, const TransmutationOps& ops);

BicomplexField2D apply_T0_inverse(const BicomplexField2D& W, const TransmutationOps& ops);
BicomplexField2D apply_T1_inverse(const BicomplexField2D& W, const TransmutationOps& ops);

}  // namespace psp
