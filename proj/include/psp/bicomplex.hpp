#pragma once

#include <cmath>
#include <complex>
#include <iosfwd>

#include "psp/errors.hpp"

namespace psp {

using Cx = std::complex<double>;

/// Element of the commutative algebra spanned by {1, i, k, ik} with two
/// commuting imaginary units, i^2 = k^2 = -1.  A value w is stored as four
/// reals and viewed as w = u + k*v with u = re + i*im_i and v = im_k + i*im_ik
/// (both complex in i).  The idempotent components w+ = u - i*v, w- = u + i*v
/// diagonalize the algebra: multiplication acts componentwise on (w+, w-).
struct Bicomplex {
    double re{0.0};
    double im_i{0.0};
    double im_k{0.0};
    double im_ik{0.0};

    constexpr Bicomplex() = default;
    constexpr Bicomplex(double re_, double im_i_ = 0.0, double im_k_ = 0.0,
                        double im_ik_ = 0.0)
        : re(re_), im_i(im_i_), im_k(im_k_), im_ik(im_ik_) {}

    /// Embed a complex-in-i scalar.
    constexpr Bicomplex(Cx u) : re(u.real()), im_i(u.imag()) {}  // NOLINT

    static constexpr Bicomplex from_parts(Cx u, Cx v) {
        return {u.real(), u.imag(), v.real(), v.imag()};
    }

    /// Rebuild w from its idempotent components: u = (p+m)/2, v = i(p-m)/2.
    static Bicomplex from_idempotent(Cx plus, Cx minus) {
        const Cx u = 0.5 * (plus + minus);
        const Cx v = Cx(0.0, 0.5) * (plus - minus);
        return from_parts(u, v);
    }

    Cx sc() const { return {re, im_i}; }      // scalar part u
    Cx vec() const { return {im_k, im_ik}; }  // vector part v

    Cx plus() const { return sc() - Cx(0.0, 1.0) * vec(); }   // w+ = u - i v
    Cx minus() const { return sc() + Cx(0.0, 1.0) * vec(); }  // w- = u + i v

    /// Bicomplex conjugation C: w = u + k v -> u - k v.
    constexpr Bicomplex conj() const { return {re, im_i, -im_k, -im_ik}; }

    /// Euclidean modulus of the four components.
    double abs() const { return std::sqrt(re * re + im_i * im_i + im_k * im_k + im_ik * im_ik); }

    /// |u| + |v|, the norm used for operator-bound estimates.
    double norm_uv() const { return std::abs(sc()) + std::abs(vec()); }

    bool is_zero() const { return re == 0.0 && im_i == 0.0 && im_k == 0.0 && im_ik == 0.0; }

    constexpr Bicomplex operator-() const { return {-re, -im_i, -im_k, -im_ik}; }

    Bicomplex& operator+=(const Bicomplex& o) {
        re += o.re; im_i += o.im_i; im_k += o.im_k; im_ik += o.im_ik;
        return *this;
    }
    Bicomplex& operator-=(const Bicomplex& o) {
        re -= o.re; im_i -= o.im_i; im_k -= o.im_k; im_ik -= o.im_ik;
        return *this;
    }

    friend constexpr Bicomplex operator+(const Bicomplex& a, const Bicomplex& b) {
        return {a.re + b.re, a.im_i + b.im_i, a.im_k + b.im_k, a.im_ik + b.im_ik};
    }
    friend constexpr Bicomplex operator-(const Bicomplex& a, const Bicomplex& b) {
        return {a.re - b.re, a.im_i - b.im_i, a.im_k - b.im_k, a.im_ik - b.im_ik};
    }

    // (u1 + k v1)(u2 + k v2) = (u1 u2 - v1 v2) + k (u1 v2 + v1 u2)
    friend Bicomplex operator*(const Bicomplex& a, const Bicomplex& b) {
        const Cx u1 = a.sc(), v1 = a.vec(), u2 = b.sc(), v2 = b.vec();
        return from_parts(u1 * u2 - v1 * v2, u1 * v2 + v1 * u2);
    }

    friend Bicomplex operator*(double s, const Bicomplex& a) {
        return {s * a.re, s * a.im_i, s * a.im_k, s * a.im_ik};
    }
    friend Bicomplex operator*(const Bicomplex& a, double s) { return s * a; }

    friend Bicomplex operator*(Cx s, const Bicomplex& a) {
        return from_parts(s * a.sc(), s * a.vec());
    }
    friend Bicomplex operator*(const Bicomplex& a, Cx s) { return s * a; }

    friend bool operator==(const Bicomplex& a, const Bicomplex& b) {
        return a.re == b.re && a.im_i == b.im_i && a.im_k == b.im_k && a.im_ik == b.im_ik;
    }
    friend bool operator!=(const Bicomplex& a, const Bicomplex& b) { return !(a == b); }
};

inline constexpr Bicomplex bc_one{1.0, 0.0, 0.0, 0.0};
inline constexpr Bicomplex bc_i{0.0, 1.0, 0.0, 0.0};
inline constexpr Bicomplex bc_k{0.0, 0.0, 1.0, 0.0};
inline constexpr Bicomplex bc_ik{0.0, 0.0, 0.0, 1.0};

/// Complementary idempotents P+- = (1 +- i k)/2; both are zero divisors.
inline constexpr Bicomplex bc_p_plus{0.5, 0.0, 0.0, 0.5};
inline constexpr Bicomplex bc_p_minus{0.5, 0.0, 0.0, -0.5};

inline Bicomplex bc_mul(const Bicomplex& a, const Bicomplex& b) { return a * b; }

/// Idempotent decomposition (w+, w-) = (u - iv, u + iv).
inline std::pair<Cx, Cx> idempotent_split(const Bicomplex& w) {
    return {w.plus(), w.minus()};
}

/// Multiplicative inverse.  Throws ZeroDivisorError when either idempotent
/// component vanishes (w is a zero divisor or zero).
inline Bicomplex bc_inverse(const Bicomplex& w) {
    const Cx p = w.plus(), m = w.minus();
    if (p == Cx(0.0, 0.0) || m == Cx(0.0, 0.0)) {
        throw ZeroDivisorError("bc_inverse: zero idempotent component, bicomplex is not invertible");
    }
    return Bicomplex::from_idempotent(1.0 / p, 1.0 / m);
}

inline Bicomplex operator/(const Bicomplex& a, const Bicomplex& b) { return a * bc_inverse(b); }
inline Bicomplex operator/(const Bicomplex& a, double s) { return (1.0 / s) * a; }

/// k^m through the 4-cycle {1, k, -1, -k}; exact, no rounding.
inline Bicomplex k_power(int m) {
    switch (((m % 4) + 4) % 4) {
        case 0: return bc_one;
        case 1: return bc_k;
        case 2: return -bc_one;
        default: return -bc_k;
    }
}

std::ostream& operator<<(std::ostream& os, const Bicomplex& w);

}  // namespace psp
