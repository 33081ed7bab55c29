#include "psp/quadrature.hpp"

namespace psp {

namespace {

// Integral of the cubic interpolant over [x_j, x_{j+1}], nodes clipped to the
// buffer.  Central weights (-1, 13, 13, -1)/24, one-sided (9, 19, -5, 1)/24.
Cx step_integral(std::span<const Cx> u, int j, double h) {
    const int n = static_cast<int>(u.size());
    if (n < 4) return 0.5 * h * (u[j] + u[j + 1]);
    if (j >= 1 && j + 2 < n) {
        return (h / 24.0) * (-u[j - 1] + 13.0 * u[j] + 13.0 * u[j + 1] - u[j + 2]);
    }
    if (j == 0) {
        return (h / 24.0) * (9.0 * u[0] + 19.0 * u[1] - 5.0 * u[2] + u[3]);
    }
    // j + 1 == n - 1
    return (h / 24.0) * (u[n - 4] - 5.0 * u[n - 3] + 19.0 * u[n - 2] + 9.0 * u[n - 1]);
}

}  // namespace

void cumulative_from_center(std::span<const Cx> u, int center, double h, std::span<Cx> out) {
    const int n = static_cast<int>(u.size());
    out[center] = Cx(0.0);
    for (int j = center; j + 1 < n; ++j) out[j + 1] = out[j] + step_integral(u, j, h);
    for (int j = center; j - 1 >= 0; --j) out[j - 1] = out[j] - step_integral(u, j - 1, h);
}

void cumulative_from_center_trapezoid(std::span<const Cx> u, int center, double h,
                                      std::span<Cx> out) {
    const int n = static_cast<int>(u.size());
    out[center] = Cx(0.0);
    for (int j = center; j + 1 < n; ++j) out[j + 1] = out[j] + 0.5 * h * (u[j] + u[j + 1]);
    for (int j = center; j - 1 >= 0; --j) out[j - 1] = out[j] - 0.5 * h * (u[j - 1] + u[j]);
}

ComplexField1D cumulative_integral(const ComplexField1D& u) {
    ComplexField1D out(u.grid);
    cumulative_from_center(u.v, u.grid.center(), u.grid.step(), out.v);
    return out;
}

Cx trapezoid_between(std::span<const Cx> u, int i0, int i1, double h) {
    if (i0 == i1) return Cx(0.0);
    const int lo = std::min(i0, i1), hi = std::max(i0, i1);
    Cx acc = 0.5 * (u[lo] + u[hi]);
    for (int j = lo + 1; j < hi; ++j) acc += u[j];
    acc *= h;
    return (i1 > i0) ? acc : -acc;
}

}  // namespace psp
