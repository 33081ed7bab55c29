#include "psp/recursive.hpp"

#include <string>

namespace psp {

void check_generator(const ComplexField1D& f, double eps_f) {
    for (int j = 0; j < f.size(); ++j) {
        if (std::abs(f[j]) < eps_f) {
            throw VanishingGeneratorError("generator vanishes at node " + std::to_string(j) +
                                          " (x = " + std::to_string(f.grid.node(j)) + ")");
        }
    }
    if (std::abs(f.at_zero() - Cx(1.0)) > 1e-12)
        throw UnnormalizedError("generator not normalized: f(0) != 1");
}

XSystems build_x_systems(const ComplexField1D& f, int n_max, double eps_f) {
    check_generator(f, eps_f);
    if (n_max < 0) throw DegreeOutOfRangeError("build_x_systems: n_max must be >= 0");

    const int n = f.size();
    ComplexField1D f2(f.grid), f2inv(f.grid);
    for (int j = 0; j < n; ++j) {
        f2[j] = f[j] * f[j];
        f2inv[j] = 1.0 / f2[j];
    }

    XSystems sys;
    sys.direct.reserve(static_cast<std::size_t>(n_max) + 1);
    sys.tilde.reserve(static_cast<std::size_t>(n_max) + 1);

    ComplexField1D one(f.grid);
    for (int j = 0; j < n; ++j) one[j] = Cx(1.0);
    sys.direct.push_back(one);
    sys.tilde.push_back(one);

    ComplexField1D integrand(f.grid);
    for (int k = 1; k <= n_max; ++k) {
        // exponent (-1)^k for X, (-1)^(k-1) for Xt
        const ComplexField1D& wx = (k % 2 == 0) ? f2 : f2inv;
        const ComplexField1D& wt = (k % 2 == 0) ? f2inv : f2;

        for (int j = 0; j < n; ++j) integrand[j] = sys.direct.back()[j] * wx[j];
        ComplexField1D xk = cumulative_integral(integrand);
        for (int j = 0; j < n; ++j) xk[j] *= static_cast<double>(k);
        sys.direct.push_back(std::move(xk));

        for (int j = 0; j < n; ++j) integrand[j] = sys.tilde[sys.tilde.size() - 1][j] * wt[j];
        ComplexField1D xtk = cumulative_integral(integrand);
        for (int j = 0; j < n; ++j) xtk[j] *= static_cast<double>(k);
        sys.tilde.push_back(std::move(xtk));
    }
    return sys;
}

std::vector<ComplexField1D> build_function_system(const ComplexField1D& f, int n_max,
                                                  FunctionSystem variant, double eps_f) {
    XSystems sys = build_x_systems(f, n_max, eps_f);
    std::vector<ComplexField1D> out;
    out.reserve(static_cast<std::size_t>(n_max) + 1);
    for (int k = 0; k <= n_max; ++k) {
        const bool odd = (k % 2 != 0);
        ComplexField1D fk(f.grid);
        if (variant == FunctionSystem::phi) {
            const ComplexField1D& base = odd ? sys.direct[k] : sys.tilde[k];
            for (int j = 0; j < f.size(); ++j) fk[j] = f[j] * base[j];
        } else {
            const ComplexField1D& base = odd ? sys.tilde[k] : sys.direct[k];
            for (int j = 0; j < f.size(); ++j) fk[j] = base[j] / f[j];
        }
        out.push_back(std::move(fk));
    }
    return out;
}

}  // namespace psp
