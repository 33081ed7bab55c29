#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "psp/potential.hpp"

namespace psp {

/// Batch-run configuration; see README for the JSON schema.  Defaults follow
/// the documented values (nx = ny = 2001, n_max = 6).
struct RunConfig {
    PotentialKind kind = PotentialKind::zero;
    double c = 0.0;
    std::vector<double> coeffs;
    std::optional<std::vector<double>> table_p;
    std::optional<std::vector<double>> table_dp;
    double m = 0.0;
    double omega = 0.0;

    double a = 1.0;
    double b = 1.0;
    int nx = 2001;
    int ny = 2001;

    int n_max = 6;

    double epsilon_f = 1e-12;
    double picard_tol = 1e-12;
    int picard_max_iter = 50;
    double residual_mult = 50.0;   // C in the C*h^2 residual tolerances
    double compat_mult = 100.0;

    std::string outputs = "out";
    std::string target;            // field file for `expand`
    double radius = 0.0;           // expansion circle; 0 -> 0.5*min(a,b)
    std::uint64_t seed = 1;

    Grid2D grid() const { return Grid2D(a, nx, b, ny); }
    PotentialSpec potential() const;
};

RunConfig load_config(const std::string& path);
RunConfig parse_config_text(const std::string& text, const std::string& origin = "<config>");

}  // namespace psp
