#include "psp/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace psp {

using nlohmann::json;

PotentialSpec RunConfig::potential() const {
    PotentialSpec spec;
    spec.kind = kind;
    spec.c = c;
    spec.coeffs = coeffs;
    spec.m = m;
    spec.omega = omega;
    spec.domain = grid();
    if (kind == PotentialKind::table) {
        if (!table_p) throw ValidationError("table potential: p samples missing");
        if (!table_dp) throw DerivativeMissingError("table potential: dp samples missing");
        if (static_cast<int>(table_p->size()) != nx || static_cast<int>(table_dp->size()) != nx)
            throw ValidationError("table potential: sample count != nx");
        ComplexField1D p(spec.domain.x), dp(spec.domain.x);
        for (int j = 0; j < nx; ++j) {
            p[j] = (*table_p)[static_cast<std::size_t>(j)];
            dp[j] = (*table_dp)[static_cast<std::size_t>(j)];
        }
        spec.table_p = std::move(p);
        spec.table_dp = std::move(dp);
    }
    return spec;
}

namespace {

PotentialKind parse_kind(const std::string& name) {
    if (name == "zero") return PotentialKind::zero;
    if (name == "constant") return PotentialKind::constant;
    if (name == "linear") return PotentialKind::linear;
    if (name == "polynomial") return PotentialKind::polynomial;
    if (name == "table") return PotentialKind::table;
    throw ParseError("unknown potential kind '" + name + "'");
}

template <typename T>
void read_field(const json& j, const char* key, T& out) {
    if (!j.contains(key)) return;
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("config field '") + key + "': " + e.what());
    }
}

}  // namespace

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(origin + ": " + e.what());
    }
    if (!j.is_object()) throw ParseError(origin + ": top level is not an object");

    RunConfig cfg;

    if (j.contains("p")) {
        const json& p = j.at("p");
        if (p.is_string()) {
            cfg.kind = parse_kind(p.get<std::string>());
        } else if (p.is_object()) {
            if (!p.contains("kind")) throw ParseError("config field 'p': missing 'kind'");
            cfg.kind = parse_kind(p.at("kind").get<std::string>());
            read_field(p, "c", cfg.c);
            read_field(p, "coefficients", cfg.coeffs);
            if (p.contains("values")) cfg.table_p = p.at("values").get<std::vector<double>>();
            if (p.contains("derivative"))
                cfg.table_dp = p.at("derivative").get<std::vector<double>>();
        } else {
            throw ParseError("config field 'p': expected string or object");
        }
    }

    read_field(j, "m", cfg.m);
    read_field(j, "omega", cfg.omega);
    read_field(j, "a", cfg.a);
    read_field(j, "b", cfg.b);
    read_field(j, "nx", cfg.nx);
    read_field(j, "ny", cfg.ny);
    read_field(j, "n_max", cfg.n_max);
    read_field(j, "outputs", cfg.outputs);
    read_field(j, "target", cfg.target);
    read_field(j, "radius", cfg.radius);
    read_field(j, "seed", cfg.seed);

    if (j.contains("tolerances")) {
        const json& t = j.at("tolerances");
        read_field(t, "epsilon_f", cfg.epsilon_f);
        read_field(t, "picard_tol", cfg.picard_tol);
        read_field(t, "picard_max_iter", cfg.picard_max_iter);
        read_field(t, "residual_mult", cfg.residual_mult);
        read_field(t, "compat_mult", cfg.compat_mult);
    }

    // invariants
    if (!(cfg.a > 0.0)) throw ValidationError("a must be > 0");
    if (!(cfg.b > 0.0)) throw ValidationError("b must be > 0");
    if (cfg.nx < 3 || cfg.nx % 2 == 0) throw ValidationError("nx must be odd and >= 3");
    if (cfg.ny < 3 || cfg.ny % 2 == 0) throw ValidationError("ny must be odd and >= 3");
    if (cfg.n_max < 0) throw ValidationError("n_max must be >= 0");
    if (cfg.kind == PotentialKind::table && !cfg.table_p)
        throw ValidationError("table potential requires 'values'");
    if (cfg.radius < 0.0) throw ValidationError("radius must be >= 0");
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), path);
}

}  // namespace psp
