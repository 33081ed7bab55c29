#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "psp/errors.hpp"
#include "psp/runner.hpp"

namespace {

std::string error_kind(const std::exception& e) {
    if (dynamic_cast<const psp::ParseError*>(&e)) return "ParseError";
    if (dynamic_cast<const psp::ValidationError*>(&e)) return "ValidationError";
    if (dynamic_cast<const psp::ZeroDivisorError*>(&e)) return "ZeroDivisor";
    if (dynamic_cast<const psp::GridTooSmallError*>(&e)) return "GridTooSmall";
    if (dynamic_cast<const psp::GridMismatchError*>(&e)) return "GridMismatch";
    if (dynamic_cast<const psp::VanishingGeneratorError*>(&e)) return "VanishingGenerator";
    if (dynamic_cast<const psp::UnnormalizedError*>(&e)) return "Unnormalized";
    if (dynamic_cast<const psp::DegeneratePairError*>(&e)) return "DegeneratePair";
    if (dynamic_cast<const psp::PathOffGridError*>(&e)) return "PathOffGrid";
    if (dynamic_cast<const psp::DegreeOutOfRangeError*>(&e)) return "DegreeOutOfRange";
    if (dynamic_cast<const psp::NoConvergenceError*>(&e)) return "NoConvergence";
    if (dynamic_cast<const psp::SingularStepError*>(&e)) return "SingularStep";
    if (dynamic_cast<const psp::NonRealPotentialError*>(&e)) return "NonRealPotential";
    if (dynamic_cast<const psp::DerivativeMissingError*>(&e)) return "DerivativeMissing";
    if (dynamic_cast<const psp::NotCompatibleError*>(&e)) return "NotCompatible";
    if (dynamic_cast<const psp::RadiusTooLargeError*>(&e)) return "RadiusTooLarge";
    if (dynamic_cast<const psp::NotASolutionError*>(&e)) return "NotASolution";
    return "Error";
}

void add_common(CLI::App* cmd, std::string& config_path, std::string& out_dir, int& n_max,
                std::uint64_t& seed, bool& n_max_set, bool& seed_set) {
    cmd->add_option("--config", config_path, "JSON run configuration")->required();
    cmd->add_option("--out", out_dir, "output directory (defaults to the config's)");
    cmd->add_option("--n-max", n_max, "override the maximum formal-power degree")
        ->each([&n_max_set](const std::string&) { n_max_set = true; });
    cmd->add_option("--seed", seed, "override the property-test seed")
        ->each([&seed_set](const std::string&) { seed_set = true; });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Formal powers, transmutation operators and approximation "
                 "experiments for the 2-D Dirac equation with a scalar potential"};
    app.require_subcommand(1);

    std::string config_path, out_dir, target;
    int n_max = 0;
    std::uint64_t seed = 0;
    bool n_max_set = false, seed_set = false;

    CLI::App* powers = app.add_subcommand("powers", "emit the formal-power fields as CSV");
    CLI::App* kernels = app.add_subcommand("kernels", "emit the Goursat and dressed kernels");
    CLI::App* verify = app.add_subcommand("verify", "run the invariant suite, emit a JSON report");
    CLI::App* expand = app.add_subcommand("expand", "Taylor coefficients of a target field");
    CLI::App* approx = app.add_subcommand("approx", "Runge approximation decay table");
    for (CLI::App* cmd : {powers, kernels, verify, expand, approx})
        add_common(cmd, config_path, out_dir, n_max, seed, n_max_set, seed_set);
    expand->add_option("--target", target, "field CSV to expand");

    CLI11_PARSE(app, argc, argv);

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        psp::RunConfig cfg = psp::load_config(config_path);
        if (n_max_set) cfg.n_max = n_max;
        if (seed_set) cfg.seed = seed;
        if (!target.empty()) cfg.target = target;
        return psp::run_command(command, cfg, out_dir);
    } catch (const std::exception& e) {
        nlohmann::ordered_json err;
        err["error"] = {{"type", error_kind(e)}, {"message", e.what()}};
        std::cout << err.dump() << std::endl;
        return 2;
    }
}
