#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "psp/config.hpp"
#include "psp/io.hpp"
#include "psp/runner.hpp"

using namespace psp;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path temp_dir(const std::string& tag) {
    const fs::path dir = fs::temp_directory_path() / ("psp_test_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

int count_lines(const fs::path& p) {
    std::ifstream in(p);
    int n = 0;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) ++n;
    return n;
}

}  // namespace

TEST_CASE("minimal config gets the documented defaults") {
    const RunConfig cfg = parse_config_text(R"({"p": "zero", "m": 1, "omega": 0, "a": 1, "b": 1})");
    CHECK(cfg.kind == PotentialKind::zero);
    CHECK(cfg.m == 1.0);
    CHECK(cfg.nx == 2001);
    CHECK(cfg.ny == 2001);
    CHECK(cfg.n_max == 6);
    CHECK(cfg.picard_max_iter == 50);
    CHECK(cfg.epsilon_f == 1e-12);
}

TEST_CASE("config validation names the offender") {
    CHECK_THROWS_WITH_AS((void)parse_config_text(R"({"p": "zero", "nx": 10})"),
                         "nx must be odd and >= 3", ValidationError);
    CHECK_THROWS_AS((void)parse_config_text(R"({"p": "squiggle"})"), ParseError);
    CHECK_THROWS_AS((void)parse_config_text("{ not json"), ParseError);
    CHECK_THROWS_AS((void)parse_config_text(R"({"a": -1})"), ValidationError);
    CHECK_THROWS_AS((void)parse_config_text(R"({"p": {"kind": "table"}})"), ValidationError);
}

TEST_CASE("powers command: counting contract and determinism") {
    const RunConfig cfg = parse_config_text(
        R"({"p": {"kind": "linear", "c": 1.0}, "m": 0.5, "omega": 1.0,
            "a": 1, "b": 1, "nx": 41, "ny": 41, "n_max": 4})");
    const fs::path out1 = temp_dir("powers1");
    const fs::path out2 = temp_dir("powers2");
    CHECK(run_command("powers", cfg, out1.string()) == 0);
    CHECK(run_command("powers", cfg, out2.string()) == 0);

    int files = 0;
    for (const auto& entry : fs::directory_iterator(out1)) {
        ++files;
        // header + nx*ny rows
        CHECK(count_lines(entry.path()) == 1 + 41 * 41);
        const std::string other = slurp(out2 / entry.path().filename());
        CHECK(slurp(entry.path()) == other);  // bit-identical rerun
    }
    CHECK(files == 20);  // 2 coefficients x 5 degrees x 2 equations

    // header names all four components
    std::ifstream in(out1 / "Z_main_n0_1.csv");
    std::string header;
    std::getline(in, header);
    CHECK(header == "x,y,re,im_i,im_k,im_ik");
}

TEST_CASE("kernels command emits the four kernel files") {
    const RunConfig cfg = parse_config_text(
        R"({"p": {"kind": "linear", "c": 1.0}, "m": 0.5, "omega": 1.0,
            "a": 1, "b": 1, "nx": 41, "ny": 41})");
    const fs::path out = temp_dir("kernels");
    CHECK(run_command("kernels", cfg, out.string()) == 0);
    for (const char* name : {"K.csv", "K_dressed.csv", "Ktilde.csv", "Ktilde_dressed.csv"}) {
        CHECK(fs::exists(out / name));
        std::ifstream in(out / name);
        std::string header;
        std::getline(in, header);
        CHECK(header == "x,t,re,im");
    }
}

TEST_CASE("verify on the free case: exit 0 and the collapsing checks hit 1e-10") {
    const RunConfig cfg = parse_config_text(
        R"({"p": "zero", "m": 0, "omega": 0, "a": 1, "b": 1, "nx": 81, "ny": 81, "n_max": 4})");
    const fs::path out = temp_dir("verify_free");
    CHECK(run_command("verify", cfg, out.string()) == 0);

    const auto report = nlohmann::json::parse(slurp(out / "verify_report.json"));
    CHECK(report.at("all_pass").get<bool>());

    // checks whose measured value collapses with the potential (the FD
    // truncation checks keep their C*h^2 scale on any grid)
    const std::set<std::string> collapsing{
        "goursat_zero_potential", "mu_identity",        "successor_identity",
        "closed_vs_recursive",    "transfer_roundtrip", "t0_origin_preservation",
        "fiber_commutativity",    "runge_exact_recovery"};
    for (const auto& check : report.at("checks")) {
        CHECK(check.at("pass").get<bool>());
        CHECK(check.contains("check_name"));
        CHECK(check.contains("tolerance"));
        CHECK(check.contains("measured"));
        CHECK(check.contains("order_estimate"));
        if (collapsing.count(check.at("check_name").get<std::string>()))
            CHECK(check.at("measured").get<double>() <= 1e-10);
    }
}

TEST_CASE("verify reruns are byte-identical") {
    const RunConfig cfg = parse_config_text(
        R"({"p": "zero", "m": 0.5, "omega": 0.5, "a": 1, "b": 1, "nx": 61, "ny": 61,
            "n_max": 3, "seed": 42})");
    const fs::path out1 = temp_dir("verify_a");
    const fs::path out2 = temp_dir("verify_b");
    CHECK(run_command("verify", cfg, out1.string()) == 0);
    CHECK(run_command("verify", cfg, out2.string()) == 0);
    CHECK(slurp(out1 / "verify_report.json") == slurp(out2 / "verify_report.json"));
}

TEST_CASE("expand command reads a field and reports coefficients") {
    RunConfig cfg = parse_config_text(
        R"({"p": {"kind": "linear", "c": 1.0}, "m": 0.5, "omega": 1.0,
            "a": 1, "b": 1, "nx": 81, "ny": 81, "n_max": 3})");
    const fs::path out = temp_dir("expand");
    REQUIRE(run_command("powers", cfg, out.string()) == 0);

    cfg.target = (out / "Z_main_n0_1.csv").string();
    CHECK(run_command("expand", cfg, out.string()) == 0);
    const auto report = nlohmann::json::parse(slurp(out / "expansion.json"));
    const auto& a0 = report.at("coefficients").at(0);
    CHECK(std::abs(a0.at("re").get<double>() - 1.0) <= 1e-3);
    CHECK(std::abs(a0.at("im_k").get<double>()) <= 1e-3);
    CHECK(report.contains("radius_estimate"));
}

TEST_CASE("approx command emits a decreasing decay table") {
    const RunConfig cfg = parse_config_text(
        R"({"p": {"kind": "linear", "c": 1.0}, "m": 0.5, "omega": 1.0,
            "a": 1, "b": 1, "nx": 81, "ny": 81, "n_max": 4})");
    const fs::path out = temp_dir("approx");
    CHECK(run_command("approx", cfg, out.string()) == 0);
    const auto report = nlohmann::json::parse(slurp(out / "approx_report.json"));
    CHECK(report.at("strictly_decreasing").get<bool>());
    const auto& fits = report.at("fits");
    CHECK(fits.size() == 9);  // degrees 0..8
    for (const auto& f : fits) {
        CHECK(f.contains("degree"));
        CHECK(f.contains("l2_error"));
        CHECK(f.contains("sup_error"));
        CHECK(f.contains("condition"));
    }
}

TEST_CASE("field CSV round trip") {
    const Grid2D grid(1.0, 21, 1.0, 21);
    const BicomplexField2D field = BicomplexField2D::sample(grid, [](double x, double y) {
        return Bicomplex{x, y, x * y, x - y};
    });
    const fs::path dir = temp_dir("csv");
    const std::string path = (dir / "field.csv").string();
    write_field_csv(path, field);
    const BicomplexField2D back = read_field_csv(path, grid);
    CHECK(max_abs_diff(field, back) == 0.0);

    const Grid2D wrong(1.0, 31, 1.0, 21);
    CHECK_THROWS_AS((void)read_field_csv(path, wrong), ValidationError);
}

TEST_CASE("unknown command is rejected") {
    const RunConfig cfg = parse_config_text(R"({"p": "zero"})");
    CHECK_THROWS_AS((void)run_command("frobnicate", cfg, "/tmp/x"), ValidationError);
}
