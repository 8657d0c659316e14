#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "painleve/solver.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream o, e;
    const int c = painleve::cli::run(args, o, e);
    return {c, o.str(), e.str()};
}

fs::path tmp(const std::string& name) {
    const auto d = fs::temp_directory_path() / "painleve_cli_test";
    fs::create_directories(d);
    return d / name;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p);
    return {std::istreambuf_iterator<char>(f), {}};
}

}  // namespace

TEST_CASE("solve: k = 0.5 Airy seed is pole-free to -40") {
    const auto p = tmp("as.json");
    const auto r = run({"solve", "--eq", "PII", "--alpha", "0", "--airy-k", "0.5", "--from", "10", "--to", "-40", "-o",
                        p.string()});
    CHECK(r.code == 0);
    const auto t = painleve::solver::trajectory_from_json(slurp(p));
    CHECK(t.poles.empty());
    CHECK(t.samples.back().z == doctest::Approx(-40.0));
}

TEST_CASE("solve: P_I poles with --pole-aware") {
    const auto p = tmp("pi.json");
    const auto r = run({"solve", "--eq", "PI", "--w0", "0", "--dw0", "0", "--from", "0", "--to", "12", "--pole-aware",
                        "-o", p.string()});
    CHECK(r.code == 0);
    CHECK(json::parse(slurp(p))["poles"].size() >= 2);
    // without pole handling the first pole stops the run
    const auto f = run({"solve", "--eq", "PI", "--w0", "0", "--dw0", "0", "--from", "0", "--to", "12"});
    CHECK(f.code == 2);
    CHECK(f.err.find("last good z") != std::string::npos);
}

TEST_CASE("solve: usage errors") {
    CHECK(run({"solve", "--eq", "PII", "--alpha", "bad", "--from", "0", "--to", "1"}).code == 1);
    CHECK(run({"solve", "--eq", "PXI", "--from", "0", "--to", "1"}).code == 1);
    const auto r = run({"solve", "--eq", "PII", "--alpha", "0", "--beta", "1", "--w0", "0", "--dw0", "0", "--from", "0",
                        "--to", "1"});
    CHECK(r.code == 1);
    CHECK(r.err.find("beta") != std::string::npos);
    CHECK(run({"frobnicate"}).code == 1);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("solve: CSV output has a header") {
    const auto r = run({"solve", "--eq", "PII", "--alpha", "0.3", "--w0", "0.1", "--dw0", "0", "--from", "0", "--to", "1",
                        "--format", "csv"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("z,w,dw\n", 0) == 0);
}

TEST_CASE("yv") {
    auto r = run({"yv", "--n", "2"});
    CHECK(r.code == 0);
    CHECK(r.out.find("1*z^3 + 4") != std::string::npos);
    r = run({"yv", "--n", "3"});
    CHECK(r.out.find("1*z^6 + 20*z^3 - 80") != std::string::npos);
    r = run({"yv", "--n", "5", "--roots"});
    CHECK(r.code == 0);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 16);  // header + 15 roots
    CHECK(run({"yv", "--n", "-1"}).code == 1);
}

TEST_CASE("connection") {
    auto r = run({"connection", "--k", "0.5"});
    CHECK(r.code == 0);
    CHECK(json::parse(r.out)["pass"] == true);
    r = run({"connection", "--k", "1.0"});
    CHECK(r.code == 1);
    CHECK(r.err.find("HM") != std::string::npos);
    r = run({"connection", "--k", "0.3", "--alpha", "0.25"});
    CHECK(r.code == 0);
    CHECK(json::parse(r.out)["regime"] == "QUASI_AS");
}

TEST_CASE("connection sweep keeps input order and is deterministic") {
    setenv("PAINLEVE_KIT_THREADS", "3", 1);
    const auto a = run({"connection", "--k-sweep", "0.2:0.7:6"});
    setenv("PAINLEVE_KIT_THREADS", "1", 1);
    const auto b = run({"connection", "--k-sweep", "0.2:0.7:6"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    const auto j = json::parse(a.out);
    REQUIRE(j.size() == 6);
    for (std::size_t i = 0; i < 6; ++i) CHECK(j[i]["k"].get<double>() == doctest::Approx(0.2 + 0.1 * i));
    setenv("PAINLEVE_KIT_THREADS", "zero", 1);
    CHECK(run({"connection", "--k-sweep", "0.2:0.7:6"}).code == 1);
    unsetenv("PAINLEVE_KIT_THREADS");
}

TEST_CASE("transform") {
    auto r = run({"transform", "--id", "P2_TO_P34", "--source", "zero", "--alpha", "0"});
    CHECK(r.code == 0);
    CHECK(json::parse(r.out)["pass"] == true);
    r = run({"transform", "--id", "P2_TO_P34", "--source", "zero", "--alpha", "0.7", "--expect-alpha", "0"});
    CHECK(r.code == 3);
    CHECK(json::parse(r.out)["pass"] == false);
    r = run({"transform", "--list"});
    CHECK(r.code == 0);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') >= 12);
    CHECK(run({"transform", "--id", "NOPE"}).code == 1);
    CHECK(run({"transform", "--id", "TZITZEICA_TO_P3D7"}).code == 0);
}

TEST_CASE("ladder file feeds the ratio transform") {
    const auto p = tmp("ladder.json");
    auto r = run({"ladder", "--n-max", "4", "--c1", "1", "--c2", "0", "--grid", "1:8:0.01", "-o", p.string()});
    CHECK(r.code == 0);
    for (const char* n : {"1", "2", "3"}) {
        r = run({"transform", "--id", "CSG_RATIO_TO_P3", "--source", p.string(), "--n", n});
        INFO(r.out, r.err);
        CHECK(r.code == 0);
    }
    CHECK(run({"transform", "--id", "CSG_RATIO_TO_P3", "--source", p.string()}).code == 1);
}

TEST_CASE("trajectory file as a transform source") {
    const auto p = tmp("p2.json");
    REQUIRE(run({"solve", "--eq", "PII", "--alpha", "0.3", "--w0", "0.4", "--dw0", "0.1", "--from", "1", "--to", "2",
                 "--grid", "1:2:0.01", "-o", p.string()})
                .code == 0);
    const auto r = run({"transform", "--id", "P2_TO_P34", "--source", p.string()});
    INFO(r.out);
    CHECK(r.code == 0);
}

TEST_CASE("config file with command-line override") {
    const auto p = tmp("cfg.json");
    std::ofstream(p) << R"({"command": "yv", "n": 3})";
    auto r = run({"--config", p.string()});
    CHECK(r.code == 0);
    CHECK(r.out.find("20*z^3") != std::string::npos);
    r = run({"--config", p.string(), "--n", "2"});
    CHECK(r.code == 0);
    CHECK(r.out.find("1*z^3 + 4") != std::string::npos);
    std::ofstream(p) << "{not json";
    CHECK(run({"--config", p.string()}).code == 1);
}

TEST_CASE("outputs are deterministic") {
    const std::vector<std::string> a{"solve", "--eq", "PII", "--alpha", "0", "--airy-k", "1.5", "--from", "10",
                                     "--to", "-8", "--pole-aware"};
    CHECK(run(a).out == run(a).out);
}
