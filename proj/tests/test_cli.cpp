// Exit-code and output-format contract of the command-line tool. The
// binary path comes from the PARALAB_CLI environment variable (set by
// ctest) with a build-relative fallback.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace {

std::string cli_path() {
    if (const char* p = std::getenv("PARALAB_CLI")) return p;
    return "./tools/paralab";
}

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run(const std::string& args) {
    std::string tmp = "cli_out.tmp";
    std::string cmd = cli_path() + " " + args + " > " + tmp + " 2> cli_err.tmp";
    int status = std::system(cmd.c_str());
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(tmp);
    std::stringstream ss;
    ss << in.rdbuf();
    return {code, ss.str()};
}

}  // namespace

TEST_CASE("lacunary: singleton certificate, exit 0") {
    auto r = run("lacunary --points 5 --d 0 --b 3");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.output);
    CHECK(j.at("result") == "lacunary");
    CHECK(j.at("certificate").at("levels")[0][0] == "5");
    CHECK(j.contains("config_hash"));
}

TEST_CASE("lacunary: arithmetic set rejected, exit 1") {
    auto r = run("lacunary --points 0,1,2,3,4,5,6,7,8,9 --d 1 --b 0");
    CHECK(r.exit_code == 1);
    CHECK(nlohmann::json::parse(r.output).at("result") == "not lacunary");
}

TEST_CASE("lacunary: malformed rational is a usage error, exit 2") {
    auto r = run("lacunary --points 1,x/3 --d 1 --b 1");
    CHECK(r.exit_code == 2);
}

TEST_CASE("lacunary: oversized exhaustive request is undecided, exit 3") {
    // 14 points with a tiny work budget in exhaustive-only mode
    auto r = run(
        "lacunary --points "
        "1,2,4,8,16,32,64,128,256,512,1024,2048,4096,8192 "
        "--d 2 --b 2 --mode exhaustive --budget 10");
    CHECK(r.exit_code == 3);
    CHECK(nlohmann::json::parse(r.output).at("result") == "undecided (budget)");
}

TEST_CASE("verify-lemmas: seeded instances pass, exit 0") {
    auto r = run("verify-lemmas --seeds 2 --d 2 --b 2 --J 10");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.output);
    CHECK(j.at("total_violations") == 0);
    CHECK(j.at("runs").size() == 2);
}

TEST_CASE("verify-lemmas: d=3 smoke case passes") {
    auto r = run("verify-lemmas --seeds 1 --d 3 --b 4 --J 8");
    CHECK(r.exit_code == 0);
}

TEST_CASE("verify-lemmas: corrupted xi spacing surfaces as exit 2") {
    // gap between 40 and 39 is far below 2^(6-1) = 32
    auto r = run("verify-lemmas --xi 40,39,2");
    CHECK(r.exit_code == 2);
    // a valid explicit sequence passes
    auto ok = run("verify-lemmas --xi 96,64,16");
    CHECK(ok.exit_code == 0);
}

TEST_CASE("norm: unit family gives ratio 1 and exits 0") {
    auto r = run("norm --family unit --J 1 --N 128 --L 1 --restarts 4 --iterations 40");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("family,param,seed,best_ratio,iterations,converged") != std::string::npos);
    CHECK(r.output.find("# config_hash=") != std::string::npos);
    // parse the data row and check the ratio
    std::istringstream ss(r.output);
    std::string line;
    double ratio = 0.0;
    while (std::getline(ss, line)) {
        if (line.rfind("unit,", 0) == 0) {
            auto p1 = line.find(',', 5);
            auto p2 = line.find(',', p1 + 1);
            auto p3 = line.find(',', p2 + 1);
            ratio = std::stod(line.substr(p2 + 1, p3 - p2 - 1));
        }
    }
    CHECK(ratio > 1.0 - 1e-6);
    CHECK(ratio < 1.0 + 1e-9);
}

TEST_CASE("norm: exponent triple validation and the unsafe escape hatch") {
    auto bad = run("norm --family unit --J 1 --N 64 --p1 2 --p2 4 --p3 4");
    CHECK(bad.exit_code == 2);
    auto sum_off = run("norm --family unit --J 1 --N 64 --p1 3 --p2 3 --p3 3.5");
    CHECK(sum_off.exit_code == 2);
    auto escaped = run(
        "norm --family unit --J 1 --N 64 --p1 3 --p2 3 --p3 3.5 --unsafe-exponents "
        "--restarts 2 --iterations 10");
    CHECK(escaped.exit_code == 0);
}

TEST_CASE("norm: determinism of CSV output for fixed seed and config") {
    std::string cmd = "norm --family exp_staircase --J 4 --N 128 --L 2 --restarts 2 --iterations 20";
    auto a = run(cmd);
    auto b = run(cmd);
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
}

TEST_CASE("sqfn: single covering interval and range checks") {
    auto bad = run("sqfn --p 2 --N 64");
    CHECK(bad.exit_code == 2);
    auto r = run("sqfn --p 4 --N 256 --N 512 --seeds 2");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("N,p,num_intervals,seed,ratio") != std::string::npos);
    CHECK(r.output.find("slope") != std::string::npos);
}

TEST_CASE("lepingle: range checks and CSV columns") {
    CHECK(run("lepingle --p 1 --N 64").exit_code == 2);
    CHECK(run("lepingle --r 2 --N 64").exit_code == 2);
    auto r = run("lepingle --p 4 --r 2.5 --N 256 --seeds 1");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("N,p,r,ratio") != std::string::npos);
}

TEST_CASE("signal-io: gen, convert, info round trip") {
    CHECK(run("signal-io gen --kind random_trig --N 64 --band-lo -10 --band-hi 10 --seed 3 -o "
              "cli_sig.csv").exit_code == 0);
    CHECK(run("signal-io convert cli_sig.csv cli_sig.bin").exit_code == 0);
    auto info = run("signal-io info cli_sig.bin");
    CHECK(info.exit_code == 0);
    CHECK(info.output.find("N=64") != std::string::npos);
    std::remove("cli_sig.csv");
    std::remove("cli_sig.bin");
}

TEST_CASE("unknown family is a usage error") {
    CHECK(run("norm --family not_a_family --J 1 --N 64").exit_code == 2);
}
