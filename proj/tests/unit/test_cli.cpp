#include "radef/cli.hpp"
#include "radef/io.hpp"
#include "radef/specfun.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

using namespace radef;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "radef");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) parts.push_back(item);
    return parts;
}

}  // namespace

TEST_CASE("configuration errors exit with 2") {
    const Run r = run({"--c", "-1", "spectrum"});
    CHECK(r.code == 2);
    CHECK(r.err.find("c > -1") != std::string::npos);
    CHECK(run({"--m", "2", "spectrum"}).code == 2);
    CHECK(run({"--omega-re", "-0.5", "kernel"}).code == 2);
    CHECK(run({"verify", "--suite", "nonsense"}).code == 2);
    CHECK(run({"--config", "/nonexistent/config.json", "spectrum"}).code == 2);
    CHECK(run({}).code == 2);
}

TEST_CASE("spectrum table") {
    const Run a = run({"spectrum", "--t-max", "1", "--ell-max", "1"});
    REQUIRE(a.code == 0);
    const auto lines = split(a.out, '\n');
    CHECK(lines[0] == "t,ell,L_eigenvalue,re_F,im_F");
    CHECK(lines[1].rfind("0,0,3,1,", 0) == 0);
    CHECK(std::stod(split(lines[1], ',')[4]) == 0.0);
    const auto row10 = split(lines[3], ',');
    CHECK(row10[0] == "1");
    CHECK(row10[1] == "0");
    CHECK(std::abs(std::stod(row10[3])) < 1e-15);
    CHECK(std::stod(row10[4]) == -1.0);

    const Run b = run({"--c", "1", "spectrum", "--t-max", "1", "--ell-max", "1"});
    REQUIRE(b.code == 0);
    CHECK(split(split(b.out, '\n')[4], ',')[2] == "20");
}

TEST_CASE("kernel grid") {
    const Run empty = run({"kernel", "--nz", "0"});
    CHECK(empty.code == 0);
    CHECK(empty.out == "x1,x2,x3,y1,y2,y3,z,w,reA,imA,reB,imB,terms_used,tail_estimate\n");

    for (const char* c : {"-0.5", "0", "1"}) {
        const Run r = run({"--c", c, "kernel", "--z-min", "0", "--z-max", "0", "--nz", "1", "--nw", "7"});
        REQUIRE(r.code == 0);
        const auto lines = split(r.out, '\n');
        REQUIRE(lines.size() == 8);
        const double cc = std::stod(c);
        const double g0 = 2.0 / (1.0 + cc) * 0.5 + (cc + 2.0) / (1.0 + cc);
        const double expect = 1.0 / (std::pow(2.0, 0.5 * g0 - 1.0) * std::tgamma(0.5 * g0));
        for (std::size_t i = 1; i < lines.size(); ++i) {
            const auto cols = split(lines[i], ',');
            CHECK(std::stod(cols[8]) == doctest::Approx(expect).epsilon(1e-14));
            CHECK(std::stod(cols[9]) == 0.0);
            CHECK(cols[8] == split(lines[1], ',')[8]);
        }
    }

    // c = 0 columns match the classical kernel
    const Run r = run({"kernel", "--z-max", "6", "--nz", "4", "--nw", "3"});
    REQUIRE(r.code == 0);
    const double norm = 1.0 / (std::tgamma(1.5) * std::sqrt(2.0));
    const auto lines = split(r.out, '\n');
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto cols = split(lines[i], ',');
        const double zw = std::stod(cols[6]) * std::stod(cols[7]);
        CHECK(std::abs(std::stod(cols[8]) - norm * std::cos(zw)) <= 1e-8);
        CHECK(std::abs(std::stod(cols[9]) + norm * std::sin(zw)) <= 1e-8);
        CHECK(std::abs(std::stod(cols[10])) <= 1e-8);
    }
    CHECK(run({"kernel", "--w-max", "1.5"}).code == 2);
}

TEST_CASE("outputs are deterministic") {
    const std::vector<std::string> args{"--c", "0.5", "--omega-re", "0.4", "--omega-im", "0.7", "transform",
                                        "--n", "2", "--ell", "1", "--points", "3"};
    const Run a = run(args), b = run(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    const Run v1 = run({"--samples", "3", "verify", "--suite", "basis"});
    const Run v2 = run({"--samples", "3", "verify", "--suite", "basis"});
    CHECK(v1.out == v2.out);
    CHECK(v1.err == v2.err);
}

TEST_CASE("verify filter and report") {
    const Run r = run({"--samples", "3", "verify", "--suite", "master"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j["results"].size() > 0);
    for (const auto& e : j["results"]) {
        CHECK(e["suite"] == "master");
        CHECK(e.contains("test"));
        CHECK(e.contains("paper_ref"));
        CHECK(e.contains("residual"));
        CHECK(e.contains("tol"));
        CHECK(e["pass"] == true);
    }
    CHECK(j["failed"] == 0);
    CHECK(r.err.find("PASS master") != std::string::npos);
}

TEST_CASE("config file and flag overrides") {
    RunConfig cfg;
    load_config_json(R"({"m": 4, "c": 0.25, "omega": {"re": 0.1}, "truncation": {"k_max": 50}, "seed": 5})", cfg);
    CHECK(cfg.m == 4);
    CHECK(cfg.c == 0.25);
    CHECK(cfg.omega == cplx(0.1, 0.5 * 3.14159265358979323846));
    CHECK(cfg.trunc.k_max == 50);
    CHECK(cfg.seed == 5);
    CHECK_THROWS_AS(load_config_json("[1, 2]", cfg), std::invalid_argument);
    CHECK_THROWS_AS(load_config_json(R"({"m": "three"})", cfg), std::invalid_argument);
    CHECK_THROWS_AS(load_config_json("{", cfg), std::invalid_argument);
}

TEST_CASE("number formatting") {
    CHECK(format_number(0.1) == "0.10000000000000001");
    CHECK(format_number(3.0) == "3");
    CHECK(format_number(-0.25) == "-0.25");
    CHECK(std::stod(format_number(-2.5e-20)) == -2.5e-20);
    CHECK(blade_name(0) == "1");
    CHECK(blade_name(0b101) == "e13");
}

TEST_CASE("basis and profile exports") {
    const Run b = run({"basis", "--ell", "1"});
    REQUIRE(b.code == 0);
    CHECK(nlohmann::json::parse(b.out).size() == 16);
    const Run p = run({"profile", "--n", "2", "--ell", "1", "--points", "5"});
    REQUIRE(p.code == 0);
    CHECK(split(p.out, '\n').size() == 6);
}
