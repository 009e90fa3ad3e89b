#include "cli.hpp"

#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

using gmas::test::fixture_path;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = gmas::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

// Value after "<key>: " on the matching line, parsed as comma-separated numbers.
std::vector<double> field(const std::string& text, const std::string& key) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (line.rfind(key + ": ", 0) == 0) return gmas::cli::parse_vector(line.substr(key.size() + 2));
    FAIL("missing field " << key);
    return {};
}

}  // namespace

TEST_CASE("vector and matrix options") {
    CHECK(gmas::cli::parse_vector("2, 2.5,1e-3") == std::vector<double>{2, 2.5, 1e-3});
    CHECK_THROWS_AS(gmas::cli::parse_vector("1,,2"), std::invalid_argument);
    CHECK_THROWS_AS(gmas::cli::parse_vector("1,x"), std::invalid_argument);
    CHECK_THROWS_AS(gmas::cli::parse_vector("1,"), std::invalid_argument);
    const auto m = gmas::cli::parse_matrix("1,-1;0,1");
    REQUIRE(m.size() == 2);
    CHECK(m[1] == std::vector<double>{0, 1});
}

TEST_CASE("analyze prints deficiencies") {
    const auto r = run({"analyze", fixture_path("intro.net")});
    CHECK(r.code == 0);
    CHECK(r.out.find("deficiency: 1\n") != std::string::npos);
    CHECK(r.out.find("kinetic-order deficiency: 2\n") != std::string::npos);
}

TEST_CASE("analyze verdict on the four-species network") {
    const auto r = run({"analyze", fixture_path("four_species_a1_b1.net")});
    CHECK(r.code == 0);
    CHECK(r.out.find("verdict: unique positive steady state per class, vertex-balanced, for all rate constants") !=
          std::string::npos);
}

TEST_CASE("malformed input and usage errors exit with 2") {
    const std::string bad = std::string(GMAS_BINARY_DIR) + "/malformed.net";
    std::ofstream(bad) << "species X\nvertex a stoich 1 2\n";
    const auto r = run({"analyze", bad});
    CHECK(r.code == 2);
    CHECK(r.err.find("line 2") != std::string::npos);
    CHECK(run({"analyze", "/nonexistent.net"}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"balanced", fixture_path("cubic.net"), "--x0", "1,2"}).code == 2);
    CHECK(run({"balanced", fixture_path("cubic.net"), "--x0", "-1"}).code == 2);
    CHECK(run({"simulate", fixture_path("cubic.net"), "--x0", "1", "--t-end", "-1"}).code == 2);
}

TEST_CASE("signs prints sign sets and witnesses") {
    const auto diag = run({"signs", fixture_path("classical_birch.net")});
    CHECK(diag.code == 0);
    CHECK(diag.out.find("sigma(S) (3):") != std::string::npos);
    const auto ce = run({"signs", fixture_path("two_birch_points.net")});
    CHECK(ce.out.find("sign condition sigma(S) in cl sigma(S~): FAILS, witness ++") != std::string::npos);
    const auto capped = run({"signs", fixture_path("four_species_a1_b1.net"), "--cap", "3"});
    CHECK(capped.code == 0);
    CHECK(capped.out.find("exceeds enumeration cap 3") != std::string::npos);
    CHECK(capped.out.find("sign condition sigma(S) in cl sigma(S~): holds") != std::string::npos);
}

TEST_CASE("balanced on the cubic example") {
    const auto r = run({"balanced", fixture_path("cubic.net")});
    CHECK(r.code == 0);
    CHECK(field(r.out, "x*")[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("balanced with a class on the four-species network") {
    const auto r = run({"balanced", fixture_path("four_species_a1_b1.net"), "--x0", "2,2,2,2"});
    REQUIRE(r.code == 0);
    CHECK(field(r.out, "class point").size() == 4);
    CHECK(field(r.out, "class residual")[0] <= 1e-8);
    CHECK(field(r.out, "class vertex-balance residual")[0] <= 1e-8);
}

TEST_CASE("balanced refuses networks that are not weakly reversible") {
    const auto r = run({"balanced", fixture_path("enzyme.net")});
    CHECK(r.code == 1);
    CHECK(r.err.find("not weakly reversible") != std::string::npos);
}

TEST_CASE("birch in subspace mode matches the classical answer") {
    const auto r = run({"birch", "--w", "1,-1", "--wt", "1,-1", "--x0", "2,6", "--xstar", "1,1"});
    REQUIRE(r.code == 0);
    const auto x = field(r.out, "x");
    CHECK(x[0] == doctest::Approx(std::sqrt(5.0) - 2).epsilon(1e-8));
    CHECK(x[1] == doctest::Approx(std::sqrt(5.0) + 2).epsilon(1e-8));
}

TEST_CASE("birch in network mode") {
    const auto same = run({"birch", fixture_path("classical_birch.net"), "--x0", "1,1"});
    REQUIRE(same.code == 0);
    CHECK(field(same.out, "x") == std::vector<double>{1, 1});
    const auto saddle = run({"birch", fixture_path("saddle.net"), "--x0", "5,0.3"});
    REQUIRE(saddle.code == 0);
    CHECK(field(saddle.out, "x") == std::vector<double>{1, 1});
    const auto mismatch = run({"birch", fixture_path("intro.net"), "--x0", "1,1", "--xstar", "1,1"});
    CHECK(mismatch.code == 1);
    CHECK(mismatch.err.find("DimensionMismatch") != std::string::npos);
    CHECK(run({"birch", "--w", "1,-1", "--x0", "2,6"}).code == 2);
}

TEST_CASE("GMAS_TOL overrides the default tolerance") {
    setenv("GMAS_TOL", "not-a-number", 1);
    CHECK(run({"birch", "--w", "1,-1", "--wt", "1,-1", "--x0", "2,6", "--xstar", "1,1"}).code == 2);
    setenv("GMAS_TOL", "1e-6", 1);
    CHECK(run({"birch", "--w", "1,-1", "--wt", "1,-1", "--x0", "2,6", "--xstar", "1,1"}).code == 0);
    unsetenv("GMAS_TOL");
}

TEST_CASE("simulate writes CSV in species order") {
    const std::string csv = std::string(GMAS_BINARY_DIR) + "/cubic_traj.csv";
    const auto r = run({"simulate", fixture_path("cubic.net"), "--x0", "0.9", "--t-end", "40", "--out", csv});
    REQUIRE(r.code == 0);
    CHECK(field(r.out, "final state")[0] == doctest::Approx(2 - std::sqrt(3.0)).epsilon(1e-6));
    std::ifstream in(csv);
    std::string header;
    std::getline(in, header);
    CHECK(header == "t,X");
}

TEST_CASE("simulate at equilibrium stays put") {
    const auto r = run({"simulate", fixture_path("saddle.net"), "--x0", "1,1", "--t-end", "5"});
    REQUIRE(r.code == 0);
    CHECK(field(r.out, "final state") == std::vector<double>{1, 1});
}

TEST_CASE("simulate reports collapse with the last good state") {
    const auto r = run({"simulate", fixture_path("saddle.net"), "--x0", "2,1", "--t-end", "1000"});
    CHECK(r.code == 1);
    CHECK(r.err.find("last good state") != std::string::npos);
}
