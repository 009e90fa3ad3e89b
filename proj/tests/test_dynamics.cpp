#include "gmas/dynamics.hpp"

#include "gmas/balance.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace gmas;
using gmas::test::bisect;
using gmas::test::fixture;

TEST_CASE("right-hand side of the intro network at (1,1)") {
    const auto net = fixture("intro.net");
    const auto f = rhs(net, std::vector<double>(6, 1.0), std::vector<double>{1, 1});
    CHECK(f[0] == doctest::Approx(-1.0));
    CHECK(f[1] == doctest::Approx(2.0));
    const auto g = rhs_matrix_form(net, std::vector<double>(6, 1.0), std::vector<double>{1, 1});
    CHECK(g[0] == doctest::Approx(-1.0));
    CHECK(g[1] == doctest::Approx(2.0));
}

TEST_CASE("cubic right-hand side") {
    const auto net = fixture("cubic.net");
    const auto r = required_rates(net);
    CHECK(rhs(net, r, std::vector<double>{1.0})[0] == doctest::Approx(0.0));
    for (double x : {0.3, 0.9, 2.0, 4.5})
        CHECK(rhs(net, r, std::vector<double>{x})[0] == doctest::Approx(1 - 5 * x + 5 * x * x - x * x * x));
}

TEST_CASE("rhs rejects non-positive states") {
    const auto net = fixture("cubic.net");
    CHECK_THROWS_AS(rhs(net, required_rates(net), std::vector<double>{0.0}), std::invalid_argument);
    CHECK_THROWS_AS(rhs(net, required_rates(net), std::vector<double>{1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("vertex-balanced points are fixed") {
    const auto net = fixture("four_species_a2_bhalf.net");
    const auto r = required_rates(net);
    const auto p = find_vertex_balanced(net, r);
    REQUIRE(p);
    for (double v : rhs(net, r, p->x)) CHECK(std::abs(v) < 1e-12);
    const auto traj = integrate(net, r, p->x, 10.0);
    CHECK(gmas::test::rel_diff(traj.final_state(), p->x) < 1e-9);
}

TEST_CASE("cubic from 0.9 settles at the lower root 2 - sqrt 3") {
    const auto net = fixture("cubic.net");
    const auto traj = integrate(net, required_rates(net), std::vector<double>{0.9}, 60.0);
    const double root = bisect([](double x) { return 1 - 5 * x + 5 * x * x - x * x * x; }, 0.1, 0.5);
    CHECK(traj.final_state()[0] == doctest::Approx(root).epsilon(1e-6));
    CHECK(traj.times.back() == 60.0);
    for (std::size_t i = 1; i < traj.times.size(); ++i) CHECK(traj.times[i] > traj.times[i - 1]);
}

TEST_CASE("cubic from 1.1 climbs to the upper root") {
    const auto net = fixture("cubic.net");
    const auto traj = integrate(net, required_rates(net), std::vector<double>{1.1}, 60.0);
    CHECK(traj.final_state()[0] == doctest::Approx(2 + std::sqrt(3.0)).epsilon(1e-6));
}

TEST_CASE("saddle example leaves the orthant or diverges off its stable manifold") {
    const auto net = fixture("saddle.net");
    const auto r = required_rates(net);
    for (const auto& x0 : {std::vector<double>{2, 1}, std::vector<double>{0.5, 0.9}}) {
        try {
            integrate(net, r, x0, 1e4);
            FAIL("expected an integration failure");
        } catch (const IntegrationError& e) {
            CHECK((e.kind() == IntegrationError::Kind::Divergence || e.kind() == IntegrationError::Kind::StateCollapse));
            for (const auto& s : e.partial().states)
                for (double v : s) CHECK(v > 0);
        }
    }
}

TEST_CASE("conservation on phosphorylation") {
    const auto net = fixture("phospho_n1.net");
    const std::vector<double> r{1.5, 0.7, 2.0, 0.4, 1.1, 3.0};
    IntegrateOptions opts;
    opts.rtol = 1e-8;
    const auto traj = integrate(net, r, std::vector<double>{1, 0.5, 2, 0.3, 0.2, 0.1}, 5.0, opts);
    CHECK(conservation_residual(net, traj) <= 1e-6);
    CHECK(traj.accepted_steps > 0);
}

TEST_CASE("conservation is vacuous when S is everything") {
    const auto net = fixture("intro.net");
    const auto traj = integrate(net, std::vector<double>(6, 1.0), std::vector<double>{1, 1}, 0.1);
    CHECK(conservation_residual(net, traj) == 0.0);
}

TEST_CASE("CSV export") {
    const auto net = fixture("saddle.net");
    Trajectory t;
    t.times = {0.0, 0.5};
    t.states = {{1.0, 1.0}, {1.0, 0.1}};
    std::ostringstream out;
    write_csv(out, net.species(), t);
    CHECK(out.str() == "t,X1,X2\n0,1,1\n0.5,1,0.10000000000000001\n");
}

TEST_CASE("integrate validates input") {
    const auto net = fixture("cubic.net");
    const auto r = required_rates(net);
    CHECK_THROWS_AS(integrate(net, r, std::vector<double>{1.0}, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(integrate(net, r, std::vector<double>{-1.0}, 1.0), std::invalid_argument);
}
