#include "gmas/birch.hpp"

#include "gmas/balance.hpp"
#include "gmas/numeric.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace gmas;
using gmas::test::bisect;
using gmas::test::fixture;
using gmas::test::qv;
using gmas::test::span;

namespace {

BirchProblem scalar_problem(double x_star) {
    Eigen::MatrixXd one(1, 1);
    one << 1.0;
    const std::vector<double> xs{x_star}, x0{1.0};
    return BirchProblem::from_matrices(one, one, x0, xs);
}

Eigen::VectorXd vec(std::initializer_list<double> xs) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) v(i++) = x;
    return v;
}

BirchProblem diagonal_problem(std::vector<double> x0) {
    const auto s = span(2, {qv({1, 1})});
    return BirchProblem::from_subspaces(s, s, x0, std::vector<double>{1, 1});
}

}  // namespace

TEST_CASE("eval_F at zero is W x*") {
    const auto p = diagonal_problem({2, 6});
    const auto f = eval_F(p, Eigen::VectorXd::Zero(1));
    CHECK_FALSE(f.saturated);
    CHECK(f.value.isApprox(p.W * p.x_star));
}

TEST_CASE("scalar problem") {
    const auto p = scalar_problem(2.0);
    CHECK(eval_F(p, vec({std::log(3.0)})).value(0) == doctest::Approx(6.0));
    CHECK(eval_f(p, vec({3.0})).value(0) == doctest::Approx(6.0));
    CHECK(jacobian_F(p, vec({0.0}))(0, 0) == doctest::Approx(2.0));
    CHECK_THROWS_AS(eval_f(p, vec({-1.0})), std::invalid_argument);
}

TEST_CASE("eval_F flags saturation instead of overflowing") {
    const auto p = scalar_problem(1.0);
    const auto f = eval_F(p, vec({800.0}));
    CHECK(f.saturated);
    CHECK(std::isfinite(f.value(0)));
}

TEST_CASE("eval_F on the four-species problem at zero with unit x*") {
    const auto net = fixture("four_species_a1_b1.net");
    const auto p = BirchProblem::from_subspaces(stoich_subspace(net), kinetic_subspace(net),
                                                std::vector<double>(4, 2.0), std::vector<double>(4, 1.0));
    const Eigen::VectorXd expected = p.W.rowwise().sum();
    CHECK(eval_F(p, Eigen::VectorXd::Zero(2)).value.isApprox(expected));
}

TEST_CASE("jacobian matches central differences") {
    std::mt19937_64 rng(7);
    const auto s = gmas::test::random_subspace_of_dim(rng, 4, 2);
    const auto st = gmas::test::random_subspace_of_dim(rng, 4, 2);
    const auto p = BirchProblem::from_subspaces(s, st, gmas::test::random_positive(rng, 4),
                                                gmas::test::random_positive(rng, 4));
    const Eigen::VectorXd lam = vec({0.3, -0.2});
    const auto j = jacobian_F(p, lam);
    for (Eigen::Index b = 0; b < 2; ++b) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(2);
        e(b) = 1e-6;
        const Eigen::VectorXd fd = (eval_F(p, lam + e).value - eval_F(p, lam - e).value) / 2e-6;
        CHECK((fd - j.col(b)).norm() <= 1e-5 * std::max(1.0, j.col(b).norm()));
    }
}

TEST_CASE("classical case jacobian is symmetric positive definite") {
    const auto s = span(3, {qv({1, 1, 0})});
    const auto p = BirchProblem::from_subspaces(s, s, std::vector<double>{1, 2, 3}, std::vector<double>{3, 1, 2});
    const auto j = jacobian_F(p, vec({0.4, -1.0}));
    CHECK((j - j.transpose()).norm() < 1e-12);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
    CHECK(es.eigenvalues().minCoeff() > 0);
}

TEST_CASE("x* already in the class") {
    const auto p = diagonal_problem({3, 3});
    const auto sol = solve(p);
    CHECK(sol.x.isApprox(p.x_star));
    CHECK(sol.homotopy_steps == 0);
    CHECK(sol.newton_iterations == 0);
}

TEST_CASE("classical Birch point against a bisection oracle") {
    const auto sol = solve(diagonal_problem({2, 6}));
    // On the line (2 + s, 6 + s) the manifold x1 x2 = 1 is crossed once.
    const double s = bisect([](double t) { return (2 + t) * (6 + t) - 1; }, -1.999999, 0.0);
    CHECK(sol.x(0) == doctest::Approx(2 + s).epsilon(1e-10));
    CHECK(sol.x(1) == doctest::Approx(6 + s).epsilon(1e-10));
    CHECK(sol.x(0) == doctest::Approx(std::sqrt(5.0) - 2).epsilon(1e-10));
    CHECK(sol.residual_affine <= 1e-10 * 6);
    CHECK(sol.manifold_exact);
}

TEST_CASE("saddle example returns x* from any x0") {
    const auto net = fixture("saddle.net");
    for (const auto& x0 : {std::vector<double>{3, 0.2}, std::vector<double>{0.01, 50}}) {
        const auto p = BirchProblem::from_subspaces(stoich_subspace(net), kinetic_subspace(net), x0,
                                                    std::vector<double>{1, 1});
        const auto sol = solve(p);
        CHECK(sol.x(0) == doctest::Approx(1.0));
        CHECK(sol.x(1) == doctest::Approx(1.0));
    }
}

TEST_CASE("two-point counterexample: continuation from x* lands on a root") {
    const auto p = BirchProblem::from_subspaces(span(2, {qv({1, 1})}), span(2, {qv({-1, 2})}),
                                                std::vector<double>{1e-9, 3.0 / 16}, std::vector<double>{1, 1});
    const auto sol = solve(p);
    const bool first = std::abs(sol.x(0) - 1.0 / 16) < 1e-6 && std::abs(sol.x(1) - 0.25) < 1e-6;
    const bool second = std::abs(sol.x(0) - 9.0 / 16) < 1e-6 && std::abs(sol.x(1) - 0.75) < 1e-6;
    CHECK((first || second));
}

TEST_CASE("homotopy is used when Newton starts far away") {
    const auto s = span(3, {qv({1, 1, 1})});
    const auto p = BirchProblem::from_subspaces(s, s, std::vector<double>{1e-3, 5e2, 7}, std::vector<double>{1, 1, 1});
    SolveOptions opts;
    opts.initial_lambda = vec({40.0, -40.0});
    const auto sol = solve(p, opts);
    CHECK(sol.residual_affine <= 1e-10 * 5e2);
    CHECK(sol.manifold_exact);
}

TEST_CASE("dimension mismatch") {
    const auto p = BirchProblem::from_subspaces(span(3, {qv({1, 1, 0})}), span(3, {qv({1, 0, 0}), qv({0, 0, 1})}),
                                                std::vector<double>{1, 1, 1}, std::vector<double>{1, 1, 1});
    try {
        solve(p);
        FAIL("expected DimensionMismatch");
    } catch (const SolverError& e) {
        CHECK(e.kind() == SolverError::Kind::DimensionMismatch);
    }
    Eigen::MatrixXd dep(2, 2);
    dep << 1, 1, 2, 2;
    CHECK_THROWS_AS(BirchProblem::from_matrices(dep, dep, std::vector<double>{1, 1}, std::vector<double>{1, 1}),
                    SolverError);
}

TEST_CASE("singular jacobian is reported") {
    // S = span{(1,-1)}, S~ = span{(1,1)}: S~perp = S, so the manifold x* exp(S) is tangent
    // to the classes along the path and the Jacobian W diag(x) W~^T vanishes.
    const auto p = BirchProblem::from_subspaces(span(2, {qv({1, -1})}), span(2, {qv({1, 1})}),
                                                std::vector<double>{1, 3}, std::vector<double>{1, 1});
    try {
        solve(p);
        FAIL("expected a solver error");
    } catch (const SolverError& e) {
        CHECK(e.kind() == SolverError::Kind::JacobianSingular);
    }
}

TEST_CASE("intersect_class_with_balanced_set on the four-species network") {
    const auto net = fixture("four_species_a1_b1.net");
    const auto r = required_rates(net);
    const auto star = find_vertex_balanced(net, r);
    REQUIRE(star);
    const std::vector<double> x0(4, 2.0);
    const auto sol = intersect_class_with_balanced_set(net, r, star->x, x0);
    const auto x = to_std(sol.x);
    CHECK(is_vertex_balanced(net, r, x).balanced);
    CHECK(sol.residual_affine <= 1e-8);
    const auto same = intersect_class_with_balanced_set(net, r, star->x, star->x);
    CHECK(gmas::test::rel_diff(to_std(same.x), star->x) < 1e-14);
    CHECK_THROWS_AS(intersect_class_with_balanced_set(net, r, std::vector<double>{1, 2, 3, 4}, x0), SolverError);
}

TEST_CASE("intersect_class_with_balanced_set on phosphorylation with random rates") {
    std::mt19937_64 rng(11);
    const auto net = fixture("phospho_n1.net");
    for (int trial = 0; trial < 5; ++trial) {
        const auto r = gmas::test::random_positive(rng, net.edge_count());
        const auto star = find_vertex_balanced(net, r);
        REQUIRE(star);
        const auto x0 = gmas::test::random_positive(rng, net.species_count());
        const auto sol = intersect_class_with_balanced_set(net, r, star->x, x0);
        CHECK(is_vertex_balanced(net, r, to_std(sol.x)).balanced);
        const Eigen::MatrixXd w = orthonormal_rows(orth_complement(stoich_subspace(net)));
        CHECK((w * (sol.x - to_eigen(x0))).cwiseAbs().maxCoeff() <= 1e-8);
    }
}
