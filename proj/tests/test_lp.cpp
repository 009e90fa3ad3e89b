#include "gmas/lp.hpp"

#include "support.hpp"

#include <doctest.h>

using namespace gmas;
using gmas::test::qv;

TEST_CASE("simplex solves a small LP exactly") {
    // max 3x + 2y  s.t. x + y <= 4, x + 3y <= 6, x <= 3
    RationalMatrix a{{1, 1}, {1, 3}, {1, 0}};
    const auto r = maximize(a, qv({4, 6, 3}), qv({3, 2}));
    REQUIRE(r.status == LpResult::Status::Optimal);
    CHECK(r.value == 11);
    CHECK(r.x == qv({3, 1}));
}

TEST_CASE("simplex detects unboundedness") {
    RationalMatrix a{{1, -1}};
    const auto r = maximize(a, qv({1}), qv({0, 1}));
    CHECK(r.status == LpResult::Status::Unbounded);
}

TEST_CASE("simplex handles a degenerate vertex") {
    RationalMatrix a{{1, 1}, {1, -1}, {0, 1}};
    const auto r = maximize(a, qv({0, 0, 0}), qv({1, 1}));
    REQUIRE(r.status == LpResult::Status::Optimal);
    CHECK(r.value == 0);
}

TEST_CASE("strict sign feasibility on the diagonal line") {
    const auto b = SubspaceBasis::span_of(2, {qv({1, 1})});
    auto r = strict_sign_feasible(b, SignVector::parse("++"), false);
    REQUIRE(r.feasible);
    CHECK(r.witness->at(0) > 0);
    CHECK(r.witness->at(1) > 0);
    CHECK_FALSE(strict_sign_feasible(b, SignVector::parse("+-"), false).feasible);
    CHECK_FALSE(strict_sign_feasible(b, SignVector::parse("+0"), false).feasible);
    CHECK(strict_sign_feasible(b, SignVector::parse("+0"), true).feasible);
    CHECK(strict_sign_feasible(b, SignVector::parse("00"), false).feasible);
}

TEST_CASE("strict sign feasibility with pinned zeros") {
    const auto b = SubspaceBasis::span_of(3, {qv({1, 0, -1}), qv({0, 1, -1})});
    CHECK(strict_sign_feasible(b, SignVector::parse("+0-"), false).feasible);
    CHECK(strict_sign_feasible(b, SignVector::parse("+-0"), false).feasible);
    CHECK_FALSE(strict_sign_feasible(b, SignVector::parse("++0"), false).feasible);
    CHECK_FALSE(strict_sign_feasible(b, SignVector::parse("+++"), false).feasible);
    const auto w = strict_sign_feasible(b, SignVector::parse("+-+"), false);
    REQUIRE(w.feasible);
    CHECK(b.contains(*w.witness));
}

TEST_CASE("restrict_to_zeros") {
    const auto b = SubspaceBasis::span_of(3, {qv({1, 0, -1}), qv({0, 1, -1})});
    const auto r = restrict_to_zeros(b, {false, false, true});
    REQUIRE(r.dim() == 1);
    CHECK(r.contains(qv({1, -1, 0})));
    CHECK(restrict_to_zeros(b, {true, true, false}).dim() == 0);
}
