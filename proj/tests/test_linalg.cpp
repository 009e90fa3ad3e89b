#include "gmas/linalg.hpp"

#include "support.hpp"

#include <doctest.h>

using namespace gmas;
using gmas::test::qv;

TEST_CASE("rref of a rank-deficient matrix") {
    RationalMatrix m{{1, 2, 3}, {2, 4, 6}, {1, 0, 1}};
    const auto r = rref(m);
    CHECK(r.rank == 2);
    CHECK(r.pivot_cols == std::vector<std::size_t>{0, 1});
    RationalMatrix expected{{1, 0, 1}, {0, 1, 1}, {0, 0, 0}};
    CHECK(r.reduced == expected);
}

TEST_CASE("rref is exact with fractions") {
    RationalMatrix m{{Rational(1, 3), Rational(1, 7)}, {Rational(2, 5), Rational(1, 11)}};
    CHECK(rank(m) == 2);
    CHECK(rref(m).reduced == RationalMatrix::identity(2));
}

TEST_CASE("kernel basis vectors are annihilated") {
    RationalMatrix m{{1, 1, 0, 0}, {0, 0, 1, 1}};
    const auto k = kernel_basis(m);
    CHECK(k.dim() == 2);
    for (const auto& v : k.vectors()) CHECK(is_zero(m * v));
    CHECK(kernel_basis(RationalMatrix::identity(3)).dim() == 0);
}

TEST_CASE("orthogonal complement") {
    const auto s = SubspaceBasis::span_of(2, {qv({1, 1})});
    const auto perp = orth_complement(s);
    REQUIRE(perp.dim() == 1);
    CHECK(dot(perp.vectors()[0], qv({1, 1})) == 0);
    CHECK(orth_complement(SubspaceBasis(3)).dim() == 3);
    CHECK(orth_complement(SubspaceBasis::full(3)).dim() == 0);
}

TEST_CASE("intersection of two planes in R^3 is a line") {
    const auto a = SubspaceBasis::span_of(3, {qv({1, 0, 0}), qv({0, 1, 0})});
    const auto b = SubspaceBasis::span_of(3, {qv({0, 1, 0}), qv({0, 0, 1})});
    const auto c = intersect_subspaces(a, b);
    REQUIRE(c.dim() == 1);
    CHECK(same_span(c, SubspaceBasis::span_of(3, {qv({0, 5, 0})})));
}

TEST_CASE("SubspaceBasis validates") {
    CHECK_THROWS_AS(SubspaceBasis(2, {qv({1, 1}), qv({2, 2})}), std::invalid_argument);
    CHECK_THROWS_AS(SubspaceBasis(2, {qv({1, 1, 1})}), std::invalid_argument);
    const auto s = SubspaceBasis::span_of(3, {qv({1, 2, 3}), qv({2, 4, 6}), qv({0, 0, 0})});
    CHECK(s.dim() == 1);
    CHECK(s.contains(qv({-1, -2, -3})));
    CHECK_FALSE(s.contains(qv({1, 0, 0})));
}

TEST_CASE("row and column spaces") {
    RationalMatrix m{{1, 0, 1}, {0, 1, 1}};
    CHECK(row_space(m).dim() == 2);
    CHECK(column_space(m).dim() == 2);
    CHECK(column_space(m).ambient_dim() == 2);
    CHECK(same_span(row_space(m), row_space(m.transpose().transpose())));
}

TEST_CASE("matrix products") {
    RationalMatrix a{{1, 2}, {3, 4}};
    RationalMatrix b{{0, 1}, {1, 0}};
    RationalMatrix ab{{2, 1}, {4, 3}};
    CHECK(a * b == ab);
    CHECK(a.transpose()(0, 1) == 3);
    CHECK(a * qv({1, -1}) == qv({-1, -1}));
}
