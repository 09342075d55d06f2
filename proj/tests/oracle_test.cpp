#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <stdexcept>
#include <string>

#include "liouville/invariants.hpp"
#include "liouville/oracle.hpp"
#include "liouville/parser.hpp"

using namespace liouville;

namespace {

const std::set<std::string> kNames{"x", "y"};

Expr P(const std::string& s) { return parse_expression(s, kNames); }

Metric flat() { return Metric("x", "y", P("1"), P("0"), P("1")); }
Metric g0() { return Metric("x", "y", P("x"), P("0"), P("x")); }

AnsatzSpec box(int x_lo, int x_hi, int y_lo, int y_hi) {
    AnsatzSpec s;
    s.x_lo = x_lo;
    s.x_hi = x_hi;
    s.y_lo = y_lo;
    s.y_hi = y_hi;
    return s;
}

} // namespace

TEST_CASE("flat integral spaces have the binomial dimensions") {
    Metric m = flat();
    const int expected[] = {3, 6, 10, 15};
    for (int n = 1; n <= 4; ++n) {
        DimensionResult r = integral_space_dimension(m, n, box(0, n, 0, n));
        CHECK(r.dimension == expected[n - 1]);
        CHECK(static_cast<int>(r.basis.size()) == r.dimension);
        CHECK(r.rank + r.dimension == r.unknowns);
    }
    // a larger box finds nothing beyond the full solution space
    CHECK(integral_space_dimension(m, 1, box(0, 3, 0, 3)).dimension == 3);
}

TEST_CASE("x(dx^2+dy^2) pins its integral spaces in degrees 2..5") {
    Metric m = g0();
    // the curvature 1/(2x^3) is not constant, so dim <= (n^2+3n)/2 - 1
    InvariantFrame frame = invariant_frame(m, 3);
    REQUIRE(test_zero(frame.at("I3"), m.policy()).verdict == TriState::Nonzero);
    const int expected[] = {4, 4, 9, 9};
    for (int n = 2; n <= 5; ++n) {
        DimensionResult r = integral_space_dimension(m, n, box(-2, 2, 0, n <= 3 ? 3 : 4));
        CHECK(r.dimension == expected[n - 2]);
        CHECK(static_cast<int>(r.basis.size()) == r.dimension);
        CHECK(r.rank + r.dimension == r.unknowns);
        CHECK(r.dimension <= (n * n + 3 * n) / 2 - 1);
    }
}

TEST_CASE("enlarging the ansatz never loses integrals") {
    // within x(dx^2+dy^2): K^2 alone, then H and F join, then G
    Metric m = g0();
    int d1 = integral_space_dimension(m, 2, box(0, 1, 0, 1)).dimension;
    int d2 = integral_space_dimension(m, 2, box(-1, 1, 0, 1)).dimension;
    int d3 = integral_space_dimension(m, 2, box(-1, 1, 0, 2)).dimension;
    int d4 = integral_space_dimension(m, 2, box(-2, 2, 0, 3)).dimension;
    CHECK(d1 == 1);
    CHECK(d2 == 3);
    CHECK(d3 == 4);
    CHECK(d4 == 4);
}

TEST_CASE("returned bases verify externally") {
    Metric m = flat();
    DimensionResult r = integral_space_dimension(m, 2, box(0, 2, 0, 2));
    REQUIRE(r.dimension == 6);
    for (const auto& f : r.basis) CHECK(is_first_integral(m, f) == TriState::Zero);

    // a zero column becomes a kernel vector on its own: {H, p_y} = 0 on g0
    DimensionResult lin = integral_space_dimension(g0(), 1, box(0, 0, 0, 0));
    REQUIRE(lin.dimension == 1);
    CHECK(is_zero(lin.basis[0].coeffs()[0]));
    CHECK(is_zero(lin.basis[0].coeffs()[1] - P("1")));
}

TEST_CASE("parameters in the entries are matched like coordinates") {
    std::set<std::string> names{"x", "y", "b"};
    auto Q = [&](const std::string& s) { return parse_expression(s, names); };
    Metric m("x", "y", Q("b"), Q("0"), Q("b"));
    CHECK(integral_space_dimension(m, 1, box(0, 1, 0, 1)).dimension == 3);
}

TEST_CASE("results are deterministic") {
    Metric m = g0();
    DimensionResult a = integral_space_dimension(m, 2, box(-1, 1, 0, 2));
    DimensionResult b = integral_space_dimension(m, 2, box(-1, 1, 0, 2));
    REQUIRE(a.basis.size() == b.basis.size());
    for (std::size_t i = 0; i < a.basis.size(); ++i)
        CHECK(to_string(a.basis[i]) == to_string(b.basis[i]));
}

TEST_CASE("oracle input validation") {
    Metric m = flat();
    CHECK_THROWS_AS(integral_space_dimension(m, 0, box(0, 1, 0, 1)), std::invalid_argument);
    CHECK_THROWS_AS(integral_space_dimension(m, 1, box(2, 1, 0, 1)), std::invalid_argument);
    AnsatzSpec capped = box(0, 3, 0, 3);
    capped.max_unknowns = 5;
    CHECK_THROWS_AS(integral_space_dimension(m, 2, capped), std::invalid_argument);
    Metric curved("x", "y", ex_exp(P("x")), P("0"), ex_exp(P("x")));
    CHECK_THROWS_AS(integral_space_dimension(curved, 1, box(0, 1, 0, 1)), std::domain_error);
}
