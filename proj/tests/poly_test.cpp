#include <catch2/catch_amalgamated.hpp>

#include "liouville/parser.hpp"
#include "liouville/poly.hpp"

using namespace liouville;

namespace {

const std::set<std::string> kXY{"x", "y", "z"};

Expr P(const std::string& s) { return parse_expression(s, kXY); }

Poly PP(const std::string& s, const PolyRing& ring) {
    RatFun f = expr_to_ratfun(P(s), ring);
    REQUIRE(f.den.is_constant());
    REQUIRE(f.den.constant_value().is_one());
    return f.num;
}

PolyRing ring_xy() { return PolyRing::spanning({P("x*y*z")}); }

} // namespace

TEST_CASE("polynomial arithmetic basics") {
    PolyRing ring = ring_xy();
    Poly a = PP("x^2 + 2*x*y + y^2", ring);
    Poly b = PP("(x + y)^2", ring);
    CHECK(a == b);
    CHECK(a.degree(0) == 2);
    CHECK(a.total_degree() == 2);
    CHECK((a - b).is_zero());
    CHECK(PP("x + 1", ring) * PP("x - 1", ring) == PP("x^2 - 1", ring));
    CHECK(PP("x*y", ring).pow(3) == PP("x^3*y^3", ring));
    CHECK(PP("x^3*y", ring).derivative(0) == PP("3*x^2*y", ring));
}

TEST_CASE("exact division") {
    PolyRing ring = ring_xy();
    auto q = divide_exact(PP("x^2 - y^2", ring), PP("x - y", ring));
    REQUIRE(q);
    CHECK(*q == PP("x + y", ring));
    CHECK_FALSE(divide_exact(PP("x^2 + y", ring), PP("x - y", ring)));
    auto c = divide_exact(PP("3*x", ring), PP("3", ring));
    REQUIRE(c);
    CHECK(*c == PP("x", ring));
}

TEST_CASE("multivariate gcd") {
    PolyRing ring = ring_xy();
    Poly g = poly_gcd(PP("(x + y)^2*(x - y)", ring), PP("(x + y)*(x + 2*y)", ring));
    CHECK(g == PP("x + y", ring));
    CHECK(poly_gcd(PP("x^2 + 1", ring), PP("x^2 - 1", ring)).is_constant());
    // content is pulled across variables
    Poly g2 = poly_gcd(PP("x^2*y + x^2*z", ring), PP("x*y^2 + x*y*z", ring));
    CHECK(g2 == PP("x*y + x*z", ring));
    // gcd over Q(i): x^2+y^2 = (x+iy)(x-iy)
    Poly g3 = poly_gcd(PP("x^2 + y^2", ring), PP("x + i*y", ring));
    CHECK(g3 == PP("x + i*y", ring));
}

TEST_CASE("polynomial square roots") {
    PolyRing ring = ring_xy();
    auto s1 = poly_sqrt(PP("(x + y)^2", ring));
    REQUIRE(s1);
    CHECK(*s1 == PP("x + y", ring));
    auto s2 = poly_sqrt(PP("x^4", ring));
    REQUIRE(s2);
    CHECK(*s2 == PP("x^2", ring));
    auto s3 = poly_sqrt(PP("4*x^2*y^4*(x + 1)^2", ring));
    REQUIRE(s3);
    CHECK(*s3 == PP("2*x*y^2*(x + 1)", ring));
    auto s4 = poly_sqrt(PP("9/4", ring));
    REQUIRE(s4);
    CHECK(*s4 == PP("3/2", ring));
    CHECK_FALSE(poly_sqrt(PP("x", ring)));
    CHECK_FALSE(poly_sqrt(PP("x^2 + 1", ring)));
    CHECK_FALSE(poly_sqrt(PP("2*x^2", ring)));
    CHECK_FALSE(poly_sqrt(PP("-x^2", ring)));
    // root sign is normalized to a positive leading coefficient
    auto s5 = poly_sqrt(PP("(1 - x)^2", ring));
    REQUIRE(s5);
    CHECK(*s5 == PP("x - 1", ring));
}

TEST_CASE("rational function canonicalization") {
    PolyRing ring = ring_xy();
    RatFun f = rf_normalize(PP("x^2 - y^2", ring), PP("x - y", ring));
    CHECK(f.num == PP("x + y", ring));
    CHECK(f.den == PP("1", ring));
    // denominator is made monic
    RatFun g = rf_normalize(PP("y", ring), PP("2*x", ring));
    CHECK(g.den == PP("x", ring));
    CHECK(g.num == PP("y/2", ring));
    // the same value by two routes lands on the same representation
    RatFun a = rf_add(rf_normalize(PP("1", ring), PP("x", ring)),
                      rf_normalize(PP("1", ring), PP("y", ring)));
    RatFun b = rf_normalize(PP("x + y", ring), PP("x*y", ring));
    CHECK(rf_equal(a, b));
    CHECK_THROWS_AS(rf_normalize(PP("1", ring), PP("0", ring)), std::domain_error);
}

TEST_CASE("expression simplification") {
    CHECK(simplify(P("(x + y)^2 - x^2 - 2*x*y - y^2")) == ex_number(0));
    CHECK(simplify(P("1/x + 1/y")) == P("(x + y)/(x*y)"));
    CHECK(simplify(P("(x^2 - y^2)/(x - y)")) == P("x + y"));
    // atom arguments are canonicalized too
    CHECK(simplify(P("exp(x + x)")) == P("exp(2*x)"));
    CHECK(simplify(P("sin((x^2 - y^2)/(x - y))")) == P("sin(x + y)"));
    // transcendental atoms are opaque: no trig identities are applied
    Expr t = P("sin(x)^2 + cos(x)^2 - 1");
    CHECK(simplify(t) != ex_number(0));
}

TEST_CASE("canonical zero detection") {
    CHECK(canonical_form_is_zero(P("(x + y)*(x - y) - x^2 + y^2")));
    CHECK(canonical_form_is_zero(P("exp(x)*exp(x) - exp(x)^2")));
    CHECK_FALSE(canonical_form_is_zero(P("x + y")));
    // sound in one direction only: this vanishes as a function but the
    // canonical form over independent atoms does not see it
    CHECK_FALSE(canonical_form_is_zero(P("sin(x)^2 + cos(x)^2 - 1")));
}
