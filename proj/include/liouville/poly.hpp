#pragma once

#include <map>
#include <optional>
#include <vector>

#include "liouville/expr.hpp"

namespace liouville {

// Sparse multivariate polynomial over Q(i). Monomials are exponent vectors of
// fixed length nvars, ordered lexicographically (variable 0 is the outermost
// recursion variable for gcd and division).

using Monomial = std::vector<int32_t>;

class Poly {
public:
    Poly() : nvars_(0) {}
    explicit Poly(int nvars) : nvars_(nvars) {}

    static Poly constant(int nvars, GaussRational c);
    static Poly gen(int nvars, int index, int32_t exponent = 1);

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    const GaussRational& constant_value() const;  // requires is_constant
    const std::map<Monomial, GaussRational>& terms() const { return terms_; }

    int32_t degree(int var) const;
    int32_t total_degree() const;

    void add_term(const Monomial& m, const GaussRational& c);

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly operator-() const;
    Poly scaled(const GaussRational& c) const;
    Poly pow(long n) const;
    Poly derivative(int var) const;
    // multiply by a single monomial (exponents may not drive any term negative)
    Poly shifted(const Monomial& m) const;

    friend bool operator==(const Poly& a, const Poly& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

    // leading term in lex order
    const std::pair<const Monomial, GaussRational>& leading() const;

private:
    int nvars_;
    std::map<Monomial, GaussRational> terms_;
};

Poly poly_gcd(const Poly& a, const Poly& b);
std::optional<Poly> divide_exact(const Poly& num, const Poly& den);
// exact square root up to sign; the returned root is normalized so its lex
// leading coefficient has positive real part (or positive imaginary part if
// the real part is zero)
std::optional<Poly> poly_sqrt(const Poly& p);

// ---- rational functions ----

struct RatFun {
    Poly num, den;
};

RatFun rf_normalize(Poly num, Poly den);  // reduce by gcd, make den lex-monic
// the arithmetic operators expect reduced operands and return reduced results
RatFun rf_add(const RatFun& a, const RatFun& b);
RatFun rf_sub(const RatFun& a, const RatFun& b);
RatFun rf_mul(const RatFun& a, const RatFun& b);
RatFun rf_div(const RatFun& a, const RatFun& b);
RatFun rf_pow(const RatFun& a, long n);
bool rf_equal(const RatFun& a, const RatFun& b);

// ---- bridge to expressions ----

// generators: the Var nodes and the transcendental atoms of an expression,
// each treated as an opaque symbol
struct PolyRing {
    std::vector<Expr> gens;
    std::map<uint32_t, int> index;

    static PolyRing spanning(const std::vector<Expr>& roots);
    int size() const { return (int)gens.size(); }
    int gen_index(Expr e) const;  // -1 when absent
};

RatFun expr_to_ratfun(Expr e, const PolyRing& ring);
Expr poly_to_expr(const Poly& p, const PolyRing& ring);
Expr ratfun_to_expr(const RatFun& f, const PolyRing& ring);

// canonical rational form over the expression's own variables and atoms;
// atom arguments are simplified recursively first
Expr simplify(Expr e);

// true when the canonical numerator vanishes identically; a certificate of
// zero for rational expressions (atoms are treated as independent symbols,
// so Zero is sound but Nonzero is not certain for transcendental input)
bool canonical_form_is_zero(Expr e);

} // namespace liouville
