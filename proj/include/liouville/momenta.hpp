#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "liouville/metric.hpp"
#include "liouville/zero_test.hpp"

namespace liouville {

// Homogeneous polynomial in the fibre momenta over closed-form coefficients:
//   F = sum_j coeffs()[j] * p_x^(n-j) * p_y^j,   n = degree().
// The zero polynomial keeps its degree so sums and brackets stay graded.
class MomentaPolynomial {
public:
    // the zero polynomial of the given degree
    MomentaPolynomial(std::string xname, std::string yname, int degree);
    // coefficients listed by p_y-exponent; the degree is coeffs.size() - 1
    MomentaPolynomial(std::string xname, std::string yname, std::vector<Expr> coeffs);

    const std::string& xname() const { return x_; }
    const std::string& yname() const { return y_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Expr>& coeffs() const { return c_; }
    // the coefficient of p_x^i p_y^j; requires i + j == degree
    Expr coeff(int i, int j) const;

private:
    std::string x_, y_;
    std::vector<Expr> c_;
};

MomentaPolynomial operator+(const MomentaPolynomial& a, const MomentaPolynomial& b);
MomentaPolynomial operator-(const MomentaPolynomial& a, const MomentaPolynomial& b);
MomentaPolynomial operator*(const MomentaPolynomial& a, const MomentaPolynomial& b);
MomentaPolynomial operator*(Expr s, const MomentaPolynomial& f);
MomentaPolynomial operator-(const MomentaPolynomial& f);

// the cotangent-bundle energy p g^{-1} p written out in the momenta basis
MomentaPolynomial hamiltonian(const Metric& g);

// canonical bracket sum_k dF/dp_k dG/dx_k - dF/dx_k dG/dp_k
MomentaPolynomial poisson_bracket(const MomentaPolynomial& f, const MomentaPolynomial& g);

// Zero when every coefficient of {H, f} vanishes identically, Nonzero when
// some coefficient is certified nonzero, Undecided otherwise
TriState is_first_integral(const Metric& g, const MomentaPolynomial& f, const ZeroPolicy& policy);
TriState is_first_integral(const Metric& g, const MomentaPolynomial& f);  // uses g.policy()

// The linear first-order system cutting out the degree-n integrals of the
// geodesic flow: row i is the coefficient of p_x^(n+1-i) p_y^i in {H, F}.
// Row i acts on a coefficient tuple a (listed by p_y-exponent) as
//   sum_j dx[i][j] d_x a_j + dy[i][j] d_y a_j + c0[i][j] a_j.
struct PdeSystem {
    std::string x, y;
    int degree = 0;
    std::vector<std::vector<Expr>> dx, dy, c0;
    int rows() const { return degree + 2; }
    int cols() const { return degree + 1; }
    Expr apply(int row, const std::vector<Expr>& coeffs) const;
};

// degrees 1 through 4
PdeSystem flow_pde_system(const Metric& g, int n);

// scalar linear differential operator on coefficient tuples; column j maps
// (order in x, order in y) to the factor in front of that derivative of a_j
struct TupleOperator {
    std::string x, y;
    std::vector<std::map<std::pair<int, int>, Expr>> columns;
    Expr apply(const std::vector<Expr>& coeffs) const;
};

// Compatibility operator of the system: the antisymmetrized sum, over all
// matchings of equations to unknown slots, of the composition of one scalar
// operator per slot applied to a leftover full equation. Every solution of
// the system is annihilated; the zero-order remainder after reducing against
// the rows measures the obstruction to solvability. Implemented for degree-1
// systems (three equations in two unknowns).
TupleOperator multi_bracket(const PdeSystem& system);

// one "<i> <j> <coefficient>" line per momentum monomial
std::string to_string(const MomentaPolynomial& f);
MomentaPolynomial parse_momenta_polynomial(const std::string& text, const std::string& xname,
                                           const std::string& yname,
                                           const std::set<std::string>& param_names = {});

} // namespace liouville
