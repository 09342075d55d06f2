#pragma once

#include <vector>

#include "liouville/metric.hpp"
#include "liouville/momenta.hpp"

namespace liouville {

// Monomial box for the coefficients of a degree-n integral ansatz: every
// momentum coefficient ranges over span{ x^a y^b : x_lo <= a <= x_hi,
// y_lo <= b <= y_hi }. Negative lower bounds admit Laurent monomials.
struct AnsatzSpec {
    int x_lo = 0;
    int x_hi = 3;
    int y_lo = 0;
    int y_hi = 3;
    int max_unknowns = 2000;
};

struct DimensionResult {
    int dimension = 0;  // kernel dimension; a lower bound on the integral space
    std::vector<MomentaPolynomial> basis;
    int unknowns = 0;   // columns of the constraint matrix
    int equations = 0;  // rows assembled before elimination
    int rank = 0;
};

// Brute force over the ansatz: expands {H, F} = 0, clears each momentum row
// of denominators, matches coefficients of every coordinate monomial and runs
// exact elimination. Works for any metric whose entries are rational in the
// coordinates; entries with transcendental atoms are refused. Parameters in
// the entries are treated as independent symbols, so with parameters present
// the result is the dimension of integrals uniform in those parameters.
// Every basis vector is re-verified with is_first_integral before return.
DimensionResult integral_space_dimension(const Metric& g, int n, const AnsatzSpec& spec);

} // namespace liouville
