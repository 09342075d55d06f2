#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "liouville/expr.hpp"

namespace liouville {

struct FormulaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FormulaTerm {
    GaussRational coeff;
    std::vector<std::pair<std::string, int>> powers;  // sorted by symbol
};

// polynomial in named symbols with Gaussian-rational coefficients, loaded
// from the plain-text table format documented in the data file headers:
// one term per line, "RE IM FACTOR..." with FACTOR = name or name^exp
struct Formula {
    std::string name;
    std::vector<FormulaTerm> terms;

    int term_count() const { return static_cast<int>(terms.size()); }
    int total_degree() const;
    int imag_term_count() const;
    std::vector<std::string> symbols() const;
    // order-independent FNV-1a digest of coefficients and monomials; the
    // expected values are frozen in the test suite to catch silent edits
    uint64_t structural_hash() const;
};

Formula load_formula(const std::string& path, const std::string& name);

// table shipped with the library (directory fixed at build time), cached
const Formula& builtin_formula(const std::string& name);

} // namespace liouville
