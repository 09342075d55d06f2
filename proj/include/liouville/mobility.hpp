#pragma once

#include <string>
#include <vector>

#include "liouville/metric.hpp"
#include "liouville/zero_test.hpp"

namespace liouville {

struct BranchStep {
    std::string condition;  // the invariant tested, e.g. "I4b" or "cross1.re"
    TriState verdict = TriState::Undecided;
    bool certain = false;
    std::string note;  // witness point for Nonzero, or how Zero was decided
};

// the pair (dim of linear integrals, dim of quadratic integrals) together
// with the ordered trace of the conditions that led there
struct MobilityReport {
    int dim_J1 = -1;  // -1 until decided
    int dim_J2 = -1;
    std::vector<BranchStep> trace;
    ZeroPolicy policy;
    std::string note;
    bool conclusive() const { return dim_J1 >= 0 && dim_J2 >= 0; }
};

// 3 when the curvature is constant, 1 when exactly one Killing field
// survives, else 0; throws ZeroUndecided when a test cannot be decided
int killing_dimension(const Metric& g, const ZeroPolicy& policy);
int killing_dimension(const Metric& g);  // uses g.policy()

// walks the decision tree for (dim_J1, dim_J2); dim_J1 lands in {0,1,3} and
// dim_J2 in {1,2,3,4,6}, with dim_J1 = 3 exactly on the space forms
// (dim_J2 = 6) and dim_J2 even whenever dim_J1 = 1. A test that comes back
// Undecided stops the walk and leaves an inconclusive report with the
// partial trace instead of guessing.
MobilityReport classify(const Metric& g, const ZeroPolicy& policy);
MobilityReport classify(const Metric& g);  // uses g.policy()

std::string to_string(const MobilityReport& report);

} // namespace liouville
