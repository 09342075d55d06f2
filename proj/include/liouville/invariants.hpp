#pragma once

#include <map>
#include <string>
#include <vector>

#include "liouville/metric.hpp"

namespace liouville {

// curvature, its gradient frame, the iterated covariant differentials and
// the scalar contractions I2..I7f. The name encodes (order, skew slots):
// I<order><letter> is the order-(2+l) differential d^l K contracted with
// grad K in the first l-j slots and sgrad K in the last j, letter = 'a'+j.
struct InvariantFrame {
    Metric metric;
    int max_order = 7;
    Expr K;
    VectorField gradK, sgradK;
    std::vector<CovTensor> dK;      // dK[l], l = 0 .. max_order-2
    std::map<std::string, Expr> I;  // "I2", "I3", "I4a", ... "I7f"

    Expr at(const std::string& name) const;
};

InvariantFrame invariant_frame(const Metric& g, int max_order = 7);

// Lie derivative of a scalar along gradK (direction 1) or sgradK (direction 2)
Expr invariant_derivative(const InvariantFrame& f, int direction, Expr e);

struct IdentityCheck {
    std::string name;
    TriState verdict = TriState::Undecided;
    bool certain = false;
    std::string note;
};

// differential identities tying the derivatives of low-order invariants to
// the next order, plus the frame commutator expressed in the frame itself;
// they hold for every metric and calibrate slot order and sign conventions
struct IdentityReport {
    bool degenerate = false;  // constant curvature: the frame collapses
    std::vector<IdentityCheck> checks;
    bool all_zero() const;
};

IdentityReport identity_suite(const InvariantFrame& f, const ZeroPolicy& policy);

// pair of real expressions standing for re + i*im
struct ComplexExpr {
    Expr re, im;
};

ComplexExpr cadd(const ComplexExpr& a, const ComplexExpr& b);
ComplexExpr csub(const ComplexExpr& a, const ComplexExpr& b);
ComplexExpr cmul(const ComplexExpr& a, const ComplexExpr& b);
Expr cnorm2(const ComplexExpr& a);  // re^2 + im^2

// how real frame invariants enter the complexified formula table: either
// directly, or with sgrad slots rotated by i (I_j -> i^j I_j for odd j).
// The calibration test against a generic integrable metric fixes the choice.
enum class SlotConvention { direct, rotated };
inline constexpr SlotConvention kFormulaConvention = SlotConvention::direct;

// the two order-5 obstruction polynomials; they need a frame of order >= 5
struct DerivedJ {
    Expr J4, J5;
};

DerivedJ derived_j(const InvariantFrame& f);

struct DerivedInvariants {
    Expr J4, J5;
    // order-6 relation defects, cleared of the common 175*I3^2*I4b denominator
    ComplexExpr V1, V2, V3, V4;
    ComplexExpr A, B;  // A = (V2+V4) + i(V1+V3), B = (3V2-V4) + i(3V3-V1)
    ComplexExpr Jfrak1, Jfrak2, Jfrak3, Jfrak4;  // order-7 invariants
};

// requires a frame of order 7; V's and Jfrak's are undefined where I3 or
// I4b vanish identically -- callers branch on those before using them
DerivedInvariants derived_invariants(const InvariantFrame& f,
                                     SlotConvention conv = kFormulaConvention);

// the three relations whose simultaneous vanishing (given I3 != 0, I4b != 0
// and not all V's zero) marks exactly two quadratic integrals
struct QuadraticRelations {
    Expr modulus_balance;        // |A|^2 - |B|^2
    ComplexExpr cross1, cross2;  // B*Jfrak1 - A*Jfrak2, A*Jfrak3 - B*Jfrak4
};

QuadraticRelations quadratic_relations(const DerivedInvariants& d);

// substitute real expressions for the symbols of a named formula table entry
ComplexExpr eval_formula(const std::string& formula_name,
                         const std::map<std::string, Expr>& values,
                         SlotConvention conv = kFormulaConvention);

} // namespace liouville
