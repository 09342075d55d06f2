#include "liouville/invariants.hpp"

#include <sstream>
#include <stdexcept>

#include "liouville/formula_table.hpp"

namespace liouville {
namespace {

// number of skew slots encoded in the invariant name ("I5c" -> 2)
int skew_slots(const std::string& name) {
    return name.size() > 2 ? name[2] - 'a' : 0;
}

GaussRational i_power(long t) {
    switch (((t % 4) + 4) % 4) {
        case 0: return GaussRational(1);
        case 1: return GaussRational::unit_im();
        case 2: return GaussRational(-1);
        default: return GaussRational(Rational(0), Rational(-1));
    }
}

VectorField lie_bracket(const Metric& g, const VectorField& a, const VectorField& b) {
    auto along = [&](Expr h, const VectorField& v) {
        return v.vx * g.partial(h, 0) + v.vy * g.partial(h, 1);
    };
    return {along(b.vx, a) - along(a.vx, b), along(b.vy, a) - along(a.vy, b)};
}

std::string witness_string(const ZeroReport& r) {
    if (!r.witness) return "";
    std::ostringstream os;
    os << " at";
    for (const auto& [var, q] : r.witness->point) os << " " << var << "=" << rat_to_string(q);
    os << " value " << r.witness->value;
    return os.str();
}

} // namespace

Expr InvariantFrame::at(const std::string& name) const {
    auto it = I.find(name);
    if (it == I.end())
        throw std::out_of_range("invariant " + name + " not computed (frame order " +
                                std::to_string(max_order) + ")");
    return it->second;
}

InvariantFrame invariant_frame(const Metric& g, int max_order) {
    if (max_order < 2 || max_order > 7)
        throw std::invalid_argument("frame order must be between 2 and 7");
    InvariantFrame f{g, max_order};
    f.K = gauss_curvature(g);
    f.gradK = grad(g, f.K);
    f.sgradK = sgrad(g, f.K);
    f.dK.resize(max_order - 1);
    f.dK[0].valence = 0;
    f.dK[0].comp = {f.K};
    for (int l = 1; l <= max_order - 2; ++l) f.dK[l] = covariant_derivative(g, f.dK[l - 1]);

    f.I["I2"] = f.K;
    if (max_order >= 3) f.I["I3"] = inner(g, f.gradK, f.gradK);
    for (int order = 4; order <= max_order; ++order) {
        int l = order - 2;
        for (int j = 0; j <= l; ++j) {
            std::vector<VectorField> args(l - j, f.gradK);
            args.insert(args.end(), j, f.sgradK);
            f.I["I" + std::to_string(order) + char('a' + j)] = contract(f.dK[l], args);
        }
    }
    return f;
}

Expr invariant_derivative(const InvariantFrame& f, int direction, Expr e) {
    if (direction != 1 && direction != 2)
        throw std::invalid_argument("direction is 1 (gradK) or 2 (sgradK)");
    const VectorField& v = direction == 1 ? f.gradK : f.sgradK;
    return v.vx * f.metric.partial(e, 0) + v.vy * f.metric.partial(e, 1);
}

bool IdentityReport::all_zero() const {
    if (degenerate) return false;
    for (const auto& c : checks)
        if (c.verdict != TriState::Zero) return false;
    return !checks.empty();
}

IdentityReport identity_suite(const InvariantFrame& f, const ZeroPolicy& policy) {
    if (f.max_order < 5)
        throw std::invalid_argument("identity suite needs a frame of order >= 5");
    IdentityReport rep;
    Expr i3 = f.at("I3");
    ZeroReport flatness = test_zero(i3, policy);
    if (flatness.verdict == TriState::Zero) {
        rep.degenerate = true;
        return rep;
    }

    Expr i2 = f.at("I2");
    Expr i4a = f.at("I4a"), i4b = f.at("I4b"), i4c = f.at("I4c");
    Expr i5a = f.at("I5a"), i5b = f.at("I5b"), i5c = f.at("I5c"), i5d = f.at("I5d");
    Expr two = ex_number(2);
    auto d1 = [&](Expr e) { return invariant_derivative(f, 1, e); };
    auto d2 = [&](Expr e) { return invariant_derivative(f, 2, e); };

    std::vector<std::pair<std::string, Expr>> ids;
    ids.emplace_back("D1(I2) = I3", d1(i2) - i3);
    ids.emplace_back("D2(I2) = 0", d2(i2));
    ids.emplace_back("D1(I3) = 2*I4a", d1(i3) - two * i4a);
    ids.emplace_back("D2(I3) = 2*I4b", d2(i3) - two * i4b);
    ids.emplace_back("I3*D1(I4a) = I3*I5a + 2*(I4a^2+I4b^2)",
                     i3 * d1(i4a) - i3 * i5a - two * (i4a * i4a + i4b * i4b));
    ids.emplace_back("I3*D2(I4a) = I3*I5b + 2*I4b*(I4a+I4c)",
                     i3 * d2(i4a) - i3 * i5b - two * i4b * (i4a + i4c));
    ids.emplace_back("I3*D1(I4b) = I3*I5b + I4b*(I4a+I4c)",
                     i3 * d1(i4b) - i3 * i5b - i4b * (i4a + i4c));
    ids.emplace_back("I3*D2(I4b) = I3*I5c + I4c^2 - I4a*I4c + 2*I4b^2 + I2*I3^3",
                     i3 * d2(i4b) - i3 * i5c - (i4c * i4c - i4a * i4c + two * i4b * i4b) -
                         i2 * ex_pow(i3, 3));
    ids.emplace_back("I3*D1(I4c) = I3*I5c + 2*(I4a*I4c-I4b^2)",
                     i3 * d1(i4c) - i3 * i5c - two * (i4a * i4c - i4b * i4b));
    ids.emplace_back("D2(I4c) = I5d", d2(i4c) - i5d);

    VectorField br = lie_bracket(f.metric, f.gradK, f.sgradK);
    ids.emplace_back("I3*[gradK,sgradK]^x = -2*I4b*gradK^x + (I4a-I4c)*sgradK^x",
                     i3 * br.vx + two * i4b * f.gradK.vx - (i4a - i4c) * f.sgradK.vx);
    ids.emplace_back("I3*[gradK,sgradK]^y = -2*I4b*gradK^y + (I4a-I4c)*sgradK^y",
                     i3 * br.vy + two * i4b * f.gradK.vy - (i4a - i4c) * f.sgradK.vy);

    for (auto& [name, e] : ids) {
        ZeroReport zr = test_zero(e, policy);
        IdentityCheck c;
        c.name = name;
        c.verdict = zr.verdict;
        c.certain = zr.certain;
        c.note = zr.note;
        if (zr.verdict == TriState::Nonzero) c.note += witness_string(zr);
        rep.checks.push_back(std::move(c));
    }
    return rep;
}

ComplexExpr cadd(const ComplexExpr& a, const ComplexExpr& b) {
    return {a.re + b.re, a.im + b.im};
}

ComplexExpr csub(const ComplexExpr& a, const ComplexExpr& b) {
    return {a.re - b.re, a.im - b.im};
}

ComplexExpr cmul(const ComplexExpr& a, const ComplexExpr& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

Expr cnorm2(const ComplexExpr& a) { return a.re * a.re + a.im * a.im; }

ComplexExpr eval_formula(const std::string& formula_name,
                         const std::map<std::string, Expr>& values, SlotConvention conv) {
    const Formula& f = builtin_formula(formula_name);
    std::vector<Expr> re_terms, im_terms;
    for (const auto& term : f.terms) {
        std::vector<Expr> factors;
        long rot = 0;
        for (const auto& [sym, e] : term.powers) {
            auto it = values.find(sym);
            if (it == values.end())
                throw FormulaError(formula_name + " needs a value for " + sym);
            factors.push_back(e == 1 ? it->second : ex_pow(it->second, e));
            if (conv == SlotConvention::rotated && skew_slots(sym) % 2 == 1)
                rot += static_cast<long>(skew_slots(sym)) * e;
        }
        Expr mono = ex_mul(std::move(factors));
        GaussRational c = term.coeff * i_power(rot);
        if (c.re != 0) re_terms.push_back(ex_number(GaussRational(c.re)) * mono);
        if (c.im != 0) im_terms.push_back(ex_number(GaussRational(c.im)) * mono);
    }
    return {ex_add(std::move(re_terms)), ex_add(std::move(im_terms))};
}

DerivedJ derived_j(const InvariantFrame& f) {
    if (f.max_order < 5)
        throw std::invalid_argument("J invariants need a frame of order >= 5");
    Expr i2 = f.at("I2"), i3 = f.at("I3");
    Expr i4a = f.at("I4a"), i4c = f.at("I4c");
    Expr i5a = f.at("I5a"), i5c = f.at("I5c");
    DerivedJ j;
    j.J5 = ex_number(5) * i3 * (i5a - i5c) +
           (i4a - i4c) * (i4c - ex_number(6) * i4a) -
           ex_number(25) * i2 * ex_pow(i3, 3);
    j.J4 = ex_number(3) * (i4a - i4c) * (i4a + ex_number(4) * i4c) * i4c -
           ex_number(15) * i2 * ex_pow(i3, 3) * (i4a + ex_number(4) * i4c) +
           ex_number(25) * ex_pow(i3, 5);
    return j;
}

DerivedInvariants derived_invariants(const InvariantFrame& f, SlotConvention conv) {
    if (f.max_order < 7)
        throw std::invalid_argument("derived invariants need a frame of order 7");
    DerivedInvariants d;
    DerivedJ j = derived_j(f);
    d.J4 = j.J4;
    d.J5 = j.J5;

    d.V1 = eval_formula("i6a_rel", f.I, conv);
    d.V2 = eval_formula("i6b_rel", f.I, conv);
    d.V3 = eval_formula("i6c_rel", f.I, conv);
    d.V4 = eval_formula("i6d_rel", f.I, conv);
    ComplexExpr i_unit{ex_number(0), ex_number(1)};
    d.A = cadd(cadd(d.V2, d.V4), cmul(i_unit, cadd(d.V1, d.V3)));
    ComplexExpr three{ex_number(3), ex_number(0)};
    d.B = cadd(csub(cmul(three, d.V2), d.V4), cmul(i_unit, csub(cmul(three, d.V3), d.V1)));

    d.Jfrak1 = eval_formula("jfrak1", f.I, conv);
    d.Jfrak2 = eval_formula("jfrak2", f.I, conv);
    d.Jfrak3 = eval_formula("jfrak3", f.I, conv);
    d.Jfrak4 = eval_formula("jfrak4", f.I, conv);
    return d;
}

QuadraticRelations quadratic_relations(const DerivedInvariants& d) {
    QuadraticRelations q;
    q.modulus_balance = cnorm2(d.A) - cnorm2(d.B);
    q.cross1 = csub(cmul(d.B, d.Jfrak1), cmul(d.A, d.Jfrak2));
    q.cross2 = csub(cmul(d.A, d.Jfrak3), cmul(d.B, d.Jfrak4));
    return q;
}

} // namespace liouville
