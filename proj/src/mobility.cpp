#include "liouville/mobility.hpp"

#include <utility>

#include "liouville/invariants.hpp"

namespace liouville {

namespace {

std::string step_note(const ZeroReport& r) {
    if (r.verdict == TriState::Nonzero && r.witness) {
        std::string out = "nonzero at";
        for (const auto& [var, val] : r.witness->point)
            out += " " + var + "=" + rat_to_string(val);
        return out;
    }
    return r.note;
}

// runs one zero test and records it in the trace
TriState step(MobilityReport& rep, const std::string& name, Expr e) {
    ZeroReport r = test_zero(e, rep.policy);
    rep.trace.push_back({name, r.verdict, r.certain, step_note(r)});
    return r.verdict;
}

MobilityReport& inconclusive(MobilityReport& rep) {
    rep.note = "inconclusive: " + rep.trace.back().condition + " undecided";
    return rep;
}

MobilityReport& finish(MobilityReport& rep) {
    for (const auto& s : rep.trace)
        if (!s.certain) {
            rep.note = "some verdicts rest on sampling; raise samples to harden";
            return rep;
        }
    rep.note = "all verdicts certain";
    return rep;
}

} // namespace

int killing_dimension(const Metric& g, const ZeroPolicy& policy) {
    InvariantFrame f = invariant_frame(g, 5);
    if (is_zero(f.at("I3"), policy)) return 3;
    if (!is_zero(f.at("I4b"), policy)) return 0;
    return is_zero(f.at("I5d"), policy) ? 1 : 0;
}

int killing_dimension(const Metric& g) { return killing_dimension(g, g.policy()); }

MobilityReport classify(const Metric& g, const ZeroPolicy& policy) {
    MobilityReport rep;
    rep.policy = policy;

    InvariantFrame low = invariant_frame(g, 3);
    TriState i3 = step(rep, "I3", low.at("I3"));
    if (i3 == TriState::Undecided) return inconclusive(rep);
    if (i3 == TriState::Zero) {  // constant curvature: the full symmetry algebra
        rep.dim_J1 = 3;
        rep.dim_J2 = 6;
        return finish(rep);
    }

    InvariantFrame mid = invariant_frame(g, 5);
    TriState i4b = step(rep, "I4b", mid.at("I4b"));
    if (i4b == TriState::Undecided) return inconclusive(rep);

    if (i4b == TriState::Zero) {
        TriState i5d = step(rep, "I5d", mid.at("I5d"));
        if (i5d == TriState::Undecided) return inconclusive(rep);
        rep.dim_J1 = i5d == TriState::Zero ? 1 : 0;

        DerivedJ j = derived_j(mid);
        TriState j5 = step(rep, "J5", j.J5);
        if (j5 == TriState::Undecided) return inconclusive(rep);
        if (j5 == TriState::Zero) {
            TriState j4 = step(rep, "J4", j.J4);
            if (j4 == TriState::Undecided) return inconclusive(rep);
            if (j4 == TriState::Zero) {
                rep.dim_J2 = 4;
                return finish(rep);
            }
        }
        rep.dim_J2 = rep.dim_J1 == 1 ? 2 : 1;
        return finish(rep);
    }

    rep.dim_J1 = 0;
    InvariantFrame full = invariant_frame(g, 7);
    DerivedInvariants d = derived_invariants(full);

    const std::pair<const char*, Expr> defects[] = {
        {"V1.re", d.V1.re}, {"V1.im", d.V1.im}, {"V2.re", d.V2.re}, {"V2.im", d.V2.im},
        {"V3.re", d.V3.re}, {"V3.im", d.V3.im}, {"V4.re", d.V4.re}, {"V4.im", d.V4.im},
    };
    bool defects_vanish = true;
    for (const auto& [name, e] : defects) {
        TriState t = step(rep, name, e);
        if (t == TriState::Undecided) return inconclusive(rep);
        if (t == TriState::Nonzero) {
            defects_vanish = false;
            break;
        }
    }
    if (defects_vanish) {
        rep.dim_J2 = 3;
        return finish(rep);
    }

    QuadraticRelations q = quadratic_relations(d);
    const std::pair<const char*, Expr> relations[] = {
        {"normAB", q.modulus_balance},
        {"cross1.re", q.cross1.re},
        {"cross1.im", q.cross1.im},
        {"cross2.re", q.cross2.re},
        {"cross2.im", q.cross2.im},
    };
    bool liouville = true;
    for (const auto& [name, e] : relations) {
        TriState t = step(rep, name, e);
        if (t == TriState::Undecided) return inconclusive(rep);
        if (t == TriState::Nonzero) {
            liouville = false;
            break;
        }
    }
    rep.dim_J2 = liouville ? 2 : 1;
    return finish(rep);
}

MobilityReport classify(const Metric& g) { return classify(g, g.policy()); }

std::string to_string(const MobilityReport& report) {
    auto verdict_text = [](TriState t) {
        switch (t) {
            case TriState::Zero: return "zero";
            case TriState::Nonzero: return "nonzero";
            default: return "undecided";
        }
    };
    std::string out;
    out += "dim_J1 " + std::to_string(report.dim_J1) + "\n";
    out += "dim_J2 " + std::to_string(report.dim_J2) + "\n";
    out += std::string("conclusive ") + (report.conclusive() ? "yes" : "no") + "\n";
    out += "note " + report.note + "\n";
    for (const auto& s : report.trace) {
        out += "test " + s.condition + " " + verdict_text(s.verdict) + " " +
               (s.certain ? "certain" : "sampled");
        if (!s.note.empty()) out += " " + s.note;
        out += "\n";
    }
    return out;
}

} // namespace liouville
