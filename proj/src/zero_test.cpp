#include "liouville/zero_test.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>
#include <vector>

#include "liouville/poly.hpp"

namespace liouville {

namespace {

// ---- deterministic pseudo-random stream (splitmix64) ----

struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        state += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    Rational in_box(const Rational& lo, const Rational& hi) {
        Rational f = Rational((long)(next() & 0xffff)) / 65536;
        return lo + (hi - lo) * f;
    }

    // multiplicative base: nonzero, not +-1
    Rational base() {
        for (;;) {
            long n = 2 + (long)(next() % 61);
            long d = 1 + (long)(next() % 9);
            if (n == d) continue;
            return Rational(n) / Rational(d);
        }
    }

    // additive coordinate: any smallish rational
    Rational additive() {
        long n = (long)(next() % 4001) - 2000;
        return Rational(n) / 128;
    }
};

// ---- sparse rational vectors with incremental elimination ----

using QVec = std::map<long, Rational>;

void qv_addmul(QVec& y, const Rational& c, const QVec& x) {
    if (c == 0) return;
    for (const auto& [k, v] : x) {
        auto it = y.find(k);
        if (it == y.end()) {
            Rational nv = c * v;
            if (nv != 0) y.emplace(k, std::move(nv));
        } else {
            it->second += c * v;
            if (it->second == 0) y.erase(it);
        }
    }
}

// Forward elimination that remembers how each reduced row is written in the
// original (unreduced) vectors, so decompose() can return coordinates of the
// input with respect to the accepted basis.
struct Echelon {
    std::map<long, int> by_lead;
    std::vector<QVec> vecs;    // reduced rows, leading entry 1
    std::vector<QVec> combos;  // the same rows in original-basis coordinates
    int n_basis = 0;

    QVec decompose(QVec v) {
        QVec combo;
        while (!v.empty()) {
            long lead = v.begin()->first;
            auto it = by_lead.find(lead);
            if (it == by_lead.end()) {
                // independent: the input itself becomes basis vector m
                int m = n_basis++;
                Rational s = 1 / v.begin()->second;
                QVec nv, nc;
                for (const auto& [k, c] : v) nv[k] = c * s;
                nc[m] = s;
                qv_addmul(nc, -s, combo);
                by_lead[lead] = (int)vecs.size();
                vecs.push_back(std::move(nv));
                combos.push_back(std::move(nc));
                QVec res;
                res[m] = 1;
                return res;
            }
            Rational c = v.begin()->second;
            qv_addmul(v, -c, vecs[it->second]);
            qv_addmul(combo, c, combos[it->second]);
        }
        return combo;
    }
};

// ---- sampling plan for the transcendental atoms ----

struct FoldPow {
    Expr base;  // evaluate at the sample point
    long n;     // and raise to this power
};

struct TransEntry {
    Op kind;  // Exp, Sin or Cos
    std::vector<std::pair<int, long>> sigma_pow;
    std::vector<FoldPow> folds;
};

struct LogCoord {
    int lambda;
    Rational mult;
};

struct LambdaSource {
    bool fold = false;  // fold: lambda is the value of `arg` at the point
    Expr arg;
};

struct Plan {
    std::vector<std::string> vars;
    std::map<uint32_t, TransEntry> trans;
    std::map<uint32_t, std::vector<LogCoord>> logs;
    int n_sigma = 0;
    std::vector<LambdaSource> lambdas;
    bool ok = true;
    std::string refusal;
};

bool rational_long(const Rational& q, long& out) {
    if (q.get_den() != 1 || !q.get_num().fits_slong_p()) return false;
    out = q.get_num().get_si();
    return true;
}

// ---- logarithm coordinates ----
//
// The value of every log atom is written as a rational combination of
// independent coordinates: one per prime of the numeric content, one per
// variable, one per irreducible-looking polynomial factor. Factors are made
// pairwise coprime by gcd refinement, which captures every multiplicative
// relation between polynomial arguments without factoring. Logs of
// exponentials fold back to the exponent; logs of square roots halve.

struct LogWorld {
    const PolyRing& ring;
    const std::vector<Op>& gen_op;  // Op::Var for plain variables
    Plan& plan;

    std::vector<Poly> factors;     // refined: monic, pairwise coprime, no monomial part
    std::vector<mpz_class> ints;   // pairwise coprime integers > 1
    std::vector<Poly> pool;
    std::vector<mpz_class> int_pool;
    std::map<int, int> gen_lambda;
    std::map<int, int> factor_lambda;
    std::map<mpz_class, int> int_lambda;
    std::map<uint32_t, std::vector<LogCoord>> sqrt_memo;
    std::set<int> trig_factors;

    LogWorld(const PolyRing& r, const std::vector<Op>& ops, Plan& p)
        : ring(r), gen_op(ops), plan(p) {}

    void refuse(const std::string& why) {
        if (plan.ok) {
            plan.ok = false;
            plan.refusal = why;
        }
    }

    int lambda_for_gen(int g) {
        auto it = gen_lambda.find(g);
        if (it != gen_lambda.end()) return it->second;
        LambdaSource src;
        if (gen_op[g] == Op::Exp) {
            src.fold = true;
            src.arg = ex_kids(ring.gens[g]).front();
        } else if (gen_op[g] == Op::Sin || gen_op[g] == Op::Cos) {
            trig_factors.insert(g);
            if (trig_factors.size() > 1) {
                refuse("logarithms of two different trigonometric atoms");
                return 0;
            }
        }
        int id = (int)plan.lambdas.size();
        plan.lambdas.push_back(src);
        gen_lambda[g] = id;
        return id;
    }

    int lambda_for_factor(int f) {
        auto it = factor_lambda.find(f);
        if (it != factor_lambda.end()) return it->second;
        int id = (int)plan.lambdas.size();
        plan.lambdas.push_back({});
        factor_lambda[f] = id;
        return id;
    }

    int lambda_for_int(const mpz_class& n) {
        auto it = int_lambda.find(n);
        if (it != int_lambda.end()) return it->second;
        int id = (int)plan.lambdas.size();
        plan.lambdas.push_back({});
        int_lambda[n] = id;
        return id;
    }

    // split a monic polynomial into (monomial part, remainder without any
    // monomial divisor); the remainder is constant 1 for pure monomials
    static void strip_monomial(const Poly& p, Monomial& mono, Poly& rest) {
        mono.assign(p.nvars(), 0);
        if (p.is_zero()) {
            rest = p;
            return;
        }
        bool first = true;
        for (const auto& [m, c] : p.terms()) {
            (void)c;
            if (first) {
                mono = m;
                first = false;
            } else {
                for (int i = 0; i < p.nvars(); ++i) mono[i] = std::min(mono[i], m[i]);
            }
        }
        Monomial neg(mono.size());
        for (size_t i = 0; i < mono.size(); ++i) neg[i] = -mono[i];
        rest = p.shifted(neg);
    }

    void note_int(const mpz_class& n) {
        if (n > 1) int_pool.push_back(n);
    }

    // phase A: gather polynomial and integer material from one argument
    void gather(const RatFun& rf, int depth, std::set<uint32_t>& seen) {
        if (!plan.ok) return;
        if (depth > 4) {
            refuse("nested radicals inside logarithm arguments");
            return;
        }
        GaussRational content = rf.num.is_zero() ? GaussRational(0) : rf.num.leading().second;
        if (rf.num.is_zero() || !content.is_real() || content.re <= 0) {
            refuse("logarithm argument with a non-positive leading coefficient");
            return;
        }
        note_int(content.re.get_num());
        note_int(content.re.get_den());
        for (int side = 0; side < 2; ++side) {
            Poly p = side == 0 ? rf.num.scaled(GaussRational(1) / content) : rf.den;
            Monomial mono;
            Poly rest;
            strip_monomial(p, mono, rest);
            for (int g = 0; g < (int)mono.size(); ++g) {
                if (mono[g] == 0) continue;
                if (gen_op[g] == Op::Sqrt) {
                    if (seen.insert(ring.gens[g].id()).second) {
                        RatFun arg = expr_to_ratfun(ex_kids(ring.gens[g]).front(), ring);
                        gather(arg, depth + 1, seen);
                    }
                }
            }
            if (!rest.is_constant()) {
                for (const auto& [m, c] : rest.terms()) {
                    (void)c;
                    for (int g = 0; g < (int)m.size(); ++g) {
                        if (m[g] == 0 || gen_op[g] == Op::Var || gen_op[g] == Op::Log) continue;
                        refuse("logarithm of a sum that mixes in exponential, "
                               "trigonometric or radical atoms");
                        return;
                    }
                }
                pool.push_back(rest);
            }
        }
    }

    static void divide_out_all(Poly& p, const Poly& d) {
        for (;;) {
            auto q = divide_exact(p, d);
            if (!q) return;
            p = *q;
        }
    }

    void refine() {
        // integers: pairwise coprime by gcd splitting
        for (mpz_class n : int_pool) {
            std::vector<mpz_class> todo{n};
            while (!todo.empty()) {
                mpz_class q = todo.back();
                todo.pop_back();
                if (q <= 1) continue;
                bool placed = false;
                for (size_t i = 0; i < ints.size(); ++i) {
                    mpz_class g;
                    mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), ints[i].get_mpz_t());
                    if (g == 1) continue;
                    if (g != ints[i]) {
                        mpz_class rest = ints[i] / g;
                        ints[i] = g;
                        todo.push_back(rest);
                    }
                    while (q % g == 0) q /= g;
                    todo.push_back(q);
                    placed = true;
                    break;
                }
                if (!placed && q > 1) ints.push_back(q);
            }
        }
        // polynomials: same splitting with poly_gcd
        for (const Poly& p : pool) {
            if (std::find(factors.begin(), factors.end(), p) == factors.end())
                factors.push_back(p);
        }
        bool changed = true;
        while (changed) {
            changed = false;
            for (size_t i = 0; i < factors.size() && !changed; ++i) {
                for (size_t j = i + 1; j < factors.size() && !changed; ++j) {
                    Poly g = poly_gcd(factors[i], factors[j]);
                    if (g.is_constant()) continue;
                    Poly a = factors[i], b = factors[j];
                    divide_out_all(a, g);
                    divide_out_all(b, g);
                    factors.erase(factors.begin() + j);
                    factors.erase(factors.begin() + i);
                    auto put = [&](const Poly& f) {
                        if (f.is_constant()) return;
                        if (std::find(factors.begin(), factors.end(), f) == factors.end())
                            factors.push_back(f);
                    };
                    put(g);
                    put(a);
                    put(b);
                    changed = true;
                }
            }
        }
    }

    void add_coord(std::vector<LogCoord>& out, int lambda, const Rational& mult) {
        if (!plan.ok || mult == 0) return;
        for (auto& c : out) {
            if (c.lambda == lambda) {
                c.mult += mult;
                return;
            }
        }
        out.push_back({lambda, mult});
    }

    void decompose_int(std::vector<LogCoord>& out, mpz_class n, const Rational& sign) {
        for (const mpz_class& b : ints) {
            long e = 0;
            while (n % b == 0) {
                n /= b;
                ++e;
            }
            if (e) add_coord(out, lambda_for_int(b), sign * e);
        }
        if (n != 1) refuse("integer content escaped its factor basis");
    }

    void decompose(std::vector<LogCoord>& out, const RatFun& rf, const Rational& scale,
                   int depth) {
        if (!plan.ok) return;
        if (depth > 4) {
            refuse("nested radicals inside logarithm arguments");
            return;
        }
        GaussRational content = rf.num.leading().second;
        decompose_int(out, content.re.get_num(), scale);
        decompose_int(out, content.re.get_den(), -scale);
        for (int side = 0; side < 2; ++side) {
            Rational sign = side == 0 ? scale : -scale;
            Poly p = side == 0 ? rf.num.scaled(GaussRational(1) / content) : rf.den;
            Monomial mono;
            Poly rest;
            strip_monomial(p, mono, rest);
            for (int g = 0; g < (int)mono.size() && plan.ok; ++g) {
                if (mono[g] == 0) continue;
                if (gen_op[g] == Op::Sqrt) {
                    // log(sqrt(u)) = log(u)/2
                    uint32_t id = ring.gens[g].id();
                    auto it = sqrt_memo.find(id);
                    if (it == sqrt_memo.end()) {
                        std::vector<LogCoord> inner;
                        RatFun arg = expr_to_ratfun(ex_kids(ring.gens[g]).front(), ring);
                        decompose(inner, arg, Rational(1, 2), depth + 1);
                        it = sqrt_memo.emplace(id, std::move(inner)).first;
                    }
                    for (const auto& c : it->second)
                        add_coord(out, c.lambda, sign * mono[g] * c.mult);
                } else {
                    add_coord(out, lambda_for_gen(g), sign * mono[g]);
                }
            }
            if (!plan.ok) return;
            for (size_t f = 0; f < factors.size(); ++f) {
                long e = 0;
                for (;;) {
                    auto q = divide_exact(rest, factors[f]);
                    if (!q) break;
                    rest = *q;
                    ++e;
                }
                if (e) add_coord(out, lambda_for_factor((int)f), sign * e);
            }
            if (!rest.is_constant())
                refuse("logarithm argument escaped its factor basis");
        }
    }
};

Plan build_plan(Expr e) {
    Plan plan;
    std::set<std::string> vs;
    collect_vars(e, vs);
    plan.vars.assign(vs.begin(), vs.end());
    std::vector<Expr> atoms;
    collect_atoms(e, atoms);
    if (atoms.empty()) return plan;
    std::sort(atoms.begin(), atoms.end());  // node ids are topological

    PolyRing ring = PolyRing::spanning({e});
    std::vector<Op> gen_op(ring.size());
    for (int i = 0; i < ring.size(); ++i) gen_op[i] = ex_op(ring.gens[i]);

    struct Angle {
        Expr atom;
        RatFun rf;
    };
    std::vector<Angle> angles;
    std::vector<Expr> log_atoms;
    for (Expr a : atoms) {
        Op op = ex_op(a);
        if (op == Op::Exp || op == Op::Sin || op == Op::Cos) {
            RatFun rf = expr_to_ratfun(ex_kids(a).front(), ring);
            if (op != Op::Exp) rf.num = rf.num.scaled(GaussRational::unit_im());
            angles.push_back({a, std::move(rf)});
        } else if (op == Op::Log) {
            log_atoms.push_back(a);
        }
    }

    auto has_gen_kind = [&](const Poly& p, Op kind, int min_exp) {
        for (const auto& [m, c] : p.terms()) {
            (void)c;
            for (int g = 0; g < (int)m.size(); ++g)
                if (m[g] >= min_exp && gen_op[g] == kind) return true;
        }
        return false;
    };

    // exponential / trigonometric arguments: one shared lattice
    bool logs_in_angles = false, nonconst_den = false;
    for (const auto& a : angles) {
        if (has_gen_kind(a.rf.num, Op::Log, 1) || has_gen_kind(a.rf.den, Op::Log, 1))
            logs_in_angles = true;
        if (!a.rf.den.is_constant()) nonconst_den = true;
    }
    if (logs_in_angles && nonconst_den) {
        plan.ok = false;
        plan.refusal = "logarithms mixed into exponential arguments with denominators";
        return plan;
    }

    Poly den_lcm = Poly::constant(ring.size(), GaussRational(1));
    for (const auto& a : angles) {
        if (a.rf.den.is_constant()) continue;
        Poly g = poly_gcd(den_lcm, a.rf.den);
        auto q = divide_exact(a.rf.den, g);
        den_lcm = den_lcm * *q;
    }

    Echelon lattice;
    std::set<int> angle_sqrt_gens;
    struct Pending {
        Expr atom;
        Op kind;
        QVec combo;
        std::vector<FoldPow> folds;
    };
    std::vector<Pending> pending;
    std::map<std::pair<Monomial, int>, long> coord_ids;
    auto coord = [&](const Monomial& m, int slot) {
        auto [it, fresh] =
            coord_ids.try_emplace(std::make_pair(m, slot), (long)coord_ids.size());
        (void)fresh;
        return it->second;
    };

    for (const auto& a : angles) {
        Poly num = a.rf.num;
        std::vector<FoldPow> folds;
        if (a.rf.den.is_constant()) {
            // exact integer multiples of a logarithm fold back to powers
            Poly removed(ring.size());
            for (const auto& [m, c] : num.terms()) {
                int lg = -1;
                bool pure = true;
                for (int g = 0; g < (int)m.size(); ++g) {
                    if (m[g] == 0) continue;
                    if (m[g] == 1 && lg < 0 && gen_op[g] == Op::Log)
                        lg = g;
                    else
                        pure = false;
                }
                if (lg < 0 || !pure || c.re == 0) continue;
                long n;
                if (!rational_long(c.re, n)) {
                    plan.ok = false;
                    plan.refusal = "fractional multiple of a logarithm in an exponent";
                    return plan;
                }
                folds.push_back({ex_kids(ring.gens[lg]).front(), n});
                removed.add_term(m, GaussRational(c.re));
            }
            num = num - removed;
        }
        auto q = divide_exact(den_lcm, a.rf.den);
        Poly scaled = num * *q;
        for (const auto& [m, c] : scaled.terms()) {
            (void)c;
            int sqrt_degree = 0;
            for (int g = 0; g < (int)m.size(); ++g)
                if (gen_op[g] == Op::Sqrt) {
                    sqrt_degree += m[g];
                    if (m[g] > 0) angle_sqrt_gens.insert(g);
                }
            if (sqrt_degree >= 2) {
                plan.ok = false;
                plan.refusal = "product of radicals inside a transcendental argument";
                return plan;
            }
        }
        QVec v;
        for (const auto& [m, c] : scaled.terms()) {
            if (c.re != 0) v[coord(m, 0)] = c.re;
            if (c.im != 0) v[coord(m, 1)] = c.im;
        }
        pending.push_back({a.atom, ex_op(a.atom), lattice.decompose(std::move(v)),
                           std::move(folds)});
    }
    if (angle_sqrt_gens.size() > 1) {
        plan.ok = false;
        plan.refusal = "two different radicals inside transcendental arguments";
        return plan;
    }
    if (angle_sqrt_gens.size() == 1) {
        // a radical that reduces to a rational function would let one
        // exponential silently coincide with another
        Expr s = ring.gens[*angle_sqrt_gens.begin()];
        RatFun arg = expr_to_ratfun(ex_kids(s).front(), ring);
        if (poly_sqrt(arg.num) && poly_sqrt(arg.den)) {
            plan.ok = false;
            plan.refusal = "radical of a perfect square inside a transcendental argument";
            return plan;
        }
    }

    mpz_class den_scale = 1;
    for (const auto& p : pending)
        for (const auto& [j, q] : p.combo) {
            (void)j;
            mpz_lcm(den_scale.get_mpz_t(), den_scale.get_mpz_t(),
                    q.get_den().get_mpz_t());
        }
    for (auto& p : pending) {
        TransEntry entry;
        entry.kind = p.kind;
        entry.folds = std::move(p.folds);
        for (const auto& [j, q] : p.combo) {
            mpz_class e = q.get_num() * (den_scale / q.get_den());
            if (!e.fits_slong_p() || abs(e) > 1000000) {
                plan.ok = false;
                plan.refusal = "exponent overflow in the sampling lattice";
                return plan;
            }
            entry.sigma_pow.emplace_back(j, e.get_si());
        }
        plan.trans.emplace(p.atom.id(), std::move(entry));
    }
    plan.n_sigma = lattice.n_basis;

    // logarithms
    if (!log_atoms.empty()) {
        LogWorld world(ring, gen_op, plan);
        std::set<uint32_t> seen;
        std::vector<RatFun> args;
        for (Expr a : log_atoms) {
            args.push_back(expr_to_ratfun(ex_kids(a).front(), ring));
            world.gather(args.back(), 0, seen);
        }
        if (!plan.ok) return plan;
        world.refine();
        for (size_t k = 0; k < log_atoms.size(); ++k) {
            std::vector<LogCoord> coords;
            world.decompose(coords, args[k], Rational(1), 0);
            if (!plan.ok) return plan;
            plan.logs.emplace(log_atoms[k].id(), std::move(coords));
        }
    }
    return plan;
}

// ---- one exact sample ----

void assign_atoms(const Plan& plan, Rng& rng, ExactContext& ctx) {
    std::vector<GaussRational> sigma;
    sigma.reserve(plan.n_sigma);
    for (int j = 0; j < plan.n_sigma; ++j) sigma.emplace_back(rng.base());
    std::vector<std::optional<GaussRational>> lambda(plan.lambdas.size());
    for (size_t k = 0; k < plan.lambdas.size(); ++k)
        if (!plan.lambdas[k].fold) lambda[k] = GaussRational(rng.additive());

    auto lambda_value = [&](int k) -> const GaussRational& {
        if (!lambda[k]) lambda[k] = eval_exact(plan.lambdas[k].arg, ctx);
        return *lambda[k];
    };

    auto ti = plan.trans.begin();
    auto li = plan.logs.begin();
    while (ti != plan.trans.end() || li != plan.logs.end()) {
        bool take_trans = li == plan.logs.end() ||
                          (ti != plan.trans.end() && ti->first < li->first);
        if (take_trans) {
            const TransEntry& t = ti->second;
            GaussRational b(1);
            for (const auto& [j, e] : t.sigma_pow) b *= gauss_pow(sigma[j], e);
            for (const auto& f : t.folds) {
                GaussRational base = eval_exact(f.base, ctx);
                if (base.is_zero())
                    throw ExactEvalError(ExactEvalError::Kind::division_by_zero,
                                         "logarithm argument vanished at the sample point");
                b *= gauss_pow(base, f.n);
            }
            GaussRational v;
            if (t.kind == Op::Exp) {
                v = b;
            } else {
                GaussRational inv = GaussRational(1) / b;
                if (t.kind == Op::Sin)
                    v = (b - inv) / GaussRational(Rational(0), Rational(2));
                else
                    v = (b + inv) / GaussRational(2);
            }
            ctx.atom_values.emplace(ti->first, std::move(v));
            ++ti;
        } else {
            GaussRational v(0);
            for (const auto& c : li->second) v += GaussRational(c.mult) * lambda_value(c.lambda);
            ctx.atom_values.emplace(li->first, std::move(v));
            ++li;
        }
    }
}

std::string ext_to_string(const ExtValue& v, const ExactContext& ctx) {
    if (v.b.is_zero()) return gauss_to_string(v.a);
    std::string s = "(" + gauss_to_string(v.a) + ") + (" + gauss_to_string(v.b) +
                    ")*sqrt(" + rat_to_string(*ctx.radicand) + ")";
    return s;
}

ZeroReport run_exact(Expr e, const Plan& plan, const ZeroPolicy& pol) {
    Rng rng(pol.seed);
    ZeroReport rep;
    int accepted = 0, attempts = 0;
    const int max_attempts = pol.samples * 8 + 8;
    std::string last;
    while (accepted < pol.samples && attempts < max_attempts) {
        ++attempts;
        ExactContext ctx;
        std::map<std::string, Rational> pt;
        for (const auto& name : plan.vars) {
            Rational r = rng.in_box(pol.box_lo, pol.box_hi);
            pt[name] = r;
            ctx.vars[name] = GaussRational(r);
        }
        try {
            assign_atoms(plan, rng, ctx);
            ExtValue v = eval_exact_ext(e, ctx);
            if (v.a.is_zero() && v.b.is_zero()) {
                ++accepted;
                continue;
            }
            rep.verdict = TriState::Nonzero;
            rep.certain = true;
            rep.samples_used = accepted + 1;
            rep.witness = ZeroWitness{std::move(pt), ext_to_string(v, ctx)};
            rep.note += "exact nonzero value at a sample point";
            return rep;
        } catch (const ExactEvalError& err) {
            last = err.what();
        } catch (const std::domain_error& err) {
            last = err.what();
        }
    }
    rep.samples_used = accepted;
    if (accepted >= pol.samples) {
        rep.verdict = TriState::Zero;
        rep.note += "vanishes at " + std::to_string(accepted) + " exact sample points";
    } else {
        rep.verdict = TriState::Undecided;
        rep.note += "sample points kept failing (" + last + ")";
    }
    return rep;
}

ZeroReport run_float(Expr e, const std::vector<std::string>& vars, const ZeroPolicy& pol) {
    Rng rng(pol.seed);
    ZeroReport rep;
    int accepted = 0, attempts = 0;
    const int max_attempts = pol.samples * 8 + 8;
    std::string last = "not-a-number";
    while (accepted < pol.samples && attempts < max_attempts) {
        ++attempts;
        FloatContext ctx;
        ctx.prec = pol.prec_bits;
        std::map<std::string, Rational> pt;
        for (const auto& name : vars) {
            Rational r = rng.in_box(pol.box_lo, pol.box_hi);
            pt[name] = r;
            ctx.vars.emplace(name, BigComplex(GaussRational(r), ctx.prec));
        }
        BigComplex v(ctx.prec);
        try {
            v = eval_float(e, ctx);
        } catch (const std::exception& err) {
            last = err.what();
            continue;
        }
        double mag = v.abs().to_double();
        if (std::isnan(mag) || std::isinf(mag) || std::isnan(ctx.max_abs) ||
            std::isinf(ctx.max_abs))
            continue;
        if (mag <= pol.rel_tol * std::max(1.0, ctx.max_abs)) {
            ++accepted;
            continue;
        }
        rep.verdict = TriState::Nonzero;
        rep.samples_used = accepted + 1;
        rep.witness =
            ZeroWitness{std::move(pt), v.re.to_string(20) + " + " + v.im.to_string(20) + "*i"};
        rep.note += "numerically nonzero at a sample point";
        return rep;
    }
    rep.samples_used = accepted;
    if (accepted >= pol.samples) {
        rep.verdict = TriState::Zero;
        rep.note += "numerically zero at " + std::to_string(accepted) + " sample points (" +
                    std::to_string(pol.prec_bits) + " bits)";
    } else {
        rep.verdict = TriState::Undecided;
        rep.note += "sample points kept failing (" + last + ")";
    }
    return rep;
}

} // namespace

ZeroReport test_zero(Expr e, const ZeroPolicy& policy) {
    ZeroReport rep;
    if (ex_is_number(e)) {
        rep.verdict = ex_is_zero(e) ? TriState::Zero : TriState::Nonzero;
        rep.certain = true;
        rep.note = "constant";
        if (rep.verdict == TriState::Nonzero)
            rep.witness = ZeroWitness{{}, gauss_to_string(ex_value(e))};
        return rep;
    }

    std::vector<Expr> atoms;
    collect_atoms(e, atoms);
    if (node_count(e) <= (size_t)policy.canonical_node_limit) {
        bool vanished = false, decided = false;
        try {
            vanished = canonical_form_is_zero(e);
            decided = true;
        } catch (const std::exception&) {
        }
        if (decided && vanished) {
            rep.verdict = TriState::Zero;
            rep.certain = true;
            rep.note = "canonical form vanishes";
            return rep;
        }
        if (decided && !vanished && atoms.empty()) {
            rep.verdict = TriState::Nonzero;
            rep.certain = true;
            rep.note = "canonical form is a nonzero rational function";
            return rep;
        }
    }

    if (policy.mode == ZeroMode::ExactSample) {
        Plan plan = build_plan(e);
        if (plan.ok) return run_exact(e, plan, policy);
        ZeroReport fb = run_float(e, plan.vars, policy);
        fb.note = "exact sampling unavailable (" + plan.refusal + "); " + fb.note;
        fb.certain = false;
        return fb;
    }
    std::set<std::string> vs;
    collect_vars(e, vs);
    return run_float(e, std::vector<std::string>(vs.begin(), vs.end()), policy);
}

bool is_zero(Expr e, const ZeroPolicy& policy) {
    ZeroReport rep = test_zero(e, policy);
    if (rep.verdict == TriState::Undecided) throw ZeroUndecided(rep.note);
    return rep.verdict == TriState::Zero;
}

} // namespace liouville
