#include "liouville/expr.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <deque>

namespace liouville {

namespace {

struct Node {
    Op op = Op::Number;
    long ipow = 0;
    GaussRational value;
    std::string name;
    std::vector<Expr> kids;
    std::size_t hash = 0;
};

std::size_t node_hash(const Node& n) {
    std::size_t h = 1469598103934665603ULL;
    auto mix = [&h](std::size_t v) {
        h ^= v;
        h *= 1099511628211ULL;
    };
    mix((std::size_t)n.op);
    mix((std::size_t)n.ipow);
    if (n.op == Op::Number) mix(gauss_hash(n.value));
    if (n.op == Op::Var) mix(std::hash<std::string>{}(n.name));
    for (Expr k : n.kids) mix(k.id());
    return h;
}

bool node_equal(const Node& a, const Node& b) {
    if (a.op != b.op || a.ipow != b.ipow || a.name != b.name) return false;
    if (a.kids.size() != b.kids.size()) return false;
    for (std::size_t i = 0; i < a.kids.size(); ++i)
        if (a.kids[i] != b.kids[i]) return false;
    if (a.op == Op::Number && a.value != b.value) return false;
    return true;
}

struct Pool {
    std::deque<Node> nodes;
    std::unordered_map<std::size_t, std::vector<uint32_t>> buckets;
    std::unordered_map<uint64_t, Expr> diff_cache;

    Expr intern(Node n) {
        n.hash = node_hash(n);
        auto& bucket = buckets[n.hash];
        for (uint32_t id : bucket)
            if (node_equal(nodes[id], n)) return Expr::from_id(id);
        uint32_t id = (uint32_t)nodes.size();
        bucket.push_back(id);
        nodes.push_back(std::move(n));
        return Expr::from_id(id);
    }

    Pool() {
        Node zero;
        zero.op = Op::Number;
        zero.value = GaussRational(0);
        intern(std::move(zero));
    }
};

Pool& pool() {
    static Pool p;
    return p;
}

const Node& node(Expr e) { return pool().nodes[e.id()]; }

// splits t into (coefficient, core) with t == coefficient * core
std::pair<GaussRational, Expr> coeff_core(Expr t);

} // namespace

Expr::Expr() : id_(0) {}

Op ex_op(Expr e) { return node(e).op; }
const std::vector<Expr>& ex_kids(Expr e) { return node(e).kids; }
const GaussRational& ex_value(Expr e) { return node(e).value; }
const std::string& ex_name(Expr e) { return node(e).name; }
long ex_ipow(Expr e) { return node(e).ipow; }
bool ex_is_number(Expr e) { return node(e).op == Op::Number; }
bool ex_is_zero(Expr e) { return ex_is_number(e) && node(e).value.is_zero(); }
bool ex_is_one(Expr e) { return ex_is_number(e) && node(e).value.is_one(); }

Expr ex_number(GaussRational v) {
    Node n;
    n.op = Op::Number;
    n.value = std::move(v);
    return pool().intern(std::move(n));
}

Expr ex_number(long v) { return ex_number(GaussRational(v)); }
Expr ex_rational(const Rational& q) { return ex_number(GaussRational(q)); }
Expr ex_i() { return ex_number(GaussRational::unit_im()); }

Expr ex_var(const std::string& name) {
    Node n;
    n.op = Op::Var;
    n.name = name;
    return pool().intern(std::move(n));
}

namespace {

std::pair<GaussRational, Expr> coeff_core(Expr t) {
    const Node& n = node(t);
    if (n.op == Op::Number) return {n.value, ex_number(1)};
    if (n.op == Op::Mul && !n.kids.empty() && ex_is_number(n.kids.front())) {
        std::vector<Expr> rest(n.kids.begin() + 1, n.kids.end());
        return {ex_value(n.kids.front()), ex_mul(std::move(rest))};
    }
    return {GaussRational(1), t};
}

} // namespace

Expr ex_add(std::vector<Expr> terms) {
    GaussRational constant(0);
    std::map<Expr, GaussRational> by_core;
    std::vector<Expr> stack(terms.rbegin(), terms.rend());
    while (!stack.empty()) {
        Expr t = stack.back();
        stack.pop_back();
        const Node& n = node(t);
        if (n.op == Op::Add) {
            for (auto it = n.kids.rbegin(); it != n.kids.rend(); ++it) stack.push_back(*it);
            continue;
        }
        if (n.op == Op::Number) {
            constant += n.value;
            continue;
        }
        auto [c, core] = coeff_core(t);
        by_core[core] += c;
    }
    std::vector<Expr> out;
    if (!constant.is_zero()) out.push_back(ex_number(constant));
    for (auto& [core, c] : by_core) {
        if (c.is_zero()) continue;
        out.push_back(c.is_one() ? core : ex_mul({ex_number(c), core}));
    }
    if (out.empty()) return ex_number(0);
    if (out.size() == 1) return out.front();
    std::sort(out.begin() + (ex_is_number(out.front()) ? 1 : 0), out.end());
    Node n;
    n.op = Op::Add;
    n.kids = std::move(out);
    return pool().intern(std::move(n));
}

Expr ex_mul(std::vector<Expr> factors) {
    GaussRational constant(1);
    std::map<Expr, long> by_base;
    std::vector<Expr> stack(factors.rbegin(), factors.rend());
    while (!stack.empty()) {
        Expr f = stack.back();
        stack.pop_back();
        const Node& n = node(f);
        if (n.op == Op::Mul) {
            for (auto it = n.kids.rbegin(); it != n.kids.rend(); ++it) stack.push_back(*it);
            continue;
        }
        if (n.op == Op::Number) {
            if (n.value.is_zero()) return ex_number(0);
            constant *= n.value;
            continue;
        }
        if (n.op == Op::Pow) by_base[n.kids.front()] += n.ipow;
        else by_base[f] += 1;
    }
    std::vector<Expr> out;
    for (auto& [base, e] : by_base) {
        Expr f = ex_pow(base, e);
        if (ex_is_one(f)) continue;
        if (ex_is_number(f)) { constant *= ex_value(f); continue; }
        out.push_back(f);
    }
    if (out.empty()) return ex_number(constant);
    std::sort(out.begin(), out.end());
    if (!constant.is_one()) out.insert(out.begin(), ex_number(constant));
    if (out.size() == 1) return out.front();
    Node n;
    n.op = Op::Mul;
    n.kids = std::move(out);
    return pool().intern(std::move(n));
}

Expr ex_pow(Expr base, long n) {
    if (n == 0) return ex_number(1);
    if (n == 1) return base;
    const Node& b = node(base);
    if (b.op == Op::Number) return ex_number(gauss_pow(b.value, n));
    if (b.op == Op::Pow) return ex_pow(b.kids.front(), b.ipow * n);
    if (b.op == Op::Mul) {
        std::vector<Expr> fs;
        fs.reserve(b.kids.size());
        for (Expr k : b.kids) fs.push_back(ex_pow(k, n));
        return ex_mul(std::move(fs));
    }
    Node out;
    out.op = Op::Pow;
    out.ipow = n;
    out.kids = {base};
    return pool().intern(std::move(out));
}

Expr ex_div(Expr a, Expr b) {
    if (ex_is_zero(b)) throw std::domain_error("division by the zero expression");
    return ex_mul({a, ex_pow(b, -1)});
}

namespace {

Expr unary(Op op, Expr x) {
    Node n;
    n.op = op;
    n.kids = {x};
    return pool().intern(std::move(n));
}

} // namespace

Expr ex_exp(Expr x) {
    if (ex_is_zero(x)) return ex_number(1);
    if (ex_op(x) == Op::Log) return ex_kids(x).front();
    return unary(Op::Exp, x);
}

Expr ex_log(Expr x) {
    if (ex_is_one(x)) return ex_number(0);
    if (ex_op(x) == Op::Exp) return ex_kids(x).front();
    return unary(Op::Log, x);
}

Expr ex_sin(Expr x) {
    if (ex_is_zero(x)) return ex_number(0);
    return unary(Op::Sin, x);
}

Expr ex_cos(Expr x) {
    if (ex_is_zero(x)) return ex_number(1);
    return unary(Op::Cos, x);
}

Expr ex_sqrt(Expr x) {
    if (ex_is_number(x)) {
        const GaussRational& v = ex_value(x);
        Rational root;
        if (v.is_real() && v.re >= 0 && rat_is_perfect_square(v.re, root))
            return ex_rational(root);
    }
    return unary(Op::Sqrt, x);
}

// ---- differentiation ----

Expr differentiate(Expr e, const std::string& var) {
    Expr v = ex_var(var);
    uint64_t key = ((uint64_t)e.id() << 32) | v.id();
    auto& cache = pool().diff_cache;
    if (auto it = cache.find(key); it != cache.end()) return it->second;

    const Node& n = node(e);
    Expr out;
    switch (n.op) {
        case Op::Number: out = ex_number(0); break;
        case Op::Var: out = ex_number(n.name == var ? 1 : 0); break;
        case Op::Add: {
            std::vector<Expr> terms;
            terms.reserve(n.kids.size());
            for (Expr k : n.kids) terms.push_back(differentiate(k, var));
            out = ex_add(std::move(terms));
            break;
        }
        case Op::Mul: {
            std::vector<Expr> terms;
            terms.reserve(n.kids.size());
            for (std::size_t i = 0; i < n.kids.size(); ++i) {
                std::vector<Expr> fs = n.kids;
                fs[i] = differentiate(n.kids[i], var);
                terms.push_back(ex_mul(std::move(fs)));
            }
            out = ex_add(std::move(terms));
            break;
        }
        case Op::Pow: {
            Expr b = n.kids.front();
            out = ex_mul({ex_number(n.ipow), ex_pow(b, n.ipow - 1), differentiate(b, var)});
            break;
        }
        case Op::Exp: out = ex_mul({differentiate(n.kids.front(), var), e}); break;
        case Op::Log: out = ex_div(differentiate(n.kids.front(), var), n.kids.front()); break;
        case Op::Sin:
            out = ex_mul({differentiate(n.kids.front(), var), ex_cos(n.kids.front())});
            break;
        case Op::Cos:
            out = ex_mul({ex_number(-1), differentiate(n.kids.front(), var),
                          ex_sin(n.kids.front())});
            break;
        case Op::Sqrt:
            out = ex_div(differentiate(n.kids.front(), var), ex_mul({ex_number(2), e}));
            break;
    }
    cache.emplace(key, out);
    return out;
}

// ---- substitution ----

namespace {

Expr substitute_rec(Expr e, const std::map<std::string, Expr>& bindings,
                    std::unordered_map<uint32_t, Expr>& memo) {
    if (auto it = memo.find(e.id()); it != memo.end()) return it->second;
    const Node& n = node(e);
    Expr out = e;
    switch (n.op) {
        case Op::Number: break;
        case Op::Var: {
            auto it = bindings.find(n.name);
            if (it != bindings.end()) out = it->second;
            break;
        }
        default: {
            std::vector<Expr> kids;
            kids.reserve(n.kids.size());
            bool changed = false;
            for (Expr k : n.kids) {
                Expr s = substitute_rec(k, bindings, memo);
                changed |= (s != k);
                kids.push_back(s);
            }
            if (changed) {
                switch (n.op) {
                    case Op::Add: out = ex_add(std::move(kids)); break;
                    case Op::Mul: out = ex_mul(std::move(kids)); break;
                    case Op::Pow: out = ex_pow(kids.front(), n.ipow); break;
                    case Op::Exp: out = ex_exp(kids.front()); break;
                    case Op::Log: out = ex_log(kids.front()); break;
                    case Op::Sin: out = ex_sin(kids.front()); break;
                    case Op::Cos: out = ex_cos(kids.front()); break;
                    case Op::Sqrt: out = ex_sqrt(kids.front()); break;
                    default: break;
                }
            }
            break;
        }
    }
    memo.emplace(e.id(), out);
    return out;
}

} // namespace

Expr substitute(Expr e, const std::map<std::string, Expr>& bindings) {
    std::unordered_map<uint32_t, Expr> memo;
    return substitute_rec(e, bindings, memo);
}

// ---- printing ----

namespace {

// precedence: 0 add, 1 mul, 2 pow, 3 atom
void print(Expr e, int parent_prec, std::string& out) {
    const Node& n = node(e);
    switch (n.op) {
        case Op::Number: {
            std::string s = gauss_to_string(n.value);
            bool needs_parens =
                parent_prec >= 1 && (s.find_first_of("+-", 1) != std::string::npos ||
                                     (parent_prec >= 2 && !n.value.is_real()) || s[0] == '-');
            if (needs_parens) out += "(" + s + ")";
            else out += s;
            break;
        }
        case Op::Var: out += n.name; break;
        case Op::Add: {
            if (parent_prec >= 1) out += "(";
            bool first = true;
            for (Expr k : n.kids) {
                auto [c, core] = coeff_core(k);
                if (c.is_real() && c.re < 0) {
                    out += first ? "-" : " - ";
                    print(ex_mul({ex_number(-c), core}), 0, out);
                } else {
                    if (!first) out += " + ";
                    print(k, 0, out);
                }
                first = false;
            }
            if (parent_prec >= 1) out += ")";
            break;
        }
        case Op::Mul: {
            if (parent_prec >= 2) out += "(";
            std::size_t start = 0;
            if (ex_is_number(n.kids.front()) && ex_value(n.kids.front()) == GaussRational(-1) &&
                n.kids.size() > 1) {
                out += "-";
                start = 1;
            }
            bool first = true;
            for (std::size_t i = start; i < n.kids.size(); ++i) {
                if (!first) out += "*";
                print(n.kids[i], 1, out);
                first = false;
            }
            if (parent_prec >= 2) out += ")";
            break;
        }
        case Op::Pow: {
            print(n.kids.front(), 2, out);
            out += "^";
            if (n.ipow < 0) out += "(" + std::to_string(n.ipow) + ")";
            else out += std::to_string(n.ipow);
            break;
        }
        case Op::Exp: out += "exp("; print(n.kids.front(), 0, out); out += ")"; break;
        case Op::Log: out += "log("; print(n.kids.front(), 0, out); out += ")"; break;
        case Op::Sin: out += "sin("; print(n.kids.front(), 0, out); out += ")"; break;
        case Op::Cos: out += "cos("; print(n.kids.front(), 0, out); out += ")"; break;
        case Op::Sqrt: out += "sqrt("; print(n.kids.front(), 0, out); out += ")"; break;
    }
}

} // namespace

std::string to_string(Expr e) {
    std::string out;
    print(e, 0, out);
    return out;
}

// ---- traversal helpers ----

namespace {

template <class F>
void walk(Expr e, std::set<uint32_t>& seen, F&& fn) {
    if (!seen.insert(e.id()).second) return;
    fn(e);
    for (Expr k : node(e).kids) walk(k, seen, fn);
}

} // namespace

std::size_t node_count(Expr e) {
    std::set<uint32_t> seen;
    walk(e, seen, [](Expr) {});
    return seen.size();
}

void collect_vars(Expr e, std::set<std::string>& out) {
    std::set<uint32_t> seen;
    walk(e, seen, [&out](Expr n) {
        if (ex_op(n) == Op::Var) out.insert(ex_name(n));
    });
}

void collect_atoms(Expr e, std::vector<Expr>& out) {
    std::set<uint32_t> seen;
    walk(e, seen, [&out](Expr n) {
        switch (ex_op(n)) {
            case Op::Exp: case Op::Log: case Op::Sin: case Op::Cos: case Op::Sqrt:
                out.push_back(n);
                break;
            default: break;
        }
    });
}

// ---- exact evaluation ----

namespace {

ExtValue ext_add(const ExtValue& x, const ExtValue& y) { return {x.a + y.a, x.b + y.b}; }

ExtValue ext_mul(const ExtValue& x, const ExtValue& y, const ExactContext& ctx) {
    if (x.b.is_zero() && y.b.is_zero()) return {x.a * y.a, GaussRational(0)};
    GaussRational r(*ctx.radicand);
    return {x.a * y.a + x.b * y.b * r, x.a * y.b + x.b * y.a};
}

ExtValue ext_inv(const ExtValue& x, const ExactContext& ctx) {
    if (x.b.is_zero()) {
        if (x.a.is_zero())
            throw ExactEvalError(ExactEvalError::Kind::division_by_zero, "division by zero");
        return {GaussRational(1) / x.a, GaussRational(0)};
    }
    GaussRational r(*ctx.radicand);
    GaussRational d = x.a * x.a - x.b * x.b * r;
    if (d.is_zero())
        throw ExactEvalError(ExactEvalError::Kind::division_by_zero, "division by zero");
    return {x.a / d, -x.b / d};
}

ExtValue ext_pow(ExtValue x, long n, const ExactContext& ctx) {
    if (n < 0) {
        x = ext_inv(x, ctx);
        n = -n;
    }
    ExtValue acc{GaussRational(1), GaussRational(0)};
    while (n > 0) {
        if (n & 1) acc = ext_mul(acc, x, ctx);
        x = ext_mul(x, x, ctx);
        n >>= 1;
    }
    return acc;
}

} // namespace

ExtValue eval_exact_ext(Expr e, ExactContext& ctx) {
    if (auto it = ctx.memo.find(e.id()); it != ctx.memo.end()) return it->second;
    const Node& n = node(e);
    ExtValue out{GaussRational(0), GaussRational(0)};
    auto assigned = [&]() -> const GaussRational* {
        auto it = ctx.atom_values.find(e.id());
        return it == ctx.atom_values.end() ? nullptr : &it->second;
    };
    switch (n.op) {
        case Op::Number: out.a = n.value; break;
        case Op::Var: {
            auto it = ctx.vars.find(n.name);
            if (it == ctx.vars.end())
                throw std::logic_error("unbound variable in evaluation: " + n.name);
            out.a = it->second;
            break;
        }
        case Op::Add:
            for (Expr k : n.kids) out = ext_add(out, eval_exact_ext(k, ctx));
            break;
        case Op::Mul: {
            out.a = GaussRational(1);
            for (Expr k : n.kids) out = ext_mul(out, eval_exact_ext(k, ctx), ctx);
            break;
        }
        case Op::Pow: out = ext_pow(eval_exact_ext(n.kids.front(), ctx), n.ipow, ctx); break;
        case Op::Exp:
        case Op::Log:
        case Op::Sin:
        case Op::Cos: {
            if (const GaussRational* v = assigned()) { out.a = *v; break; }
            ExtValue arg = eval_exact_ext(n.kids.front(), ctx);
            if (!arg.b.is_zero())
                throw ExactEvalError(ExactEvalError::Kind::irrational,
                                     "transcendental of an irrational value");
            if (n.op == Op::Exp && arg.a.is_zero()) { out.a = GaussRational(1); break; }
            if (n.op == Op::Log && arg.a.is_one()) { out.a = GaussRational(0); break; }
            if (n.op == Op::Sin && arg.a.is_zero()) { out.a = GaussRational(0); break; }
            if (n.op == Op::Cos && arg.a.is_zero()) { out.a = GaussRational(1); break; }
            throw ExactEvalError(ExactEvalError::Kind::irrational,
                                 "transcendental value is not exactly known");
        }
        case Op::Sqrt: {
            if (const GaussRational* v = assigned()) { out.a = *v; break; }
            ExtValue arg = eval_exact_ext(n.kids.front(), ctx);
            if (!arg.b.is_zero() || !arg.a.is_real() || arg.a.re < 0)
                throw ExactEvalError(ExactEvalError::Kind::irrational,
                                     "square root of a non-rational or negative value");
            Rational root;
            if (rat_is_perfect_square(arg.a.re, root)) { out.a = GaussRational(root); break; }
            if (!ctx.radicand) ctx.radicand = arg.a.re;
            if (*ctx.radicand == arg.a.re) { out.b = GaussRational(1); break; }
            // maybe arg / radicand is a perfect square: sqrt(arg) = root*sqrt(radicand)
            Rational ratio = arg.a.re / *ctx.radicand;
            if (rat_is_perfect_square(ratio, root)) { out.b = GaussRational(root); break; }
            throw ExactEvalError(ExactEvalError::Kind::second_radical,
                                 "two incompatible square roots at one sample point");
        }
    }
    ctx.memo.emplace(e.id(), out);
    return out;
}

GaussRational eval_exact(Expr e, ExactContext& ctx) {
    ExtValue v = eval_exact_ext(e, ctx);
    if (v.b.is_zero()) return v.a;
    Rational r = *ctx.radicand;
    throw ExactEvalError(ExactEvalError::Kind::irrational,
                         "value lies outside Q(i): contains sqrt(" + rat_to_string(r) + ")");
}

// ---- float evaluation ----

BigComplex eval_float(Expr e, FloatContext& ctx) {
    if (auto it = ctx.memo.find(e.id()); it != ctx.memo.end()) return it->second;
    const Node& n = node(e);
    BigComplex out(ctx.prec);
    switch (n.op) {
        case Op::Number: out = BigComplex(n.value, ctx.prec); break;
        case Op::Var: {
            auto it = ctx.vars.find(n.name);
            if (it == ctx.vars.end())
                throw std::logic_error("unbound variable in evaluation: " + n.name);
            out = it->second;
            break;
        }
        case Op::Add:
            for (Expr k : n.kids) out = out + eval_float(k, ctx);
            break;
        case Op::Mul: {
            out = BigComplex(GaussRational(1), ctx.prec);
            for (Expr k : n.kids) out = out * eval_float(k, ctx);
            break;
        }
        case Op::Pow: out = cpow(eval_float(n.kids.front(), ctx), n.ipow); break;
        case Op::Exp: out = cexp(eval_float(n.kids.front(), ctx)); break;
        case Op::Log: out = clog(eval_float(n.kids.front(), ctx)); break;
        case Op::Sin: out = csin(eval_float(n.kids.front(), ctx)); break;
        case Op::Cos: out = ccos(eval_float(n.kids.front(), ctx)); break;
        case Op::Sqrt: out = csqrt(eval_float(n.kids.front(), ctx)); break;
    }
    double m = out.abs().to_double();
    if (m > ctx.max_abs) ctx.max_abs = m;
    ctx.memo.emplace(e.id(), out);
    return out;
}

} // namespace liouville
