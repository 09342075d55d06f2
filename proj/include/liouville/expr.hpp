#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "liouville/bigfloat.hpp"
#include "liouville/rational.hpp"

namespace liouville {

// Immutable expression DAG with hash-consing: structurally equal subtrees
// share one node, so equality is an id compare and evaluation memoizes per
// node. Construction applies cheap local normalization (flattening, constant
// folding, like-term collection) but never expands products.

enum class Op : uint8_t { Number, Var, Add, Mul, Pow, Exp, Log, Sin, Cos, Sqrt };

class Expr {
public:
    Expr();  // the constant 0
    uint32_t id() const { return id_; }
    friend bool operator==(Expr a, Expr b) { return a.id_ == b.id_; }
    friend bool operator!=(Expr a, Expr b) { return a.id_ != b.id_; }
    friend bool operator<(Expr a, Expr b) { return a.id_ < b.id_; }

    static Expr from_id(uint32_t id) { Expr e; e.id_ = id; return e; }

private:
    uint32_t id_;
};

Op ex_op(Expr e);
const std::vector<Expr>& ex_kids(Expr e);
const GaussRational& ex_value(Expr e);  // Number nodes
const std::string& ex_name(Expr e);     // Var nodes
long ex_ipow(Expr e);                   // Pow nodes
bool ex_is_number(Expr e);
bool ex_is_zero(Expr e);
bool ex_is_one(Expr e);

Expr ex_number(GaussRational v);
Expr ex_number(long v);
Expr ex_rational(const Rational& q);
Expr ex_i();
Expr ex_var(const std::string& name);
Expr ex_add(std::vector<Expr> terms);
Expr ex_mul(std::vector<Expr> factors);
Expr ex_pow(Expr base, long n);
Expr ex_div(Expr a, Expr b);
Expr ex_exp(Expr x);
Expr ex_log(Expr x);
Expr ex_sin(Expr x);
Expr ex_cos(Expr x);
Expr ex_sqrt(Expr x);

inline Expr operator+(Expr a, Expr b) { return ex_add({a, b}); }
inline Expr operator-(Expr a, Expr b) { return ex_add({a, ex_mul({ex_number(-1), b})}); }
inline Expr operator*(Expr a, Expr b) { return ex_mul({a, b}); }
inline Expr operator/(Expr a, Expr b) { return ex_div(a, b); }
inline Expr operator-(Expr a) { return ex_mul({ex_number(-1), a}); }

Expr differentiate(Expr e, const std::string& var);
Expr substitute(Expr e, const std::map<std::string, Expr>& bindings);

std::string to_string(Expr e);

std::size_t node_count(Expr e);
void collect_vars(Expr e, std::set<std::string>& out);
// transcendental nodes (Exp/Log/Sin/Cos/Sqrt), deduplicated, in first-seen order
void collect_atoms(Expr e, std::vector<Expr>& out);

// ---- evaluation ----

struct ExactEvalError : std::runtime_error {
    enum class Kind { division_by_zero, irrational, second_radical };
    Kind kind;
    ExactEvalError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

// value in Q(i) adjoined one square root: a + b*sqrt(rad)
struct ExtValue {
    GaussRational a, b;
};

struct ExactContext {
    std::map<std::string, GaussRational> vars;
    // values assigned to transcendental nodes (keyed by node id) by the
    // zero-test sampler; evaluation outside the sampler leaves this empty
    std::unordered_map<uint32_t, GaussRational> atom_values;
    std::optional<Rational> radicand;  // the single admitted surd, > 0, non-square
    std::unordered_map<uint32_t, ExtValue> memo;
};

ExtValue eval_exact_ext(Expr e, ExactContext& ctx);
GaussRational eval_exact(Expr e, ExactContext& ctx);  // throws if a surd survives

struct FloatContext {
    std::map<std::string, BigComplex> vars;
    long prec = 256;
    std::unordered_map<uint32_t, BigComplex> memo;
    double max_abs = 0;  // largest intermediate magnitude seen
};

BigComplex eval_float(Expr e, FloatContext& ctx);

} // namespace liouville
