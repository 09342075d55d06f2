#include "liouville/poly.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace liouville {

// ---- basic polynomial arithmetic ----

Poly Poly::constant(int nvars, GaussRational c) {
    Poly p(nvars);
    if (!c.is_zero()) p.terms_.emplace(Monomial(nvars, 0), std::move(c));
    return p;
}

Poly Poly::gen(int nvars, int index, int32_t exponent) {
    assert(index >= 0 && index < nvars);
    Poly p(nvars);
    if (exponent == 0) return constant(nvars, GaussRational(1));
    Monomial m(nvars, 0);
    m[index] = exponent;
    p.terms_.emplace(std::move(m), GaussRational(1));
    return p;
}

bool Poly::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    const Monomial& m = terms_.begin()->first;
    return std::all_of(m.begin(), m.end(), [](int32_t e) { return e == 0; });
}

const GaussRational& Poly::constant_value() const {
    static const GaussRational zero(0);
    if (terms_.empty()) return zero;
    assert(is_constant());
    return terms_.begin()->second;
}

int32_t Poly::degree(int var) const {
    int32_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m[var]);
    return d;
}

int32_t Poly::total_degree() const {
    int32_t d = 0;
    for (const auto& [m, c] : terms_) {
        int32_t s = 0;
        for (int32_t e : m) s += e;
        d = std::max(d, s);
    }
    return d;
}

void Poly::add_term(const Monomial& m, const GaussRational& c) {
    assert((int)m.size() == nvars_);
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

Poly operator+(const Poly& a, const Poly& b) {
    assert(a.nvars_ == b.nvars_);
    Poly out = a;
    for (const auto& [m, c] : b.terms_) out.add_term(m, c);
    return out;
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly Poly::operator-() const { return scaled(GaussRational(-1)); }

Poly Poly::scaled(const GaussRational& c) const {
    Poly out(nvars_);
    if (c.is_zero()) return out;
    for (const auto& [m, v] : terms_) out.terms_.emplace(m, v * c);
    return out;
}

Poly operator*(const Poly& a, const Poly& b) {
    assert(a.nvars_ == b.nvars_);
    Poly out(a.nvars_);
    Monomial m(a.nvars_);
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            for (int i = 0; i < a.nvars_; ++i) m[i] = ma[i] + mb[i];
            out.add_term(m, ca * cb);
        }
    }
    return out;
}

Poly Poly::pow(long n) const {
    assert(n >= 0);
    Poly acc = constant(nvars_, GaussRational(1));
    Poly base = *this;
    while (n > 0) {
        if (n & 1) acc = acc * base;
        if (n >>= 1) base = base * base;
    }
    return acc;
}

Poly Poly::derivative(int var) const {
    Poly out(nvars_);
    for (const auto& [m, c] : terms_) {
        if (m[var] == 0) continue;
        Monomial d = m;
        d[var] -= 1;
        out.add_term(d, c * GaussRational(m[var]));
    }
    return out;
}

Poly Poly::shifted(const Monomial& s) const {
    Poly out(nvars_);
    for (const auto& [m, c] : terms_) {
        Monomial t = m;
        for (int i = 0; i < nvars_; ++i) {
            t[i] += s[i];
            assert(t[i] >= 0);
        }
        out.terms_.emplace(std::move(t), c);
    }
    return out;
}

const std::pair<const Monomial, GaussRational>& Poly::leading() const {
    assert(!terms_.empty());
    return *terms_.rbegin();
}

// ---- division and gcd ----

std::optional<Poly> divide_exact(const Poly& num, const Poly& den) {
    assert(num.nvars() == den.nvars());
    if (den.is_zero()) return std::nullopt;
    if (den.is_constant()) return num.scaled(GaussRational(1) / den.constant_value());
    Poly q(num.nvars());
    std::map<Monomial, GaussRational> r(num.terms().begin(), num.terms().end());
    const auto& [dm, dc] = den.leading();
    Monomial m(num.nvars());
    Monomial u(num.nvars());
    while (!r.empty()) {
        const auto& [rm, rc] = *r.rbegin();
        for (int i = 0; i < num.nvars(); ++i) {
            m[i] = rm[i] - dm[i];
            if (m[i] < 0) return std::nullopt;
        }
        GaussRational c = rc / dc;
        q.add_term(m, c);
        for (const auto& [tm, tc] : den.terms()) {
            for (int i = 0; i < num.nvars(); ++i) u[i] = tm[i] + m[i];
            auto it = r.try_emplace(u, GaussRational(0)).first;
            it->second = it->second - tc * c;
            if (it->second.is_zero()) r.erase(it);
        }
    }
    return q;
}

namespace {

// coefficients of p viewed as a univariate polynomial in var; coefficient
// polys keep the full variable count with var zeroed out
std::map<int32_t, Poly> univariate(const Poly& p, int var) {
    std::map<int32_t, Poly> out;
    for (const auto& [m, c] : p.terms()) {
        Monomial rest = m;
        int32_t e = rest[var];
        rest[var] = 0;
        out.try_emplace(e, Poly(p.nvars())).first->second.add_term(rest, c);
    }
    return out;
}

Poly lead_coeff_wrt(const Poly& p, int var) {
    auto u = univariate(p, var);
    return u.empty() ? Poly(p.nvars()) : u.rbegin()->second;
}

Poly make_monic(const Poly& p) {
    if (p.is_zero()) return p;
    return p.scaled(GaussRational(1) / p.leading().second);
}

int first_active_var(const Poly& a, const Poly& b, int from) {
    for (int v = from; v < a.nvars(); ++v)
        if (a.degree(v) > 0 || b.degree(v) > 0) return v;
    return -1;
}

// pseudo-remainder of a by b with respect to var (deg_a >= deg_b > 0 side
// handled by caller)
Poly pseudo_rem(const Poly& a, const Poly& b, int var) {
    int32_t db = b.degree(var);
    Poly lcb = lead_coeff_wrt(b, var);
    bool lcb_one = lcb.is_constant() && lcb.constant_value().is_one();
    Poly r = a;
    long deficit = a.degree(var) - db + 1;
    while (!r.is_zero() && r.degree(var) >= db) {
        int32_t dr = r.degree(var);
        Poly t = lead_coeff_wrt(r, var) * Poly::gen(r.nvars(), var, dr - db);
        // multiply by the leading coefficient one step at a time so the
        // intermediate remainders stay as small as the sequence allows
        r = lcb_one ? r - t * b : r * lcb - t * b;
        --deficit;
        if (!r.is_zero() && r.degree(var) == dr) {
            // defensive: should be impossible, the leading term cancels
            throw std::logic_error("pseudo-division failed to reduce degree");
        }
    }
    if (deficit > 0 && !lcb_one && !r.is_zero()) r = r * lcb.pow(deficit);
    return r;
}

Poly gcd_rec(Poly a, Poly b, int from);

// gcd of the univariate coefficients of p wrt var; any constant coefficient
// settles it immediately, and folding small coefficients first makes the
// running gcd collapse to a constant as early as possible
Poly content_wrt(const Poly& p, int var, int from) {
    auto uni = univariate(p, var);
    std::vector<const Poly*> coeffs;
    for (const auto& [e, coeff] : uni) {
        if (coeff.is_constant())
            return Poly::constant(p.nvars(), GaussRational(1));
        coeffs.push_back(&coeff);
    }
    std::sort(coeffs.begin(), coeffs.end(), [](const Poly* a, const Poly* b) {
        return a->terms().size() < b->terms().size();
    });
    Poly c(p.nvars());
    for (const Poly* coeff : coeffs) {
        c = gcd_rec(c, *coeff, from);
        if (c.is_constant() && !c.is_zero()) break;
    }
    return c;
}

// ---- modular probe ----
//
// A single evaluation modulo a word-size prime certifies that a gcd is
// trivial: specialize every variable but one at random residues, run the
// Euclidean algorithm on the univariate images, and observe that the image
// of gcd(a,b) divides the image gcd whenever the leading coefficient of a
// or b survives the specialization.  A degree-zero image therefore proves
// the primitive parts are coprime, which is the common case and the one
// where the remainder sequence is at its most expensive.

uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t p) {
    return (uint64_t)((unsigned __int128)a * b % p);
}

uint64_t pow_mod(uint64_t b, uint64_t e, uint64_t p) {
    uint64_t r = 1;
    for (b %= p; e; e >>= 1) {
        if (e & 1) r = mul_mod(r, b, p);
        b = mul_mod(b, b, p);
    }
    return r;
}

// square root of -1 modulo a prime p = 1 (mod 4)
uint64_t imag_unit_mod(uint64_t p) {
    for (uint64_t n = 2;; ++n)
        if (pow_mod(n, (p - 1) / 2, p) == p - 1) return pow_mod(n, (p - 1) / 4, p);
}

std::optional<uint64_t> rational_mod(const Rational& r, uint64_t p) {
    uint64_t den = mpz_fdiv_ui(r.get_den().get_mpz_t(), p);
    if (den == 0) return std::nullopt;
    uint64_t num = mpz_fdiv_ui(r.get_num().get_mpz_t(), p);
    return mul_mod(num, pow_mod(den, p - 2, p), p);
}

std::optional<uint64_t> gauss_mod(const GaussRational& c, uint64_t p, uint64_t iu) {
    auto re = rational_mod(c.re, p);
    auto im = rational_mod(c.im, p);
    if (!re || !im) return std::nullopt;
    return (*re + mul_mod(*im, iu, p)) % p;
}

// univariate image of p in var, with the other variables pinned at vals;
// nullopt when a coefficient denominator collapses modulo the prime
std::optional<std::vector<uint64_t>> specialize_mod(const Poly& p, int var,
                                                    const std::vector<uint64_t>& vals,
                                                    uint64_t prime, uint64_t iu) {
    std::vector<uint64_t> out(p.degree(var) + 1, 0);
    for (const auto& [m, c] : p.terms()) {
        auto w = gauss_mod(c, prime, iu);
        if (!w) return std::nullopt;
        uint64_t t = *w;
        for (int j = 0; j < p.nvars(); ++j)
            if (j != var && m[j] != 0) t = mul_mod(t, pow_mod(vals[j], m[j], prime), prime);
        out[m[var]] = (out[m[var]] + t) % prime;
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

// degree of gcd over Z/p (-1 for the zero polynomial)
int euclid_degree_mod(std::vector<uint64_t> a, std::vector<uint64_t> b, uint64_t p) {
    while (!b.empty()) {
        uint64_t inv = pow_mod(b.back(), p - 2, p);
        while (a.size() >= b.size()) {
            uint64_t q = mul_mod(a.back(), inv, p);
            size_t off = a.size() - b.size();
            for (size_t i = 0; i < b.size(); ++i)
                a[off + i] = (a[off + i] + p - mul_mod(q, b[i], p)) % p;
            while (!a.empty() && a.back() == 0) a.pop_back();
        }
        std::swap(a, b);
    }
    return (int)a.size() - 1;
}

bool gcd_probe_trivial(const Poly& a, const Poly& b, int v) {
    static const uint64_t kPrimes[] = {2147483629ull, 2013265921ull, 998244353ull,
                                       1073741789ull};
    static thread_local uint64_t state = 0x9fb21c651e98df25ull;
    auto next = [&] {
        state += 0x9e3779b97f4a7c15ull;
        uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    };
    for (uint64_t prime : kPrimes) {
        uint64_t iu = imag_unit_mod(prime);
        std::vector<uint64_t> vals(a.nvars(), 1);
        for (int j = 0; j < a.nvars(); ++j)
            if (j != v) vals[j] = 1 + next() % ((1u << 20) - 1);
        auto ua = specialize_mod(a, v, vals, prime, iu);
        auto ub = specialize_mod(b, v, vals, prime, iu);
        if (!ua || !ub) continue;
        bool lead_survived = (int)ua->size() == a.degree(v) + 1 ||
                             (int)ub->size() == b.degree(v) + 1;
        if (!lead_survived) continue;
        return euclid_degree_mod(std::move(*ua), std::move(*ub), prime) == 0;
    }
    return false;
}

Poly gcd_rec(Poly a, Poly b, int from) {
    if (a.is_zero()) return make_monic(b);
    if (b.is_zero()) return make_monic(a);
    if (a.is_constant() || b.is_constant())
        return Poly::constant(a.nvars(), GaussRational(1));
    int v = first_active_var(a, b, from);
    if (v < 0) return Poly::constant(a.nvars(), GaussRational(1));

    // when the probe certifies the gcd carries no power of v, the gcd is the
    // gcd of the contents and both primitive divisions can be skipped
    if (gcd_probe_trivial(a, b, v))
        return gcd_rec(content_wrt(a, v, v + 1), content_wrt(b, v, v + 1), v + 1);

    Poly ca = content_wrt(a, v, v + 1);
    Poly cb = content_wrt(b, v, v + 1);
    Poly c = gcd_rec(ca, cb, v + 1);
    if (!ca.is_constant()) a = *divide_exact(a, ca);
    if (!cb.is_constant()) b = *divide_exact(b, cb);
    if (a.degree(v) < b.degree(v)) std::swap(a, b);

    // subresultant remainder sequence in v: each pseudo-remainder is divided
    // by the known factor g*h^d, which keeps coefficient growth polynomial
    // without recomputing contents at every step
    Poly g = Poly::constant(a.nvars(), GaussRational(1));
    Poly h = g;
    while (b.degree(v) > 0) {
        long d = a.degree(v) - b.degree(v);
        Poly r = pseudo_rem(a, b, v);
        if (r.is_zero())
            return make_monic(c * *divide_exact(b, content_wrt(b, v, v + 1)));
        a = std::move(b);
        b = *divide_exact(r, g * h.pow(d));
        g = lead_coeff_wrt(a, v);
        if (d > 0) h = *divide_exact(g.pow(d), h.pow(d - 1));
    }
    // the primitive parts are coprime in v
    return make_monic(c);
}

} // namespace

Poly poly_gcd(const Poly& a, const Poly& b) { return gcd_rec(a, b, 0); }

std::optional<Poly> poly_sqrt(const Poly& p) {
    if (p.is_zero()) return p;
    if (p.is_constant()) {
        const GaussRational& c = p.constant_value();
        Rational root;
        if (!c.is_real() || !rat_is_perfect_square(c.re, root)) return std::nullopt;
        return Poly::constant(p.nvars(), GaussRational(root));
    }
    int v = first_active_var(p, p, 0);
    if (p.degree(v) % 2 != 0) return std::nullopt;
    Poly g = poly_gcd(p, p.derivative(v));
    if (g.is_constant()) return std::nullopt;  // squarefree non-constant
    auto w = divide_exact(p, g);
    if (!w) return std::nullopt;
    auto h = divide_exact(g, *w);
    if (!h) return std::nullopt;
    auto inner = poly_sqrt(make_monic(*h));
    if (!inner) return std::nullopt;
    Poly cand = (*w) * (*inner);
    auto ratio = divide_exact(p, cand * cand);
    if (!ratio || !ratio->is_constant()) return std::nullopt;
    const GaussRational& c = ratio->constant_value();
    Rational root;
    if (!c.is_real() || !rat_is_perfect_square(c.re, root)) return std::nullopt;
    Poly out = cand.scaled(GaussRational(root));
    const GaussRational& lc = out.leading().second;
    if (lc.re < 0 || (lc.re == 0 && lc.im < 0)) out = -out;
    return out;
}

// ---- rational functions ----

RatFun rf_normalize(Poly num, Poly den) {
    if (den.is_zero()) throw std::domain_error("division by an identically zero denominator");
    if (num.is_zero()) {
        return {Poly(num.nvars()), Poly::constant(num.nvars(), GaussRational(1))};
    }
    Poly g = poly_gcd(num, den);
    if (!g.is_constant()) {
        num = *divide_exact(num, g);
        den = *divide_exact(den, g);
    }
    GaussRational lc = den.leading().second;
    if (!lc.is_one()) {
        GaussRational inv = GaussRational(1) / lc;
        num = num.scaled(inv);
        den = den.scaled(inv);
    }
    return {std::move(num), std::move(den)};
}

namespace {

RatFun rf_zero(int nvars) { return {Poly(nvars), Poly::constant(nvars, GaussRational(1))}; }

RatFun monic_den(Poly num, Poly den) {
    GaussRational lc = den.leading().second;
    if (!lc.is_one()) {
        GaussRational inv = GaussRational(1) / lc;
        num = num.scaled(inv);
        den = den.scaled(inv);
    }
    return {std::move(num), std::move(den)};
}

Poly exact_quot(const Poly& num, const Poly& den) {
    if (den.is_constant()) return num.scaled(GaussRational(1) / den.constant_value());
    return *divide_exact(num, den);
}

} // namespace

// The arithmetic below assumes both operands are reduced (as produced by
// rf_normalize) and keeps that invariant.  Reducing by gcds of the parts
// before cross-multiplying keeps every gcd call on the smallest operands
// that can still carry a common factor.

RatFun rf_add(const RatFun& a, const RatFun& b) {
    if (a.num.is_zero()) return b;
    if (b.num.is_zero()) return a;
    Poly g0 = poly_gcd(a.den, b.den);
    Poly ad = exact_quot(a.den, g0);
    Poly bd = exact_quot(b.den, g0);
    Poly t = a.num * bd + b.num * ad;
    if (t.is_zero()) return rf_zero(a.num.nvars());
    if (g0.is_constant()) return monic_den(std::move(t), a.den * bd);
    // any factor shared with the combined denominator already divides g0
    Poly g1 = poly_gcd(t, g0);
    return monic_den(exact_quot(t, g1), exact_quot(a.den, g1) * bd);
}

RatFun rf_sub(const RatFun& a, const RatFun& b) { return rf_add(a, {-b.num, b.den}); }

RatFun rf_mul(const RatFun& a, const RatFun& b) {
    if (a.num.is_zero() || b.num.is_zero()) return rf_zero(a.num.nvars());
    Poly g1 = poly_gcd(a.num, b.den);
    Poly g2 = poly_gcd(b.num, a.den);
    return monic_den(exact_quot(a.num, g1) * exact_quot(b.num, g2),
                     exact_quot(a.den, g2) * exact_quot(b.den, g1));
}

RatFun rf_div(const RatFun& a, const RatFun& b) {
    if (b.num.is_zero()) throw std::domain_error("division by an identically zero denominator");
    if (a.num.is_zero()) return rf_zero(a.num.nvars());
    Poly g1 = poly_gcd(a.num, b.num);
    Poly g2 = poly_gcd(a.den, b.den);
    return monic_den(exact_quot(a.num, g1) * exact_quot(b.den, g2),
                     exact_quot(a.den, g2) * exact_quot(b.num, g1));
}

RatFun rf_pow(const RatFun& a, long n) {
    if (n < 0) return rf_pow(rf_div({Poly::constant(a.num.nvars(), GaussRational(1)),
                                     Poly::constant(a.num.nvars(), GaussRational(1))},
                                    a),
                             -n);
    return {a.num.pow(n), a.den.pow(n)};  // already reduced and monic
}

bool rf_equal(const RatFun& a, const RatFun& b) { return a.num == b.num && a.den == b.den; }

// ---- factored rational arithmetic ----
//
// The expression bridge keeps denominators as products of monic pairwise
// coprime bases.  Common denominators then come from exponent bookkeeping
// instead of gcds of expanded powers, and the one gcd that addition still
// needs runs against a small base instead of the full denominator.

namespace {

using DenParts = std::vector<std::pair<Poly, int>>;  // base^exp factors

struct FacRat {
    Poly num;
    DenParts den;
};

// insert base^exp, splitting factors until the list is pairwise coprime
void den_push(DenParts& out, Poly base, int exp) {
    if (exp == 0) return;
    DenParts work{{make_monic(std::move(base)), exp}};
    while (!work.empty()) {
        auto [g, e] = std::move(work.back());
        work.pop_back();
        if (g.is_constant()) continue;
        bool split = false;
        for (size_t i = 0; i < out.size(); ++i) {
            Poly d = poly_gcd(g, out[i].first);
            if (d.is_constant()) continue;
            Poly bb = out[i].first;
            int m = 0;
            while (auto q = divide_exact(bb, d)) {
                bb = std::move(*q);
                ++m;
            }
            Poly gg = std::move(g);
            int n = 0;
            while (auto q = divide_exact(gg, d)) {
                gg = std::move(*q);
                ++n;
            }
            int ei = out[i].second;
            out.erase(out.begin() + i);
            work.push_back({std::move(d), m * ei + n * e});
            if (!bb.is_constant()) work.push_back({make_monic(std::move(bb)), ei});
            if (!gg.is_constant()) work.push_back({make_monic(std::move(gg)), e});
            split = true;
            break;
        }
        if (!split) out.push_back({std::move(g), e});
    }
}

// multiplicity of u in the factored denominator
int den_mult_of(const Poly& u, const DenParts& den) {
    int total = 0;
    for (const auto& [b, e] : den) {
        Poly t = b;
        int k = 0;
        while (auto q = divide_exact(t, u)) {
            t = std::move(*q);
            ++k;
        }
        total += k * e;
    }
    return total;
}

Poly den_expand(const DenParts& den, int nvars) {
    Poly d = Poly::constant(nvars, GaussRational(1));
    for (const auto& [b, e] : den) d = d * b.pow(e);
    return d;
}

// cancel every factor the numerator shares with the denominator bases
void reduce_num_den(Poly& num, DenParts& den) {
    if (num.is_constant()) return;
    size_t i = 0;
    while (i < den.size()) {
        Poly g = poly_gcd(num, den[i].first);
        if (g.is_constant()) {
            ++i;
            continue;
        }
        auto [b, e] = std::move(den[i]);
        den.erase(den.begin() + i);
        int m = 0;
        while (auto q = divide_exact(b, g)) {
            b = std::move(*q);
            ++m;
        }
        int avail = m * e, used = 0;
        while (used < avail) {
            auto q = divide_exact(num, g);
            if (!q) break;
            num = std::move(*q);
            ++used;
        }
        if (avail > used) den_push(den, g, avail - used);
        if (!b.is_constant()) den_push(den, std::move(b), e);
        i = 0;  // the list changed shape; rescan (it stays tiny)
    }
}

FacRat fac_zero(int nvars) { return {Poly(nvars), {}}; }

FacRat fac_add(const FacRat& a, const FacRat& b) {
    if (a.num.is_zero()) return b;
    if (b.num.is_zero()) return a;
    int nvars = a.num.nvars();
    DenParts basis = a.den;
    for (const auto& [u, e] : b.den) den_push(basis, u, e);
    Poly cof_a = Poly::constant(nvars, GaussRational(1));
    Poly cof_b = cof_a;
    DenParts out;
    for (const auto& [u, e_merged] : basis) {
        int ea = den_mult_of(u, a.den);
        int eb = den_mult_of(u, b.den);
        int m = std::max(ea, eb);
        if (m > ea) cof_a = cof_a * u.pow(m - ea);
        if (m > eb) cof_b = cof_b * u.pow(m - eb);
        out.push_back({u, m});
    }
    Poly t = a.num * cof_a + b.num * cof_b;
    if (t.is_zero()) return fac_zero(nvars);
    reduce_num_den(t, out);
    return {std::move(t), std::move(out)};
}

FacRat fac_mul(const FacRat& a, const FacRat& b) {
    if (a.num.is_zero() || b.num.is_zero()) return fac_zero(a.num.nvars());
    Poly num = a.num * b.num;
    DenParts den = a.den;
    for (const auto& [u, e] : b.den) den_push(den, u, e);
    reduce_num_den(num, den);
    return {std::move(num), std::move(den)};
}

FacRat fac_pow(const FacRat& a, long n) {
    int nvars = a.num.nvars();
    if (n == 0) return {Poly::constant(nvars, GaussRational(1)), {}};
    if (n > 0) {
        FacRat out{a.num.pow(n), a.den};
        for (auto& [u, e] : out.den) e = (int)(e * n);
        return out;
    }
    if (a.num.is_zero()) throw std::domain_error("division by an identically zero denominator");
    // invert once, then raise; inversion expands the old denominator
    FacRat inv{den_expand(a.den, nvars), {}};
    GaussRational lc = a.num.leading().second;
    if (!lc.is_one()) inv.num = inv.num.scaled(GaussRational(1) / lc);
    if (!a.num.is_constant()) den_push(inv.den, a.num, 1);
    return fac_pow(inv, -n);
}

} // namespace

// ---- expression bridge ----

PolyRing PolyRing::spanning(const std::vector<Expr>& roots) {
    PolyRing ring;
    auto add = [&ring](Expr e) {
        if (!ring.index.count(e.id())) {
            ring.index.emplace(e.id(), (int)ring.gens.size());
            ring.gens.push_back(e);
        }
    };
    for (Expr r : roots) {
        std::set<std::string> vars;
        collect_vars(r, vars);
        for (const auto& v : vars) add(ex_var(v));
        std::vector<Expr> atoms;
        collect_atoms(r, atoms);
        for (Expr a : atoms) add(a);
    }
    return ring;
}

int PolyRing::gen_index(Expr e) const {
    auto it = index.find(e.id());
    return it == index.end() ? -1 : it->second;
}

namespace {

FacRat to_facrat_rec(Expr e, const PolyRing& ring,
                     std::unordered_map<uint32_t, FacRat>& memo) {
    if (auto it = memo.find(e.id()); it != memo.end()) return it->second;
    int n = ring.size();
    FacRat out = fac_zero(n);
    switch (ex_op(e)) {
        case Op::Number: out.num = Poly::constant(n, ex_value(e)); break;
        case Op::Add: {
            for (Expr k : ex_kids(e)) out = fac_add(out, to_facrat_rec(k, ring, memo));
            break;
        }
        case Op::Mul: {
            out.num = Poly::constant(n, GaussRational(1));
            for (Expr k : ex_kids(e)) out = fac_mul(out, to_facrat_rec(k, ring, memo));
            break;
        }
        case Op::Pow:
            out = fac_pow(to_facrat_rec(ex_kids(e).front(), ring, memo), ex_ipow(e));
            break;
        default: {
            int idx = ring.gen_index(e);
            if (idx < 0) throw std::logic_error("expression outside its polynomial ring");
            out.num = Poly::gen(n, idx);
            break;
        }
    }
    memo.emplace(e.id(), out);
    return out;
}

} // namespace

RatFun expr_to_ratfun(Expr e, const PolyRing& ring) {
    std::unordered_map<uint32_t, FacRat> memo;
    FacRat f = to_facrat_rec(e, ring, memo);
    return {std::move(f.num), den_expand(f.den, ring.size())};
}

Expr poly_to_expr(const Poly& p, const PolyRing& ring) {
    std::vector<Expr> terms;
    for (const auto& [m, c] : p.terms()) {
        std::vector<Expr> factors{ex_number(c)};
        for (int i = 0; i < p.nvars(); ++i)
            if (m[i] != 0) factors.push_back(ex_pow(ring.gens[i], m[i]));
        terms.push_back(ex_mul(std::move(factors)));
    }
    return ex_add(std::move(terms));
}

Expr ratfun_to_expr(const RatFun& f, const PolyRing& ring) {
    Expr num = poly_to_expr(f.num, ring);
    if (f.den.is_constant() && f.den.constant_value().is_one()) return num;
    return ex_div(num, poly_to_expr(f.den, ring));
}

namespace {

Expr canonicalize(Expr e) {
    PolyRing ring = PolyRing::spanning({e});
    return ratfun_to_expr(expr_to_ratfun(e, ring), ring);
}

// rebuild with canonicalized atom arguments, then canonicalize the whole
Expr simplify_rec(Expr e, std::unordered_map<uint32_t, Expr>& memo) {
    if (auto it = memo.find(e.id()); it != memo.end()) return it->second;
    Expr out = e;
    switch (ex_op(e)) {
        case Op::Number:
        case Op::Var: break;
        case Op::Exp: out = ex_exp(simplify_rec(ex_kids(e).front(), memo)); break;
        case Op::Log: out = ex_log(simplify_rec(ex_kids(e).front(), memo)); break;
        case Op::Sin: out = ex_sin(simplify_rec(ex_kids(e).front(), memo)); break;
        case Op::Cos: out = ex_cos(simplify_rec(ex_kids(e).front(), memo)); break;
        case Op::Sqrt: out = ex_sqrt(simplify_rec(ex_kids(e).front(), memo)); break;
        case Op::Add: {
            std::vector<Expr> kids;
            for (Expr k : ex_kids(e)) kids.push_back(simplify_rec(k, memo));
            out = canonicalize(ex_add(std::move(kids)));
            break;
        }
        case Op::Mul: {
            std::vector<Expr> kids;
            for (Expr k : ex_kids(e)) kids.push_back(simplify_rec(k, memo));
            out = canonicalize(ex_mul(std::move(kids)));
            break;
        }
        case Op::Pow:
            out = canonicalize(ex_pow(simplify_rec(ex_kids(e).front(), memo), ex_ipow(e)));
            break;
    }
    memo.emplace(e.id(), out);
    return out;
}

} // namespace

Expr simplify(Expr e) {
    std::unordered_map<uint32_t, Expr> memo;
    Expr rebuilt = simplify_rec(e, memo);
    PolyRing ring = PolyRing::spanning({rebuilt});
    return ratfun_to_expr(expr_to_ratfun(rebuilt, ring), ring);
}

bool canonical_form_is_zero(Expr e) {
    PolyRing ring = PolyRing::spanning({e});
    std::unordered_map<uint32_t, FacRat> memo;
    return to_facrat_rec(e, ring, memo).num.is_zero();
}

} // namespace liouville
