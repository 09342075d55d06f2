#include "liouville/metric.hpp"

#include <cmath>
#include <set>
#include <utility>

#include "liouville/bigfloat.hpp"
#include "liouville/poly.hpp"

namespace liouville {
namespace {

struct ProbeRng {
    uint64_t state;
    explicit ProbeRng(uint64_t seed) : state(seed) {}
    uint64_t next() {
        state += 0x9e3779b97f4a7c15ULL;
        uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    Rational in_box(const Rational& lo, const Rational& hi) {
        Rational t(static_cast<long>(next() & 0xffffu), 65536);
        return lo + (hi - lo) * t;
    }
};

// real float values of e at deterministic box points; points where the
// evaluation blows up or leaves the real line are skipped
std::vector<double> probe_values(Expr e, const ZeroPolicy& policy, int want) {
    std::set<std::string> vars;
    collect_vars(e, vars);
    ProbeRng rng(policy.seed ^ 0x70726f6265ULL);
    std::vector<double> out;
    for (int attempt = 0; attempt < want * 6 && static_cast<int>(out.size()) < want; ++attempt) {
        FloatContext ctx;
        ctx.prec = policy.prec_bits;
        for (const auto& v : vars)
            ctx.vars.emplace(v, BigComplex(GaussRational(rng.in_box(policy.box_lo, policy.box_hi)),
                                           policy.prec_bits));
        try {
            BigComplex val = eval_float(e, ctx);
            double re = val.re.to_double(), im = val.im.to_double();
            if (!std::isfinite(re) || !std::isfinite(im)) continue;
            if (std::abs(im) > 1e-30 * std::max(1.0, ctx.max_abs)) continue;
            out.push_back(re);
        } catch (...) {
            continue;
        }
    }
    return out;
}

Expr det3(const Expr m[3][3]) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

} // namespace

Metric::Metric(std::string xname, std::string yname, Expr g11, Expr g12, Expr g22,
               int orientation, ZeroPolicy policy)
    : x_(std::move(xname)), y_(std::move(yname)), orientation_(orientation),
      policy_(std::move(policy)) {
    if (orientation_ != 1 && orientation_ != -1)
        throw MetricError("orientation must be +1 or -1");
    if (x_.empty() || y_.empty() || x_ == y_)
        throw MetricError("coordinate names must be distinct and non-empty");
    g_[0][0] = g11;
    g_[0][1] = g12;
    g_[1][0] = g12;
    g_[1][1] = g22;
    det_ = g11 * g22 - g12 * g12;

    ZeroReport dz = test_zero(det_, policy_);
    if (dz.verdict == TriState::Zero)
        throw MetricError("degenerate metric: det g vanishes identically");
    if (dz.verdict == TriState::Undecided)
        throw MetricError("cannot certify det g is nonzero: " + dz.note);

    probe_signature();

    inv_[0][0] = g_[1][1] / det_;
    inv_[0][1] = -(g_[0][1] / det_);
    inv_[1][0] = inv_[0][1];
    inv_[1][1] = g_[0][0] / det_;

    sqrt_det_ = signature_ == Signature::Riemannian ? extract_sqrt_det() : ex_sqrt(det_);

    Expr half = ex_rational(Rational(1, 2));
    for (int k = 0; k < 2; ++k)
        for (int i = 0; i < 2; ++i)
            for (int j = i; j < 2; ++j) {
                std::vector<Expr> terms;
                for (int m = 0; m < 2; ++m)
                    terms.push_back(inv_[k][m] * (partial(g_[m][j], i) + partial(g_[m][i], j) -
                                                  partial(g_[i][j], m)));
                gamma_[k][i][j] = half * ex_add(std::move(terms));
                gamma_[k][j][i] = gamma_[k][i][j];
            }
}

Expr Metric::partial(Expr f, int i) const {
    return differentiate(f, i == 0 ? x_ : y_);
}

void Metric::probe_signature() {
    std::set<std::string> vars;
    collect_vars(det_, vars);
    collect_vars(g_[0][0], vars);
    ProbeRng rng(policy_.seed ^ 0x7369676eULL);
    int pos = 0, neg = 0, valid = 0;
    bool g11_nonpos = false;
    for (int attempt = 0; attempt < 32 && valid < 6; ++attempt) {
        FloatContext ctx;
        ctx.prec = policy_.prec_bits;
        for (const auto& v : vars)
            ctx.vars.emplace(v, BigComplex(GaussRational(rng.in_box(policy_.box_lo, policy_.box_hi)),
                                           policy_.prec_bits));
        double d, a;
        try {
            BigComplex dv = eval_float(det_, ctx);
            BigComplex av = eval_float(g_[0][0], ctx);
            d = dv.re.to_double();
            a = av.re.to_double();
            if (!std::isfinite(d) || !std::isfinite(a)) continue;
            double tol = 1e-30 * std::max(1.0, ctx.max_abs);
            if (std::abs(dv.im.to_double()) > tol || std::abs(av.im.to_double()) > tol) continue;
            if (std::abs(d) <= tol)
                throw MetricError("det g vanishes inside the sample box");
        } catch (const MetricError&) {
            throw;
        } catch (...) {
            continue;
        }
        ++valid;
        (d > 0 ? pos : neg) += 1;
        if (d > 0 && a <= 0) g11_nonpos = true;
    }
    if (valid < 3)
        throw MetricError("could not probe the metric signature on the sample box");
    if (pos > 0 && neg > 0)
        throw MetricError("det g changes sign inside the sample box");
    if (neg > 0) {
        signature_ = Signature::Lorentzian;
        return;
    }
    if (g11_nonpos)
        throw MetricError("metric is negative definite on the sample box; negate it");
    signature_ = Signature::Riemannian;
}

Expr Metric::extract_sqrt_det() const {
    try {
        PolyRing ring = PolyRing::spanning({det_});
        RatFun rf = expr_to_ratfun(det_, ring);
        auto rn = poly_sqrt(rf.num);
        auto rd = poly_sqrt(rf.den);
        if (rn && rd) {
            Expr root = poly_to_expr(*rn, ring) / poly_to_expr(*rd, ring);
            for (double v : probe_values(root, policy_, 3)) {
                if (v > 0) return root;
                if (v < 0) return -root;
            }
        }
    } catch (...) {
    }
    return ex_sqrt(det_);
}

Expr gauss_curvature(const Metric& m) {
    Expr e = m.g(0, 0), f = m.g(0, 1), g = m.g(1, 1);
    Expr half = ex_rational(Rational(1, 2));
    Expr ex = m.partial(e, 0), ey = m.partial(e, 1);
    Expr fx = m.partial(f, 0), fy = m.partial(f, 1);
    Expr gx = m.partial(g, 0), gy = m.partial(g, 1);
    Expr eyy = m.partial(ey, 1), gxx = m.partial(gx, 0), fxy = m.partial(fx, 1);
    Expr a[3][3] = {{-(half * eyy) + fxy - half * gxx, half * ex, fx - half * ey},
                    {fy - half * gx, e, f},
                    {half * gy, f, g}};
    Expr b[3][3] = {{ex_number(0), half * ey, half * gx},
                    {half * ey, e, f},
                    {half * gx, f, g}};
    return (det3(a) - det3(b)) / (m.det() * m.det());
}

VectorField grad(const Metric& g, Expr f) {
    Expr fx = g.partial(f, 0), fy = g.partial(f, 1);
    return {g.inv(0, 0) * fx + g.inv(0, 1) * fy, g.inv(1, 0) * fx + g.inv(1, 1) * fy};
}

VectorField sgrad(const Metric& g, Expr f) {
    if (g.signature() != Signature::Riemannian)
        throw MetricError("sgrad needs a positive-definite metric");
    Expr s = g.orientation() == 1 ? g.sqrt_det() : -g.sqrt_det();
    return {-(g.partial(f, 1)) / s, g.partial(f, 0) / s};
}

Expr inner(const Metric& g, const VectorField& a, const VectorField& b) {
    Expr av[2] = {a.vx, a.vy}, bv[2] = {b.vx, b.vy};
    std::vector<Expr> terms;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            terms.push_back(g.g(i, j) * av[i] * bv[j]);
    return ex_add(std::move(terms));
}

Expr CovTensor::at(const std::vector<int>& idx) const {
    if (static_cast<int>(idx.size()) != valence)
        throw std::invalid_argument("index count does not match the valence");
    int pos = 0;
    for (int b : idx) {
        if (b != 0 && b != 1) throw std::invalid_argument("tensor indices are 0 or 1");
        pos = pos * 2 + b;
    }
    return comp[pos];
}

// new derivative slot goes first: (dT)_{i j1..jk} = d_i T_{j1..jk}
//                                                  - sum_r Gamma^m_{i j_r} T_{j1..m..jk}
CovTensor covariant_derivative(const Metric& g, const CovTensor& t) {
    int k = t.valence;
    CovTensor out;
    out.valence = k + 1;
    out.comp.assign(std::size_t(1) << (k + 1), Expr());
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < (1 << k); ++j) {
            Expr val = g.partial(t.comp[j], i);
            for (int r = 0; r < k; ++r) {
                int jr = (j >> (k - 1 - r)) & 1;
                for (int m = 0; m < 2; ++m) {
                    int jm = (j & ~(1 << (k - 1 - r))) | (m << (k - 1 - r));
                    val = val - g.christoffel(m, i, jr) * t.comp[jm];
                }
            }
            out.comp[(i << k) | j] = val;
        }
    return out;
}

CovTensor iterated_covariant_derivative(const Metric& g, Expr f, int l) {
    if (l < 0) throw std::invalid_argument("derivative order must be non-negative");
    CovTensor t;
    t.valence = 0;
    t.comp = {f};
    for (int k = 0; k < l; ++k) t = covariant_derivative(g, t);
    return t;
}

Expr contract(const CovTensor& t, const std::vector<VectorField>& args) {
    if (static_cast<int>(args.size()) != t.valence)
        throw std::invalid_argument("contract needs one vector field per slot");
    std::vector<Expr> terms;
    for (int idx = 0; idx < static_cast<int>(t.comp.size()); ++idx) {
        std::vector<Expr> factors{t.comp[idx]};
        for (int r = 0; r < t.valence; ++r) {
            int bit = (idx >> (t.valence - 1 - r)) & 1;
            factors.push_back(bit ? args[r].vy : args[r].vx);
        }
        terms.push_back(ex_mul(std::move(factors)));
    }
    return ex_add(std::move(terms));
}

Expr laplacian(const Metric& g, Expr f) {
    CovTensor d2 = iterated_covariant_derivative(g, f, 2);
    std::vector<Expr> terms;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            terms.push_back(g.inv(i, j) * d2.comp[(i << 1) | j]);
    return ex_add(std::move(terms));
}

Expr jacobian_invariant(const Metric& g, Expr f1, Expr f2) {
    Expr k = gauss_curvature(g);
    Expr kx = g.partial(k, 0), ky = g.partial(k, 1);
    if (test_zero(kx, g.policy()).verdict == TriState::Zero &&
        test_zero(ky, g.policy()).verdict == TriState::Zero)
        throw MetricError("jacobian_invariant is undefined: the curvature is constant");
    VectorField a = grad(g, k), b = sgrad(g, k);
    Expr i3 = inner(g, a, a);
    Expr f1a = g.partial(f1, 0) * a.vx + g.partial(f1, 1) * a.vy;
    Expr f2b = g.partial(f2, 0) * b.vx + g.partial(f2, 1) * b.vy;
    Expr f1b = g.partial(f1, 0) * b.vx + g.partial(f1, 1) * b.vy;
    Expr f2a = g.partial(f2, 0) * a.vx + g.partial(f2, 1) * a.vy;
    return (f1a * f2b - f1b * f2a) / i3;
}

} // namespace liouville
