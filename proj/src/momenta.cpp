#include "liouville/momenta.hpp"

#include <sstream>
#include <stdexcept>

#include "liouville/parser.hpp"

namespace liouville {
namespace {

void check_same_space(const MomentaPolynomial& a, const MomentaPolynomial& b) {
    if (a.xname() != b.xname() || a.yname() != b.yname())
        throw std::invalid_argument("momenta polynomials live over different coordinates");
}

// derivative in the p_x (axis = 0) or p_y (axis = 1) direction
MomentaPolynomial momentum_partial(const MomentaPolynomial& f, int axis) {
    int n = f.degree();
    if (n == 0) return MomentaPolynomial(f.xname(), f.yname(), 0);
    std::vector<Expr> out(n, Expr());
    for (int j = 0; j <= n; ++j) {
        long w = axis == 0 ? n - j : j;
        if (w == 0) continue;
        out[axis == 0 ? j : j - 1] = ex_number(w) * f.coeffs()[j];
    }
    return MomentaPolynomial(f.xname(), f.yname(), std::move(out));
}

MomentaPolynomial base_partial(const MomentaPolynomial& f, int axis) {
    const std::string& v = axis == 0 ? f.xname() : f.yname();
    std::vector<Expr> out;
    out.reserve(f.degree() + 1);
    for (const Expr& c : f.coeffs()) out.push_back(differentiate(c, v));
    return MomentaPolynomial(f.xname(), f.yname(), std::move(out));
}

} // namespace

MomentaPolynomial::MomentaPolynomial(std::string xname, std::string yname, int degree)
    : x_(std::move(xname)), y_(std::move(yname)) {
    if (degree < 0) throw std::invalid_argument("the degree must be non-negative");
    if (x_.empty() || y_.empty() || x_ == y_)
        throw std::invalid_argument("coordinate names must be distinct and non-empty");
    c_.assign(degree + 1, Expr());
}

MomentaPolynomial::MomentaPolynomial(std::string xname, std::string yname, std::vector<Expr> coeffs)
    : x_(std::move(xname)), y_(std::move(yname)), c_(std::move(coeffs)) {
    if (c_.empty()) throw std::invalid_argument("a momenta polynomial needs degree + 1 coefficients");
    if (x_.empty() || y_.empty() || x_ == y_)
        throw std::invalid_argument("coordinate names must be distinct and non-empty");
}

Expr MomentaPolynomial::coeff(int i, int j) const {
    if (i < 0 || j < 0 || i + j != degree())
        throw std::invalid_argument("momentum exponents must be non-negative and sum to the degree");
    return c_[j];
}

MomentaPolynomial operator+(const MomentaPolynomial& a, const MomentaPolynomial& b) {
    check_same_space(a, b);
    if (a.degree() != b.degree())
        throw std::invalid_argument("cannot add momenta polynomials of different degrees");
    std::vector<Expr> out;
    out.reserve(a.degree() + 1);
    for (int j = 0; j <= a.degree(); ++j) out.push_back(a.coeffs()[j] + b.coeffs()[j]);
    return MomentaPolynomial(a.xname(), a.yname(), std::move(out));
}

MomentaPolynomial operator-(const MomentaPolynomial& a, const MomentaPolynomial& b) {
    return a + (-b);
}

MomentaPolynomial operator*(const MomentaPolynomial& a, const MomentaPolynomial& b) {
    check_same_space(a, b);
    std::vector<Expr> out(a.degree() + b.degree() + 1, Expr());
    for (int ja = 0; ja <= a.degree(); ++ja)
        for (int jb = 0; jb <= b.degree(); ++jb)
            out[ja + jb] = out[ja + jb] + a.coeffs()[ja] * b.coeffs()[jb];
    return MomentaPolynomial(a.xname(), a.yname(), std::move(out));
}

MomentaPolynomial operator*(Expr s, const MomentaPolynomial& f) {
    std::vector<Expr> out;
    out.reserve(f.degree() + 1);
    for (const Expr& c : f.coeffs()) out.push_back(s * c);
    return MomentaPolynomial(f.xname(), f.yname(), std::move(out));
}

MomentaPolynomial operator-(const MomentaPolynomial& f) { return ex_number(-1) * f; }

MomentaPolynomial hamiltonian(const Metric& g) {
    return MomentaPolynomial(g.xname(), g.yname(),
                             {g.inv(0, 0), ex_number(2) * g.inv(0, 1), g.inv(1, 1)});
}

MomentaPolynomial poisson_bracket(const MomentaPolynomial& f, const MomentaPolynomial& g) {
    check_same_space(f, g);
    int m = f.degree(), n = g.degree();
    if (m + n == 0) return MomentaPolynomial(f.xname(), f.yname(), 0);
    std::vector<Expr> acc(m + n, Expr());
    auto add = [&acc](const MomentaPolynomial& a, const MomentaPolynomial& b, int sign) {
        for (int ja = 0; ja <= a.degree(); ++ja)
            for (int jb = 0; jb <= b.degree(); ++jb) {
                Expr t = a.coeffs()[ja] * b.coeffs()[jb];
                acc[ja + jb] = acc[ja + jb] + (sign < 0 ? -t : t);
            }
    };
    if (m > 0) {
        add(momentum_partial(f, 0), base_partial(g, 0), +1);
        add(momentum_partial(f, 1), base_partial(g, 1), +1);
    }
    if (n > 0) {
        add(base_partial(f, 0), momentum_partial(g, 0), -1);
        add(base_partial(f, 1), momentum_partial(g, 1), -1);
    }
    return MomentaPolynomial(f.xname(), f.yname(), std::move(acc));
}

TriState is_first_integral(const Metric& g, const MomentaPolynomial& f, const ZeroPolicy& policy) {
    if (f.xname() != g.xname() || f.yname() != g.yname())
        throw std::invalid_argument("the polynomial does not live over the metric's coordinates");
    MomentaPolynomial br = poisson_bracket(hamiltonian(g), f);
    bool undecided = false;
    for (const Expr& c : br.coeffs()) {
        ZeroReport r = test_zero(c, policy);
        if (r.verdict == TriState::Nonzero) return TriState::Nonzero;
        if (r.verdict != TriState::Zero) undecided = true;
    }
    return undecided ? TriState::Undecided : TriState::Zero;
}

TriState is_first_integral(const Metric& g, const MomentaPolynomial& f) {
    return is_first_integral(g, f, g.policy());
}

Expr PdeSystem::apply(int row, const std::vector<Expr>& coeffs) const {
    if (row < 0 || row >= rows()) throw std::invalid_argument("system row out of range");
    if (static_cast<int>(coeffs.size()) != cols())
        throw std::invalid_argument("the coefficient tuple has the wrong length");
    std::vector<Expr> terms;
    terms.reserve(3 * cols());
    for (int j = 0; j < cols(); ++j) {
        terms.push_back(dx[row][j] * differentiate(coeffs[j], x));
        terms.push_back(dy[row][j] * differentiate(coeffs[j], y));
        terms.push_back(c0[row][j] * coeffs[j]);
    }
    return ex_add(std::move(terms));
}

PdeSystem flow_pde_system(const Metric& g, int n) {
    if (n < 1 || n > 4) throw std::invalid_argument("the integral degree must be between 1 and 4");
    MomentaPolynomial h = hamiltonian(g);
    MomentaPolynomial hpx = momentum_partial(h, 0), hpy = momentum_partial(h, 1);
    MomentaPolynomial hx = base_partial(h, 0), hy = base_partial(h, 1);
    PdeSystem s;
    s.x = g.xname();
    s.y = g.yname();
    s.degree = n;
    s.dx.assign(n + 2, std::vector<Expr>(n + 1, Expr()));
    s.dy.assign(n + 2, std::vector<Expr>(n + 1, Expr()));
    s.c0.assign(n + 2, std::vector<Expr>(n + 1, Expr()));
    for (int j = 0; j <= n; ++j) {
        std::vector<Expr> unit(n + 1, Expr());
        unit[j] = ex_number(1);
        MomentaPolynomial mono(s.x, s.y, std::move(unit));
        MomentaPolynomial px_part = hpx * mono;
        MomentaPolynomial py_part = hpy * mono;
        MomentaPolynomial order0 = -(hx * momentum_partial(mono, 0) + hy * momentum_partial(mono, 1));
        for (int k = 0; k <= n + 1; ++k) {
            s.dx[k][j] = px_part.coeffs()[k];
            s.dy[k][j] = py_part.coeffs()[k];
            s.c0[k][j] = order0.coeffs()[k];
        }
    }
    return s;
}

namespace {

// scalar operator as mixed-partial coefficients: (a, b) -> factor of d_x^a d_y^b
using OpTerms = std::map<std::pair<int, int>, Expr>;

Expr mixed_partial(Expr e, const std::string& x, int a, const std::string& y, int b) {
    for (int i = 0; i < a; ++i) e = differentiate(e, x);
    for (int i = 0; i < b; ++i) e = differentiate(e, y);
    return e;
}

long binom(int n, int k) {
    long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// composition outer(inner(f)), expanded by the Leibniz rule
OpTerms compose(const OpTerms& outer, const OpTerms& inner, const std::string& x,
                const std::string& y) {
    OpTerms out;
    for (const auto& [po, co] : outer)
        for (const auto& [pi, ci] : inner)
            for (int ax = 0; ax <= po.first; ++ax)
                for (int ay = 0; ay <= po.second; ++ay) {
                    Expr c = co * ex_number(binom(po.first, ax) * binom(po.second, ay)) *
                             mixed_partial(ci, x, po.first - ax, y, po.second - ay);
                    if (ex_is_zero(c)) continue;
                    std::pair<int, int> key{pi.first + ax, pi.second + ay};
                    auto it = out.try_emplace(key, Expr()).first;
                    it->second = it->second + c;
                }
    for (auto it = out.begin(); it != out.end();)
        it = ex_is_zero(it->second) ? out.erase(it) : std::next(it);
    return out;
}

} // namespace

Expr TupleOperator::apply(const std::vector<Expr>& coeffs) const {
    if (coeffs.size() != columns.size())
        throw std::invalid_argument("the coefficient tuple has the wrong length");
    std::vector<Expr> terms;
    for (std::size_t j = 0; j < columns.size(); ++j)
        for (const auto& [key, c] : columns[j])
            terms.push_back(c * mixed_partial(coeffs[j], x, key.first, y, key.second));
    return ex_add(std::move(terms));
}

TupleOperator multi_bracket(const PdeSystem& s) {
    if (s.degree != 1)
        throw std::invalid_argument("the multi-bracket is implemented for degree-1 systems only");
    auto op = [&s](int row, int col) {
        OpTerms t;
        if (!ex_is_zero(s.dx[row][col])) t[{1, 0}] = s.dx[row][col];
        if (!ex_is_zero(s.dy[row][col])) t[{0, 1}] = s.dy[row][col];
        if (!ex_is_zero(s.c0[row][col])) t[{0, 0}] = s.c0[row][col];
        return t;
    };
    // row permutations with parity; the first two rows supply the scalar
    // factors, the last one stays a full equation
    static const int kRowPerm[6][4] = {{0, 1, 2, 1}, {1, 2, 0, 1},  {2, 0, 1, 1},
                                       {0, 2, 1, -1}, {2, 1, 0, -1}, {1, 0, 2, -1}};
    TupleOperator out;
    out.x = s.x;
    out.y = s.y;
    out.columns.assign(2, {});
    Expr half = ex_rational(Rational(1, 2));
    for (const auto& p : kRowPerm) {
        // an unknown's slot label is its p_x-exponent, so slot label l lives
        // in column degree - l; the two slot orders carry opposite signs
        for (int swapped = 0; swapped < 2; ++swapped) {
            int sgn = swapped ? -p[3] : p[3];
            int col_a = swapped ? 0 : 1;  // column of the first factor's slot
            int col_b = swapped ? 1 : 0;
            OpTerms pair = compose(op(p[0], col_a), op(p[1], col_b), s.x, s.y);
            for (int j = 0; j < 2; ++j) {
                OpTerms full = compose(pair, op(p[2], j), s.x, s.y);
                for (const auto& [key, c] : full) {
                    Expr piece = half * ex_number(sgn) * c;
                    auto it = out.columns[j].try_emplace(key, Expr()).first;
                    it->second = it->second + piece;
                }
            }
        }
    }
    for (auto& col : out.columns)
        for (auto it = col.begin(); it != col.end();)
            it = ex_is_zero(it->second) ? col.erase(it) : std::next(it);
    return out;
}

std::string to_string(const MomentaPolynomial& f) {
    std::ostringstream out;
    int n = f.degree();
    for (int j = 0; j <= n; ++j) out << (n - j) << ' ' << j << ' ' << to_string(f.coeffs()[j]) << '\n';
    return out.str();
}

MomentaPolynomial parse_momenta_polynomial(const std::string& text, const std::string& xname,
                                           const std::string& yname,
                                           const std::set<std::string>& param_names) {
    std::set<std::string> names = param_names;
    names.insert(xname);
    names.insert(yname);
    std::istringstream in(text);
    std::string line;
    std::map<std::pair<long, long>, Expr> entries;
    long degree = -1;
    int lineno = 0;
    auto fail = [&lineno](const std::string& what) {
        throw std::invalid_argument("integral line " + std::to_string(lineno) + ": " + what);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ls(line);
        long i = 0, j = 0;
        if (!(ls >> i >> j)) fail("expected \"<i> <j> <coefficient>\"");
        if (i < 0 || j < 0) fail("momentum exponents must be non-negative");
        if (degree < 0) degree = i + j;
        if (i + j != degree) fail("monomials of mixed total degree");
        std::string rest;
        std::getline(ls, rest);
        if (!entries.emplace(std::pair{i, j}, parse_expression(rest, names)).second)
            fail("duplicate monomial");
    }
    if (degree < 0) throw std::invalid_argument("no momentum monomials found");
    std::vector<Expr> c(degree + 1, Expr());
    for (const auto& [key, e] : entries) c[key.second] = e;
    return MomentaPolynomial(xname, yname, std::move(c));
}

} // namespace liouville
