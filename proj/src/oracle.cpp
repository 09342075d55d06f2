#include "liouville/oracle.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "liouville/poly.hpp"

namespace liouville {

namespace {

struct BasisMonomial {
    int slot;  // p_y-exponent of the momentum monomial the coefficient sits on
    int xdeg;
    int ydeg;
};

Poly lcm_poly(const Poly& a, const Poly& b) {
    auto q = divide_exact(a, poly_gcd(a, b));
    if (!q) throw std::logic_error("gcd does not divide its argument");
    return *q * b;
}

// scale to Gaussian-integer entries, strip the integer content, and fix the
// sign of the first nonzero entry; the result is a canonical representative
// of the row's line, and integer entries keep the elimination fraction-free
void make_primitive(std::vector<GaussRational>& row) {
    mpz_class den(1), num(0);
    for (const auto& v : row) {
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.re.get_den().get_mpz_t());
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.im.get_den().get_mpz_t());
    }
    for (const auto& v : row) {
        mpz_class a = v.re.get_num() * (den / v.re.get_den());
        mpz_class b = v.im.get_num() * (den / v.im.get_den());
        mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), a.get_mpz_t());
        mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), b.get_mpz_t());
    }
    if (num == 0) return;
    GaussRational s{Rational(den) / Rational(num)};
    for (const auto& v : row) {
        if (v.is_zero()) continue;
        if (v.re < 0 || (v.re == 0 && v.im < 0)) s = -s;
        break;
    }
    for (auto& v : row) v *= s;
}

}  // namespace

DimensionResult integral_space_dimension(const Metric& g, int n, const AnsatzSpec& spec) {
    if (n < 1) throw std::invalid_argument("integral degree must be at least 1");
    if (spec.x_lo > spec.x_hi || spec.y_lo > spec.y_hi)
        throw std::invalid_argument("empty ansatz exponent range");

    for (int i = 0; i < 2; ++i)
        for (int j = i; j < 2; ++j) {
            std::vector<Expr> atoms;
            collect_atoms(g.g(i, j), atoms);
            if (!atoms.empty())
                throw std::domain_error(
                    "the dimension oracle needs metric entries that are rational in the "
                    "coordinates; entry contains " + to_string(atoms.front()));
        }

    const long nx = spec.x_hi - spec.x_lo + 1;
    const long ny = spec.y_hi - spec.y_lo + 1;
    const long total = static_cast<long>(n + 1) * nx * ny;
    if (total > spec.max_unknowns)
        throw std::invalid_argument("ansatz basis has " + std::to_string(total) +
                                    " monomials, above the cap of " +
                                    std::to_string(spec.max_unknowns));

    const std::string& x = g.xname();
    const std::string& y = g.yname();

    std::vector<BasisMonomial> unknowns;
    unknowns.reserve(total);
    for (int j = 0; j <= n; ++j)
        for (int a = spec.x_lo; a <= spec.x_hi; ++a)
            for (int b = spec.y_lo; b <= spec.y_hi; ++b) unknowns.push_back({j, a, b});
    const int cols = static_cast<int>(unknowns.size());

    const MomentaPolynomial ham = hamiltonian(g);
    const PolyRing ring =
        PolyRing::spanning({g.g(0, 0), g.g(0, 1), g.g(1, 1), ex_var(x), ex_var(y)});

    auto coeff_monomial = [&](const BasisMonomial& u) {
        return ex_mul({ex_pow(ex_var(x), u.xdeg), ex_pow(ex_var(y), u.ydeg)});
    };

    // column u of the system holds the momentum-row coefficients of {H, F_u}
    std::vector<std::vector<RatFun>> column(cols);
    for (int u = 0; u < cols; ++u) {
        std::vector<Expr> c(n + 1, Expr());
        c[unknowns[u].slot] = coeff_monomial(unknowns[u]);
        MomentaPolynomial bracket =
            poisson_bracket(ham, MomentaPolynomial(x, y, std::move(c)));
        column[u].reserve(n + 2);
        for (int k = 0; k <= n + 1; ++k)
            column[u].push_back(expr_to_ratfun(bracket.coeffs()[k], ring));
    }

    // one momentum row at a time: clear the least common denominator, then
    // each coordinate monomial that appears contributes one linear equation
    std::vector<std::vector<GaussRational>> rows;
    for (int k = 0; k <= n + 1; ++k) {
        Poly lcd = Poly::constant(ring.size(), GaussRational(1));
        for (int u = 0; u < cols; ++u)
            if (!column[u][k].num.is_zero()) lcd = lcm_poly(lcd, column[u][k].den);
        std::map<Monomial, std::vector<GaussRational>> equations;
        for (int u = 0; u < cols; ++u) {
            const RatFun& r = column[u][k];
            if (r.num.is_zero()) continue;
            auto cofactor = divide_exact(lcd, r.den);
            if (!cofactor) throw std::logic_error("common denominator failed to clear a row");
            Poly cleared = r.num * *cofactor;
            for (const auto& [mono, value] : cleared.terms()) {
                auto it = equations.try_emplace(mono, std::vector<GaussRational>(cols)).first;
                it->second[u] = value;
            }
        }
        for (auto& [mono, row] : equations) rows.push_back(std::move(row));
    }

    DimensionResult out;
    out.unknowns = cols;
    out.equations = static_cast<int>(rows.size());

    // fraction-free elimination (Bareiss): rows start as primitive integer
    // vectors, every interior division is exact
    for (auto& row : rows) make_primitive(row);
    const int nrows = static_cast<int>(rows.size());
    std::vector<int> pivot_col;
    GaussRational prev(1);
    for (int c = 0; c < cols && out.rank < nrows; ++c) {
        int p = -1;
        for (int i = out.rank; i < nrows; ++i)
            if (!rows[i][c].is_zero()) {
                p = i;
                break;
            }
        if (p < 0) continue;
        std::swap(rows[p], rows[out.rank]);
        const GaussRational piv = rows[out.rank][c];
        for (int i = out.rank + 1; i < nrows; ++i) {
            for (int j = c + 1; j < cols; ++j)
                rows[i][j] = (piv * rows[i][j] - rows[i][c] * rows[out.rank][j]) / prev;
            rows[i][c] = GaussRational();
        }
        prev = piv;
        pivot_col.push_back(c);
        ++out.rank;
    }
    out.dimension = cols - out.rank;

    std::vector<bool> is_pivot(cols, false);
    for (int c : pivot_col) is_pivot[c] = true;
    for (int fc = 0; fc < cols; ++fc) {
        if (is_pivot[fc]) continue;
        std::vector<GaussRational> v(cols);
        v[fc] = GaussRational(1);
        for (int i = out.rank - 1; i >= 0; --i) {
            const int c = pivot_col[i];
            GaussRational s;
            for (int j = c + 1; j < cols; ++j)
                if (!v[j].is_zero() && !rows[i][j].is_zero()) s += rows[i][j] * v[j];
            v[c] = -s / rows[i][c];
        }
        make_primitive(v);

        std::vector<std::vector<Expr>> slot_terms(n + 1);
        for (int u = 0; u < cols; ++u)
            if (!v[u].is_zero())
                slot_terms[unknowns[u].slot].push_back(ex_number(v[u]) * coeff_monomial(unknowns[u]));
        std::vector<Expr> coeffs(n + 1, Expr());
        for (int j = 0; j <= n; ++j) coeffs[j] = ex_add(std::move(slot_terms[j]));
        MomentaPolynomial f(x, y, std::move(coeffs));
        if (is_first_integral(g, f) != TriState::Zero)
            throw std::logic_error("kernel vector failed the exact first-integral check");
        out.basis.push_back(std::move(f));
    }
    return out;
}

} // namespace liouville
