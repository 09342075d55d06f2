#include "liouville/rational.hpp"

namespace liouville {

Rational rat_pow(const Rational& base, long n) {
    if (n == 0) return Rational(1);
    if (base == 0) {
        if (n < 0) throw std::domain_error("0 raised to a negative power");
        return Rational(0);
    }
    Rational b = n < 0 ? Rational(1) / base : base;
    unsigned long e = n < 0 ? -(unsigned long)n : (unsigned long)n;
    Rational out;
    mpz_pow_ui(out.get_num_mpz_t(), b.get_num_mpz_t(), e);
    mpz_pow_ui(out.get_den_mpz_t(), b.get_den_mpz_t(), e);
    out.canonicalize();
    return out;
}

Rational rat_from_string(const std::string& text) {
    auto dot = text.find('.');
    if (dot == std::string::npos) {
        Rational q;
        if (mpq_set_str(q.get_mpq_t(), text.c_str(), 10) != 0)
            throw std::invalid_argument("bad rational literal: " + text);
        q.canonicalize();
        return q;
    }
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    std::size_t frac_len = text.size() - dot - 1;
    if (digits.empty() || frac_len == 0)
        throw std::invalid_argument("bad decimal literal: " + text);
    Rational num;
    if (mpq_set_str(num.get_mpq_t(), digits.c_str(), 10) != 0)
        throw std::invalid_argument("bad decimal literal: " + text);
    Rational den(1);
    mpz_ui_pow_ui(den.get_num_mpz_t(), 10, frac_len);
    num /= den;
    num.canonicalize();
    return num;
}

std::string rat_to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

bool rat_is_perfect_square(const Rational& q, Rational& root) {
    if (q < 0) return false;
    if (q == 0) { root = 0; return true; }
    if (mpz_perfect_square_p(q.get_num_mpz_t()) == 0) return false;
    if (mpz_perfect_square_p(q.get_den_mpz_t()) == 0) return false;
    Rational r;
    mpz_sqrt(r.get_num_mpz_t(), q.get_num_mpz_t());
    mpz_sqrt(r.get_den_mpz_t(), q.get_den_mpz_t());
    r.canonicalize();
    root = r;
    return true;
}

GaussRational gauss_pow(const GaussRational& base, long n) {
    if (n == 0) return GaussRational(1);
    if (base.is_real()) return GaussRational(rat_pow(base.re, n));
    GaussRational b = base;
    long e = n;
    if (e < 0) { b = GaussRational(1) / b; e = -e; }
    GaussRational acc(1);
    while (e > 0) {
        if (e & 1) acc *= b;
        b *= b;
        e >>= 1;
    }
    return acc;
}

int gauss_cmp(const GaussRational& a, const GaussRational& b) {
    int c = cmp(a.re, b.re);
    if (c != 0) return c;
    return cmp(a.im, b.im);
}

std::string gauss_to_string(const GaussRational& z) {
    if (z.im == 0) return rat_to_string(z.re);
    std::string imag;
    if (z.im == 1) imag = "i";
    else if (z.im == -1) imag = "-i";
    else imag = rat_to_string(z.im) + "*i";
    if (z.re == 0) return imag;
    if (z.im > 0) return rat_to_string(z.re) + "+" + imag;
    return rat_to_string(z.re) + imag;
}

std::size_t gauss_hash(const GaussRational& z) {
    auto h1 = std::hash<std::string>{}(z.re.get_str());
    auto h2 = std::hash<std::string>{}(z.im.get_str());
    return h1 ^ (h2 * 0x9e3779b97f4a7c15ULL + (h1 << 6));
}

} // namespace liouville
