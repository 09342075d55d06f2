#include "liouville/bigfloat.hpp"

#include <vector>

namespace liouville {

std::string BigFloat::to_string(int digits) const {
    std::vector<char> buf(digits + 64);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, v_);
    return std::string(buf.data());
}

BigComplex operator/(const BigComplex& a, const BigComplex& b) {
    BigFloat n = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}

BigComplex cpow(const BigComplex& z, long n) {
    long prec = z.prec();
    if (n == 0) return {BigFloat(Rational(1), prec), BigFloat(prec)};
    BigComplex base = z;
    unsigned long e = n < 0 ? -(unsigned long)n : (unsigned long)n;
    if (n < 0) base = BigComplex(GaussRational(1), prec) / base;
    BigComplex acc(GaussRational(1), prec);
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

BigComplex cexp(const BigComplex& z) {
    BigFloat m = BigFloat::exp(z.re);
    return {m * BigFloat::cos(z.im), m * BigFloat::sin(z.im)};
}

BigComplex clog(const BigComplex& z) {
    return {BigFloat::log(z.abs()), BigFloat::atan2(z.im, z.re)};
}

BigComplex csin(const BigComplex& z) {
    return {BigFloat::sin(z.re) * BigFloat::cosh(z.im),
            BigFloat::cos(z.re) * BigFloat::sinh(z.im)};
}

BigComplex ccos(const BigComplex& z) {
    return {BigFloat::cos(z.re) * BigFloat::cosh(z.im),
            -(BigFloat::sin(z.re) * BigFloat::sinh(z.im))};
}

BigComplex csqrt(const BigComplex& z) {
    long prec = z.prec();
    if (z.re.is_zero() && z.im.is_zero()) return BigComplex(prec);
    BigFloat m = z.abs();
    BigFloat half(Rational(1, 2), prec);
    BigFloat t = BigFloat::sqrt((m + BigFloat::abs(z.re)) * half);
    BigFloat two(Rational(2), prec);
    if (!z.re.is_neg()) {
        return {t, z.im / (two * t)};
    }
    BigFloat u = BigFloat::abs(z.im) / (two * t);
    if (z.im.is_neg()) return {u, -t};
    return {u, t};
}

} // namespace liouville
