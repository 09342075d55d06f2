#pragma once

#include <mpfr.h>
#include <string>
#include "liouville/rational.hpp"

namespace liouville {

// value-semantics wrapper over mpfr_t; precision fixed at construction
class BigFloat {
public:
    explicit BigFloat(long prec = 128) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    BigFloat(const Rational& q, long prec) {
        mpfr_init2(v_, prec);
        mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
    }
    BigFloat(const BigFloat& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    BigFloat(BigFloat&& o) noexcept { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_swap(v_, o.v_); }
    BigFloat& operator=(BigFloat o) { mpfr_swap(v_, o.v_); return *this; }
    ~BigFloat() { mpfr_clear(v_); }

    long prec() const { return mpfr_get_prec(v_); }
    bool is_zero() const { return mpfr_zero_p(v_); }
    bool is_neg() const { return mpfr_sgn(v_) < 0; }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    std::string to_string(int digits) const;

    friend BigFloat operator+(const BigFloat& a, const BigFloat& b) { return bin(mpfr_add, a, b); }
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b) { return bin(mpfr_sub, a, b); }
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b) { return bin(mpfr_mul, a, b); }
    friend BigFloat operator/(const BigFloat& a, const BigFloat& b) { return bin(mpfr_div, a, b); }
    BigFloat operator-() const { BigFloat r(prec()); mpfr_neg(r.v_, v_, MPFR_RNDN); return r; }

    friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) < 0; }

    static BigFloat abs(const BigFloat& a) { BigFloat r(a.prec()); mpfr_abs(r.v_, a.v_, MPFR_RNDN); return r; }
    static BigFloat exp(const BigFloat& a) { return un(mpfr_exp, a); }
    static BigFloat log(const BigFloat& a) { return un(mpfr_log, a); }
    static BigFloat sin(const BigFloat& a) { return un(mpfr_sin, a); }
    static BigFloat cos(const BigFloat& a) { return un(mpfr_cos, a); }
    static BigFloat sinh(const BigFloat& a) { return un(mpfr_sinh, a); }
    static BigFloat cosh(const BigFloat& a) { return un(mpfr_cosh, a); }
    static BigFloat sqrt(const BigFloat& a) { return un(mpfr_sqrt, a); }
    static BigFloat hypot(const BigFloat& a, const BigFloat& b) { return bin(mpfr_hypot, a, b); }
    static BigFloat atan2(const BigFloat& y, const BigFloat& x) { return bin(mpfr_atan2, y, x); }
    static BigFloat pow_si(const BigFloat& a, long n) {
        BigFloat r(a.prec());
        mpfr_pow_si(r.v_, a.v_, n, MPFR_RNDN);
        return r;
    }

private:
    using Unary = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);
    using Binary = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
    static BigFloat un(Unary f, const BigFloat& a) {
        BigFloat r(a.prec());
        f(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    static BigFloat bin(Binary f, const BigFloat& a, const BigFloat& b) {
        BigFloat r(a.prec());
        f(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    mpfr_t v_;
};

struct BigComplex {
    BigFloat re, im;

    explicit BigComplex(long prec = 128) : re(prec), im(prec) {}
    BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}
    BigComplex(const GaussRational& z, long prec) : re(z.re, prec), im(z.im, prec) {}

    long prec() const { return re.prec(); }
    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    // magnitude (exact up to rounding)
    BigFloat abs() const { return BigFloat::hypot(re, im); }

    friend BigComplex operator+(const BigComplex& a, const BigComplex& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend BigComplex operator-(const BigComplex& a, const BigComplex& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend BigComplex operator/(const BigComplex& a, const BigComplex& b);
};

BigComplex cpow(const BigComplex& z, long n);
BigComplex cexp(const BigComplex& z);
BigComplex clog(const BigComplex& z);
BigComplex csin(const BigComplex& z);
BigComplex ccos(const BigComplex& z);
BigComplex csqrt(const BigComplex& z);

} // namespace liouville
