#pragma once

#include <gmpxx.h>
#include <cstdint>
#include <string>
#include <stdexcept>

namespace liouville {

using Rational = mpq_class;

// p^n for integer n (n < 0 inverts; 0^negative throws)
Rational rat_pow(const Rational& base, long n);

// "3", "-7/4", "0.25" -> exact rational
Rational rat_from_string(const std::string& text);

std::string rat_to_string(const Rational& q);

bool rat_is_perfect_square(const Rational& q, Rational& root);

// a + b*i with exact rational parts
struct GaussRational {
    Rational re, im;

    GaussRational() : re(0), im(0) {}
    GaussRational(long v) : re(v), im(0) {}
    GaussRational(Rational r) : re(std::move(r)), im(0) {}
    GaussRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    static GaussRational unit_im() { return {Rational(0), Rational(1)}; }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }
    bool is_one() const { return re == 1 && im == 0; }

    GaussRational operator-() const { return {-re, -im}; }
    GaussRational conj() const { return {re, -im}; }

    friend GaussRational operator+(const GaussRational& a, const GaussRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussRational operator-(const GaussRational& a, const GaussRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussRational operator*(const GaussRational& a, const GaussRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussRational operator/(const GaussRational& a, const GaussRational& b) {
        Rational n = b.re * b.re + b.im * b.im;
        if (n == 0) throw std::domain_error("division by zero");
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    GaussRational& operator+=(const GaussRational& b) { return *this = *this + b; }
    GaussRational& operator-=(const GaussRational& b) { return *this = *this - b; }
    GaussRational& operator*=(const GaussRational& b) { return *this = *this * b; }
    GaussRational& operator/=(const GaussRational& b) { return *this = *this / b; }

    friend bool operator==(const GaussRational& a, const GaussRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussRational& a, const GaussRational& b) {
        return !(a == b);
    }
};

GaussRational gauss_pow(const GaussRational& base, long n);

// total order for canonical term sorting, not a numeric order
int gauss_cmp(const GaussRational& a, const GaussRational& b);

// "3/4", "i", "-2*i", "1/2+3*i" (parseable by the expression grammar)
std::string gauss_to_string(const GaussRational& z);

std::size_t gauss_hash(const GaussRational& z);

} // namespace liouville
