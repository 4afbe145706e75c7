#pragma once

// Exact coefficients in Q(i): re + im*i with arbitrary-precision rational parts.

#include "mockforms/rational.hpp"

#include <complex>
#include <string>

namespace mockforms {

struct GaussianRational {
    Rational re;
    Rational im;

    GaussianRational() = default;
    GaussianRational(long long n) : re(n), im(0) {}
    GaussianRational(Rational r) : re(std::move(r)), im(0) {}
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    static GaussianRational unit_i() { return {Rational(0), Rational(1)}; }

    bool is_zero() const { return re == 0 && im == 0; }

    GaussianRational conj() const { return {re, -im}; }

    // |z|^2 = z * conj(z), a rational.
    Rational norm() const { return re * re + im * im; }

    std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
        Rational n = b.norm();
        if (n == 0) throw std::domain_error("GaussianRational: division by zero");
        GaussianRational p = a * b.conj();
        return {p.re / n, p.im / n};
    }
    GaussianRational& operator+=(const GaussianRational& b) { return *this = *this + b; }
    GaussianRational& operator-=(const GaussianRational& b) { return *this = *this - b; }
    GaussianRational& operator*=(const GaussianRational& b) { return *this = *this * b; }
    GaussianRational& operator/=(const GaussianRational& b) { return *this = *this / b; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }
};

inline std::string to_string(const GaussianRational& g) {
    if (g.im == 0) return to_string(g.re);
    std::string s;
    if (g.re != 0) s = to_string(g.re) + (g.im > 0 ? "+" : "");
    if (g.im == 1) s += "i";
    else if (g.im == -1) s += "-i";
    else s += to_string(g.im) + "i";
    return s;
}

}  // namespace mockforms
