#pragma once

// Numeric value paired with an explicit bound on the truncation/tail error
// accumulated while producing it. Floating-point rounding is not tracked.

#include <cmath>
#include <complex>
#include <stdexcept>

namespace mockforms {

struct ComplexVal {
    std::complex<double> value{0.0, 0.0};
    double err = 0.0;

    ComplexVal() = default;
    ComplexVal(std::complex<double> v, double e = 0.0) : value(v), err(e) {}
    ComplexVal(double v) : value(v, 0.0), err(0.0) {}

    friend ComplexVal operator+(const ComplexVal& a, const ComplexVal& b) {
        return {a.value + b.value, a.err + b.err};
    }
    friend ComplexVal operator-(const ComplexVal& a, const ComplexVal& b) {
        return {a.value - b.value, a.err + b.err};
    }
    friend ComplexVal operator-(const ComplexVal& a) { return {-a.value, a.err}; }
    friend ComplexVal operator*(const ComplexVal& a, const ComplexVal& b) {
        double e = std::abs(a.value) * b.err + std::abs(b.value) * a.err + a.err * b.err;
        return {a.value * b.value, e};
    }
    friend ComplexVal operator*(const std::complex<double>& c, const ComplexVal& a) {
        return {c * a.value, std::abs(c) * a.err};
    }
    friend ComplexVal operator*(const ComplexVal& a, const std::complex<double>& c) { return c * a; }
    friend ComplexVal operator/(const ComplexVal& a, const ComplexVal& b) {
        double bm = std::abs(b.value);
        if (bm <= b.err)
            throw std::domain_error("ComplexVal: divisor indistinguishable from zero within its error bound");
        // |a/b - a0/b0| <= (|a0| err_b + |b0| err_a) / (|b0| (|b0| - err_b))
        double e = (std::abs(a.value) * b.err + bm * a.err) / (bm * (bm - b.err));
        return {a.value / b.value, e};
    }
    ComplexVal& operator+=(const ComplexVal& b) { return *this = *this + b; }
    ComplexVal& operator-=(const ComplexVal& b) { return *this = *this - b; }
    ComplexVal& operator*=(const ComplexVal& b) { return *this = *this * b; }
};

}  // namespace mockforms
