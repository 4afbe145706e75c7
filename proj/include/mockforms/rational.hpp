#pragma once

// Arbitrary-precision rational scalars and small exact helpers.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mockforms {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline std::string to_string(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

inline BigInt factorial(int n) {
    if (n < 0) throw std::domain_error("factorial: negative argument");
    BigInt f = 1;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

inline BigInt binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    BigInt b = 1;
    for (int j = 1; j <= k; ++j) {
        b *= (n - k + j);
        b /= j;
    }
    return b;
}

inline Rational rational_pow(const Rational& base, int e) {
    if (e == 0) return Rational(1);
    if (base == 0) {
        if (e < 0) throw std::domain_error("rational_pow: zero to negative power");
        return Rational(0);
    }
    Rational acc = 1, b = base;
    int n = e < 0 ? -e : e;
    while (n > 0) {
        if (n & 1) acc *= b;
        b *= b;
        n >>= 1;
    }
    if (e < 0) return Rational(1) / acc;
    return acc;
}

// Parses "a" or "a/b" with optional leading '-'.
inline Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(BigInt(s));
    BigInt num(s.substr(0, slash));
    BigInt den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("parse_rational: zero denominator in '" + s + "'");
    return Rational(num, den);
}

}  // namespace mockforms
