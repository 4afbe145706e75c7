#pragma once

// Bit-exact text round trip for QSeries.
//
// Line 1:  denom=<D> trunc=<N|inf>
// Then one stored term per line, in increasing k:
//   <k> <re_num>/<re_den> <im_num>/<im_den>

#include "mockforms/qseries.hpp"

#include <numeric>
#include <sstream>
#include <string>

namespace mockforms {

inline std::string qs_write(const QSeries& a) {
    std::ostringstream os;
    os << "denom=" << a.denom << " trunc=";
    if (a.trunc) os << *a.trunc;
    else os << "inf";
    os << "\n";
    for (const auto& [k, g] : a.c) {
        os << k << " " << numerator(g.re).str() << "/" << denominator(g.re).str() << " "
           << numerator(g.im).str() << "/" << denominator(g.im).str() << "\n";
    }
    return os.str();
}

namespace detail {

inline std::string latex_exponent(long long k, long long denom) {
    const long long g = std::gcd(k < 0 ? -k : k, denom);
    const long long num = k / (g == 0 ? 1 : g);
    const long long den = denom / (g == 0 ? 1 : g);
    if (num == 0) return "";
    if (den == 1) return num == 1 ? "q" : "q^{" + std::to_string(num) + "}";
    return "q^{" + std::to_string(num) + "/" + std::to_string(den) + "}";
}

inline std::string latex_rational(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    const bool neg = r < 0;
    const Rational a = neg ? Rational(-r) : r;
    return (neg ? "-" : "") + ("\\tfrac{" + numerator(a).str() + "}{" + denominator(a).str() + "}");
}

}  // namespace detail

inline std::string qs_latex(const QSeries& a) {
    std::string out;
    for (const auto& [k, g] : a.c) {
        const std::string qpow = detail::latex_exponent(k, a.denom);
        std::string coeff;
        bool negated = false;
        if (g.im == 0) {
            Rational re = g.re;
            if (re < 0) {
                negated = true;
                re = -re;
            }
            coeff = detail::latex_rational(re);
            if (coeff == "1" && !qpow.empty()) coeff.clear();
        } else if (g.re == 0) {
            Rational im = g.im;
            if (im < 0) {
                negated = true;
                im = -im;
            }
            coeff = detail::latex_rational(im);
            if (coeff == "1") coeff.clear();
            coeff += "\\mathrm{i}";
        } else {
            coeff = "\\left(" + detail::latex_rational(g.re) +
                    (g.im < 0 ? "-" : "+") +
                    detail::latex_rational(g.im < 0 ? Rational(-g.im) : g.im) +
                    "\\mathrm{i}\\right)";
        }
        if (out.empty()) {
            if (negated) out += "-";
        } else {
            out += negated ? " - " : " + ";
        }
        out += coeff.empty() && qpow.empty() ? "1" : coeff + qpow;
    }
    if (a.trunc) {
        if (!out.empty()) out += " + ";
        std::string tail = detail::latex_exponent(*a.trunc, a.denom);
        out += "O\\!\\left(" + (tail.empty() ? std::string("1") : tail) + "\\right)";
    }
    if (out.empty()) out = "0";
    return out;
}

inline QSeries qs_read(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw std::invalid_argument("qs_read: line " + std::to_string(lineno) + ": " + msg);
    };
    if (!std::getline(is, line)) {
        lineno = 1;
        fail("missing header");
    }
    ++lineno;
    QSeries r;
    {
        std::istringstream hs(line);
        std::string dtok, ttok;
        if (!(hs >> dtok >> ttok) || dtok.rfind("denom=", 0) != 0 || ttok.rfind("trunc=", 0) != 0)
            fail("expected 'denom=<D> trunc=<N|inf>', got '" + line + "'");
        try {
            r.denom = std::stoll(dtok.substr(6));
        } catch (const std::exception&) {
            fail("bad denom '" + dtok.substr(6) + "'");
        }
        qs_validate_denom(r.denom);
        std::string tv = ttok.substr(6);
        if (tv == "inf") r.trunc = std::nullopt;
        else {
            try {
                r.trunc = std::stoll(tv);
            } catch (const std::exception&) {
                fail("bad trunc '" + tv + "'");
            }
        }
    }
    bool have_prev = false;
    long long prev_k = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        long long k;
        std::string res, ims;
        if (!(ls >> k >> res >> ims)) fail("expected '<k> <re> <im>', got '" + line + "'");
        std::string extra;
        if (ls >> extra) fail("trailing token '" + extra + "'");
        if (have_prev && k <= prev_k) fail("term indices must be strictly increasing");
        if (r.trunc && k >= *r.trunc) fail("term index " + std::to_string(k) + " at or beyond trunc");
        GaussianRational g;
        try {
            g = GaussianRational(parse_rational(res), parse_rational(ims));
        } catch (const std::exception& e) {
            fail(e.what());
        }
        if (g.is_zero()) fail("zero coefficient stored");
        r.c.emplace(k, std::move(g));
        prev_k = k;
        have_prev = true;
    }
    return r;
}

}  // namespace mockforms
