#pragma once

// Truncated Laurent expansions in w = 2*pi*i*z with QSeries coefficients.
//
// A WJet stores coefficients of w^k for k in the window [lo, hi]; below lo
// the expansion is genuinely zero, above hi it is unretained. Multiplication
// propagates the window pessimistically: the product is known up to
// min(a.lo + b.hi, a.hi + b.lo). The specialization z -> a z acts on
// exponentials as zeta^c = e^{c w}, and D_z = (2 pi i)^{-1} d/dz = d/dw, so
// D_{z,0} f = coefficient of w^1.

#include "mockforms/qseries.hpp"

#include <string>
#include <vector>

namespace mockforms {

struct WJet {
    int lo = 0;
    std::vector<QSeries> c;  // c[j] is the coefficient of w^{lo+j}

    bool empty() const { return c.empty(); }
    int hi() const { return lo + static_cast<int>(c.size()) - 1; }

    const QSeries& at(int k) const {
        if (empty() || k < lo || k > hi())
            throw std::out_of_range("WJet: w^" + std::to_string(k) + " outside retained window [" +
                                    std::to_string(lo) + ", " + std::to_string(empty() ? lo - 1 : hi()) + "]");
        return c[static_cast<size_t>(k - lo)];
    }
};

// Drop leading coefficients that are complete zeros; a pole order is only as
// deep as its first nonzero coefficient. Empty-but-truncated coefficients are
// kept: they still carry a knowledge bound.
inline WJet jet_normalize(WJet a) {
    size_t drop = 0;
    while (drop < a.c.size() && a.c[drop].is_exact_zero()) ++drop;
    if (drop == a.c.size()) return WJet{};
    if (drop > 0) {
        a.c.erase(a.c.begin(), a.c.begin() + static_cast<long>(drop));
        a.lo += static_cast<int>(drop);
    }
    return a;
}

inline const QSeries& jet_coeff(const WJet& a, int k) { return a.at(k); }

inline WJet jet_restrict(const WJet& a, int wlo, int whi) {
    if (whi < wlo) throw std::invalid_argument("jet_restrict: empty window requested");
    if (a.empty()) return a;
    if (whi > a.hi())
        throw std::out_of_range("jet_restrict: window deficit, requested w^" + std::to_string(whi) +
                                " but only w^" + std::to_string(a.hi()) + " retained");
    for (int k = a.lo; k < wlo && k <= a.hi(); ++k)
        if (a.at(k).has_terms())
            throw std::domain_error("jet_restrict: window [" + std::to_string(wlo) + ", " +
                                    std::to_string(whi) + "] drops the nonzero coefficient of w^" +
                                    std::to_string(k));
    WJet r;
    r.lo = std::max(wlo, a.lo);
    for (int k = r.lo; k <= whi; ++k) r.c.push_back(a.at(k));
    return jet_normalize(std::move(r));
}

inline WJet jet_add(const WJet& a, const WJet& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    WJet r;
    r.lo = std::min(a.lo, b.lo);
    int rhi = std::min(a.hi(), b.hi());
    for (int k = r.lo; k <= rhi; ++k) {
        bool ina = k >= a.lo && k <= a.hi(), inb = k >= b.lo && k <= b.hi();
        if (ina && inb) r.c.push_back(qs_add(a.at(k), b.at(k)));
        else if (ina) r.c.push_back(a.at(k));
        else if (inb) r.c.push_back(b.at(k));
        else r.c.push_back(qs_zero());
    }
    return jet_normalize(std::move(r));
}

inline WJet jet_neg(WJet a) {
    for (auto& q : a.c) q = qs_neg(q);
    return a;
}

inline WJet jet_sub(const WJet& a, const WJet& b) { return jet_add(a, jet_neg(b)); }

inline WJet jet_mul(const WJet& a, const WJet& b) {
    if (a.empty() || b.empty()) return WJet{};
    WJet r;
    r.lo = a.lo + b.lo;
    int rhi = std::min(a.lo + b.hi(), a.hi() + b.lo);
    if (rhi < r.lo) return WJet{};
    r.c.assign(static_cast<size_t>(rhi - r.lo + 1), QSeries{});
    bool touched = false;
    for (int k = r.lo; k <= rhi; ++k) {
        QSeries acc = qs_zero();
        for (int ka = a.lo; ka <= a.hi(); ++ka) {
            int kb = k - ka;
            if (kb < b.lo || kb > b.hi()) continue;
            acc = qs_add(std::move(acc), qs_mul(a.at(ka), b.at(kb)));
            touched = true;
        }
        r.c[static_cast<size_t>(k - r.lo)] = std::move(acc);
    }
    (void)touched;
    return jet_normalize(std::move(r));
}

// Multiply every coefficient by a w-independent series.
inline WJet jet_scale(WJet a, const QSeries& s) {
    for (auto& q : a.c) q = qs_mul(q, s);
    return jet_normalize(std::move(a));
}

inline WJet jet_scale(WJet a, const GaussianRational& s) {
    for (auto& q : a.c) q = qs_scale(q, s);
    return jet_normalize(std::move(a));
}

inline WJet jet_shift(WJet a, int d) {
    a.lo += d;
    return a;
}

// exp(c w) truncated to `terms` coefficients: window [0, terms-1].
inline WJet jet_exp_linear(const Rational& cc, int terms, long long denom = kDefaultDenom) {
    if (terms < 1) throw std::invalid_argument("jet_exp_linear: need at least one term");
    WJet r;
    r.lo = 0;
    Rational p = 1;
    for (int k = 0; k < terms; ++k) {
        if (k > 0) p = p * cc / k;
        r.c.push_back(qs_const(p, denom));
    }
    return r;
}

// 1 - e^{c w} on the window [0, terms-1]; leading coefficient -c w after
// normalization, so its jet inverse exists for c != 0.
inline WJet jet_one_minus_exp(const Rational& cc, int terms, long long denom = kDefaultDenom) {
    WJet e = jet_exp_linear(cc, terms, denom);
    WJet one;
    one.lo = 0;
    one.c.assign(static_cast<size_t>(terms), qs_zero(denom));
    one.c[0] = qs_one(denom);
    return jet_sub(one, e);
}

// Multiplicative inverse of a jet whose leading coefficient is an invertible
// QSeries. The window [lo, hi] maps to [-lo, hi - 2 lo]. `q_order_hint`
// is forwarded to qs_inv when the leading coefficient is complete but not a
// monomial.
inline WJet jet_inv(const WJet& a_in, std::optional<long long> q_order_hint = std::nullopt) {
    WJet a = jet_normalize(a_in);
    if (a.empty()) throw std::domain_error("jet_inv: jet is zero on its retained window");
    const QSeries& u0 = a.c[0];
    QSeries v0 = qs_inv(u0, q_order_hint);
    size_t L = a.c.size();
    std::vector<QSeries> v(L);
    v[0] = v0;
    for (size_t n = 1; n < L; ++n) {
        QSeries s = qs_zero(u0.denom);
        for (size_t j = 1; j <= n; ++j) s = qs_add(std::move(s), qs_mul(a.c[j], v[n - j]));
        v[n] = qs_neg(qs_mul(v0, s));
    }
    WJet r;
    r.lo = -a.lo;
    r.c = std::move(v);
    return jet_normalize(std::move(r));
}

// exp of a jet with strictly positive valuation (finite sum inside the window).
inline WJet jet_exp(const WJet& x_in) {
    WJet x = jet_normalize(x_in);
    if (x.empty()) {
        WJet one;
        one.lo = 0;
        one.c.push_back(qs_one());
        return one;
    }
    if (x.lo < 1) throw std::domain_error("jet_exp: argument must vanish at w = 0");
    int H = x.hi();
    WJet r;
    r.lo = 0;
    r.c.assign(static_cast<size_t>(H + 1), qs_zero());
    r.c[0] = qs_one();
    WJet pw = x;
    Rational inv_fact = 1;
    for (int k = 1; k * x.lo <= H; ++k) {
        if (k > 1) pw = jet_mul(pw, x);
        inv_fact /= k;
        for (int j = pw.lo; j <= std::min(pw.hi(), H); ++j)
            r.c[static_cast<size_t>(j)] =
                qs_add(std::move(r.c[static_cast<size_t>(j)]), qs_scale(pw.at(j), GaussianRational(inv_fact)));
    }
    // powers x^k with k lo > H contribute nothing inside the window, but the
    // window itself stays capped by where x is known
    return jet_restrict(std::move(r), 0, H);
}

inline WJet jet_truncate_q(WJet a, long long t) {
    for (auto& q : a.c) q = truncate_to(std::move(q), t);
    return jet_normalize(std::move(a));
}

inline void jet_require_trunc_at_least(const WJet& a, long long t,
                                       const char* what = "jet_require_trunc_at_least") {
    for (const auto& q : a.c) require_trunc_at_least(q, t, what);
}

// Coefficients of negative powers of w must have cancelled identically.
inline void jet_require_no_pole(const WJet& a, const char* what) {
    for (int k = a.lo; k < 0 && !a.empty() && k <= a.hi(); ++k)
        if (a.at(k).has_terms())
            throw std::logic_error(std::string(what) + ": pole survives at w^" + std::to_string(k));
}

// Numeric evaluation at z0 (w0 = 2 pi i z0). The unretained w-tail is
// estimated by the observed-coefficient majorant C max|value| times the
// geometric factor |w0|^{hi+1}/(1-|w0|); this is a consistency estimate, not
// a proof-grade bound.
inline ComplexVal jet_eval(const WJet& a, std::complex<double> z0, std::complex<double> tau) {
    if (a.empty()) return {0.0, 0.0};
    std::complex<double> w0 = std::complex<double>(0.0, 2.0 * std::numbers::pi) * z0;
    double aw = std::abs(w0);
    if (!(aw < 1.0)) throw std::domain_error("jet_eval: |w0| must be < 1 for the tail estimate");
    ComplexVal sum;
    double Cmax = 0.0;
    for (int k = a.lo; k <= a.hi(); ++k) {
        ComplexVal ck = qs_eval(a.at(k), tau);
        Cmax = std::max(Cmax, std::abs(ck.value));
        std::complex<double> wp = std::pow(w0, k);
        sum += ck * wp;
    }
    sum.err += 4.0 * Cmax * std::pow(aw, double(a.hi() + 1)) / (1.0 - aw);
    return sum;
}

}  // namespace mockforms
