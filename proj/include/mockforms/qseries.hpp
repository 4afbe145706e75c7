#pragma once

// Exact truncated q-series over Q(i).
//
// A QSeries holds finitely many terms c_k q^{k/denom} in a sparse ordered map
// together with a truncation marker `trunc`: indices k >= trunc are unknown.
// trunc == nullopt means the stored support is the complete expansion.
// Truncation propagates pessimistically through arithmetic: for a product the
// first unknown index is min(trunc_a + lead_b, trunc_b + lead_a).

#include "mockforms/complex_val.hpp"
#include "mockforms/gaussian.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>

namespace mockforms {

inline constexpr long long kDefaultDenom = 48;

struct QSeries {
    long long denom = kDefaultDenom;
    std::map<long long, GaussianRational> c;
    std::optional<long long> trunc;

    bool has_terms() const { return !c.empty(); }
    bool is_exact_zero() const { return c.empty() && !trunc; }

    // Lowest stored index.
    std::optional<long long> lead() const {
        if (c.empty()) return std::nullopt;
        return c.begin()->first;
    }

    GaussianRational coeff(long long k) const {
        if (trunc && k >= *trunc)
            throw std::out_of_range("QSeries::coeff: index " + std::to_string(k) +
                                    " at or beyond truncation " + std::to_string(*trunc));
        auto it = c.find(k);
        return it == c.end() ? GaussianRational{} : it->second;
    }

    void set(long long k, GaussianRational g) {
        if (g.is_zero()) c.erase(k);
        else c[k] = std::move(g);
    }

    void drop_unknown_region() {
        if (!trunc) return;
        c.erase(c.lower_bound(*trunc), c.end());
    }

    friend bool operator==(const QSeries& a, const QSeries& b) {
        return a.denom == b.denom && a.trunc == b.trunc && a.c == b.c;
    }
};

inline QSeries qs_zero(long long denom = kDefaultDenom) { return {denom, {}, std::nullopt}; }

inline QSeries qs_monomial(long long k, GaussianRational coeff, long long denom = kDefaultDenom) {
    QSeries r{denom, {}, std::nullopt};
    r.set(k, std::move(coeff));
    return r;
}

inline QSeries qs_one(long long denom = kDefaultDenom) { return qs_monomial(0, GaussianRational(1), denom); }

inline QSeries qs_const(Rational r, long long denom = kDefaultDenom) {
    return qs_monomial(0, GaussianRational(std::move(r)), denom);
}

namespace detail {

inline long long checked_mul_ll(long long a, long long b, const char* what) {
    __int128 p = static_cast<__int128>(a) * b;
    if (p > std::numeric_limits<long long>::max() / 2 || p < std::numeric_limits<long long>::min() / 2)
        throw std::overflow_error(std::string(what) + ": index overflow");
    return static_cast<long long>(p);
}

inline long long denom_lcm(long long a, long long b) {
    long long g = std::gcd(a, b);
    __int128 l = static_cast<__int128>(a / g) * b;
    if (l > (1LL << 40))
        throw std::overflow_error("QSeries: required common denominator " + std::to_string((long long)l) +
                                  " exceeds the supported range");
    return static_cast<long long>(l);
}

}  // namespace detail

inline void qs_validate_denom(long long denom) {
    if (denom <= 0 || denom > (1LL << 40))
        throw std::invalid_argument("QSeries: denom must be a positive integer up to 2^40, got " +
                                    std::to_string(denom));
}

// Re-express on a denominator that is a multiple of the current one.
inline QSeries qs_renorm(const QSeries& a, long long denom) {
    qs_validate_denom(denom);
    if (denom == a.denom) return a;
    if (denom % a.denom != 0)
        throw std::invalid_argument("qs_renorm: " + std::to_string(denom) + " is not a multiple of " +
                                    std::to_string(a.denom));
    long long f = denom / a.denom;
    QSeries r{denom, {}, std::nullopt};
    for (const auto& [k, g] : a.c) r.c.emplace(detail::checked_mul_ll(k, f, "qs_renorm"), g);
    if (a.trunc) r.trunc = detail::checked_mul_ll(*a.trunc, f, "qs_renorm");
    return r;
}

inline void qs_align(QSeries& a, QSeries& b) {
    if (a.denom == b.denom) return;
    long long l = detail::denom_lcm(a.denom, b.denom);
    a = qs_renorm(a, l);
    b = qs_renorm(b, l);
}

inline QSeries qs_add(QSeries a, QSeries b) {
    qs_align(a, b);
    QSeries r{a.denom, {}, std::nullopt};
    if (a.trunc && b.trunc) r.trunc = std::min(*a.trunc, *b.trunc);
    else if (a.trunc) r.trunc = a.trunc;
    else if (b.trunc) r.trunc = b.trunc;
    r.c = std::move(a.c);
    for (auto& [k, g] : b.c) {
        auto [it, fresh] = r.c.try_emplace(k, g);
        if (!fresh) {
            it->second += g;
            if (it->second.is_zero()) r.c.erase(it);
        }
    }
    r.drop_unknown_region();
    return r;
}

inline QSeries qs_neg(QSeries a) {
    for (auto& [k, g] : a.c) g = -g;
    return a;
}

inline QSeries qs_sub(QSeries a, const QSeries& b) { return qs_add(std::move(a), qs_neg(b)); }

inline QSeries qs_scale(QSeries a, const GaussianRational& s) {
    if (s.is_zero()) {
        a.c.clear();
        return a;
    }
    for (auto& [k, g] : a.c) g *= s;
    return a;
}

inline QSeries qs_mul(QSeries a, QSeries b) {
    qs_align(a, b);
    if (a.is_exact_zero() || b.is_exact_zero()) return qs_zero(a.denom);

    // Effective lead for truncation bookkeeping: an empty-but-truncated series
    // is O(q^{trunc/denom}).
    auto eff_lead = [](const QSeries& s) { return s.has_terms() ? *s.lead() : *s.trunc; };
    std::optional<long long> tr;
    if (a.trunc) tr = *a.trunc + eff_lead(b);
    if (b.trunc) {
        long long t2 = *b.trunc + eff_lead(a);
        tr = tr ? std::min(*tr, t2) : t2;
    }
    QSeries r{a.denom, {}, tr};
    for (const auto& [ka, ga] : a.c) {
        for (const auto& [kb, gb] : b.c) {
            long long k = ka + kb;
            if (tr && k >= *tr) break;  // kb ascending: later kb only larger
            GaussianRational p = ga * gb;
            if (p.is_zero()) continue;
            auto [it, fresh] = r.c.try_emplace(k, p);
            if (!fresh) {
                it->second += p;
                if (it->second.is_zero()) r.c.erase(it);
            }
        }
    }
    return r;
}

// Clamp the truncation down to `t` (dropping now-unknown terms).
inline QSeries truncate_to(QSeries a, long long t) {
    if (!a.trunc || *a.trunc > t) a.trunc = t;
    a.drop_unknown_region();
    return a;
}

inline void require_trunc_at_least(const QSeries& a, long long t,
                                   const char* what = "require_trunc_at_least") {
    if (a.trunc && *a.trunc < t)
        throw std::logic_error(std::string(what) + ": internal truncation " + std::to_string(*a.trunc) +
                               " below required " + std::to_string(t));
}

// Multiplicative inverse. For a complete monomial the result is complete.
// For a truncated input the result carries trunc - 2*lead. A complete
// non-monomial input has an infinite expansion, so a target truncation index
// for the result must be supplied.
inline QSeries qs_inv(const QSeries& a, std::optional<long long> target_trunc = std::nullopt) {
    if (!a.has_terms()) throw std::domain_error("qs_inv: series has no invertible leading term");
    long long l = *a.lead();
    if (a.c.size() == 1 && !a.trunc && !target_trunc)
        return qs_monomial(-l, GaussianRational(1) / a.c.begin()->second, a.denom);

    std::optional<long long> rel;  // relative order of the unit-part inverse
    if (a.trunc) rel = *a.trunc - l;
    if (target_trunc) {
        long long r2 = *target_trunc + l;
        rel = rel ? std::min(*rel, r2) : r2;
    }
    if (!rel)
        throw std::invalid_argument("qs_inv: complete non-monomial input needs an explicit target truncation");
    if (*rel <= 0) return QSeries{a.denom, {}, *rel - l};

    const GaussianRational inv_u0 = GaussianRational(1) / a.c.begin()->second;
    // v_k = -1/u_0 * sum_{j>0} u_j v_{k-j}; contributions are pushed forward
    // sparsely so only reachable indices are visited.
    std::map<long long, GaussianRational> pending;  // relative index -> accumulated sum
    QSeries v{a.denom, {}, *rel};
    auto emit = [&](long long k, const GaussianRational& g) {
        v.c.emplace(k, g);
        for (auto it = std::next(a.c.begin()); it != a.c.end(); ++it) {
            long long j = it->first - l;
            if (k + j >= *rel) break;
            auto [p, fresh] = pending.try_emplace(k + j, it->second * g);
            if (!fresh) p->second += it->second * g;
        }
    };
    emit(0, inv_u0);
    while (!pending.empty()) {
        auto it = pending.begin();
        long long k = it->first;
        GaussianRational s = std::move(it->second);
        pending.erase(it);
        if (s.is_zero()) continue;
        emit(k, -(inv_u0 * s));
    }
    // shift by -l twice total: unit extraction and the monomial inverse
    QSeries r{a.denom, {}, *rel - l};
    for (auto& [k, g] : v.c) r.c.emplace(k - l, std::move(g));
    for (auto it = r.c.begin(); it != r.c.end();) {
        if (it->second.is_zero()) it = r.c.erase(it);
        else ++it;
    }
    r.drop_unknown_region();
    return r;
}

inline QSeries operator+(const QSeries& a, const QSeries& b) { return qs_add(a, b); }
inline QSeries operator-(const QSeries& a, const QSeries& b) { return qs_sub(a, b); }
inline QSeries operator*(const QSeries& a, const QSeries& b) { return qs_mul(a, b); }
inline QSeries operator-(const QSeries& a) { return qs_neg(a); }

// Numeric evaluation at tau in the upper half plane.
//
// The stored terms are summed exactly in double precision; the unknown tail
// sum_{k >= trunc} c_k q^{k/denom} is bounded by the geometric model
// |c_k| <= A g^{k - kA} fitted to the stored coefficients (A: largest
// magnitude in the upper half of the support, g: largest per-index growth
// ratio observed there). err = 4 A g^{trunc-kA} x^{trunc} / (1 - g x) with
// x = |q|^{1/denom}; the model diverging (g x >= 1) is an error.
inline ComplexVal qs_eval(const QSeries& a, std::complex<double> tau) {
    const double v = tau.imag();
    if (!(v > 0)) throw std::domain_error("qs_eval: tau must lie in the upper half plane");
    const std::complex<double> two_pi_i(0.0, 2.0 * std::numbers::pi);
    std::complex<double> val = 0.0;
    for (const auto& [k, g] : a.c) {
        std::complex<double> e = std::exp(two_pi_i * tau * (double(k) / double(a.denom)));
        val += g.to_complex() * e;
    }
    double err = 0.0;
    if (a.trunc && a.c.size() > 0) {
        auto mag = [](const GaussianRational& g) {
            return std::abs(to_double(g.re)) + std::abs(to_double(g.im));
        };
        long long first = a.c.begin()->first, last = a.c.rbegin()->first;
        long long half = first + (last - first) / 2;
        double A = 0.0;
        long long kA = last;
        double g_rate = 1.0;
        long long prev_k = 0;
        double prev_m = 0.0;
        bool have_prev = false;
        for (const auto& [k, g] : a.c) {
            double m = mag(g);
            if (k >= half && m > A) {
                A = m;
                kA = k;
            }
            if (have_prev && k >= half && prev_m > 0.0) {
                double r = std::pow(m / prev_m, 1.0 / double(k - prev_k));
                if (r > g_rate) g_rate = r;
            }
            prev_k = k;
            prev_m = m;
            have_prev = true;
        }
        if (A == 0.0) {  // all mass in the lower half; fall back to the global max
            for (const auto& [k, g] : a.c) {
                double m = mag(g);
                if (m > A) {
                    A = m;
                    kA = k;
                }
            }
        }
        const double x = std::exp(-2.0 * std::numbers::pi * v / double(a.denom));
        if (g_rate * x >= 1.0)
            throw std::domain_error("qs_eval: tail majorant diverges at this tau; increase the truncation order");
        double tail = 4.0 * A * std::pow(g_rate, double(*a.trunc - kA)) * std::pow(x, double(*a.trunc)) /
                      (1.0 - g_rate * x);
        err = tail;
    } else if (a.trunc) {
        err = 0.0;  // no stored evidence; the model reports nothing
    }
    return {val, err};
}

}  // namespace mockforms
