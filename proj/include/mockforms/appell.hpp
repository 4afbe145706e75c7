#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>

#include "mockforms/classical_forms.hpp"
#include "mockforms/complex_val.hpp"
#include "mockforms/qseries.hpp"
#include "mockforms/wjet.hpp"

namespace mockforms {

// ---------------------------------------------------------------------------
// mu(a z, b z; tau) as a w-jet, w = 2 pi i z:
//   mu(z1, z2) = e^{pi i z1} / theta(z2) * sum_n (-1)^n zeta2^n q^{n(n+1)/2}
//                                                 / (1 - zeta1 q^n).
// Double pole at w = 0 from the inverted theta times the kernel pole.
// ---------------------------------------------------------------------------

inline WJet mu_jet(long long a, long long b, long long order, int wlo, int whi) {
    if (a == 0 || b == 0) throw std::domain_error("mu_jet: both slopes must be nonzero");
    if (order < 0) throw std::invalid_argument("mu_jet: order must be >= 0");
    const long long t = 48 * (order + 1);
    const long long margin = order + 2;
    const int h = whi < 0 ? 0 : whi;

    WJet s = appell_sum_jet(a, b, margin, h + 2);
    WJet ti = jet_inv(theta_jet(b, margin, 1, h + 4));
    WJet p = jet_exp_linear(Rational(a) / 2, h + 4);
    WJet m = jet_mul(jet_mul(ti, s), p);
    m = jet_truncate_q(std::move(m), t);
    jet_require_trunc_at_least(m, t);
    return jet_restrict(std::move(m), wlo, whi);
}

// ---------------------------------------------------------------------------
// Numeric mu. The n >= 0 half is summed as written; n = -k is rewritten as
//   (-1)^{k+1} zeta1^{-1} zeta2^{-k} q^{k(k+1)/2} / (1 - zeta1^{-1} q^k)
// so every q-power that appears decays.
// ---------------------------------------------------------------------------

namespace detail {

inline bool tiny(const std::complex<double>& term, double tol, const std::complex<double>& sum,
                 int& streak) {
    streak = std::abs(term) < tol * (1.0 + std::abs(sum)) ? streak + 1 : 0;
    return streak >= 3;
}

// 1 / (1 - e^{2 pi i zz}) without ever forming an overflowing power: when
// |e^{2 pi i zz}| > 1 the reciprocal geometric form is used instead.
inline std::complex<double> stable_inv_one_minus_exp(std::complex<double> zz) {
    const double pi = std::numbers::pi;
    const std::complex<double> i(0.0, 1.0);
    if (zz.imag() >= 0.0) {
        const std::complex<double> x = std::exp(2.0 * pi * i * zz);
        const std::complex<double> den = 1.0 - x;
        if (std::abs(den) < kPoleEps)
            throw std::domain_error("lattice sum: denominator too close to zero");
        return 1.0 / den;
    }
    const std::complex<double> xi = std::exp(-2.0 * pi * i * zz);
    const std::complex<double> den = 1.0 - xi;
    if (std::abs(den) < kPoleEps)
        throw std::domain_error("lattice sum: denominator too close to zero");
    return -xi / den;
}

}  // namespace detail

inline ComplexVal mu_numeric(std::complex<double> z1, std::complex<double> z2,
                             std::complex<double> tau) {
    const double v = tau.imag();
    if (!(v > 0)) throw std::domain_error("mu_numeric: Im tau must be positive");
    if (lattice_distance(z1, tau) < kPoleEps || lattice_distance(z2, tau) < kPoleEps)
        throw std::domain_error("mu_numeric: argument too close to the period lattice");
    const double pi = std::numbers::pi;
    const std::complex<double> i(0.0, 1.0);

    std::complex<double> sum = 0.0;
    double asum = 0.0;
    const double tol = 1e-21;
    int streak = 0;
    for (long long n = 0; n <= 4000 && streak < 3; ++n) {
        const std::complex<double> term =
            (n % 2 == 0 ? 1.0 : -1.0) *
            std::exp(pi * i * (tau * static_cast<double>(n * (n + 1)) + 2.0 * static_cast<double>(n) * z2)) *
            detail::stable_inv_one_minus_exp(z1 + static_cast<double>(n) * tau);
        sum += term;
        asum += std::abs(term);
        detail::tiny(term, tol, sum, streak);
    }
    streak = 0;
    for (long long k = 1; k <= 4000 && streak < 3; ++k) {
        const std::complex<double> term =
            (k % 2 == 0 ? 1.0 : -1.0) *
            std::exp(pi * i * (tau * static_cast<double>(k * (k - 1)) - 2.0 * static_cast<double>(k) * z2)) *
            detail::stable_inv_one_minus_exp(z1 - static_cast<double>(k) * tau);
        sum += term;
        asum += std::abs(term);
        detail::tiny(term, tol, sum, streak);
    }
    ComplexVal kernel{sum, 32.0 * tol * (1.0 + std::abs(sum)) + 4e-16 * asum};
    ComplexVal pre{std::exp(pi * i * z1), 1e-15 * std::abs(std::exp(pi * i * z1))};
    return pre * kernel / theta_numeric(z2, tau);
}

// ---------------------------------------------------------------------------
// Zwegers' weight 1/2 correction term
//   R(z; tau) = sum_{r in Z+1/2} (sgn(r) - E((r + y/v) sqrt(2v)))
//               (-1)^{r-1/2} e^{-pi i tau r^2 - 2 pi i z r},
// with E(x) = erf(sqrt(pi) x). The weight factors are folded into erfc so
// each summand is a pure Gaussian in r; summing a window of half-width m
// around the Gaussian center r = -y/v leaves a geometrically bounded tail.
// ---------------------------------------------------------------------------

inline ComplexVal r_function_numeric(std::complex<double> z, std::complex<double> tau,
                                     double window_override = 0.0) {
    const double v = tau.imag();
    if (!(v > 0)) throw std::domain_error("r_function_numeric: Im tau must be positive");
    const double pi = std::numbers::pi;
    const double y = z.imag();
    const double center = -y / v;
    const double m =
        window_override > 0.0 ? window_override : std::sqrt(40.0 / (pi * v)) + 1.0;
    const long long nlo = static_cast<long long>(std::floor(center - m - 0.5));
    const long long nhi = static_cast<long long>(std::ceil(center + m - 0.5));
    const double sqrtpi = std::sqrt(pi);
    std::complex<double> sum = 0.0;
    double asum = 0.0;
    for (long long n = nlo; n <= nhi; ++n) {
        const double r = static_cast<double>(n) + 0.5;
        const double s = (r + y / v) * std::sqrt(2.0 * v);
        const double w = r > 0 ? std::erfc(sqrtpi * s) : -std::erfc(-sqrtpi * s);
        if (w == 0.0) continue;
        const std::complex<double> e =
            std::exp(std::complex<double>(0.0, -pi) * (tau * r * r + 2.0 * z * r));
        const std::complex<double> term = (n % 2 == 0 ? 1.0 : -1.0) * w * e;
        sum += term;
        asum += std::abs(term);
    }
    const double err =
        4.0 * std::exp(-pi * v * m * m) / (1.0 - std::exp(-2.0 * pi * v * m)) + 4e-16 * asum;
    return {sum, err};
}

inline ComplexVal mu_hat_numeric(std::complex<double> z1, std::complex<double> z2,
                                 std::complex<double> tau) {
    ComplexVal r = r_function_numeric(z1 - z2, tau);
    ComplexVal m = mu_numeric(z1, z2, tau);
    return m + std::complex<double>(0.0, 0.5) * r;
}

// E(x) = 2 int_0^x e^{-pi u^2} du = erf(sqrt(pi) x) for real x.
inline double e_integral_real(double x) { return std::erf(std::sqrt(std::numbers::pi) * x); }

// Entire extension by the Taylor series sum_n 2 (-pi)^n z^{2n+1} / (n! (2n+1)).
inline ComplexVal e_integral_series(std::complex<double> z) {
    if (std::abs(z) > 4.0)
        throw std::domain_error("e_integral_series: series evaluation limited to |z| <= 4");
    const double pi = std::numbers::pi;
    std::complex<double> sum = 0.0;
    std::complex<double> pw = 2.0 * z;
    double asum = 0.0;
    for (int n = 0; n <= 400; ++n) {
        const std::complex<double> term = pw / static_cast<double>(2 * n + 1);
        sum += term;
        asum += std::abs(term);
        if (std::abs(term) < 1e-19 * (1.0 + std::abs(sum))) break;
        pw *= -pi * z * z / static_cast<double>(n + 1);
    }
    return {sum, 4e-16 * asum + 1e-18};
}

// ---------------------------------------------------------------------------
// Indefinite theta function of type (1,2), as a jet in w = 2 pi i z for
// arguments (a z, b z, c z):
//   F = q^{-1/8} zeta1^{-1/2} zeta2^{1/2} zeta3^{1/2}
//       ( sum_{k>0, l,m>=0} + sum_{k<=0, l,m<0} )
//       (-1)^k q^{k(k+1)/2 + kl + km + lm} zeta1^k zeta2^l zeta3^m.
// The second cone is reindexed (k,l,m) = (-kk, -ll, -mm) so all q-exponents
// are nonnegative. Terms are grouped by exponential slope s = has w^j pick
// up s^j/j!.
// ---------------------------------------------------------------------------

inline WJet f_indef_jet(long long a, long long b, long long c, long long order, int wlo, int whi) {
    if (order < 0) throw std::invalid_argument("f_indef_jet: order must be >= 0");
    if (whi < wlo || whi < 0) throw std::invalid_argument("f_indef_jet: window must reach w^0");
    const long long inner = order + 1;
    const long long ti = 48 * (inner + 1);

    std::map<long long, QSeries> groups;
    auto put = [&](long long s, long long e, bool negative) {
        auto it = groups.find(s);
        if (it == groups.end()) it = groups.emplace(s, QSeries{kDefaultDenom, {}, ti}).first;
        GaussianRational cur = it->second.coeff(48 * e);
        it->second.set(48 * e, cur + GaussianRational(negative ? -1 : 1));
    };
    for (long long k = 1; k * (k + 1) / 2 <= inner; ++k)
        for (long long l = 0; k * (k + 1) / 2 + k * l <= inner; ++l)
            for (long long m = 0;; ++m) {
                const long long e = k * (k + 1) / 2 + k * l + k * m + l * m;
                if (e > inner) break;
                put(a * k + b * l + c * m, e, k % 2 == 1);
            }
    for (long long kk = 0; kk * (kk - 1) / 2 + 2 * kk + 1 <= inner; ++kk)
        for (long long ll = 1; kk * (kk - 1) / 2 + kk * ll + kk + ll <= inner; ++ll)
            for (long long mm = 1;; ++mm) {
                const long long e = kk * (kk - 1) / 2 + kk * ll + kk * mm + ll * mm;
                if (e > inner) break;
                put(-(a * kk + b * ll + c * mm), e, kk % 2 == 1);
            }

    WJet body;
    body.lo = 0;
    body.c.assign(static_cast<size_t>(whi + 1), QSeries{kDefaultDenom, {}, ti});
    for (const auto& [s, qs] : groups) {
        Rational pw = 1;
        for (int j = 0; j <= whi; ++j) {
            if (j > 0) pw = pw * s / j;
            if (!pw.is_zero() || j == 0)
                body.c[static_cast<size_t>(j)] =
                    qs_add(body.c[static_cast<size_t>(j)], qs_scale(qs, GaussianRational(pw)));
        }
    }
    WJet pre = jet_exp_linear(Rational(b + c - a) / 2, whi + 1);
    WJet r = jet_scale(jet_mul(body, pre), qs_monomial(-6, GaussianRational(1)));
    const long long t = 48 * (order + 1);
    r = jet_truncate_q(std::move(r), t);
    jet_require_trunc_at_least(r, t);
    return jet_restrict(std::move(r), wlo, whi);
}

// ---------------------------------------------------------------------------
// Numeric lattice sums. All of them share the same loop discipline: inner
// loops have strictly contracting ratios inside the stated domains; a streak
// of three consecutive negligible terms ends a loop, and outer loops end on a
// negligible whole inner pass.
// ---------------------------------------------------------------------------

// Direct two-cone evaluation of F(z1, z2, z3; tau); needs 0 < y2, y3 < Im tau.
inline ComplexVal f_indef_numeric(std::complex<double> z1, std::complex<double> z2,
                                  std::complex<double> z3, std::complex<double> tau) {
    const double v = tau.imag();
    if (!(v > 0)) throw std::domain_error("f_indef_numeric: Im tau must be positive");
    if (!(z2.imag() > 0 && z2.imag() < v && z3.imag() > 0 && z3.imag() < v))
        throw std::domain_error("f_indef_numeric: needs 0 < Im z2, Im z3 < Im tau");
    const double pi = std::numbers::pi;
    const std::complex<double> i(0.0, 1.0);
    const double tol = 1e-21;
    std::complex<double> sum = 0.0;
    double asum = 0.0;
    long long passes = 0;

    auto term_at = [&](double sgn, double e, std::complex<double> zexp) {
        const std::complex<double> t = sgn * std::exp(2.0 * pi * i * (tau * e + zexp));
        sum += t;
        asum += std::abs(t);
        ++passes;
        return t;
    };

    int ks = 0;
    for (long long k = 1; k <= 400 && ks < 2; ++k) {
        const std::complex<double> before_k = sum;
        int ls = 0;
        for (long long l = 0; l <= 4000 && ls < 2; ++l) {
            const std::complex<double> before_l = sum;
            int ms = 0;
            for (long long m = 0; m <= 4000; ++m) {
                const double e = 0.5 * k * (k + 1) + k * l + k * m + l * m;
                const std::complex<double> t =
                    term_at(k % 2 == 0 ? 1.0 : -1.0, e,
                            static_cast<double>(k) * z1 + static_cast<double>(l) * z2 +
                                static_cast<double>(m) * z3);
                if (detail::tiny(t, tol, sum, ms)) break;
            }
            ls = std::abs(sum - before_l) < tol * (1.0 + std::abs(sum)) ? ls + 1 : 0;
        }
        ks = std::abs(sum - before_k) < tol * (1.0 + std::abs(sum)) ? ks + 1 : 0;
    }
    ks = 0;
    for (long long kk = 0; kk <= 400 && ks < 2; ++kk) {
        const std::complex<double> before_k = sum;
        int ls = 0;
        for (long long ll = 1; ll <= 4000 && ls < 2; ++ll) {
            const std::complex<double> before_l = sum;
            int ms = 0;
            for (long long mm = 1; mm <= 4000; ++mm) {
                const double e = 0.5 * kk * (kk - 1) + kk * ll + kk * mm + ll * mm;
                const std::complex<double> t =
                    term_at(kk % 2 == 0 ? 1.0 : -1.0, e,
                            -(static_cast<double>(kk) * z1 + static_cast<double>(ll) * z2 +
                              static_cast<double>(mm) * z3));
                if (detail::tiny(t, tol, sum, ms)) break;
            }
            ls = std::abs(sum - before_l) < tol * (1.0 + std::abs(sum)) ? ls + 1 : 0;
        }
        ks = std::abs(sum - before_k) < tol * (1.0 + std::abs(sum)) ? ks + 1 : 0;
    }

    const std::complex<double> pre =
        std::exp(2.0 * pi * i * (-tau / 8.0 - z1 / 2.0 + z2 / 2.0 + z3 / 2.0));
    ComplexVal body{sum, 64.0 * tol * (1.0 + std::abs(sum)) + 4e-16 * asum +
                             1e-19 * static_cast<double>(passes)};
    return std::complex<double>(1.0, 0.0) * pre * body;
}

// Meromorphic continuation of F through theta and mu; defined off the
// period lattice with no cone condition.
inline ComplexVal f_indef_continued_numeric(std::complex<double> z1, std::complex<double> z2,
                                            std::complex<double> z3, std::complex<double> tau) {
    ComplexVal t1 = theta_numeric(z1, tau);
    ComplexVal m12 = mu_numeric(z1, z2, tau);
    ComplexVal m13 = mu_numeric(z1, z3, tau);
    ComplexVal quot = eta_cubed_numeric(tau) * theta_numeric(z2 + z3, tau) /
                      (theta_numeric(z2, tau) * theta_numeric(z3, tau));
    ComplexVal m1_23 = mu_numeric(z1, z2 + z3, tau);
    return std::complex<double>(0.0, 1.0) * t1 * m12 * m13 - quot * m1_23;
}

// sum_{l in Z} zeta1^l / (1 - zeta2 q^l) for 0 < y1, y2 < Im tau; the l < 0
// half is rewritten through reciprocal powers so it contracts.
inline ComplexVal theta_quotient_lhs_numeric(std::complex<double> z1, std::complex<double> z2,
                                             std::complex<double> tau) {
    const double v = tau.imag();
    if (!(v > 0)) throw std::domain_error("theta_quotient_lhs_numeric: Im tau must be positive");
    if (!(z1.imag() > 0 && z1.imag() < v && z2.imag() > 0 && z2.imag() < v))
        throw std::domain_error("theta_quotient_lhs_numeric: needs 0 < Im z1, Im z2 < Im tau");
    if (lattice_distance(z1, tau) < kPoleEps || lattice_distance(z2, tau) < kPoleEps)
        throw std::domain_error("theta_quotient_lhs_numeric: argument too close to the period lattice");
    const double pi = std::numbers::pi;
    const std::complex<double> i(0.0, 1.0);
    const double tol = 1e-21;
    std::complex<double> sum = 0.0;
    double asum = 0.0;
    int streak = 0;
    for (long long l = 0; l <= 8000 && streak < 3; ++l) {
        const std::complex<double> t =
            std::exp(2.0 * pi * i * static_cast<double>(l) * z1) *
            detail::stable_inv_one_minus_exp(z2 + static_cast<double>(l) * tau);
        sum += t;
        asum += std::abs(t);
        detail::tiny(t, tol, sum, streak);
    }
    streak = 0;
    for (long long j = 1; j <= 8000 && streak < 3; ++j) {
        const std::complex<double> t =
            std::exp(-2.0 * pi * i * static_cast<double>(j) * z1) *
            detail::stable_inv_one_minus_exp(z2 - static_cast<double>(j) * tau);
        sum += t;
        asum += std::abs(t);
        detail::tiny(t, tol, sum, streak);
    }
    return {sum, 32.0 * tol * (1.0 + std::abs(sum)) + 4e-16 * asum};
}

inline ComplexVal theta_quotient_rhs_numeric(std::complex<double> z1, std::complex<double> z2,
                                             std::complex<double> tau) {
    ComplexVal r = eta_cubed_numeric(tau) * theta_numeric(z1 + z2, tau) /
                   (theta_numeric(z1, tau) * theta_numeric(z2, tau));
    return std::complex<double>(0.0, -1.0) * r;
}

// One-variable slice used by the shift relation: with rho the double-cone
// indicator,
//   f_L(z3) = q^{-1/8} zeta1^{-1/2} zeta2^{1/2} zeta3^{1/2}
//             sum_{k,l} rho(k-1, l) (-1)^k q^{k(k+1)/2 + kl} zeta1^k zeta2^l
//                       / (1 - zeta3 q^{k+l}).
// Needs |Im z2| < Im tau; z3 only has to stay off the period lattice.
inline ComplexVal f_ell_numeric(std::complex<double> z1, std::complex<double> z2,
                                std::complex<double> z3, std::complex<double> tau) {
    const double v = tau.imag();
    if (!(v > 0)) throw std::domain_error("f_ell_numeric: Im tau must be positive");
    if (!(std::abs(z2.imag()) < v)) throw std::domain_error("f_ell_numeric: needs |Im z2| < Im tau");
    const double pi = std::numbers::pi;
    const std::complex<double> i(0.0, 1.0);
    const double tol = 1e-21;
    std::complex<double> sum = 0.0;
    double asum = 0.0;

    int ks = 0;
    for (long long k = 1; k <= 400 && ks < 2; ++k) {
        const std::complex<double> before_k = sum;
        int ls = 0;
        for (long long l = 0; l <= 8000; ++l) {
            const double e = 0.5 * k * (k + 1) + static_cast<double>(k) * l;
            const std::complex<double> t =
                (k % 2 == 0 ? 1.0 : -1.0) *
                std::exp(2.0 * pi * i *
                         (tau * e + static_cast<double>(k) * z1 + static_cast<double>(l) * z2)) *
                detail::stable_inv_one_minus_exp(z3 + static_cast<double>(k + l) * tau);
            sum += t;
            asum += std::abs(t);
            if (detail::tiny(t, tol, sum, ls)) break;
        }
        ks = std::abs(sum - before_k) < tol * (1.0 + std::abs(sum)) ? ks + 1 : 0;
    }
    ks = 0;
    for (long long kk = 0; kk <= 400 && ks < 2; ++kk) {
        const std::complex<double> before_k = sum;
        int ls = 0;
        for (long long ll = 1; ll <= 8000; ++ll) {
            const double e = 0.5 * kk * (kk - 1) + static_cast<double>(kk) * ll;
            const std::complex<double> t =
                (kk % 2 == 0 ? -1.0 : 1.0) *
                std::exp(2.0 * pi * i *
                         (tau * e - static_cast<double>(kk) * z1 - static_cast<double>(ll) * z2)) *
                detail::stable_inv_one_minus_exp(z3 - static_cast<double>(kk + ll) * tau);
            sum += t;
            asum += std::abs(t);
            if (detail::tiny(t, tol, sum, ls)) break;
        }
        ks = std::abs(sum - before_k) < tol * (1.0 + std::abs(sum)) ? ks + 1 : 0;
    }

    const std::complex<double> pre =
        std::exp(2.0 * pi * i * (-tau / 8.0 - z1 / 2.0 + z2 / 2.0 + z3 / 2.0));
    ComplexVal body{sum, 64.0 * tol * (1.0 + std::abs(sum)) + 4e-16 * asum};
    return std::complex<double>(1.0, 0.0) * pre * body;
}

// ---------------------------------------------------------------------------
// xi_k = 2 i v^k conj(d/d conj(tau)), computed by Wirtinger central
// differences with one Richardson step. The reported error combines the
// Richardson defect with the evaluation errors divided by the step.
// ---------------------------------------------------------------------------

inline ComplexVal xi_numeric(const std::function<ComplexVal(std::complex<double>)>& f, double k,
                             std::complex<double> tau, double h = 1e-3) {
    const std::complex<double> i(0.0, 1.0);
    double feval_err = 0.0;
    auto dbar = [&](double step) {
        ComplexVal fpu = f(tau + step);
        ComplexVal fmu = f(tau - step);
        ComplexVal fpv = f(tau + i * step);
        ComplexVal fmv = f(tau - i * step);
        feval_err = std::max({feval_err, fpu.err, fmu.err, fpv.err, fmv.err});
        const std::complex<double> du = (fpu.value - fmu.value) / (2.0 * step);
        const std::complex<double> dv = (fpv.value - fmv.value) / (2.0 * step);
        return 0.5 * (du + i * dv);
    };
    const std::complex<double> d1 = dbar(h);
    const std::complex<double> d2 = dbar(h / 2.0);
    const std::complex<double> d = (4.0 * d2 - d1) / 3.0;
    const double err = std::abs(d2 - d1) / 3.0 + 6.0 * feval_err / h;
    const double vk = std::pow(tau.imag(), k);
    return {2.0 * i * vk * std::conj(d), 2.0 * vk * err};
}

}  // namespace mockforms
