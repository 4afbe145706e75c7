#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "mockforms/appell.hpp"
#include "mockforms/classical_forms.hpp"
#include "mockforms/complex_val.hpp"
#include "mockforms/qseries.hpp"
#include "mockforms/wjet.hpp"

namespace mockforms {

// ---------------------------------------------------------------------------
// Generating series of the (2,3,6) superpotential, exact to q-order `order`
// past their fractional prefactors (exponent lattice in 48ths).
// ---------------------------------------------------------------------------

// q^{3/16} sum_{n>=0} (-1)^{n+1} (2n+1) q^{n(n+1)/2}.
inline QSeries c_y_def(long long order) {
    if (order < 0) throw std::invalid_argument("c_y_def: order must be >= 0");
    const long long t = 48 * (order + 1);
    QSeries r{kDefaultDenom, {}, t};
    for (long long n = 0; n * (n + 1) / 2 <= order; ++n)
        r.set(9 + 24 * n * (n + 1),
              GaussianRational(Rational(n % 2 == 0 ? -(2 * n + 1) : 2 * n + 1)));
    return r;
}

// -q^{1/16} eta^3.
inline QSeries c_y_closed(long long order) {
    QSeries r = qs_mul(qs_monomial(3, GaussianRational(-1)), eta_cubed(order));
    require_trunc_at_least(r, 48 * (order + 1), "c_y_closed");
    return truncate_to(std::move(r), 48 * (order + 1));
}

// ---------------------------------------------------------------------------
// c_yz2 = c_yz2,1 + c_yz2,2 with prefactor q^{-1/12}:
//   piece 1: sum_{n>=a>=0} (-1)^{n+a} (6n-2a+8) q^{(n+2)(n+1)/2 - a(a+1)/2}
//   piece 2: sum_{n>=a>=0} (2n+4) q^{n+an+1-a^2}
// Both exponents are >= n+1 on the support (piece 1: a <= n; piece 2: the
// exponent n(1+a)+1-a^2 equals n+1 at a = 0 and a = n and is concave in a),
// so looping n+1 <= order enumerates every contribution.
// ---------------------------------------------------------------------------

inline QSeries c_yz2_1_def(long long order) {
    if (order < 0) throw std::invalid_argument("c_yz2_1_def: order must be >= 0");
    const long long t = -4 + 48 * (order + 1);
    QSeries r{kDefaultDenom, {}, t};
    for (long long n = 0; n + 1 <= order; ++n)
        for (long long a = 0; a <= n; ++a) {
            const long long e = (n + 2) * (n + 1) / 2 - a * (a + 1) / 2;
            if (e > order) continue;
            const long long c = 6 * n - 2 * a + 8;
            GaussianRational cur = r.coeff(-4 + 48 * e);
            r.set(-4 + 48 * e, cur + GaussianRational(Rational((n + a) % 2 == 0 ? c : -c)));
        }
    return r;
}

inline QSeries c_yz2_2_def(long long order) {
    if (order < 0) throw std::invalid_argument("c_yz2_2_def: order must be >= 0");
    const long long t = -4 + 48 * (order + 1);
    QSeries r{kDefaultDenom, {}, t};
    for (long long n = 0; n + 1 <= order; ++n)
        for (long long a = 0; a <= n; ++a) {
            const long long e = n * (1 + a) + 1 - a * a;
            if (e > order) continue;
            GaussianRational cur = r.coeff(-4 + 48 * e);
            r.set(-4 + 48 * e, cur + GaussianRational(Rational(2 * n + 4)));
        }
    return r;
}

// Single pass over n >= a >= 0 adding both defining summands.
inline QSeries c_yz2_def(long long order) {
    if (order < 0) throw std::invalid_argument("c_yz2_def: order must be >= 0");
    const long long t = -4 + 48 * (order + 1);
    QSeries r{kDefaultDenom, {}, t};
    auto add = [&](long long e, const Rational& c) {
        GaussianRational cur = r.coeff(-4 + 48 * e);
        r.set(-4 + 48 * e, cur + GaussianRational(c));
    };
    for (long long n = 0; n + 1 <= order; ++n)
        for (long long a = 0; a <= n; ++a) {
            const long long e1 = (n + 2) * (n + 1) / 2 - a * (a + 1) / 2;
            if (e1 <= order) {
                const long long c = 6 * n - 2 * a + 8;
                add(e1, Rational((n + a) % 2 == 0 ? c : -c));
            }
            const long long e2 = n * (1 + a) + 1 - a * a;
            if (e2 <= order) add(e2, Rational(2 * n + 4));
        }
    return r;
}

// q^{-1/12} (1 - E_2)/6.
inline QSeries c_yz2_2_closed(long long order) {
    QSeries s = qs_scale(qs_sub(qs_one(), eisenstein(2, order + 1)),
                         GaussianRational(Rational(1, 6)));
    QSeries r = qs_mul(qs_monomial(-4, GaussianRational(1)), s);
    require_trunc_at_least(r, -4 + 48 * (order + 1), "c_yz2_2_closed");
    return truncate_to(std::move(r), -4 + 48 * (order + 1));
}

namespace detail {

// [w^1] of (-theta(m z) mu(a z, m z) + e^{c1 w} / (1 - e^{c2 w})); the w^{-1}
// poles of the two pieces must cancel and are checked to do so. One extra
// q-order absorbs the negative leads of the inverted theta inside mu.
inline QSeries mu_counterterm_w1(long long a, long long m, long long c1, long long c2,
                                 long long order, const char* what) {
    const long long ord1 = order + 1;
    WJet th = theta_jet(m, ord1, 1, 3);
    WJet mu = mu_jet(a, m, ord1, -2, 0);
    WJet counter =
        jet_mul(jet_exp_linear(Rational(c1), 4), jet_inv(jet_one_minus_exp(Rational(c2), 5)));
    WJet bracket = jet_add(jet_neg(jet_mul(th, mu)), jet_restrict(counter, -1, 1));
    bracket = jet_truncate_q(std::move(bracket), 48 * (order + 1));
    jet_require_trunc_at_least(bracket, 48 * (order + 1), what);
    jet_require_no_pole(bracket, what);
    return jet_coeff(bracket, 1);
}

}  // namespace detail

// q^{1/12} c_yz2,1 = D_{z,0}(-theta(3z) mu(4z,3z) + zeta^2/(1-zeta^4)) + (E_2-1)/12.
inline QSeries c_yz2_1_closed(long long order) {
    QSeries w1 = detail::mu_counterterm_w1(4, 3, 2, 4, order, "c_yz2_1_closed");
    QSeries e = qs_scale(qs_sub(eisenstein(2, order + 1), qs_one()),
                         GaussianRational(Rational(1, 12)));
    QSeries r = qs_mul(qs_monomial(-4, GaussianRational(1)), qs_add(w1, e));
    require_trunc_at_least(r, -4 + 48 * (order + 1), "c_yz2_1_closed");
    return truncate_to(std::move(r), -4 + 48 * (order + 1));
}

// q^{1/12} c_yz2 = (1/2) D_{z,0}(-theta(6z) mu(8z,6z) + zeta^4/(1-zeta^8)) + (1-E_2)/12.
inline QSeries c_yz2_closed(long long order) {
    QSeries w1 = qs_scale(detail::mu_counterterm_w1(8, 6, 4, 8, order, "c_yz2_closed"),
                          GaussianRational(Rational(1, 2)));
    QSeries e = qs_scale(qs_sub(qs_one(), eisenstein(2, order + 1)),
                         GaussianRational(Rational(1, 12)));
    QSeries r = qs_mul(qs_monomial(-4, GaussianRational(1)), qs_add(w1, e));
    require_trunc_at_least(r, -4 + 48 * (order + 1), "c_yz2_closed");
    return truncate_to(std::move(r), -4 + 48 * (order + 1));
}

// q^{1/12} c_yz2,1 = -D_{z,0}(sum_{j!=0} (-1)^j zeta^{3j+2} q^{j(j+1)/2} / (1-zeta^4 q^j))
// + (E_2-1)/12. Each grouped term e^{sw} q^e contributes s at [w^1]; j = -k < 0
// has base exponent k(k-1)/2 and contracts through
// 1/(1-zeta^4 q^{-k}) = -sum_{m>=1} zeta^{-4m} q^{km}.
inline QSeries c_yz2_1_alt(long long order) {
    if (order < 0) throw std::invalid_argument("c_yz2_1_alt: order must be >= 0");
    const long long t = 48 * (order + 1);
    QSeries w1{kDefaultDenom, {}, t};
    auto add = [&](long long e, long long slope, bool negative) {
        GaussianRational cur = w1.coeff(48 * e);
        w1.set(48 * e, cur + GaussianRational(Rational(negative ? -slope : slope)));
    };
    for (long long j = 1; j * (j + 1) / 2 <= order; ++j)
        for (long long m = 0; j * (j + 1) / 2 + j * m <= order; ++m)
            add(j * (j + 1) / 2 + j * m, 3 * j + 2 + 4 * m, j % 2 == 1);
    for (long long k = 1; k * (k - 1) / 2 + k <= order; ++k)
        for (long long m = 1; k * (k - 1) / 2 + k * m <= order; ++m)
            add(k * (k - 1) / 2 + k * m, 2 - 3 * k - 4 * m, k % 2 == 0);
    QSeries e12 = qs_scale(qs_sub(eisenstein(2, order), qs_one()),
                           GaussianRational(Rational(1, 12)));
    QSeries r = qs_mul(qs_monomial(-4, GaussianRational(1)), qs_add(qs_neg(w1), e12));
    require_trunc_at_least(r, -4 + 48 * (order + 1), "c_yz2_1_alt");
    return truncate_to(std::move(r), -4 + 48 * (order + 1));
}

// q^{1/12} c_yz2 = -3 sum_{n!=0} (-1)^n n q^{n(n+1)/2}/(1-q^n) + (1-E_2)/4.
// The n and -n terms coincide, so the bilateral sum is twice the n >= 1 half.
inline QSeries c_yz2_aux_form(long long order) {
    if (order < 0) throw std::invalid_argument("c_yz2_aux_form: order must be >= 0");
    const long long t = 48 * (order + 1);
    QSeries s{kDefaultDenom, {}, t};
    for (long long n = 1; n * (n + 1) / 2 <= order; ++n)
        for (long long m = 0; n * (n + 1) / 2 + n * m <= order; ++m) {
            const long long e = n * (n + 1) / 2 + n * m;
            GaussianRational cur = s.coeff(48 * e);
            s.set(48 * e, cur + GaussianRational(Rational(n % 2 == 0 ? 2 * n : -2 * n)));
        }
    QSeries e12 = qs_scale(qs_sub(qs_one(), eisenstein(2, order)),
                           GaussianRational(Rational(1, 4)));
    QSeries r = qs_mul(qs_monomial(-4, GaussianRational(1)),
                       qs_add(qs_scale(s, GaussianRational(Rational(-3))), e12));
    require_trunc_at_least(r, -4 + 48 * (order + 1), "c_yz2_aux_form");
    return truncate_to(std::move(r), -4 + 48 * (order + 1));
}

// ---------------------------------------------------------------------------
// c_yz4, prefactor q^{-17/48}:
//   sum_{a,b>=0, n>=a+b} (-1)^{n+a+b} (6n-2a-2b+7)
//     q^{(n+1)(n+2)/2 - a(a+1)/2 - b(b+1)/2}.
// T_a + T_b <= T_{a+b} <= T_n for triangular numbers T, so the exponent is at
// least T_{n+1} - T_n = n+1 on the support and looping n+1 <= order is safe.
// ---------------------------------------------------------------------------

inline QSeries c_yz4_def(long long order) {
    if (order < 0) throw std::invalid_argument("c_yz4_def: order must be >= 0");
    const long long t = -17 + 48 * (order + 1);
    QSeries r{kDefaultDenom, {}, t};
    for (long long n = 0; n + 1 <= order; ++n)
        for (long long a = 0; a <= n; ++a)
            for (long long b = 0; a + b <= n; ++b) {
                const long long e =
                    (n + 1) * (n + 2) / 2 - a * (a + 1) / 2 - b * (b + 1) / 2;
                if (e > order) continue;
                const long long c = 6 * n - 2 * a - 2 * b + 7;
                GaussianRational cur = r.coeff(-17 + 48 * e);
                r.set(-17 + 48 * e,
                      cur + GaussianRational(Rational((n + a + b) % 2 == 0 ? c : -c)));
            }
    return r;
}

// -q^{-11/48} [w^1](i theta(3z) mu^2(3z,2z) - eta^3 theta(4z) mu(3z,4z)/theta^2(2z)).
// The w^{-3}..w^{-1} poles cancel between the two pieces and are checked to.
inline QSeries c_yz4_closed_mu(long long order) {
    if (order < 0) throw std::invalid_argument("c_yz4_closed_mu: order must be >= 0");
    const long long ord1 = order + 2;
    WJet mu32 = mu_jet(3, 2, ord1, -2, 2);
    WJet p1 = jet_scale(jet_mul(theta_jet(3, ord1, 1, 5), jet_mul(mu32, mu32)),
                        GaussianRational::unit_i());
    WJet ti = jet_inv(theta_jet(2, ord1, 1, 5));
    WJet p2 = jet_mul(jet_mul(theta_jet(4, ord1, 1, 5), jet_mul(ti, ti)),
                      mu_jet(3, 4, ord1, -2, 2));
    p2 = jet_scale(std::move(p2), eta_cubed(ord1));
    WJet bracket = jet_sub(p1, p2);
    bracket = jet_truncate_q(std::move(bracket), 11 + 48 * (order + 1));
    jet_require_no_pole(bracket, "c_yz4_closed_mu");
    QSeries r = qs_mul(qs_monomial(-11, GaussianRational(-1)), jet_coeff(bracket, 1));
    require_trunc_at_least(r, -17 + 48 * (order + 1), "c_yz4_closed_mu");
    return truncate_to(std::move(r), -17 + 48 * (order + 1));
}

// -q^{-11/48} [w^1] F(3z, 2z, 2z).
inline QSeries c_yz4_closed_f(long long order) {
    if (order < 0) throw std::invalid_argument("c_yz4_closed_f: order must be >= 0");
    WJet f = f_indef_jet(3, 2, 2, order + 1, 0, 1);
    QSeries r = qs_mul(qs_monomial(-11, GaussianRational(-1)), jet_coeff(f, 1));
    require_trunc_at_least(r, -17 + 48 * (order + 1), "c_yz4_closed_f");
    return truncate_to(std::move(r), -17 + 48 * (order + 1));
}

// ---------------------------------------------------------------------------
// Non-holomorphic completions, numeric only. Definition series are built at
// the order matching the working Im tau and evaluated exactly.
// ---------------------------------------------------------------------------

inline ComplexVal q112_cyz2_numeric(std::complex<double> tau) {
    const long long order = numeric_order(tau.imag());
    return qs_eval(qs_mul(qs_monomial(4, GaussianRational(1)), c_yz2_def(order)), tau);
}

// q^{1/12} c_yz2 - 1/4 + (3/2) eta^3 R(0). Completing mu to muhat inside the
// half-derivative formula contributes (3/2) eta^3 R(0); the remaining additive
// anomaly under inversion is killed by the constant alone, no E_2 term.
inline ComplexVal chat_yz2_numeric(std::complex<double> tau) {
    ComplexVal p = q112_cyz2_numeric(tau);
    ComplexVal r0 = r_function_numeric(0.0, tau);
    ComplexVal e3 = eta_cubed_numeric(tau);
    return p - ComplexVal{{0.25, 0.0}, 0.0} + std::complex<double>(1.5, 0.0) * e3 * r0;
}

// q^{11/48} c_yz4 + R(0)(1/4 - q^{1/12}c_yz2) - (3/4) R(0)^2 eta^3. The R(0)
// bracket collects the [w^1] pole subtractions from both muhat insertions and
// the R^2 term is (i/4)[w^1](theta(3z) R^2(z)) = -(3/4) eta^3 R(0)^2.
inline ComplexVal chat_yz4_numeric(std::complex<double> tau) {
    const long long order = numeric_order(tau.imag());
    ComplexVal s4 = qs_eval(qs_mul(qs_monomial(11, GaussianRational(1)), c_yz4_def(order)), tau);
    ComplexVal p = q112_cyz2_numeric(tau);
    ComplexVal r0 = r_function_numeric(0.0, tau);
    ComplexVal e3 = eta_cubed_numeric(tau);
    ComplexVal inner = ComplexVal{{0.25, 0.0}, 0.0} - p;
    return s4 + r0 * inner - std::complex<double>(0.75, 0.0) * r0 * r0 * e3;
}

// q^{-1/16} c_y transforms with weight 3/2 and the eta^3 multiplier.
inline FormDescriptor descriptor_cy_normalized() {
    const double pi = std::numbers::pi;
    return {"q^{-1/16}c_y", Rational(3, 2), std::exp(std::complex<double>(0.0, pi / 4.0)),
            {1.0, 0.0}, Rational(3, 2), Rational(0), false,
            [](std::complex<double>, std::complex<double> tau) {
                const long long order = numeric_order(tau.imag());
                ComplexVal c = qs_eval(c_y_def(order), tau);
                const std::complex<double> pre =
                    std::exp(std::complex<double>(0.0, -std::numbers::pi / 8.0) * tau);
                return pre * c;
            }};
}

// Weight 2, trivial multiplier: the integer-exponent series is T-invariant and
// eta^3 R(0) pairs the phases e^{pi i/4} and e^{-pi i/4}.
inline FormDescriptor descriptor_chat_yz2() {
    return {"chat_yz2", Rational(2), {1.0, 0.0}, {-1.0, 0.0}, Rational(2), Rational(0), false,
            [](std::complex<double>, std::complex<double> tau) { return chat_yz2_numeric(tau); }};
}

// Weight 5/2. Under tau -> tau+1 every constituent sits on the exponent
// lattice -1/8 + Z and R(0) shifts by e^{-pi i/4}, so the T-phase is
// e^{-pi i/4}; the suite additionally measures this phase rather than only
// asserting it.
inline FormDescriptor descriptor_chat_yz4() {
    const double pi = std::numbers::pi;
    return {"chat_yz4", Rational(5, 2), std::exp(std::complex<double>(0.0, -pi / 4.0)),
            {1.0, 0.0}, Rational(5, 2), Rational(0), false,
            [](std::complex<double>, std::complex<double> tau) { return chat_yz4_numeric(tau); }};
}

// ---------------------------------------------------------------------------
// Potential coefficient table:
//   W = q^{1/8} x^2 - q^{1/48} xyz + c_y y^3 + c_z z^6 + c_yz2 y^2z^2 + c_yz4 yz^4.
// The z^6 coefficient has no closed series here and is carried as an external
// marker.
// ---------------------------------------------------------------------------

struct PotentialEntry {
    std::string monomial;
    bool external = false;
    QSeries series;  // empty when external
};

inline std::vector<PotentialEntry> w_coefficients(long long order) {
    std::vector<PotentialEntry> t;
    t.push_back({"x^2", false, qs_monomial(6, GaussianRational(1))});
    t.push_back({"xyz", false, qs_monomial(1, GaussianRational(-1))});
    t.push_back({"y^3", false, c_y_def(order)});
    t.push_back({"z^6", true, qs_zero()});
    t.push_back({"y^2z^2", false, c_yz2_def(order)});
    t.push_back({"yz^4", false, c_yz4_def(order)});
    return t;
}

}  // namespace mockforms
