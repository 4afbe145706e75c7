#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "mockforms/bernoulli.hpp"
#include "mockforms/complex_val.hpp"
#include "mockforms/qseries.hpp"
#include "mockforms/wjet.hpp"

namespace mockforms {

// ---------------------------------------------------------------------------
// Dedekind eta and powers.
// ---------------------------------------------------------------------------

// prod_{n=1..N} (1 - q^n), exact through q^N, truncation index 48(N+1).
inline QSeries euler_product(long long order) {
    if (order < 0) throw std::invalid_argument("euler_product: order must be >= 0");
    const long long t = 48 * (order + 1);
    QSeries acc = truncate_to(qs_one(), t);
    for (long long n = 1; n <= order; ++n) {
        QSeries f = qs_one();
        f.set(48 * n, GaussianRational(-1));
        acc = qs_mul(acc, f);
    }
    return acc;
}

// eta = q^{1/24} prod (1 - q^n). All exponents below order+1 are known.
inline QSeries eta(long long order) {
    QSeries r = qs_mul(qs_monomial(2, GaussianRational(1)), euler_product(order));
    require_trunc_at_least(r, 48 * (order + 1));
    return truncate_to(r, 48 * (order + 1));
}

inline QSeries eta_cubed(long long order) {
    QSeries e = eta(order + 1);
    QSeries r = qs_mul(qs_mul(e, e), e);
    require_trunc_at_least(r, 48 * (order + 1));
    return truncate_to(r, 48 * (order + 1));
}

// ---------------------------------------------------------------------------
// Eisenstein series E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n, k even >= 2.
// ---------------------------------------------------------------------------

inline QSeries eisenstein(int k, long long order) {
    if (k < 2 || k % 2 != 0) throw std::invalid_argument("eisenstein: weight must be even and >= 2");
    if (order < 0) throw std::invalid_argument("eisenstein: order must be >= 0");
    const long long t = 48 * (order + 1);
    // sigma_{k-1} by divisor sieve; values can exceed 64 bits for large k.
    std::vector<BigInt> sigma(static_cast<size_t>(order) + 1, BigInt(0));
    for (long long d = 1; d <= order; ++d) {
        BigInt p = 1;
        for (int e = 0; e < k - 1; ++e) p *= d;
        for (long long n = d; n <= order; n += d) sigma[static_cast<size_t>(n)] += p;
    }
    Rational factor = Rational(-2 * k) / bernoulli(k);
    QSeries r{kDefaultDenom, {}, t};
    r.set(0, GaussianRational(1));
    for (long long n = 1; n <= order; ++n)
        r.set(48 * n, GaussianRational(Rational(factor * sigma[static_cast<size_t>(n)])));
    return r;
}

// 2 sum_{m>0} (-1)^m (q^{m(m+3)/2} + q^{m(m+1)/2}) sum_{j>=0} (j+1) q^{mj}.
// Collapses to (E_2 - 1)/12.
inline QSeries appell_e2_lhs(long long order) {
    if (order < 0) throw std::invalid_argument("appell_e2_lhs: order must be >= 0");
    const long long t = 48 * (order + 1);
    std::map<long long, Rational> acc;
    for (long long m = 1; m * (m + 1) / 2 <= order; ++m) {
        const Rational sgn = (m % 2 == 0) ? Rational(2) : Rational(-2);
        for (long long j = 0;; ++j) {
            const long long e1 = m * (m + 3) / 2 + m * j;
            const long long e2 = m * (m + 1) / 2 + m * j;
            if (e2 > order) break;
            if (e1 <= order) acc[e1] += sgn * (j + 1);
            acc[e2] += sgn * (j + 1);
        }
    }
    QSeries r{kDefaultDenom, {}, t};
    for (const auto& [e, v] : acc) r.set(48 * e, GaussianRational(v));
    return r;
}

// ---------------------------------------------------------------------------
// Jacobi theta as a w-jet, w = 2 pi i z:
//   theta(a z; tau) = sum_m i (-1)^m q^{m(m+1)/2 + 1/8} e^{(m+1/2) a w}.
// Coefficient of w^k picks up (a(m+1/2))^k / k!; even k cancels in pairs.
// ---------------------------------------------------------------------------

inline WJet theta_jet(long long a, long long order, int wlo, int whi) {
    if (whi < wlo) throw std::invalid_argument("theta_jet: empty window");
    if (order < 0) throw std::invalid_argument("theta_jet: order must be >= 0");
    const long long t = 48 * (order + 1);
    const int top = whi < 0 ? -1 : whi;
    WJet jet;
    jet.lo = 0;
    for (int k = 0; k <= top; ++k)
        jet.c.push_back(k % 2 == 1 ? QSeries{kDefaultDenom, {}, t} : qs_zero());
    for (long long m = 0; m * (m + 1) / 2 <= order; ++m) {
        const long long idx = 48 * (m * (m + 1) / 2) + 6;
        const Rational sign = (m % 2 == 0) ? Rational(2) : Rational(-2);
        const Rational slope = Rational(a) * Rational(2 * m + 1, 2);
        Rational pw = 1;
        for (int k = 1; k <= top; ++k) {
            pw = pw * slope / k;
            if (k % 2 == 1) {
                GaussianRational cur = jet.c[static_cast<size_t>(k)].coeff(idx);
                jet.c[static_cast<size_t>(k)].set(idx, cur + GaussianRational(Rational(0), sign * pw));
            }
        }
    }
    return jet_restrict(jet_normalize(std::move(jet)), wlo, whi);
}

// ---------------------------------------------------------------------------
// Appell-type kernel as a w-jet:
//   sum_{n in Z} (-1)^n zeta^{b n} q^{n(n+1)/2} / (1 - zeta^a q^n),  zeta = e^w.
// The n = 0 term carries the simple pole 1/(1 - e^{aw}); every n != 0 term is
// expanded geometrically with exponents that stay positive:
//   n > 0:  (-1)^n sum_{m>=0} e^{(bn+am)w} q^{n(n+1)/2 + nm}
//   n = -k: (-1)^{k+1} sum_{j>=1} e^{-(bk+aj)w} q^{k(k-1)/2 + kj}.
// ---------------------------------------------------------------------------

inline WJet appell_sum_jet(long long a, long long b, long long order, int whi) {
    if (a == 0) throw std::domain_error("appell_sum_jet: the n = 0 term needs a != 0");
    if (order < 0) throw std::invalid_argument("appell_sum_jet: order must be >= 0");
    if (whi < -1) throw std::invalid_argument("appell_sum_jet: window must reach w^-1");
    const long long t = 48 * (order + 1);

    WJet pole = jet_inv(jet_one_minus_exp(Rational(a), whi + 3));

    // Group the regular terms by exponential slope s: e^{sw} -> w^k gets s^k/k!.
    std::map<long long, QSeries> groups;
    auto put = [&](long long s, long long qidx, bool negative) {
        auto it = groups.find(s);
        if (it == groups.end()) it = groups.emplace(s, QSeries{kDefaultDenom, {}, t}).first;
        GaussianRational cur = it->second.coeff(48 * qidx);
        it->second.set(48 * qidx, cur + GaussianRational(negative ? -1 : 1));
    };
    for (long long n = 1; n * (n + 1) / 2 <= order; ++n)
        for (long long m = 0; n * (n + 1) / 2 + n * m <= order; ++m)
            put(b * n + a * m, n * (n + 1) / 2 + n * m, n % 2 == 1);
    for (long long k = 1; k * (k + 1) / 2 <= order; ++k)
        for (long long j = 1; k * (k - 1) / 2 + k * j <= order; ++j)
            put(-(b * k + a * j), k * (k - 1) / 2 + k * j, k % 2 == 0);

    WJet reg;
    reg.lo = 0;
    reg.c.assign(static_cast<size_t>(whi < 0 ? 0 : whi + 1), QSeries{kDefaultDenom, {}, t});
    for (const auto& [s, qs] : groups) {
        Rational pw = 1;
        for (int k = 0; k < static_cast<int>(reg.c.size()); ++k) {
            if (k > 0) pw = pw * s / k;
            if (!pw.is_zero() || k == 0)
                reg.c[static_cast<size_t>(k)] = qs_add(reg.c[static_cast<size_t>(k)],
                                                       qs_scale(qs, GaussianRational(pw)));
        }
    }
    return jet_restrict(jet_add(pole, reg), -1, whi);
}

// ---------------------------------------------------------------------------
// eta^3 / theta(a z) as a w-jet, three independent expansion routes:
//   (i)   eta^3 times the inverted theta jet,
//   (ii)  i e^{aw/2} sum_n (-1)^n q^{n(n+1)/2} / (1 - e^{aw} q^n),
//   (iii) -i/(aw) exp( sum_{n>=1} c_n E_2n(tau) (aw)^{2n} ),
//         c_n = -B_2n / (2n (2n)!).
// All three are computed and compared term by term; a mismatch throws.
// ---------------------------------------------------------------------------

inline WJet eta3_over_theta_jet(long long a, long long order, int wlo, int whi) {
    if (a == 0) throw std::domain_error("eta3_over_theta_jet: a must be nonzero");
    if (whi < 1) throw std::invalid_argument("eta3_over_theta_jet: window must reach w^1");
    if (wlo > whi) throw std::invalid_argument("eta3_over_theta_jet: empty window");
    const long long t = 48 * (order + 1);
    const long long margin = order + 2;
    const int h = whi;

    WJet r1 = jet_scale(jet_inv(theta_jet(a, margin, 1, h + 2)), eta_cubed(margin));

    WJet r2 = jet_scale(jet_mul(appell_sum_jet(a, 0, margin, h + 1),
                                jet_exp_linear(Rational(a) / 2, h + 3)),
                        GaussianRational::unit_i());
    r2 = jet_restrict(std::move(r2), -1, h);

    WJet arg;
    arg.lo = 2;
    arg.c.assign(static_cast<size_t>(h), qs_zero());
    for (int n = 1; 2 * n <= h + 1; ++n)
        arg.c[static_cast<size_t>(2 * n - 2)] =
            qs_scale(eisenstein(2 * n, margin),
                     GaussianRational(zagier_exp_coefficient(n) * rational_pow(Rational(a), 2 * n)));
    WJet r3 = jet_shift(jet_scale(jet_exp(arg),
                                  GaussianRational(Rational(0), Rational(-1) / Rational(a))),
                        -1);

    auto canon = [&](WJet j) {
        j = jet_truncate_q(std::move(j), t);
        jet_require_trunc_at_least(j, t);
        return j;
    };
    WJet c1 = canon(r1), c2 = canon(std::move(r2)), c3 = canon(std::move(r3));
    for (int k = -1; k <= h; ++k) {
        if (!(jet_coeff(c1, k) == jet_coeff(c2, k)) || !(jet_coeff(c1, k) == jet_coeff(c3, k)))
            throw std::logic_error("eta3_over_theta_jet: expansion routes disagree at w^" +
                                   std::to_string(k));
    }
    return jet_restrict(std::move(c1), wlo, whi);
}

// ---------------------------------------------------------------------------
// Numeric evaluation on the upper half plane.
// ---------------------------------------------------------------------------

inline long long numeric_order(double v) {
    if (!(v > 0)) throw std::domain_error("numeric_order: Im tau must be positive");
    return static_cast<long long>(std::ceil(8.0 / v)) + 8;
}

inline ComplexVal eta_numeric(std::complex<double> tau) {
    return qs_eval(eta(numeric_order(tau.imag())), tau);
}

inline ComplexVal eta_cubed_numeric(std::complex<double> tau) {
    return qs_eval(eta_cubed(numeric_order(tau.imag())), tau);
}

inline ComplexVal eisenstein_numeric(int k, std::complex<double> tau) {
    return qs_eval(eisenstein(k, numeric_order(tau.imag())), tau);
}

// E_2(tau) - 3/(pi Im tau), the weight 2 completion.
inline ComplexVal e2_completed_numeric(std::complex<double> tau) {
    ComplexVal r = eisenstein_numeric(2, tau);
    r.value -= 3.0 / (std::numbers::pi * tau.imag());
    return r;
}

// theta(z; tau) = sum_{r in Z+1/2} i (-1)^{r-1/2} e^{pi i tau r^2 + 2 pi i z r}.
// Terms decay like a Gaussian centered at r = -Im z / Im tau; summing a window
// of half-width M around the center bounds the tail by the first omitted term
// times a geometric majorant.
inline ComplexVal theta_numeric(std::complex<double> z, std::complex<double> tau) {
    const double v = tau.imag();
    if (!(v > 0)) throw std::domain_error("theta_numeric: Im tau must be positive");
    const double pi = std::numbers::pi;
    const double center = -z.imag() / v;
    const double m = std::sqrt(40.0 / (pi * v)) + 1.0;
    const long long mlo = static_cast<long long>(std::floor(center - m - 0.5));
    const long long mhi = static_cast<long long>(std::ceil(center + m - 0.5));
    std::complex<double> sum = 0.0;
    for (long long n = mlo; n <= mhi; ++n) {
        const double r = static_cast<double>(n) + 0.5;
        const std::complex<double> e =
            std::exp(std::complex<double>(0.0, pi) * (tau * r * r + 2.0 * z * r));
        sum += (n % 2 == 0 ? 1.0 : -1.0) * std::complex<double>(0.0, 1.0) * e;
    }
    const double peak = std::exp(pi * z.imag() * z.imag() / v);
    const double err = 4.0 * peak * std::exp(-pi * v * m * m) / (1.0 - std::exp(-2.0 * pi * v * m));
    return {sum, err};
}

// Jacobi triple product:
//   theta = -i q^{1/8} zeta^{-1/2} prod (1-q^n)(1 - zeta q^{n-1})(1 - zeta^{-1} q^n).
inline ComplexVal theta_product_numeric(std::complex<double> z, std::complex<double> tau) {
    if (!(tau.imag() > 0)) throw std::domain_error("theta_product_numeric: Im tau must be positive");
    const std::complex<double> i(0.0, 1.0);
    const double pi = std::numbers::pi;
    const std::complex<double> q = std::exp(2.0 * pi * i * tau);
    const std::complex<double> zeta = std::exp(2.0 * pi * i * z);
    std::complex<double> p = -i * std::exp(pi * i * tau / 4.0) * std::exp(-pi * i * z);
    std::complex<double> qn = q;        // q^n
    std::complex<double> za = zeta;     // zeta q^{n-1}
    std::complex<double> zb = q / zeta; // zeta^{-1} q^n
    double bound = 0.0;
    for (long long n = 1; n <= 200000; ++n) {
        p *= (1.0 - qn) * (1.0 - za) * (1.0 - zb);
        bound = std::abs(qn) + std::abs(za) + std::abs(zb);
        if (bound < 1e-18) break;
        qn *= q;
        za *= q;
        zb *= q;
    }
    const double err = 2.0 * std::abs(p) * bound / (1.0 - std::abs(q));
    return {p, err};
}

// Distance from z to the lattice Z tau + Z.
inline double lattice_distance(std::complex<double> z, std::complex<double> tau) {
    const double alpha = z.imag() / tau.imag();
    const double beta = z.real() - alpha * tau.real();
    double best = std::abs(z);
    for (int da = -1; da <= 1; ++da)
        for (int db = -1; db <= 1; ++db) {
            const double m = std::round(alpha) + da;
            const double n = std::round(beta) + db;
            best = std::min(best, std::abs(z - (m * tau + n)));
        }
    return best;
}

inline constexpr double kPoleEps = 1e-9;

// ---------------------------------------------------------------------------
// Modular transformation data. Conventions, with c(z, tau) the form:
//   T:  c(z, tau+1)            = t_phase * c(z, tau)
//   S:  c(z/tau, -1/tau)       = s_phase * (-i tau)^{s_power}
//                                * exp(2 pi i * jacobi_index * z^2 / tau) * c(z, tau)
// Forms without elliptic variable ignore z.
// ---------------------------------------------------------------------------

struct FormDescriptor {
    std::string name;
    Rational weight;
    std::complex<double> t_phase;
    std::complex<double> s_phase;
    Rational s_power;
    Rational jacobi_index;
    bool has_z = false;
    std::function<ComplexVal(std::complex<double>, std::complex<double>)> eval;
};

inline FormDescriptor descriptor_eta() {
    const double pi = std::numbers::pi;
    return {"eta", Rational(1, 2), std::exp(std::complex<double>(0.0, pi / 12.0)),
            {1.0, 0.0}, Rational(1, 2), Rational(0), false,
            [](std::complex<double>, std::complex<double> tau) { return eta_numeric(tau); }};
}

inline FormDescriptor descriptor_eta_cubed() {
    const double pi = std::numbers::pi;
    return {"eta^3", Rational(3, 2), std::exp(std::complex<double>(0.0, pi / 4.0)),
            {1.0, 0.0}, Rational(3, 2), Rational(0), false,
            [](std::complex<double>, std::complex<double> tau) { return eta_cubed_numeric(tau); }};
}

inline FormDescriptor descriptor_eisenstein(int k) {
    if (k < 4 || k % 2 != 0)
        throw std::invalid_argument("descriptor_eisenstein: modular only for even k >= 4");
    const std::complex<double> s = (k % 4 == 0) ? std::complex<double>(1.0, 0.0)
                                                : std::complex<double>(-1.0, 0.0);
    return {"E" + std::to_string(k), Rational(k), {1.0, 0.0}, s, Rational(k), Rational(0), false,
            [k](std::complex<double>, std::complex<double> tau) { return eisenstein_numeric(k, tau); }};
}

inline FormDescriptor descriptor_e2_completed() {
    return {"E2^", Rational(2), {1.0, 0.0}, {-1.0, 0.0}, Rational(2), Rational(0), false,
            [](std::complex<double>, std::complex<double> tau) { return e2_completed_numeric(tau); }};
}

inline FormDescriptor descriptor_theta() {
    const double pi = std::numbers::pi;
    return {"theta", Rational(1, 2), std::exp(std::complex<double>(0.0, pi / 4.0)),
            {0.0, -1.0}, Rational(1, 2), Rational(1, 2), true,
            [](std::complex<double> z, std::complex<double> tau) { return theta_numeric(z, tau); }};
}

// eta^3(tau) / theta(a z; tau) as a function of (z, tau).
inline FormDescriptor descriptor_eta3_over_theta(long long a) {
    return {"eta^3/theta(" + std::to_string(a) + "z)", Rational(1), {1.0, 0.0},
            {0.0, 1.0}, Rational(1), Rational(-a * a, 2), true,
            [a](std::complex<double> z, std::complex<double> tau) {
                ComplexVal num = eta_cubed_numeric(tau);
                ComplexVal den = theta_numeric(static_cast<double>(a) * z, tau);
                return num / den;
            }};
}

}  // namespace mockforms
