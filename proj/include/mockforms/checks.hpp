#pragma once

// Check executors.
//
// check_qseries_equal compares two exact expansions coefficient by
// coefficient up to min(requested order, truncation markers) and reports the
// first mismatching q-exponent with both coefficients. Sampled checks
// (numeric, transform, shadow) draw seeded points, evaluate both sides with
// interval-style error bounds, and report the maximal deviation together
// with the sample that attains it. A failing report appends the exact
// command line that reproduces it.

#include "mockforms/appell.hpp"
#include "mockforms/classical_forms.hpp"
#include "mockforms/qseries.hpp"
#include "mockforms/report.hpp"
#include "mockforms/sampling.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

namespace mockforms {

inline std::string fmt_double(double x) {
    char b[64];
    std::snprintf(b, sizeof(b), "%.6g", x);
    return b;
}

inline std::string fmt_complex(std::complex<double> w) {
    char b[96];
    std::snprintf(b, sizeof(b), "%.6g%+.6gi", w.real(), w.imag());
    return b;
}

inline std::string fmt_exponent(long long k, long long denom) {
    if (k == 0) return "q^0";
    const long long g = std::gcd(k < 0 ? -k : k, denom);
    const long long num = k / g;
    const long long den = denom / g;
    if (den == 1) return "q^" + std::to_string(num);
    return "q^{" + std::to_string(num) + "/" + std::to_string(den) + "}";
}

template <class Body>
IdentityReport run_timed(std::string name, CheckMode mode, const CheckParams& p, Body&& body) {
    IdentityReport rep;
    rep.name = std::move(name);
    rep.mode = mode;
    rep.params = p;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(rep);
    } catch (const std::exception& e) {
        rep.status = CheckStatus::Error;
        rep.detail = std::string("error: ") + e.what();
    }
    rep.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    return rep;
}

// Coefficientwise equality through q^order, capped by both truncation
// markers. Series on different exponent lattices are aligned first; an
// alignment failure is an error, not a mismatch.
inline IdentityReport check_qseries_equal(const std::string& name, QSeries lhs, QSeries rhs,
                                          const CheckParams& p) {
    return run_timed(name, CheckMode::Exact, p, [&](IdentityReport& rep) {
        if (lhs.denom != rhs.denom) qs_align(lhs, rhs);
        long long bound = p.order >= 0 ? p.order * lhs.denom + 1 : 0;
        if (lhs.trunc) bound = std::min(bound, *lhs.trunc);
        if (rhs.trunc) bound = std::min(bound, *rhs.trunc);
        auto il = lhs.c.begin();
        auto ir = rhs.c.begin();
        long long compared = 0;
        constexpr long long kNone = std::numeric_limits<long long>::max();
        while (true) {
            const long long kl = il != lhs.c.end() ? il->first : kNone;
            const long long kr = ir != rhs.c.end() ? ir->first : kNone;
            const long long k = std::min(kl, kr);
            if (k == kNone || k >= bound) break;
            GaussianRational cl(0), cr(0);
            if (kl == k) cl = (il++)->second;
            if (kr == k) cr = (ir++)->second;
            ++compared;
            if (cl != cr) {
                rep.status = CheckStatus::Fail;
                rep.detail = "first mismatch at " + fmt_exponent(k, lhs.denom) +
                             ": lhs = " + to_string(cl) + ", rhs = " + to_string(cr) +
                             "; repro: " + repro_command(rep.name, rep.mode, p);
                return;
            }
        }
        rep.status = CheckStatus::Pass;
        const std::string upto = fmt_exponent(bound > 0 ? bound - 1 : 0, lhs.denom);
        rep.detail = compared == 0
                         ? "both sides vanish identically through " + upto
                         : "all " + std::to_string(compared) + " coefficients agree through " + upto;
    });
}

struct SamplePoint {
    std::string where;
    ComplexVal lhs;
    ComplexVal rhs;
};

// Sampled two-sided comparison. Deviations are measured relative to
// 1 + max(|lhs|, |rhs|); the tracked evaluation error of both sides widens
// the per-sample budget so a check only fails on genuine disagreement.
inline IdentityReport check_sampled(const std::string& name, CheckMode mode, const CheckParams& p,
                                    const std::function<SamplePoint(SampleRng&, int)>& sample) {
    return run_timed(name, mode, p, [&](IdentityReport& rep) {
        SampleRng rng(p.seed ^ fnv1a64(rep.name));
        double worst_dev = 0.0;
        std::string worst_where = "(no samples)";
        bool ok = true;
        for (int idx = 0; idx < p.samples; ++idx) {
            const SamplePoint s = sample(rng, idx);
            const double mag =
                std::max(std::abs(s.lhs.value), std::abs(s.rhs.value));
            const double dev = std::abs(s.lhs.value - s.rhs.value);
            if (dev >= worst_dev) {
                worst_dev = dev;
                worst_where = s.where;
            }
            const double budget = p.tol * (1.0 + mag) + s.lhs.err + s.rhs.err;
            if (!(dev <= budget)) ok = false;
        }
        rep.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
        rep.detail = "max |LHS-RHS| = " + fmt_double(worst_dev) + " at " + worst_where + " over " +
                     std::to_string(p.samples) + " samples";
        if (!ok) rep.detail += "; repro: " + repro_command(rep.name, rep.mode, p);
    });
}

enum class TransformGen { S, T };

// Modular transformation law of a described form:
//   T: f(z, tau+1) = t_phase f(z, tau)
//   S: f(z/tau, -1/tau) = s_phase (-i tau)^{s_power}
//                         exp(2 pi i jacobi_index z^2 / tau) f(z, tau).
// (-i tau)^{s_power} uses the principal branch; -i tau has positive real
// part on the upper half plane, so the branch cut is never crossed.
inline IdentityReport check_transform(const std::string& name, const FormDescriptor& f,
                                      TransformGen gen, const CheckParams& p,
                                      std::vector<std::complex<double>> fixed_taus = {}) {
    auto sample = [f, gen, fixed_taus](SampleRng& rng, int idx) -> SamplePoint {
        std::complex<double> tau;
        if (!fixed_taus.empty()) {
            tau = fixed_taus[static_cast<std::size_t>(idx) % fixed_taus.size()];
            rng.unit();
        } else {
            tau = gen == TransformGen::S ? sample_tau_inversion(rng) : sample_tau(rng);
        }
        std::complex<double> z{0.0, 0.0};
        if (f.has_z) z = sample_z(rng, tau);
        const std::complex<double> i(0.0, 1.0);
        ComplexVal lhs{{0.0, 0.0}, 0.0};
        ComplexVal rhs{{0.0, 0.0}, 0.0};
        if (gen == TransformGen::T) {
            lhs = f.eval(z, tau + 1.0);
            rhs = f.t_phase * f.eval(z, tau);
        } else {
            lhs = f.eval(z / tau, -1.0 / tau);
            std::complex<double> factor =
                f.s_phase * std::exp(to_double(f.s_power) * std::log(-i * tau));
            if (f.has_z && f.jacobi_index != 0)
                factor *= std::exp(2.0 * std::numbers::pi * i * to_double(f.jacobi_index) * z * z /
                                   tau);
            rhs = factor * f.eval(z, tau);
        }
        std::string where = "tau=" + fmt_complex(tau);
        if (f.has_z) where += ", z=" + fmt_complex(z);
        return {where, lhs, rhs};
    };
    return check_sampled(name, CheckMode::Transform, p, sample);
}

// xi_k f against an expected function of tau.
inline IdentityReport check_shadow_expected(
    const std::string& name, const CheckParams& p,
    const std::function<ComplexVal(std::complex<double>)>& f, double weight,
    const std::function<ComplexVal(std::complex<double>)>& expected,
    std::vector<std::complex<double>> fixed_taus = {}) {
    auto sample = [f, weight, expected, fixed_taus](SampleRng& rng, int idx) -> SamplePoint {
        std::complex<double> tau;
        if (!fixed_taus.empty()) {
            tau = fixed_taus[static_cast<std::size_t>(idx) % fixed_taus.size()];
            rng.unit();
        } else {
            tau = sample_tau(rng);
        }
        return {"tau=" + fmt_complex(tau), xi_numeric(f, weight, tau), expected(tau)};
    };
    return check_sampled(name, CheckMode::Shadow, p, sample);
}

struct ShadowFit {
    double power = 0.0;
    double constant = 0.0;
};

// Measures the shape of xi_k f along the imaginary axis: with
// r(v) := xi_k f(iv) / |eta(iv)|^6, fits r(v) = constant * v^power from two
// heights and requires the third height to confirm the fit within tol
// (relative). Reports the fitted pair either way.
inline IdentityReport check_shadow_measure(const std::string& name, const CheckParams& p,
                                           const std::function<ComplexVal(std::complex<double>)>& f,
                                           double weight, ShadowFit* out = nullptr) {
    return run_timed(name, CheckMode::Shadow, p, [&](IdentityReport& rep) {
        const double vs[3] = {0.9, 1.1, 1.3};
        double r[3];
        double imag_frac = 0.0;
        for (int j = 0; j < 3; ++j) {
            const std::complex<double> tau(0.0, vs[j]);
            const ComplexVal xi = xi_numeric(f, weight, tau);
            const ComplexVal e = eta_numeric(tau);
            const double den = std::pow(std::abs(e.value), 6.0);
            const std::complex<double> ratio = xi.value / den;
            r[j] = ratio.real();
            imag_frac = std::max(imag_frac, std::abs(ratio.imag()) / (1.0 + std::abs(ratio)));
        }
        const double power = std::log(std::abs(r[0] / r[1])) / std::log(vs[0] / vs[1]);
        const double constant = r[0] / std::pow(vs[0], power);
        const double pred = constant * std::pow(vs[2], power);
        const bool sign_ok = (r[0] < 0) == (r[1] < 0) && (r[1] < 0) == (r[2] < 0);
        const bool fit_ok = std::abs(r[2] - pred) <= p.tol * std::abs(r[2]);
        const bool real_ok = imag_frac <= p.tol;
        if (out) *out = {power, constant};
        rep.status = (sign_ok && fit_ok && real_ok) ? CheckStatus::Pass : CheckStatus::Fail;
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "xi f / |eta|^6 = constant * v^power with power = %.4f, constant = %.6f "
                      "(heights v = 0.9, 1.1, 1.3)",
                      power, constant);
        rep.detail = buf;
        if (rep.status == CheckStatus::Fail)
            rep.detail += "; repro: " + repro_command(rep.name, rep.mode, p);
    });
}

}  // namespace mockforms
