#pragma once

// The named check registry and the suite runner.
//
// Every identity the engine implements appears here exactly once as a named,
// reproducible check. Checks are pure functions of their parameters; the
// suite runs them on a small thread pool and merges reports in registry
// order, so output is deterministic for a fixed config. Sampled checks
// derive their random stream from seed ^ fnv1a64(name), making each check's
// samples independent of which other checks run.

#include "mockforms/appell.hpp"
#include "mockforms/checks.hpp"
#include "mockforms/classical_forms.hpp"
#include "mockforms/gw_potential.hpp"
#include "mockforms/qseries.hpp"
#include "mockforms/report.hpp"
#include "mockforms/sampling.hpp"
#include "mockforms/wjet.hpp"

#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace mockforms {

struct CheckDef {
    std::string name;
    CheckMode mode;
    CheckParams defaults;
    std::function<IdentityReport(const CheckParams&)> run;
};

namespace detail {

inline IdentityReport fail_report(const std::string& name, CheckMode mode, const CheckParams& p,
                                  const std::string& msg) {
    IdentityReport rep;
    rep.name = name;
    rep.mode = mode;
    rep.params = p;
    rep.status = CheckStatus::Fail;
    rep.detail = msg + "; repro: " + repro_command(name, mode, p);
    return rep;
}

// sum_{k in Z} (-1)^k q^{k(3k-1)/2} (generalized pentagonal support).
inline QSeries pentagonal_series(long long order) {
    QSeries r{kDefaultDenom, {}, 48 * (order + 1)};
    r.set(0, GaussianRational(1));
    for (long long k = 1;; ++k) {
        const long long e1 = k * (3 * k - 1) / 2;
        const long long e2 = k * (3 * k + 1) / 2;
        if (e1 > order) break;
        const GaussianRational s(Rational(k % 2 == 0 ? 1 : -1));
        r.set(48 * e1, s);
        if (e2 <= order) r.set(48 * e2, s);
    }
    return r;
}

// sum_{n>=0} (-1)^n (2n+1) q^{n(n+1)/2 + 1/8}.
inline QSeries eta3_sum_series(long long order) {
    QSeries r{kDefaultDenom, {}, 48 * (order + 1)};
    for (long long n = 0; n * (n + 1) / 2 <= order; ++n)
        r.set(48 * (n * (n + 1) / 2) + 6,
              GaussianRational(Rational(n % 2 == 0 ? 2 * n + 1 : -(2 * n + 1))));
    return r;
}

// i theta(3z) mu(3z,2z)^2 - eta^3 theta(4z) mu(3z,4z) / theta(2z)^2 as a jet;
// poles through w^{-1} must cancel.
inline WJet f_rhs_jet(long long order, int whi) {
    const long long m = order + 2;
    WJet mu32 = mu_jet(3, 2, m, -2, 2);
    WJet p1 = jet_scale(jet_mul(theta_jet(3, m, 1, 5), jet_mul(mu32, mu32)),
                        GaussianRational::unit_i());
    WJet ti = jet_inv(theta_jet(2, m, 1, 5));
    WJet p2 = jet_mul(jet_mul(theta_jet(4, m, 1, 5), jet_mul(ti, ti)), mu_jet(3, 4, m, -2, 2));
    p2 = jet_scale(std::move(p2), eta_cubed(m));
    WJet bracket = jet_sub(p1, p2);
    bracket = jet_truncate_q(std::move(bracket), 48 * (order + 1));
    jet_require_no_pole(bracket, "f_rhs_jet");
    return jet_restrict(std::move(bracket), 0, whi);
}

// Compare two jets coefficientwise over [wlo, whi] through q^order.
inline IdentityReport check_jets_equal(const std::string& name, const CheckParams& p,
                                       const std::function<WJet()>& lhs,
                                       const std::function<WJet()>& rhs, int wlo, int whi) {
    return run_timed(name, CheckMode::Exact, p, [&](IdentityReport& rep) {
        const WJet a = lhs();
        const WJet b = rhs();
        for (int k = wlo; k <= whi; ++k) {
            IdentityReport inner = check_qseries_equal(name, jet_coeff(a, k), jet_coeff(b, k), p);
            if (inner.status != CheckStatus::Pass) {
                rep.status = inner.status;
                rep.detail = "w^" + std::to_string(k) + ": " + inner.detail;
                return;
            }
        }
        rep.status = CheckStatus::Pass;
        rep.detail = "jets agree for w^{" + std::to_string(wlo) + "}..w^{" + std::to_string(whi) +
                     "} through q^" + std::to_string(p.order);
    });
}

inline std::complex<double> cis(double t) { return {std::cos(t), std::sin(t)}; }

}  // namespace detail

inline std::vector<CheckDef> build_registry() {
    using std::complex;
    const double pi = std::numbers::pi;
    const complex<double> I(0.0, 1.0);
    std::vector<CheckDef> defs;

    auto add = [&defs](std::string name, CheckMode mode, CheckParams p,
                       std::function<IdentityReport(const CheckParams&)> run) {
        defs.push_back({std::move(name), mode, p, std::move(run)});
    };
    const CheckParams ex200{200, 0, 1, 0.0};
    const CheckParams ex100{100, 0, 1, 0.0};
    const CheckParams ex60{60, 0, 1, 0.0};
    const CheckParams ex40{40, 0, 1, 0.0};
    const CheckParams ex30{30, 0, 1, 0.0};
    const CheckParams ex24{24, 0, 1, 0.0};
    auto sampled = [](int samples, double tol) { return CheckParams{0, samples, 1, tol}; };

    // ---- exact identities ----

    add("exact.eta_pentagonal", CheckMode::Exact, ex200, [](const CheckParams& p) {
        return check_qseries_equal("exact.eta_pentagonal", euler_product(p.order),
                                   detail::pentagonal_series(p.order), p);
    });

    add("exact.eta3_sum_formula", CheckMode::Exact, ex200, [](const CheckParams& p) {
        return check_qseries_equal("exact.eta3_sum_formula", eta_cubed(p.order),
                                   detail::eta3_sum_series(p.order), p);
    });

    add("exact.e2_appell_lemma", CheckMode::Exact, ex200, [](const CheckParams& p) {
        QSeries rhs = qs_scale(qs_sub(eisenstein(2, p.order), qs_one()),
                               GaussianRational(Rational(1, 12)));
        return check_qseries_equal("exact.e2_appell_lemma", appell_e2_lhs(p.order), rhs, p);
    });

    add("exact.theta_w1_is_eta3", CheckMode::Exact, ex100, [](const CheckParams& p) {
        QSeries lhs = jet_coeff(theta_jet(1, p.order, 1, 1), 1);
        QSeries rhs = qs_scale(eta_cubed(p.order), GaussianRational::unit_i());
        return check_qseries_equal("exact.theta_w1_is_eta3", lhs, rhs, p);
    });

    add("exact.eta3_over_theta_three_way", CheckMode::Exact, ex100, [](const CheckParams& p) {
        const std::string name = "exact.eta3_over_theta_three_way";
        try {
            WJet j = eta3_over_theta_jet(1, p.order, -1, 6);
            QSeries lead = qs_monomial(0, GaussianRational(Rational(0), Rational(-1)));
            IdentityReport rep = check_qseries_equal(name, jet_coeff(j, -1), lead, p);
            if (rep.status == CheckStatus::Pass)
                rep.detail = "three expansion routes agree for w^{-1}..w^6; " + rep.detail;
            return rep;
        } catch (const std::logic_error& e) {
            return detail::fail_report(name, CheckMode::Exact, p, e.what());
        }
    });

    add("exact.eta3_over_theta_w1_e2", CheckMode::Exact, ex100, [](const CheckParams& p) {
        QSeries lhs = jet_coeff(eta3_over_theta_jet(1, p.order, -1, 1), 1);
        QSeries rhs = qs_scale(eisenstein(2, p.order),
                               GaussianRational(Rational(0), Rational(1, 24)));
        return check_qseries_equal("exact.eta3_over_theta_w1_e2", lhs, rhs, p);
    });

    add("exact.mu_jet_symmetry", CheckMode::Exact, ex30, [](const CheckParams& p) {
        return detail::check_jets_equal(
            "exact.mu_jet_symmetry", p, [&p] { return mu_jet(3, 2, p.order, -2, 3); },
            [&p] { return mu_jet(2, 3, p.order, -2, 3); }, -2, 3);
    });

    add("exact.mu_bracket_polefree", CheckMode::Exact, ex30, [](const CheckParams& p) {
        WJet th = theta_jet(6, p.order + 1, 1, 3);
        WJet mu = mu_jet(8, 6, p.order + 1, -2, 0);
        WJet counter = jet_mul(jet_exp_linear(Rational(4), 4),
                               jet_inv(jet_one_minus_exp(Rational(8), 5)));
        WJet bracket = jet_add(jet_neg(jet_mul(th, mu)), jet_restrict(counter, -1, 1));
        bracket = jet_truncate_q(std::move(bracket), 48 * (p.order + 1));
        return check_qseries_equal("exact.mu_bracket_polefree", jet_coeff(bracket, -1), qs_zero(),
                                   p);
    });

    add("exact.f_jet_main_identity", CheckMode::Exact, ex24, [](const CheckParams& p) {
        return detail::check_jets_equal(
            "exact.f_jet_main_identity", p,
            [&p] { return f_indef_jet(3, 2, 2, p.order, 0, 1); },
            [&p] { return detail::f_rhs_jet(p.order, 1); }, 0, 1);
    });

    add("exact.cy_def_matches_closed", CheckMode::Exact, ex200, [](const CheckParams& p) {
        return check_qseries_equal("exact.cy_def_matches_closed", c_y_def(p.order),
                                   c_y_closed(p.order), p);
    });

    add("exact.cyz2_piece_sum", CheckMode::Exact, ex60, [](const CheckParams& p) {
        return check_qseries_equal("exact.cyz2_piece_sum", c_yz2_def(p.order),
                                   qs_add(c_yz2_1_def(p.order), c_yz2_2_def(p.order)), p);
    });

    add("exact.cyz22_is_e2_form", CheckMode::Exact, ex200, [](const CheckParams& p) {
        return check_qseries_equal("exact.cyz22_is_e2_form", c_yz2_2_def(p.order),
                                   c_yz2_2_closed(p.order), p);
    });

    add("exact.cyz21_closed_matches_def", CheckMode::Exact, ex60, [](const CheckParams& p) {
        return check_qseries_equal("exact.cyz21_closed_matches_def", c_yz2_1_closed(p.order),
                                   c_yz2_1_def(p.order), p);
    });

    add("exact.cyz21_alt_matches_def", CheckMode::Exact, ex60, [](const CheckParams& p) {
        return check_qseries_equal("exact.cyz21_alt_matches_def", c_yz2_1_alt(p.order),
                                   c_yz2_1_def(p.order), p);
    });

    add("exact.cyz2_closed_matches_def", CheckMode::Exact, ex60, [](const CheckParams& p) {
        return check_qseries_equal("exact.cyz2_closed_matches_def", c_yz2_closed(p.order),
                                   c_yz2_def(p.order), p);
    });

    add("exact.cyz2_aux_matches_def", CheckMode::Exact, ex60, [](const CheckParams& p) {
        return check_qseries_equal("exact.cyz2_aux_matches_def", c_yz2_aux_form(p.order),
                                   c_yz2_def(p.order), p);
    });

    add("exact.cyz4_mu_route_matches_def", CheckMode::Exact, ex40, [](const CheckParams& p) {
        return check_qseries_equal("exact.cyz4_mu_route_matches_def", c_yz4_closed_mu(p.order),
                                   c_yz4_def(p.order), p);
    });

    add("exact.cyz4_f_route_matches_def", CheckMode::Exact, ex40, [](const CheckParams& p) {
        return check_qseries_equal("exact.cyz4_f_route_matches_def", c_yz4_closed_f(p.order),
                                   c_yz4_def(p.order), p);
    });

    add("exact.cyz4_routes_agree", CheckMode::Exact, ex40, [](const CheckParams& p) {
        return check_qseries_equal("exact.cyz4_routes_agree", c_yz4_closed_mu(p.order),
                                   c_yz4_closed_f(p.order), p);
    });

    add("exact.potential_table", CheckMode::Exact, ex40, [](const CheckParams& p) {
        const std::string name = "exact.potential_table";
        return run_timed(name, CheckMode::Exact, p, [&](IdentityReport& rep) {
            const auto table = w_coefficients(p.order);
            const char* want[] = {"x^2", "xyz", "y^3", "z^6", "y^2z^2", "yz^4"};
            if (table.size() != 6) {
                rep.status = CheckStatus::Fail;
                rep.detail = "table has " + std::to_string(table.size()) + " entries, want 6";
                return;
            }
            QSeries expect[6] = {qs_monomial(6, GaussianRational(1)),
                                 qs_monomial(1, GaussianRational(-1)),
                                 c_y_def(p.order),
                                 qs_zero(),
                                 c_yz2_def(p.order),
                                 c_yz4_def(p.order)};
            for (int j = 0; j < 6; ++j) {
                if (table[j].monomial != want[j]) {
                    rep.status = CheckStatus::Fail;
                    rep.detail = std::string("slot ") + std::to_string(j) + " is " +
                                 table[j].monomial + ", want " + want[j];
                    return;
                }
                const bool want_external = std::string(want[j]) == "z^6";
                if (table[j].external != want_external) {
                    rep.status = CheckStatus::Fail;
                    rep.detail = std::string(want[j]) + ": external marker mismatch";
                    return;
                }
                if (want_external) continue;
                IdentityReport inner = check_qseries_equal(name, table[j].series, expect[j], p);
                if (inner.status != CheckStatus::Pass) {
                    rep.status = inner.status;
                    rep.detail = std::string(want[j]) + ": " + inner.detail;
                    return;
                }
            }
            rep.status = CheckStatus::Pass;
            rep.detail = "all six potential slots match through q^" + std::to_string(p.order);
        });
    });

    add("exact.gw_integrality", CheckMode::Exact, ex200, [](const CheckParams& p) {
        const std::string name = "exact.gw_integrality";
        return run_timed(name, CheckMode::Exact, p, [&](IdentityReport& rep) {
            struct Item {
                const char* label;
                QSeries s;
            };
            Item items[] = {{"c_y", c_y_def(p.order)},
                            {"c_yz2", c_yz2_def(p.order)},
                            {"c_yz4", c_yz4_def(p.order)}};
            long long count = 0;
            for (const auto& it : items)
                for (const auto& [k, c] : it.s.c) {
                    ++count;
                    if (c.im != 0 || boost::multiprecision::denominator(c.re) != 1) {
                        rep.status = CheckStatus::Fail;
                        rep.detail = std::string(it.label) + " at " + fmt_exponent(k, it.s.denom) +
                                     ": coefficient " + to_string(c) + " is not an integer" +
                                     "; repro: " + repro_command(name, CheckMode::Exact, p);
                        return;
                    }
                }
            rep.status = CheckStatus::Pass;
            rep.detail = "all " + std::to_string(count) +
                         " coefficients of c_y, c_yz2, c_yz4 are integers through q^" +
                         std::to_string(p.order);
        });
    });

    // ---- transformation laws ----

    auto add_descriptor = [&](const std::string& name, FormDescriptor d, TransformGen g,
                              CheckParams p, std::vector<complex<double>> taus = {}) {
        add(name, CheckMode::Transform, p,
            [name, d, g, taus](const CheckParams& q) {
                return check_transform(name, d, g, q, taus);
            });
    };

    add_descriptor("transform.eta_T", descriptor_eta(), TransformGen::T, sampled(12, 1e-8));
    add_descriptor("transform.eta_S", descriptor_eta(), TransformGen::S, sampled(12, 1e-8));
    add_descriptor("transform.eta3_T", descriptor_eta_cubed(), TransformGen::T, sampled(12, 1e-8));
    add_descriptor("transform.eta3_S", descriptor_eta_cubed(), TransformGen::S, sampled(12, 1e-8));
    add_descriptor("transform.e4_S", descriptor_eisenstein(4), TransformGen::S, sampled(12, 1e-8));

    add("transform.e2_quasimodular_S", CheckMode::Transform, sampled(12, 1e-8),
        [pi, I](const CheckParams& p) {
            auto sample = [pi, I](SampleRng& rng, int) -> SamplePoint {
                const complex<double> tau = sample_tau_inversion(rng);
                ComplexVal lhs = eisenstein_numeric(2, -1.0 / tau);
                ComplexVal rhs = tau * tau * eisenstein_numeric(2, tau) +
                                 ComplexVal{6.0 * tau / (pi * I), 0.0};
                return {"tau=" + fmt_complex(tau), lhs, rhs};
            };
            return check_sampled("transform.e2_quasimodular_S", CheckMode::Transform, p, sample);
        });

    add_descriptor("transform.e2hat_S", descriptor_e2_completed(), TransformGen::S,
                   sampled(12, 1e-8));
    add_descriptor("transform.e2hat_T", descriptor_e2_completed(), TransformGen::T,
                   sampled(12, 1e-8));
    add_descriptor("transform.theta_T", descriptor_theta(), TransformGen::T, sampled(12, 1e-8));
    add_descriptor("transform.theta_S", descriptor_theta(), TransformGen::S, sampled(12, 1e-8));

    add("transform.theta_elliptic", CheckMode::Transform, sampled(12, 1e-8),
        [pi, I](const CheckParams& p) {
            auto sample = [pi, I](SampleRng& rng, int idx) -> SamplePoint {
                static const int lam[3] = {1, 0, 1};
                static const int mu[3] = {0, 1, 1};
                const int l = lam[idx % 3], m = mu[idx % 3];
                const complex<double> tau = sample_tau(rng);
                const complex<double> z = sample_z(rng, tau);
                ComplexVal lhs = theta_numeric(z + static_cast<double>(l) * tau +
                                                   static_cast<double>(m),
                                               tau);
                const complex<double> factor =
                    (((l + m) % 2 != 0) ? -1.0 : 1.0) *
                    std::exp(-pi * I * static_cast<double>(l * l) * tau -
                             2.0 * pi * I * static_cast<double>(l) * z);
                ComplexVal rhs = factor * theta_numeric(z, tau);
                return {"tau=" + fmt_complex(tau) + ", z=" + fmt_complex(z) + ", (lambda,mu)=(" +
                            std::to_string(l) + "," + std::to_string(m) + ")",
                        lhs, rhs};
            };
            return check_sampled("transform.theta_elliptic", CheckMode::Transform, p, sample);
        });

    add("transform.theta_oddness", CheckMode::Transform, sampled(12, 1e-10),
        [](const CheckParams& p) {
            auto sample = [](SampleRng& rng, int) -> SamplePoint {
                const complex<double> tau = sample_tau(rng);
                const complex<double> z = sample_z(rng, tau);
                ComplexVal rhs = ComplexVal{{-1.0, 0.0}, 0.0} * theta_numeric(z, tau);
                return {"tau=" + fmt_complex(tau) + ", z=" + fmt_complex(z),
                        theta_numeric(-z, tau), rhs};
            };
            return check_sampled("transform.theta_oddness", CheckMode::Transform, p, sample);
        });

    add_descriptor("transform.eta3_over_theta_S", descriptor_eta3_over_theta(1), TransformGen::S,
                   sampled(12, 1e-8));

    add("transform.mu_symmetry", CheckMode::Transform, sampled(20, 1e-9),
        [](const CheckParams& p) {
            auto sample = [](SampleRng& rng, int) -> SamplePoint {
                const complex<double> tau = sample_tau(rng);
                const complex<double> z1 = sample_z(rng, tau);
                const complex<double> z2 = sample_z(rng, tau);
                return {"tau=" + fmt_complex(tau) + ", z1=" + fmt_complex(z1) +
                            ", z2=" + fmt_complex(z2),
                        mu_numeric(z1, z2, tau), mu_numeric(z2, z1, tau)};
            };
            return check_sampled("transform.mu_symmetry", CheckMode::Transform, p, sample);
        });

    add("transform.mu_z1_shift", CheckMode::Transform, sampled(12, 1e-9),
        [](const CheckParams& p) {
            auto sample = [](SampleRng& rng, int) -> SamplePoint {
                const complex<double> tau = sample_tau(rng);
                const complex<double> z1 = sample_z(rng, tau);
                const complex<double> z2 = sample_z(rng, tau);
                ComplexVal rhs = ComplexVal{{-1.0, 0.0}, 0.0} * mu_numeric(z1, z2, tau);
                return {"tau=" + fmt_complex(tau) + ", z1=" + fmt_complex(z1) +
                            ", z2=" + fmt_complex(z2),
                        mu_numeric(z1 + 1.0, z2, tau), rhs};
            };
            return check_sampled("transform.mu_z1_shift", CheckMode::Transform, p, sample);
        });

    add("transform.mu_tau_shift", CheckMode::Transform, sampled(12, 1e-8),
        [pi, I](const CheckParams& p) {
            auto sample = [pi, I](SampleRng& rng, int) -> SamplePoint {
                const complex<double> tau = sample_tau(rng);
                const complex<double> z1 = sample_z(rng, tau);
                const complex<double> z2 = sample_z(rng, tau);
                const complex<double> coeff = std::exp(2.0 * pi * I * (z2 - z1) - pi * I * tau);
                ComplexVal lhs = mu_numeric(z1, z2, tau) + coeff * mu_numeric(z1 + tau, z2, tau);
                const complex<double> rhs = -I * std::exp(pi * I * (z2 - z1) - pi * I * tau / 4.0);
                return {"tau=" + fmt_complex(tau) + ", z1=" + fmt_complex(z1) +
                            ", z2=" + fmt_complex(z2),
                        lhs, ComplexVal{rhs, 0.0}};
            };
            return check_sampled("transform.mu_tau_shift", CheckMode::Transform, p, sample);
        });

    add("transform.muhat_elliptic", CheckMode::Transform, sampled(8, 1e-8),
        [pi, I](const CheckParams& p) {
            auto sample = [pi, I](SampleRng& rng, int idx) -> SamplePoint {
                static const int kk[4] = {1, 0, 0, 0};
                static const int ll[4] = {0, 1, 0, 0};
                static const int mm[4] = {0, 0, 1, 0};
                static const int nn[4] = {0, 0, 0, 1};
                const int k = kk[idx % 4], l = ll[idx % 4], m = mm[idx % 4], n = nn[idx % 4];
                const complex<double> tau = sample_tau(rng);
                const complex<double> z1 = sample_z(rng, tau);
                const complex<double> z2 = sample_z(rng, tau);
                ComplexVal lhs = mu_hat_numeric(
                    z1 + static_cast<double>(k) * tau + static_cast<double>(l),
                    z2 + static_cast<double>(m) * tau + static_cast<double>(n), tau);
                const double km = k - m;
                const complex<double> factor =
                    (((k + l + m + n) % 2 != 0) ? -1.0 : 1.0) *
                    std::exp(pi * I * km * km * tau + 2.0 * pi * I * km * (z1 - z2));
                ComplexVal rhs = factor * mu_hat_numeric(z1, z2, tau);
                return {"tau=" + fmt_complex(tau) + ", z1=" + fmt_complex(z1) +
                            ", z2=" + fmt_complex(z2) + ", (k,l,m,n)=(" + std::to_string(k) + "," +
                            std::to_string(l) + "," + std::to_string(m) + "," +
                            std::to_string(n) + ")",
                        lhs, rhs};
            };
            return check_sampled("transform.muhat_elliptic", CheckMode::Transform, p, sample);
        });

    add("transform.muhat_S", CheckMode::Transform, sampled(8, 1e-8),
        [pi, I](const CheckParams& p) {
            auto sample = [pi, I](SampleRng& rng, int) -> SamplePoint {
                const complex<double> tau = sample_tau_inversion(rng);
                const complex<double> z1 = sample_z(rng, tau, -0.3, 0.3);
                const complex<double> z2 = sample_z(rng, tau, -0.3, 0.3);
                ComplexVal lhs = mu_hat_numeric(z1 / tau, z2 / tau, -1.0 / tau);
                const complex<double> factor =
                    detail::cis(3.0 * pi / 4.0) * std::sqrt(tau) *
                    std::exp(-pi * I * (z1 - z2) * (z1 - z2) / tau);
                ComplexVal rhs = factor * mu_hat_numeric(z1, z2, tau);
                return {"tau=" + fmt_complex(tau) + ", z1=" + fmt_complex(z1) +
                            ", z2=" + fmt_complex(z2),
                        lhs, rhs};
            };
            return check_sampled("transform.muhat_S", CheckMode::Transform, p, sample);
        });

    add("transform.muhat_T", CheckMode::Transform, sampled(8, 1e-8),
        [pi](const CheckParams& p) {
            auto sample = [pi](SampleRng& rng, int) -> SamplePoint {
                const complex<double> tau = sample_tau(rng);
                const complex<double> z1 = sample_z(rng, tau);
                const complex<double> z2 = sample_z(rng, tau);
                ComplexVal rhs = detail::cis(-pi / 4.0) * mu_hat_numeric(z1, z2, tau);
                return {"tau=" + fmt_complex(tau) + ", z1=" + fmt_complex(z1) +
                            ", z2=" + fmt_complex(z2),
                        mu_hat_numeric(z1, z2, tau + 1.0), rhs};
            };
            return check_sampled("transform.muhat_T", CheckMode::Transform, p, sample);
        });

    add_descriptor("transform.cy_normalized_S", descriptor_cy_normalized(), TransformGen::S,
                   sampled(6, 1e-8));
    add_descriptor("transform.cy_normalized_T", descriptor_cy_normalized(), TransformGen::T,
                   sampled(6, 1e-8));
    add_descriptor("transform.chat_yz2_S", descriptor_chat_yz2(), TransformGen::S,
                   sampled(3, 1e-6), completion_tau_samples());
    add_descriptor("transform.chat_yz2_T", descriptor_chat_yz2(), TransformGen::T,
                   sampled(3, 1e-6), completion_tau_samples());
    add_descriptor("transform.chat_yz4_S", descriptor_chat_yz4(), TransformGen::S,
                   sampled(3, 1e-6), completion_tau_samples());
    add_descriptor("transform.chat_yz4_T", descriptor_chat_yz4(), TransformGen::T,
                   sampled(3, 1e-6), completion_tau_samples());

    // ---- numeric identities ----

    add("numeric.theta_triple_product", CheckMode::Numeric, sampled(20, 1e-10),
        [](const CheckParams& p) {
            auto sample = [](SampleRng& rng, int) -> SamplePoint {
                const complex<double> tau = sample_tau(rng);
                const complex<double> z = sample_z(rng, tau);
                return {"tau=" + fmt_complex(tau) + ", z=" + fmt_complex(z),
                        theta_numeric(z, tau), theta_product_numeric(z, tau)};
            };
            return check_sampled("numeric.theta_triple_product", CheckMode::Numeric, p, sample);
        });

    add("numeric.f_direct_vs_continued", CheckMode::Numeric, sampled(20, 1e-8),
        [](const CheckParams& p) {
            auto sample = [](SampleRng& rng, int) -> SamplePoint {
                const complex<double> tau = sample_tau(rng);
                complex<double> z1, z2, z3;
                for (int attempt = 0;; ++attempt) {
                    if (attempt > 256)
                        throw std::runtime_error("f_direct_vs_continued: no clear sample");
                    z1 = sample_z(rng, tau, 0.05, 0.6);
                    z2 = sample_z(rng, tau, 0.1, 0.85);
                    z3 = sample_z(rng, tau, 0.1, 0.85);
                    if (lattice_distance(z2 + z3, tau) >= 0.08) break;
                }
                return {"tau=" + fmt_complex(tau) + ", z1=" + fmt_complex(z1) +
                            ", z2=" + fmt_complex(z2) + ", z3=" + fmt_complex(z3),
                        f_indef_numeric(z1, z2, z3, tau),
                        f_indef_continued_numeric(z1, z2, z3, tau)};
            };
            return check_sampled("numeric.f_direct_vs_continued", CheckMode::Numeric, p, sample);
        });

    add("numeric.f_ell_shift", CheckMode::Numeric, sampled(12, 1e-8),
        [pi, I](const CheckParams& p) {
            auto sample = [pi, I](SampleRng& rng, int) -> SamplePoint {
                const complex<double> tau = sample_tau(rng);
                complex<double> z1, z2, z3;
                for (int attempt = 0;; ++attempt) {
                    if (attempt > 256) throw std::runtime_error("f_ell_shift: no clear sample");
                    z1 = sample_z(rng, tau, 0.05, 0.6);
                    z2 = sample_z(rng, tau, 0.1, 0.9);
                    z3 = sample_z(rng, tau, 0.05, 0.5);
                    if (lattice_distance(z2 + z3, tau) >= 0.08) break;
                }
                ComplexVal lhs = f_ell_numeric(z1, z2, z3, tau) +
                                 std::exp(-pi * I * tau + 2.0 * pi * I * (z1 - z3)) *
                                     f_ell_numeric(z1, z2, z3 + tau, tau);
                ComplexVal quot = eta_cubed_numeric(tau) * theta_numeric(z2 + z3, tau) /
                                  (theta_numeric(z2, tau) * theta_numeric(z3, tau));
                ComplexVal rhs =
                    std::exp(-pi * I * tau / 4.0) *
                    (std::exp(pi * I * (z1 - z3)) * theta_numeric(z1, tau) *
                         mu_numeric(z1, z2, tau) +
                     I * std::exp(pi * I * (z1 - z2 - z3)) * quot);
                return {"tau=" + fmt_complex(tau) + ", z1=" + fmt_complex(z1) +
                            ", z2=" + fmt_complex(z2) + ", z3=" + fmt_complex(z3),
                        lhs, rhs};
            };
            return check_sampled("numeric.f_ell_shift", CheckMode::Numeric, p, sample);
        });

    add("numeric.f_antiperiodicity", CheckMode::Numeric, sampled(12, 1e-9),
        [](const CheckParams& p) {
            auto sample = [](SampleRng& rng, int) -> SamplePoint {
                const complex<double> tau = sample_tau(rng);
                complex<double> z1, z2, z3;
                for (int attempt = 0;; ++attempt) {
                    if (attempt > 256)
                        throw std::runtime_error("f_antiperiodicity: no clear sample");
                    z1 = sample_z(rng, tau);
                    z2 = sample_z(rng, tau);
                    z3 = sample_z(rng, tau);
                    if (lattice_distance(z2 + z3, tau) >= 0.08) break;
                }
                ComplexVal rhs = ComplexVal{{-1.0, 0.0}, 0.0} *
                                 f_indef_continued_numeric(z1, z2, z3, tau);
                return {"tau=" + fmt_complex(tau) + ", z1=" + fmt_complex(z1) +
                            ", z2=" + fmt_complex(z2) + ", z3=" + fmt_complex(z3),
                        f_indef_continued_numeric(z1, z2, z3 + 1.0, tau), rhs};
            };
            return check_sampled("numeric.f_antiperiodicity", CheckMode::Numeric, p, sample);
        });

    add("numeric.theta_quotient_lemma", CheckMode::Numeric, sampled(20, 1e-8),
        [](const CheckParams& p) {
            auto sample = [](SampleRng& rng, int) -> SamplePoint {
                const complex<double> tau = sample_tau(rng);
                complex<double> z1, z2;
                for (int attempt = 0;; ++attempt) {
                    if (attempt > 256)
                        throw std::runtime_error("theta_quotient_lemma: no clear sample");
                    z1 = sample_z_strip(rng, tau);
                    z2 = sample_z_strip(rng, tau);
                    if (lattice_distance(z1 + z2, tau) >= 0.08) break;
                }
                return {"tau=" + fmt_complex(tau) + ", z1=" + fmt_complex(z1) +
                            ", z2=" + fmt_complex(z2),
                        theta_quotient_lhs_numeric(z1, z2, tau),
                        theta_quotient_rhs_numeric(z1, z2, tau)};
            };
            return check_sampled("numeric.theta_quotient_lemma", CheckMode::Numeric, p, sample);
        });

    add("numeric.theta_quotient_swap", CheckMode::Numeric, sampled(12, 1e-8),
        [](const CheckParams& p) {
            auto sample = [](SampleRng& rng, int) -> SamplePoint {
                const complex<double> tau = sample_tau(rng);
                const complex<double> z1 = sample_z_strip(rng, tau);
                const complex<double> z2 = sample_z_strip(rng, tau);
                return {"tau=" + fmt_complex(tau) + ", z1=" + fmt_complex(z1) +
                            ", z2=" + fmt_complex(z2),
                        theta_quotient_lhs_numeric(z1, z2, tau),
                        theta_quotient_lhs_numeric(z2, z1, tau)};
            };
            return check_sampled("numeric.theta_quotient_swap", CheckMode::Numeric, p, sample);
        });

    add("numeric.mu_jet_vs_numeric", CheckMode::Numeric, sampled(8, 1e-5),
        [pi](const CheckParams& p) {
            const std::string name = "numeric.mu_jet_vs_numeric";
            return run_timed(name, CheckMode::Numeric, p, [&](IdentityReport& rep) {
                const WJet jet = mu_jet(3, 2, 20, -2, 8);
                auto sample = [&jet, pi](SampleRng& rng, int) -> SamplePoint {
                    const complex<double> tau = sample_tau(rng);
                    const double r = rng.range(0.008, 0.02);
                    const double th = rng.range(0.0, 2.0 * pi);
                    const complex<double> z = r * detail::cis(th);
                    return {"tau=" + fmt_complex(tau) + ", z=" + fmt_complex(z),
                            jet_eval(jet, z, tau), mu_numeric(3.0 * z, 2.0 * z, tau)};
                };
                IdentityReport inner = check_sampled(name, CheckMode::Numeric, p, sample);
                rep.status = inner.status;
                rep.detail = inner.detail;
            });
        });

    add("numeric.mu_residue", CheckMode::Numeric, sampled(6, 1e-8),
        [pi](const CheckParams& p) {
            auto sample = [pi](SampleRng& rng, int) -> SamplePoint {
                const complex<double> tau = sample_tau(rng);
                const complex<double> z2 = sample_z(rng, tau);
                const int M = 64;
                const double r = 0.04;
                complex<double> acc = 0.0;
                double err = 0.0;
                for (int j = 0; j < M; ++j) {
                    const complex<double> u = r * detail::cis(2.0 * pi * j / M);
                    const ComplexVal m = mu_numeric(u, z2, tau);
                    acc += m.value * u;
                    err += m.err * r;
                }
                ComplexVal lhs{acc / static_cast<double>(M), err / M + 1e-13};
                ComplexVal rhs = complex<double>(0.0, 1.0 / (2.0 * pi)) *
                                 (ComplexVal{{1.0, 0.0}, 0.0} / theta_numeric(z2, tau));
                return {"tau=" + fmt_complex(tau) + ", z2=" + fmt_complex(z2), lhs, rhs};
            };
            return check_sampled("numeric.mu_residue", CheckMode::Numeric, p, sample);
        });

    add("numeric.r_cutoff_stability", CheckMode::Numeric, sampled(8, 1e-10),
        [](const CheckParams& p) {
            auto sample = [](SampleRng& rng, int) -> SamplePoint {
                const complex<double> tau = sample_tau(rng);
                return {"tau=" + fmt_complex(tau), r_function_numeric(0.0, tau, 20.0),
                        r_function_numeric(0.0, tau, 40.0)};
            };
            return check_sampled("numeric.r_cutoff_stability", CheckMode::Numeric, p, sample);
        });

    add("numeric.r_evenness", CheckMode::Numeric, sampled(12, 1e-9),
        [](const CheckParams& p) {
            auto sample = [](SampleRng& rng, int) -> SamplePoint {
                const complex<double> tau = sample_tau(rng);
                const complex<double> z = sample_z(rng, tau, -0.4, 0.4, 0.0);
                return {"tau=" + fmt_complex(tau) + ", z=" + fmt_complex(z),
                        r_function_numeric(z, tau), r_function_numeric(-z, tau)};
            };
            return check_sampled("numeric.r_evenness", CheckMode::Numeric, p, sample);
        });

    add("numeric.e2hat_value_i", CheckMode::Numeric, sampled(2, 1e-8),
        [pi](const CheckParams& p) {
            auto sample = [pi](SampleRng&, int idx) -> SamplePoint {
                const complex<double> tau(0.0, 1.0);
                if (idx % 2 == 0)
                    return {"tau=i (completed E_2)", e2_completed_numeric(tau),
                            ComplexVal{{0.0, 0.0}, 0.0}};
                return {"tau=i (E_2)", eisenstein_numeric(2, tau),
                        ComplexVal{{3.0 / pi, 0.0}, 0.0}};
            };
            return check_sampled("numeric.e2hat_value_i", CheckMode::Numeric, p, sample);
        });

    add("numeric.theta_lattice_zero", CheckMode::Numeric, sampled(3, 1e-10),
        [](const CheckParams& p) {
            auto sample = [](SampleRng&, int idx) -> SamplePoint {
                static const complex<double> taus[3] = {
                    {0.0, 1.0}, {0.0, 2.0}, {1.0 / 3.0, 1.0}};
                const complex<double> tau = taus[idx % 3];
                return {"tau=" + fmt_complex(tau) + ", z=0", theta_numeric({0.0, 0.0}, tau),
                        ComplexVal{{0.0, 0.0}, 0.0}};
            };
            return check_sampled("numeric.theta_lattice_zero", CheckMode::Numeric, p, sample);
        });

    add("numeric.eta_value_i", CheckMode::Numeric, sampled(1, 1e-10),
        [pi](const CheckParams& p) {
            auto sample = [pi](SampleRng&, int) -> SamplePoint {
                const double expect = std::tgamma(0.25) / (2.0 * std::pow(pi, 0.75));
                return {"tau=i", qs_eval(eta(50), {0.0, 1.0}), ComplexVal{{expect, 0.0}, 0.0}};
            };
            return check_sampled("numeric.eta_value_i", CheckMode::Numeric, p, sample);
        });

    // ---- shadows ----

    add("shadow.r0_shadow_is_eta3", CheckMode::Shadow, sampled(5, 1e-4),
        [](const CheckParams& p) {
            return check_shadow_expected(
                "shadow.r0_shadow_is_eta3", p,
                [](complex<double> tau) { return r_function_numeric(0.0, tau); }, 0.5,
                [](complex<double> tau) {
                    return ComplexVal{{-std::sqrt(2.0), 0.0}, 0.0} * eta_cubed_numeric(tau);
                });
        });

    add("shadow.e2hat_xi_constant", CheckMode::Shadow, sampled(5, 1e-4),
        [pi](const CheckParams& p) {
            return check_shadow_expected(
                "shadow.e2hat_xi_constant", p,
                [](complex<double> tau) { return e2_completed_numeric(tau); }, 2.0,
                [pi](complex<double>) { return ComplexVal{{3.0 / pi, 0.0}, 0.0}; });
        });

    add("shadow.holomorphic_zero", CheckMode::Shadow, sampled(5, 1e-6),
        [](const CheckParams& p) {
            return check_shadow_expected(
                "shadow.holomorphic_zero", p,
                [](complex<double> tau) { return eisenstein_numeric(4, tau); }, 2.0,
                [](complex<double>) { return ComplexVal{{0.0, 0.0}, 0.0}; });
        });

    add("shadow.chat_yz2_measure", CheckMode::Shadow, sampled(3, 1e-2),
        [](const CheckParams& p) {
            return check_shadow_measure(
                "shadow.chat_yz2_measure", p,
                [](complex<double> tau) { return chat_yz2_numeric(tau); }, 2.0);
        });

    return defs;
}

inline const std::vector<CheckDef>& check_registry() {
    static const std::vector<CheckDef> defs = build_registry();
    return defs;
}

inline const CheckDef* find_check(const std::string& name) {
    for (const auto& d : check_registry())
        if (d.name == name) return &d;
    return nullptr;
}

// def.run with a hard exception boundary, so a throw anywhere inside a check
// (including its setup) becomes an error report instead of unwinding a worker.
inline IdentityReport run_check_safe(const CheckDef& def, const CheckParams& p) {
    try {
        return def.run(p);
    } catch (const std::exception& e) {
        IdentityReport rep;
        rep.name = def.name;
        rep.mode = def.mode;
        rep.params = p;
        rep.status = CheckStatus::Error;
        rep.detail = std::string("error: ") + e.what();
        return rep;
    }
}

// ---------------------------------------------------------------------------
// Series table for the expand command.
// ---------------------------------------------------------------------------

inline const std::map<std::string, std::function<QSeries(long long)>>& expand_table() {
    static const std::map<std::string, std::function<QSeries(long long)>> table = {
        {"euler_product", [](long long n) { return euler_product(n); }},
        {"eta", [](long long n) { return eta(n); }},
        {"eta3", [](long long n) { return eta_cubed(n); }},
        {"E2", [](long long n) { return eisenstein(2, n); }},
        {"E4", [](long long n) { return eisenstein(4, n); }},
        {"E6", [](long long n) { return eisenstein(6, n); }},
        {"e2_appell_lhs", [](long long n) { return appell_e2_lhs(n); }},
        {"theta_w1", [](long long n) { return jet_coeff(theta_jet(1, n, 1, 1), 1); }},
        {"eta3_over_theta_w1",
         [](long long n) { return jet_coeff(eta3_over_theta_jet(1, n, -1, 1), 1); }},
        {"c_y", [](long long n) { return c_y_def(n); }},
        {"c_y_closed", [](long long n) { return c_y_closed(n); }},
        {"c_yz2", [](long long n) { return c_yz2_def(n); }},
        {"c_yz2_1", [](long long n) { return c_yz2_1_def(n); }},
        {"c_yz2_2", [](long long n) { return c_yz2_2_def(n); }},
        {"c_yz2_1_closed", [](long long n) { return c_yz2_1_closed(n); }},
        {"c_yz2_1_alt", [](long long n) { return c_yz2_1_alt(n); }},
        {"c_yz2_2_closed", [](long long n) { return c_yz2_2_closed(n); }},
        {"c_yz2_closed", [](long long n) { return c_yz2_closed(n); }},
        {"c_yz2_aux", [](long long n) { return c_yz2_aux_form(n); }},
        {"c_yz4", [](long long n) { return c_yz4_def(n); }},
        {"c_yz4_mu", [](long long n) { return c_yz4_closed_mu(n); }},
        {"c_yz4_f", [](long long n) { return c_yz4_closed_f(n); }},
    };
    return table;
}

// ---------------------------------------------------------------------------
// Suite configuration and runner.
// ---------------------------------------------------------------------------

struct SuiteConfig {
    unsigned long long seed = 1;
    std::optional<long long> order;
    std::optional<int> samples;
    std::optional<double> tol;
    std::vector<std::string> checks;
    std::vector<CheckMode> modes;
    std::map<std::string, nlohmann::json> overrides;
    int jobs = 0;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline int line_of_byte(const std::string& text, std::size_t byte) {
    int line = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i)
        if (text[i] == '\n') ++line;
    return line;
}

inline void apply_override_fields(CheckParams& p, const nlohmann::json& o,
                                  const std::string& ctx) {
    for (auto it = o.begin(); it != o.end(); ++it) {
        const std::string& key = it.key();
        if (key == "order" && it->is_number_integer())
            p.order = it->get<long long>();
        else if (key == "samples" && it->is_number_integer())
            p.samples = it->get<int>();
        else if (key == "seed" && it->is_number_unsigned())
            p.seed = it->get<unsigned long long>();
        else if (key == "tol" && it->is_number())
            p.tol = it->get<double>();
        else
            throw ConfigError(ctx + ": unknown or mistyped field \"" + key + "\"");
    }
}

}  // namespace detail

inline SuiteConfig parse_suite_config(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config line " + std::to_string(detail::line_of_byte(text, e.byte)) +
                          ": " + e.what());
    }
    if (!j.is_object()) throw ConfigError("config: top level must be a JSON object");
    SuiteConfig cfg;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& key = it.key();
        if (key == "seed" && it->is_number_unsigned())
            cfg.seed = it->get<unsigned long long>();
        else if (key == "order" && it->is_number_integer())
            cfg.order = it->get<long long>();
        else if (key == "samples" && it->is_number_integer())
            cfg.samples = it->get<int>();
        else if (key == "tol" && it->is_number())
            cfg.tol = it->get<double>();
        else if (key == "jobs" && it->is_number_integer())
            cfg.jobs = it->get<int>();
        else if (key == "checks" && it->is_array()) {
            for (const auto& e : *it) {
                if (!e.is_string()) throw ConfigError("config: \"checks\" entries must be strings");
                const std::string name = e.get<std::string>();
                if (!find_check(name)) throw ConfigError("config: unknown check name \"" + name + "\"");
                cfg.checks.push_back(name);
            }
        } else if (key == "modes" && it->is_array()) {
            for (const auto& e : *it) {
                CheckMode m;
                if (!e.is_string() || !parse_check_mode(e.get<std::string>(), m))
                    throw ConfigError("config: \"modes\" entries must be one of exact, numeric, "
                                      "shadow, transform");
                cfg.modes.push_back(m);
            }
        } else if (key == "overrides" && it->is_object()) {
            for (auto ov = it->begin(); ov != it->end(); ++ov) {
                if (!find_check(ov.key()))
                    throw ConfigError("config: overrides for unknown check \"" + ov.key() + "\"");
                if (!ov->is_object())
                    throw ConfigError("config: override for \"" + ov.key() + "\" must be an object");
                cfg.overrides[ov.key()] = *ov;
            }
        } else {
            throw ConfigError("config: unknown or mistyped key \"" + key + "\"");
        }
    }
    return cfg;
}

inline CheckParams effective_params(const CheckDef& def, const SuiteConfig& cfg) {
    CheckParams p = def.defaults;
    p.seed = cfg.seed;
    if (def.mode == CheckMode::Exact) {
        if (cfg.order) p.order = *cfg.order;
    } else {
        if (cfg.samples) p.samples = *cfg.samples;
        if (cfg.tol) p.tol = *cfg.tol;
    }
    auto it = cfg.overrides.find(def.name);
    if (it != cfg.overrides.end())
        detail::apply_override_fields(p, it->second, "config: override \"" + def.name + "\"");
    return p;
}

inline std::vector<const CheckDef*> select_checks(const SuiteConfig& cfg) {
    std::vector<const CheckDef*> picked;
    if (!cfg.checks.empty()) {
        for (const auto& name : cfg.checks) picked.push_back(find_check(name));
    } else {
        for (const auto& d : check_registry()) picked.push_back(&d);
    }
    if (!cfg.modes.empty()) {
        std::vector<const CheckDef*> filtered;
        for (const auto* d : picked)
            if (std::find(cfg.modes.begin(), cfg.modes.end(), d->mode) != cfg.modes.end())
                filtered.push_back(d);
        picked = std::move(filtered);
    }
    return picked;
}

inline std::vector<IdentityReport> run_selected(const std::vector<const CheckDef*>& picked,
                                                const SuiteConfig& cfg) {
    std::vector<IdentityReport> out(picked.size());
    unsigned n_threads = cfg.jobs > 0 ? static_cast<unsigned>(cfg.jobs)
                                      : std::min(8u, std::thread::hardware_concurrency());
    if (n_threads == 0) n_threads = 1;
    n_threads = std::min<unsigned>(n_threads, picked.size() == 0 ? 1 : picked.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= picked.size()) return;
            out[i] = run_check_safe(*picked[i], effective_params(*picked[i], cfg));
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return out;
}

inline int run_suite(const std::string& config_text, const std::string& out_path,
                     std::ostream& log) {
    std::vector<IdentityReport> reports;
    try {
        const SuiteConfig cfg = parse_suite_config(config_text);
        reports = run_selected(select_checks(cfg), cfg);
    } catch (const ConfigError& e) {
        log << e.what() << "\n";
        return 2;
    }
    int passed = 0, failed = 0, errored = 0;
    for (const auto& r : reports) {
        switch (r.status) {
            case CheckStatus::Pass: ++passed; break;
            case CheckStatus::Fail: ++failed; break;
            case CheckStatus::Error: ++errored; break;
        }
        log << "[" << to_string(r.status) << "] " << r.name << " (" << r.runtime_ms << " ms) "
            << r.detail << "\n";
    }
    log << reports.size() << " checks: " << passed << " pass, " << failed << " fail, " << errored
        << " error\n";
    if (!out_path.empty()) {
        std::ofstream f(out_path);
        if (!f) {
            log << "cannot open report file " << out_path << "\n";
            return 2;
        }
        f << report_array_json(reports).dump(2) << "\n";
    }
    return (failed == 0 && errored == 0) ? 0 : 1;
}

}  // namespace mockforms
