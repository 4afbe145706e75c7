// Appell sums, the two-variable mu function and its completion, the indefinite
// theta series F, and the weight 1/2 period integral R.

#include "mockforms/mockforms.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <complex>

using namespace mockforms;

TEST_CASE("period integral value frozen at the inversion fixed point") {
    const ComplexVal r0 = r_function_numeric({0.0, 0.0}, {0.0, 1.0});
    CHECK(std::abs(r0.value.real() - 0.334531669567934) < 1e-12);
    CHECK(std::abs(r0.value.imag()) < 1e-13);
}

TEST_CASE("incomplete-gaussian helper agrees between quadrature and series") {
    // The alternating series cancels down from terms of size ~e^{pi x^2}/(pi x),
    // so its double-precision floor grows with x; scale the tolerance to match.
    for (auto [x, tol] : {std::pair{0.3, 1e-14}, {1.0, 1e-12}, {2.5, 1e-8}}) {
        const double a = e_integral_real(x);
        const ComplexVal b = e_integral_series({x, 0.0});
        CHECK(std::abs(a - b.value.real()) < tol);
        CHECK(std::abs(b.value.imag()) < 1e-13);
        CHECK(std::abs(e_integral_real(-x) + a) < 1e-15);
    }
    CHECK(e_integral_real(0.0) == 0.0);
}

TEST_CASE("mu is symmetric at a fixed point pair") {
    const std::complex<double> tau(0.13, 1.08);
    const std::complex<double> z1(0.21, 0.41), z2(0.05, -0.33);
    const ComplexVal a = mu_numeric(z1, z2, tau);
    const ComplexVal b = mu_numeric(z2, z1, tau);
    CHECK(std::abs(a.value - b.value) < 1e-12);
}

TEST_CASE("mu completion reduces to mu plus half the period integral") {
    const std::complex<double> tau(-0.07, 1.31);
    const std::complex<double> z1(0.17, 0.22), z2(-0.29, 0.11);
    const ComplexVal lhs = mu_hat_numeric(z1, z2, tau);
    const ComplexVal rhs = mu_numeric(z1, z2, tau) +
                           std::complex<double>(0.0, 0.5) * r_function_numeric(z1 - z2, tau);
    CHECK(std::abs(lhs.value - rhs.value) < 1e-14);
}

TEST_CASE("direct indefinite theta series enforces its strip preconditions") {
    const std::complex<double> tau(0.0, 1.0);
    const std::complex<double> ok(0.1, 0.4);
    CHECK_THROWS_AS(f_indef_numeric(ok, {0.1, 1.2}, ok, tau), std::domain_error);
    CHECK_THROWS_AS(f_indef_numeric(ok, ok, {0.1, -0.2}, tau), std::domain_error);
}

TEST_CASE("specialized indefinite theta jet has integer q-lattice structure") {
    // [w^1] F(3z,2z,2z) is q^{-6/48} times an integer-exponent series.
    const WJet f = f_indef_jet(3, 2, 2, 8, 0, 1);
    const QSeries w1 = jet_coeff(f, 1);
    CHECK(w1.has_terms());
    for (const auto& [k, c] : w1.c) {
        CAPTURE(k);
        CHECK((k + 6) % 48 == 0);
    }
}

TEST_CASE("continued indefinite theta series at a frozen spot") {
    // Direct and continued evaluations at one deterministic configuration.
    const std::complex<double> tau(0.0, 1.0);
    const std::complex<double> z1(0.21, 0.41), z2(0.05, 0.63), z3(-0.33, 0.52);
    const ComplexVal direct = f_indef_numeric(z1, z2, z3, tau);
    const ComplexVal cont = f_indef_continued_numeric(z1, z2, z3, tau);
    CHECK(std::abs(direct.value - cont.value) < 1e-10);
}

TEST_CASE("xi of a holomorphic form is numerically zero") {
    const ComplexVal v = xi_numeric(
        [](std::complex<double> tau) { return eta_numeric(tau); }, 0.5, {0.07, 1.13});
    CHECK(std::abs(v.value) < 1e-8);
}

TEST_CASE("period integral window override converges") {
    const std::complex<double> tau(0.05, 0.93);
    const ComplexVal a = r_function_numeric({0.0, 0.0}, tau, 18.0);
    const ComplexVal b = r_function_numeric({0.0, 0.0}, tau, 36.0);
    CHECK(std::abs(a.value - b.value) < 1e-11);
}
