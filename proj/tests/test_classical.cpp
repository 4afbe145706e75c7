// Classical building blocks: eta, Eisenstein series, the theta jet, numeric
// evaluators, and the modular descriptors.

#include "mockforms/mockforms.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <complex>

using namespace mockforms;

namespace {

Rational coeff_at(const QSeries& s, long long k) {
    auto it = s.c.find(k);
    if (it == s.c.end()) return Rational(0);
    REQUIRE(it->second.im == 0);
    return it->second.re;
}

}  // namespace

TEST_CASE("eta expansion begins q^{1/24}(1 - q - q^2 + q^5 + q^7 - q^12 - q^15)") {
    const QSeries e = eta(20);
    const long long es[] = {0, 1, 2, 5, 7, 12, 15};
    const long long cs[] = {1, -1, -1, 1, 1, -1, -1};
    std::size_t nonzero = 0;
    for (int j = 0; j < 7; ++j) CHECK(coeff_at(e, 2 + 48 * es[j]) == Rational(cs[j]));
    for (const auto& [k, c] : e.c)
        if (k < 2 + 48 * 16) ++nonzero;
    CHECK(nonzero == 7);
}

TEST_CASE("eisenstein series coefficients") {
    const QSeries e2 = eisenstein(2, 6);
    CHECK(coeff_at(e2, 0) == Rational(1));
    CHECK(coeff_at(e2, 48) == Rational(-24));
    CHECK(coeff_at(e2, 96) == Rational(-72));
    CHECK(coeff_at(e2, 144) == Rational(-96));
    CHECK(coeff_at(e2, 192) == Rational(-168));

    const QSeries e4 = eisenstein(4, 3);
    CHECK(coeff_at(e4, 48) == Rational(240));
    CHECK(coeff_at(e4, 96) == Rational(2160));

    const QSeries e6 = eisenstein(6, 3);
    CHECK(coeff_at(e6, 48) == Rational(-504));
    CHECK(coeff_at(e6, 96) == Rational(-16632));

    CHECK(coeff_at(eisenstein(2, 0), 0) == Rational(1));
    CHECK_THROWS_AS(eisenstein(3, 5), std::invalid_argument);
}

TEST_CASE("theta jet is odd in w with imaginary coefficients") {
    const WJet th = theta_jet(1, 12, 1, 5);
    CHECK(th.lo == 1);
    CHECK_FALSE(jet_coeff(th, 2).has_terms());
    CHECK_FALSE(jet_coeff(th, 4).has_terms());
    for (int k : {1, 3, 5})
        for (const auto& [e, c] : jet_coeff(th, k).c) CHECK(c.re == 0);
}

TEST_CASE("eta cubed over theta starts at -i/w and skips w^0") {
    const WJet j = eta3_over_theta_jet(1, 12, -1, 2);
    REQUIRE(j.lo == -1);
    const QSeries& lead = jet_coeff(j, -1);
    CHECK(lead.c.size() == 1);
    CHECK(lead.c.begin()->second == GaussianRational(Rational(0), Rational(-1)));
    CHECK_FALSE(jet_coeff(j, 0).has_terms());
    // [w^1] = (i/24) E_2: constant term i/24.
    CHECK(jet_coeff(j, 1).c.begin()->second == GaussianRational(Rational(0), Rational(1, 24)));
}

TEST_CASE("theta vanishes at lattice points and nowhere sampled off them") {
    const std::complex<double> tau(0.21, 1.37);
    CHECK(std::abs(theta_numeric({0.0, 0.0}, tau).value) < 1e-12);
    const std::complex<double> z(0.31, 0.42);
    CHECK(std::abs(theta_numeric(z, tau).value) > 1e-3);
}

TEST_CASE("eta at the fixed point of the inversion") {
    const double expect = std::tgamma(0.25) / (2.0 * std::pow(std::numbers::pi, 0.75));
    const ComplexVal v = qs_eval(eta(40), {0.0, 1.0});
    CHECK(std::abs(v.value.real() - expect) < 1e-12);
    CHECK(std::abs(v.value.imag()) < 1e-14);
}

TEST_CASE("quasimodular inhomogeneity of E_2 at a spot value") {
    const std::complex<double> tau(0.0, 2.0);
    const std::complex<double> i(0.0, 1.0);
    const std::complex<double> lhs = eisenstein_numeric(2, -1.0 / tau).value;
    const std::complex<double> rhs =
        tau * tau * eisenstein_numeric(2, tau).value + 6.0 * tau / (std::numbers::pi * i);
    CHECK(std::abs(lhs - rhs) < 1e-12);
}

TEST_CASE("completed E_2 vanishes at the inversion fixed point") {
    CHECK(std::abs(e2_completed_numeric({0.0, 1.0}).value) < 1e-12);
    CHECK(std::abs(eisenstein_numeric(2, {0.0, 1.0}).value - 3.0 / std::numbers::pi) < 1e-12);
}

TEST_CASE("descriptors evaluate their own series") {
    const std::complex<double> tau(0.11, 1.21);
    const ComplexVal direct = qs_eval(eta(numeric_order(1.21)), tau);
    const ComplexVal via = descriptor_eta().eval({0.0, 0.0}, tau);
    CHECK(std::abs(direct.value - via.value) < 1e-12);
}

TEST_CASE("lattice distance") {
    const std::complex<double> tau(0.3, 1.1);
    CHECK(lattice_distance({0.0, 0.0}, tau) == 0.0);
    CHECK(lattice_distance(tau, tau) == 0.0);
    CHECK(lattice_distance({0.5, 0.0}, tau) > 0.4);
}
