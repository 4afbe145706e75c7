// Laurent jets in w = 2 pi i z: window arithmetic, exponentials, inversion,
// pole guards, pointwise evaluation.

#include "mockforms/mockforms.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <complex>

using namespace mockforms;

namespace {

QSeries cq(long long n, long long d) {
    return qs_monomial(0, GaussianRational(Rational(n, d)));
}

}  // namespace

TEST_CASE("jet windows combine pessimistically under multiplication") {
    const WJet a{-1, {cq(1, 1), cq(2, 1), cq(3, 1)}};          // w^-1 + 2 + 3w
    const WJet b{1, {cq(1, 1), cq(-1, 1)}};                    // w - w^2
    const WJet p = jet_mul(a, b);
    // retained up to min(-1+2, 1+1) = 1
    CHECK(p.lo == 0);
    CHECK(p.hi() == 1);
    CHECK(jet_coeff(p, 0).c.begin()->second == GaussianRational(1));
    CHECK(jet_coeff(p, 1).c.begin()->second == GaussianRational(1));  // 2*1 + 1*(-1)
}

TEST_CASE("jet addition aligns windows and cancels exactly") {
    const WJet a{0, {cq(5, 1), cq(1, 1)}};
    const WJet s = jet_add(a, jet_neg(a));
    CHECK(s.empty());
}

TEST_CASE("exponential jets") {
    const WJet e = jet_exp_linear(Rational(2), 6);
    CHECK(e.lo == 0);
    for (int k = 0; k <= 5; ++k) {
        // coefficient of w^k in e^{2w} is 2^k / k!
        Rational expect(1);
        for (int j = 1; j <= k; ++j) expect *= Rational(2, j);
        CHECK(jet_coeff(e, k).c.begin()->second == GaussianRational(expect));
    }

    const WJet m = jet_one_minus_exp(Rational(4), 5);
    CHECK(m.lo == 1);  // 1 - e^{4w} = -4w - 8w^2 - ...
    CHECK(jet_coeff(m, 1).c.begin()->second == GaussianRational(Rational(-4)));
    CHECK(jet_coeff(m, 2).c.begin()->second == GaussianRational(Rational(-8)));
}

TEST_CASE("pole expansion of e^{2w} / (1 - e^{4w})") {
    // = -(1/2) csch(2w) = -1/(4w) + w/6 - ...
    const WJet f = jet_mul(jet_exp_linear(Rational(2), 6),
                           jet_inv(jet_one_minus_exp(Rational(4), 7)));
    CHECK(f.lo == -1);
    CHECK(jet_coeff(f, -1).c.begin()->second == GaussianRational(Rational(-1, 4)));
    CHECK(jet_coeff(f, 0).is_exact_zero());
    CHECK(jet_coeff(f, 1).c.begin()->second == GaussianRational(Rational(1, 6)));
}

TEST_CASE("jet inversion round trip") {
    const WJet th = theta_jet(1, 20, 1, 5);
    const WJet one = jet_mul(th, jet_inv(th));
    CHECK(one.lo == 0);
    CHECK(jet_coeff(one, 0).c.size() == 1);
    CHECK(jet_coeff(one, 0).c.begin()->second == GaussianRational(1));
    for (int k = 1; k <= one.hi(); ++k) CHECK_FALSE(jet_coeff(one, k).has_terms());
}

TEST_CASE("pole guards") {
    const WJet f = jet_mul(jet_exp_linear(Rational(2), 4),
                           jet_inv(jet_one_minus_exp(Rational(4), 5)));
    CHECK_THROWS_AS(jet_require_no_pole(f, "unit"), std::logic_error);
    CHECK_THROWS_AS(jet_restrict(f, 1, 1), std::domain_error);
    CHECK_THROWS_AS(jet_coeff(f, 5), std::out_of_range);
}

TEST_CASE("jet evaluation in w") {
    // f = w + 3: at z, w = 2 pi i z.
    const WJet f{0, {cq(3, 1), cq(1, 1)}};
    const std::complex<double> z(0.07, -0.02);
    const std::complex<double> tau(0.1, 1.2);
    const ComplexVal v = jet_eval(f, z, tau);
    const std::complex<double> expect =
        2.0 * std::numbers::pi * std::complex<double>(0.0, 1.0) * z + 3.0;
    CHECK(std::abs(v.value - expect) < 1e-14);
}

TEST_CASE("derivative at z = 0 is the w^1 coefficient") {
    // zeta^2 = e^{2w} has D_{z,0} = 2.
    const WJet e = jet_exp_linear(Rational(2), 4);
    CHECK(jet_coeff(e, 1).c.begin()->second == GaussianRational(Rational(2)));
}
