// Exact coefficient arithmetic: Gaussian rationals, sparse q-series with
// truncation tracking, evaluation with honest error bounds, text round trip.

#include "mockforms/mockforms.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <complex>
#include <random>

using namespace mockforms;

namespace {

GaussianRational g(long long re_n, long long re_d, long long im_n, long long im_d) {
    return GaussianRational(Rational(re_n, re_d), Rational(im_n, im_d));
}

GaussianRational random_gaussian(std::mt19937_64& eng) {
    std::uniform_int_distribution<long long> num(-9, 9);
    std::uniform_int_distribution<long long> den(1, 7);
    return g(num(eng), den(eng), num(eng), den(eng));
}

QSeries random_series(std::mt19937_64& eng, long long denom, long long trunc) {
    std::uniform_int_distribution<long long> kd(-20, trunc - 1);
    std::uniform_int_distribution<int> nterms(0, 8);
    QSeries r{denom, {}, trunc};
    const int n = nterms(eng);
    for (int j = 0; j < n; ++j) r.set(kd(eng), random_gaussian(eng));
    return r;
}

bool qs_identical(const QSeries& a, const QSeries& b) {
    return a.denom == b.denom && a.trunc == b.trunc && a.c == b.c;
}

}  // namespace

TEST_CASE("gaussian rational arithmetic") {
    const GaussianRational a = g(2, 1, 3, 1);
    const GaussianRational b = g(4, 1, -1, 1);
    CHECK(a * b == g(11, 1, 10, 1));
    CHECK(a + b == g(6, 1, 2, 1));
    CHECK(a - b == g(-2, 1, 4, 1));
    CHECK((a / b) * b == a);
    const GaussianRational i = GaussianRational::unit_i();
    CHECK(i * i == GaussianRational(Rational(-1)));
    CHECK(to_string(g(1, 2, -3, 4)) == "1/2-3/4i");
}

TEST_CASE("gaussian rational ring axioms on random values") {
    std::mt19937_64 eng(42);
    for (int trial = 0; trial < 60; ++trial) {
        const GaussianRational a = random_gaussian(eng);
        const GaussianRational b = random_gaussian(eng);
        const GaussianRational c = random_gaussian(eng);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a + b == b + a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * b == b * a);
        CHECK(a * (b + c) == a * b + a * c);
        if (!b.is_zero()) CHECK((a / b) * b == a);
    }
}

TEST_CASE("q-series ring operations respect truncation") {
    std::mt19937_64 eng(7);
    for (int trial = 0; trial < 40; ++trial) {
        const QSeries a = random_series(eng, 48, 100 + 48 * (trial % 3));
        const QSeries b = random_series(eng, 48, 150);
        const QSeries c = random_series(eng, 48, 220);
        CHECK(qs_identical(qs_add(qs_add(a, b), c), qs_add(a, qs_add(b, c))));
        CHECK(qs_identical(qs_add(a, b), qs_add(b, a)));
        CHECK(qs_identical(qs_mul(a, b), qs_mul(b, a)));
        CHECK(qs_identical(qs_mul(qs_mul(a, b), c), qs_mul(a, qs_mul(b, c))));
        CHECK(qs_identical(qs_mul(a, qs_add(b, c)), qs_add(qs_mul(a, b), qs_mul(a, c))));
        CHECK(qs_identical(qs_add(a, qs_neg(a)), truncate_to(qs_zero(), *a.trunc)));
    }
}

TEST_CASE("alignment to a common exponent denominator") {
    QSeries a = qs_monomial(1, GaussianRational(1), 2);   // q^{1/2}
    QSeries b = qs_monomial(1, GaussianRational(1), 3);   // q^{1/3}
    qs_align(a, b);
    CHECK(a.denom == b.denom);
    CHECK(a.denom == 6);
    CHECK(a.c.begin()->first == 3);
    CHECK(b.c.begin()->first == 2);
}

TEST_CASE("series inverse against the unit") {
    const QSeries e = eta(40);
    const QSeries f = qs_mul(e, qs_monomial(-2, GaussianRational(1)));  // unit constant term
    const QSeries one = qs_mul(f, qs_inv(f));
    for (const auto& [k, c] : one.c) {
        CAPTURE(k);
        CHECK(k == 0);
        CHECK(c == GaussianRational(1));
    }
    CHECK(one.c.size() == 1);
}

TEST_CASE("evaluation error bound is honest") {
    const std::complex<double> tau(0.13, 0.9);
    const ComplexVal coarse = qs_eval(eta(12), tau);
    const ComplexVal fine = qs_eval(eta(80), tau);
    CHECK(std::abs(coarse.value - fine.value) <= coarse.err + fine.err);
    CHECK(fine.err < coarse.err);
}

TEST_CASE("evaluation refuses a divergent tail") {
    // |q| >= 1 below the real axis offset: tau with tiny imaginary part makes
    // the tail majorant blow past any bound.
    CHECK_THROWS_AS(qs_eval(eta(10), std::complex<double>(0.0, -0.1)), std::domain_error);
}

TEST_CASE("text format round trip is bit exact") {
    const QSeries s = c_yz4_def(12);
    const QSeries back = qs_read(qs_write(s));
    CHECK(qs_identical(s, back));

    const QSeries t = qs_monomial(-5, g(1, 3, -2, 7), 48);
    CHECK(qs_write(t) == "denom=48 trunc=inf\n-5 1/3 -2/7\n");
    CHECK(qs_identical(qs_read(qs_write(t)), t));
}

TEST_CASE("text format rejects malformed input") {
    CHECK_THROWS_WITH(qs_read(""), Catch::Matchers::ContainsSubstring("line 1"));
    CHECK_THROWS_WITH(qs_read("denom=48\n"), Catch::Matchers::ContainsSubstring("expected"));
    CHECK_THROWS_WITH(qs_read("denom=0 trunc=inf\n"),
                      Catch::Matchers::ContainsSubstring("denom"));
    CHECK_THROWS_WITH(qs_read("denom=48 trunc=inf\n3 1/1 0/1\n2 1/1 0/1\n"),
                      Catch::Matchers::ContainsSubstring("increasing"));
    CHECK_THROWS_WITH(qs_read("denom=48 trunc=inf\n3 0/1 0/1\n"),
                      Catch::Matchers::ContainsSubstring("zero coefficient"));
    CHECK_THROWS_WITH(qs_read("denom=48 trunc=10\n12 1/1 0/1\n"),
                      Catch::Matchers::ContainsSubstring("beyond trunc"));
    CHECK_THROWS_WITH(qs_read("denom=48 trunc=inf\n3 1/1 0/1 9\n"),
                      Catch::Matchers::ContainsSubstring("trailing"));
}

TEST_CASE("latex rendering") {
    CHECK(qs_latex(c_y_def(3)) == "-q^{3/16} + 3q^{19/16} - 5q^{51/16} + O\\!\\left(q^{4}\\right)");
    CHECK(qs_latex(qs_zero()) == "0");
    QSeries s = qs_monomial(0, g(1, 2, 0, 1));
    CHECK(qs_latex(s) == "\\tfrac{1}{2}");
    QSeries im = qs_monomial(2, g(0, 1, -1, 1));
    CHECK(qs_latex(im) == "-\\mathrm{i}q^{1/24}");
}

TEST_CASE("coefficient mismatch is reported at the first differing exponent") {
    QSeries a = eta(30);
    QSeries b = eta(30);
    b.set(98, GaussianRational(5));  // true coefficient is -1
    CheckParams p{30, 0, 1, 0.0};
    const IdentityReport rep = check_qseries_equal("unit.fault", a, b, p);
    CHECK(rep.status == CheckStatus::Fail);
    CHECK(rep.detail.find("q^{49/24}") != std::string::npos);
    CHECK(rep.detail.find("repro") != std::string::npos);
}

TEST_CASE("sampled comparison fails with a seeded repro line") {
    CheckParams p{0, 4, 9, 1e-12};
    const IdentityReport rep =
        check_sampled("unit.sampled_fault", CheckMode::Numeric, p, [](SampleRng& rng, int) {
            const double x = rng.unit();
            return SamplePoint{"x=" + fmt_double(x), ComplexVal{{x, 0.0}, 0.0},
                               ComplexVal{{x + 1e-3, 0.0}, 0.0}};
        });
    CHECK(rep.status == CheckStatus::Fail);
    CHECK(rep.detail.find("--seed 9") != std::string::npos);
    CHECK(rep.detail.find("--samples 4") != std::string::npos);
}
