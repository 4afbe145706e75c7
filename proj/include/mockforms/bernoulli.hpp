#pragma once

// Bernoulli numbers B_n (B_1 = -1/2 convention), exact, memoized at first use.

#include "mockforms/rational.hpp"

#include <vector>

namespace mockforms {

inline constexpr int kBernoulliMax = 64;

inline const Rational& bernoulli(int n) {
    if (n < 0 || n > kBernoulliMax)
        throw std::domain_error("bernoulli: index " + std::to_string(n) + " outside [0, " +
                                std::to_string(kBernoulliMax) + "]");
    static const std::vector<Rational> table = [] {
        std::vector<Rational> b(kBernoulliMax + 1);
        b[0] = 1;
        for (int m = 1; m <= kBernoulliMax; ++m) {
            // sum_{j=0}^{m} C(m+1, j) B_j = 0
            Rational s = 0;
            for (int j = 0; j < m; ++j) s += Rational(binomial(m + 1, j)) * b[j];
            b[m] = -s / Rational(m + 1);
        }
        return b;
    }();
    return table[n];
}

// zeta(2n) E_{2n} z^{2n}/n rewritten in w = 2 pi i z units:
// zeta(2n)/(2 pi i)^{2n} = -B_{2n}/(2 (2n)!), so the w^{2n} coefficient of
// the exponent series is -B_{2n} / (2 n (2n)!) times E_{2n}.
inline Rational zagier_exp_coefficient(int n) {
    if (n < 1) throw std::domain_error("zagier_exp_coefficient: n must be >= 1");
    return -bernoulli(2 * n) / (Rational(2) * n * Rational(factorial(2 * n)));
}

}  // namespace mockforms
