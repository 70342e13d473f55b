#pragma once

#include <random>

#include "nilsampler/hardy.hpp"

namespace testsupport {

using nilsampler::Coeff;
using nilsampler::HardyExpr;
using nilsampler::Rational;

// Sum of a few monomials with small rational exponents and log powers.
inline HardyExpr random_expr(std::mt19937_64& rng, int max_terms = 4, int max_num = 12) {
    std::uniform_int_distribution<int> num(-6, max_num), den(1, 4), beta(0, 2), coef(-5, 5), count(1, max_terms);
    HardyExpr f;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) {
        int c = coef(rng);
        if (c == 0) c = 1;
        f += HardyExpr::monomial(Coeff(c), Rational(num(rng), den(rng)), beta(rng));
    }
    return f;
}

}  // namespace testsupport
