#pragma once

#include "mollify/moments.hpp"

#include <random>

namespace mollify {

struct RandomSpecOptions {
    unsigned max_p_degree = 3;
    unsigned max_q_degree = 2;
    bool one_piece = false;
    bool unit_deltas = false;  // delta1 = delta2 = 1
};

/// Small random mollifier: coefficients p/q with |p| <= 6, 1 <= q <= 6, P(1) = 1,
/// delta1 in {1, 3/4, 1/2} and delta2 in {delta1, delta1/2}.
MollifierSpec random_spec(std::mt19937_64& rng, const RandomSpecOptions& opts = {});

/// Random rational p/q with |p| <= bound and 1 <= q <= bound.
Rational random_rational(std::mt19937_64& rng, int bound = 6);

}  // namespace mollify
