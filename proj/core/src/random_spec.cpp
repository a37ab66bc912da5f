#include "mollify/random_spec.hpp"

#include <algorithm>

namespace mollify {

Rational random_rational(std::mt19937_64& rng, int bound) {
    std::uniform_int_distribution<int> num(-bound, bound);
    std::uniform_int_distribution<int> den(1, bound);
    const int p = num(rng);
    const int q = den(rng);
    return Rational(p) / Rational(q);
}

MollifierSpec random_spec(std::mt19937_64& rng, const RandomSpecOptions& opts) {
    MollifierSpec s;
    if (!opts.unit_deltas) {
        static const Rational choices[] = {Rational(1), Rational(3) / Rational(4), Rational(1) / Rational(2)};
        std::uniform_int_distribution<int> pick(0, 2);
        s.delta1 = choices[pick(rng)];
        s.delta2 = std::bernoulli_distribution(0.5)(rng) ? s.delta1 : s.delta1 / Rational(2);
    }

    std::uniform_int_distribution<unsigned> pdeg(1, std::max(1u, opts.max_p_degree));
    const unsigned dp = pdeg(rng);
    s.p_coeffs.resize(dp);
    Rational rest(0);
    for (unsigned i = 1; i < dp; ++i) {
        s.p_coeffs[i] = random_rational(rng);
        rest += s.p_coeffs[i];
    }
    s.p_coeffs[0] = Rational(1) - rest;

    if (!opts.one_piece && opts.max_q_degree > 0) {
        std::uniform_int_distribution<unsigned> qdeg(0, opts.max_q_degree);
        const unsigned dq = qdeg(rng);
        for (unsigned j = 0; j < dq; ++j) s.q_coeffs.push_back(random_rational(rng));
    }
    return s;
}

}  // namespace mollify
