#pragma once

#include "mollify/poly.hpp"
#include "mollify/random_spec.hpp"

#include <random>

namespace testgen {

inline std::mt19937_64 rng(std::uint64_t salt) { return std::mt19937_64(0x5eed0000ULL + salt); }

// Random sparse polynomial over {t, x, u, v, a, b}, each exponent <= max_exp.
inline mollify::MultiPoly multipoly(std::mt19937_64& g, int terms = 4, int max_exp = 2) {
    std::uniform_int_distribution<int> e(0, max_exp);
    mollify::MultiPoly p;
    for (int i = 0; i < terms; ++i) {
        mollify::Exponents ex{};
        for (auto& x : ex) x = static_cast<std::uint16_t>(e(g));
        p.add_term(ex, mollify::random_rational(g, 5));
    }
    return p;
}

inline mollify::UniPoly unipoly(std::mt19937_64& g, int degree = 3) {
    std::vector<mollify::Rational> c;
    for (int i = 0; i <= degree; ++i) c.push_back(mollify::random_rational(g, 5));
    return mollify::UniPoly(c);
}

}  // namespace testgen
