#pragma once

#include "mollify/rational.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace mollify {

/// 64 significant decimal digits.
using HighPrecision =
    boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<64>, boost::multiprecision::et_off>;

HighPrecision to_high_precision(const Rational& r);
std::string to_fixed(const HighPrecision& x, int digits);

/// Variational one-piece bound
///   { 1/2 + k / sqrt(4k^2 - 1) * coth[(k/2) sqrt((2k+1)/(2k-1))] }^{-1}.
/// Throws DomainError for k < 1.
HighPrecision closed_form_p(int k);

/// 1 - closed_form_p(k), evaluated without cancellation.
HighPrecision closed_form_deficit(int k);

/// |closed_form_p(k) - (1 - 1/(16 k^2))|.
HighPrecision asymptotic_error(int k);

struct PolynomialGap {
    int k = 0;
    int degree = 0;
    Rational polynomial_optimum;
    HighPrecision closed_form;
    HighPrecision gap;  // closed_form - polynomial_optimum
};

/// Best one-piece (Q = 0, delta1 = 1) proportion over polynomials of the given
/// degree, compared with the variational closed form.
PolynomialGap closed_form_bracket_vs_polynomial(int k, int degree);

/// Supplies 1 - p_k for k beyond the tabulated values, and a bound on the
/// remainder sum_{k > K} ((k+1)^m - k^m)(1 - p_k).
struct LargeKModel {
    std::string name;
    std::function<HighPrecision(int)> deficit;
    std::function<HighPrecision(int truncation, const HighPrecision& m)> tail_bound;
};

/// Uses closed_form_p; the tail is bounded through 1 - p_k <= 1/(15 k^2),
/// which is checked on log-spaced k in [10^3, 10^5] before use.
LargeKModel closed_form_model();

/// p_k = 1 for every k: every contribution and the tail vanish.
LargeKModel unit_model();

/// (k+1)^m - k^m
HighPrecision rank_weight(int k, const HighPrecision& m);

inline constexpr int kDefaultTruncation = 100000;

struct RankBoundReport {
    HighPrecision m;
    std::vector<HighPrecision> p_small;
    int truncation = kDefaultTruncation;
    std::vector<HighPrecision> small_contributions;  // ((k+1)^m - k^m)(1 - p_small[k])
    HighPrecision partial_sum;
    HighPrecision tail_bound;
    HighPrecision total;
};

/// sum_{k >= 0} ((k+1)^m - k^m)(1 - p_k), with p_k = p_small[k] below
/// p_small.size() and from `model` up to `truncation`, plus the model's tail bound.
RankBoundReport rank_bound(const HighPrecision& m, std::span<const HighPrecision> p_small,
                           int truncation = kDefaultTruncation, const LargeKModel& model = closed_form_model());

}  // namespace mollify
