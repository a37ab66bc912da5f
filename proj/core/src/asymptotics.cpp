#include "mollify/asymptotics.hpp"

#include "mollify/errors.hpp"
#include "mollify/optimize.hpp"

#include <cmath>
#include <sstream>

namespace mollify {

HighPrecision to_high_precision(const Rational& r) {
    return HighPrecision(r.numerator().get_str()) / HighPrecision(r.denominator().get_str());
}

std::string to_fixed(const HighPrecision& x, int digits) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(digits);
    os << x;
    return os.str();
}

namespace {

// B(k) = 1/2 + k/sqrt(4k^2-1) * coth(z), z = (k/2) sqrt((2k+1)/(2k-1)), so p = 1/B.
// coth(z) = 1 + 2/(e^{2z} - 1) keeps the large-k regime free of cancellation.
HighPrecision bracket_minus_one(int k) {
    const HighPrecision kk(k);
    const HighPrecision ratio = kk / sqrt(4 * kk * kk - 1);
    const HighPrecision z = kk / 2 * sqrt((2 * kk + 1) / (2 * kk - 1));
    const HighPrecision coth_excess = 2 / expm1(2 * z);
    // ratio - 1/2 = (ratio^2 - 1/4) / (ratio + 1/2) with ratio^2 - 1/4 = 1/(4(4k^2 - 1))
    const HighPrecision ratio_minus_half = 1 / (4 * (4 * kk * kk - 1)) / (ratio + HighPrecision(0.5));
    return ratio_minus_half + ratio * coth_excess;
}

}  // namespace

HighPrecision rank_weight(int k, const HighPrecision& m) {
    return pow(HighPrecision(k + 1), m) - pow(HighPrecision(k), m);
}

HighPrecision closed_form_p(int k) {
    if (k < 1) throw DomainError("closed form requires k >= 1");
    return 1 / (1 + bracket_minus_one(k));
}

HighPrecision closed_form_deficit(int k) {
    if (k < 1) throw DomainError("closed form requires k >= 1");
    const HighPrecision excess = bracket_minus_one(k);
    return excess / (1 + excess);
}

HighPrecision asymptotic_error(int k) {
    const HighPrecision kk(k);
    return abs(1 / (16 * kk * kk) - closed_form_deficit(k));
}

PolynomialGap closed_form_bracket_vs_polynomial(int k, int degree) {
    if (degree < 1) throw DomainError("degree must be at least 1");
    const auto result = solve_rayleigh(build_one_piece_closed_form_model(degree, k));
    PolynomialGap g;
    g.k = k;
    g.degree = degree;
    g.polynomial_optimum = result.optimum;
    g.closed_form = closed_form_p(k);
    g.gap = g.closed_form - to_high_precision(result.optimum);
    return g;
}

LargeKModel closed_form_model() {
    LargeKModel model;
    model.name = "closed-form";
    model.deficit = closed_form_deficit;
    model.tail_bound = [](int truncation, const HighPrecision& m) {
        // 1 - p_k <= 1/(15 k^2), sampled on [10^3, 10^5].
        constexpr int kSamples = 200;
        for (int i = 0; i <= kSamples; ++i) {
            const int k = static_cast<int>(std::lround(std::pow(10.0, 3.0 + 2.0 * i / kSamples)));
            if (closed_form_deficit(k) * 15 * HighPrecision(k) * k > 1) {
                throw NumericalFailure("tail hypothesis 1 - p_k <= 1/(15 k^2) fails at k = " + std::to_string(k));
            }
        }
        // (k+1)^m - k^m <= m * max(k, k+1)^(m-1) <= m c k^(m-1) for k > K, with
        // c = ((K+2)/(K+1))^(m-1) when m >= 1 and c = 1 otherwise; then
        // sum_{k>K} k^(m-3) <= K^(m-2) / (2-m).
        const HighPrecision K(truncation);
        const HighPrecision c = m >= 1 ? pow((K + 2) / (K + 1), m - 1) : HighPrecision(1);
        return m * c / 15 * pow(K, m - 2) / (2 - m);
    };
    return model;
}

LargeKModel unit_model() {
    LargeKModel model;
    model.name = "unit";
    model.deficit = [](int) { return HighPrecision(0); };
    model.tail_bound = [](int, const HighPrecision&) { return HighPrecision(0); };
    return model;
}

RankBoundReport rank_bound(const HighPrecision& m, std::span<const HighPrecision> p_small, int truncation,
                           const LargeKModel& model) {
    if (!(m > 0 && m < 2)) throw ConfigError("moment exponent m must lie in (0, 2)");
    if (p_small.empty()) throw ConfigError("p_small needs at least one value");
    if (truncation <= static_cast<int>(p_small.size())) {
        throw ConfigError("truncation K must exceed the number of tabulated proportions");
    }
    for (const auto& p : p_small) {
        if (!(p > 0 && p <= 1)) throw ConfigError("tabulated proportions must lie in (0, 1]");
    }

    RankBoundReport r;
    r.m = m;
    r.p_small.assign(p_small.begin(), p_small.end());
    r.truncation = truncation;
    r.partial_sum = 0;
    const int len = static_cast<int>(p_small.size());
    for (int k = 0; k < len; ++k) {
        r.small_contributions.push_back(rank_weight(k, m) * (1 - p_small[static_cast<std::size_t>(k)]));
        r.partial_sum += r.small_contributions.back();
    }
    for (int k = len; k <= truncation; ++k) r.partial_sum += rank_weight(k, m) * model.deficit(k);
    r.tail_bound = model.tail_bound(truncation, m);
    r.total = r.partial_sum + r.tail_bound;
    return r;
}

}  // namespace mollify
