#include "mollify/moments.hpp"

#include "mollify/errors.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace mollify {
namespace {

constexpr TruncationCap kCap = TruncationCap::bilinear();

MultiPoly var(Var v) { return MultiPoly::variable(v); }

Rational two_pow(int k) {
    return k >= 0 ? Rational(2).pow(static_cast<unsigned>(k)) : Rational(2).pow(static_cast<unsigned>(-k)).inverse();
}

UniPoly factor_poly(Factor f, const MollifierSpec& s) {
    switch (f) {
        case Factor::P: return s.P();
        case Factor::Q: return s.Q();
        case Factor::Q1: return q1_antiderivative(s.Q());
    }
    return {};
}

MultiPoly mul(const MultiPoly& p, const MultiPoly& q) { return poly_mul_truncated(p, q, kCap); }

// Integrates the inner variables over [0, x], then x and t over [0, 1].
MultiPoly integrate_term(MultiPoly p, const std::vector<Var>& inner) {
    for (Var v : inner) p = integrate(p, v, UpperBound::x);
    p = integrate(p, Var::x, UpperBound::one);
    return integrate(p, Var::t, UpperBound::one);
}

class PowerCache {
public:
    explicit PowerCache(unsigned k) : k_(k) {}

    const MultiPoly& operator()(const MultiPoly& base) {
        auto it = cache_.find(base);
        if (it == cache_.end()) it = cache_.emplace(base, poly_pow_truncated(base, k_, kCap)).first;
        return it->second;
    }

private:
    unsigned k_;
    std::map<MultiPoly, MultiPoly> cache_;
};

}  // namespace

// ----------------------------------------------------------- MollifierSpec

void MollifierSpec::validate() const {
    const Rational zero(0), one(1);
    if (delta1 <= zero || delta1 > one) throw ConfigError("delta1 must lie in (0, 1], got " + delta1.to_string());
    if (delta2 <= zero || delta2 > one) throw ConfigError("delta2 must lie in (0, 1], got " + delta2.to_string());
    if (!one_piece() && delta2 > delta1) {
        throw ConfigError("two-piece mollifier requires delta2 <= delta1, got delta1=" + delta1.to_string() +
                          " delta2=" + delta2.to_string());
    }
}

MollifierSpec MollifierSpec::scaled(const Rational& lambda) const {
    MollifierSpec s = *this;
    for (auto& c : s.p_coeffs) c *= lambda;
    for (auto& c : s.q_coeffs) c *= lambda;
    return s;
}

// ---------------------------------------------------------- first moment

UniPoly q1_antiderivative(const UniPoly& Q) { return Q.antiderivative(); }

Rational first_moment_bracket(const MollifierSpec& spec, int k) {
    if (k < 0) throw DomainError("derivative order k must be non-negative");
    spec.validate();
    const Rational& d2 = spec.delta2;
    const UniPoly P = spec.P();
    const UniPoly Q = spec.Q();

    // (2 - d2 (1 - x))^k = ((2 - d2) + d2 x)^k
    UniPoly base{Rational(2) - d2, d2};
    UniPoly power{Rational(1)};
    for (int i = 0; i < k; ++i) power = power * base;

    return two_pow(k) * P(Rational(1)) + d2 * (power * Q).integral01() -
           two_pow(k - 1) * d2 * q1_antiderivative(Q)(Rational(1));
}

// --------------------------------------------------------- second moment

std::vector<SecondMomentTerm> second_moment_terms(const Rational& d1, const Rational& d2, int k, bool include_q) {
    if (k < 0) throw DomainError("derivative order k must be non-negative");
    const MultiPoly t = var(Var::t), x = var(Var::x), u = var(Var::u), v = var(Var::v);
    const MultiPoly a = var(Var::a), b = var(Var::b);
    PowerCache pw(static_cast<unsigned>(k));

    // kernel = (C t - lhs)^k (C t - rhs)^k * C * extra
    auto kernel = [&](const MultiPoly& C, const MultiPoly& lhs, const MultiPoly& rhs, const MultiPoly& linear) {
        const MultiPoly Ct = mul(C, t);
        return mul(mul(pw(Ct - lhs), pw(Ct - rhs)), linear);
    };

    // P(1 - d2 (1 - x) / d1 + a)
    const MultiPoly p_shifted_arg = MultiPoly(Rational(1)) - (d2 / d1) * (MultiPoly(1) - x) + a;

    std::vector<SecondMomentTerm> terms;
    {
        const MultiPoly C = MultiPoly(2) + d1 * (a + b);
        terms.push_back({"P(x+a)P(x+b)", Rational(1), Factor::P, Factor::P, x + a, x + b,
                         kernel(C, d1 * a, d1 * b, MultiPoly(Rational(2) / d1) + a + b), {}});
    }
    if (!include_q) return terms;

    {
        const MultiPoly C = MultiPoly(2) + d1 * a + d2 * (b - u);
        terms.push_back({"P(.+a)Q(x-u+b)", Rational(2) * d2 / d1, Factor::P, Factor::Q, p_shifted_arg, x - u + b,
                         kernel(C, d1 * a - d2 * u, d2 * b, C), {Var::u}});
    }
    {
        const MultiPoly C = MultiPoly(2) + d1 * a + d2 * b;
        terms.push_back({"P(.+a)Q1(x+b)", -d2 / d1, Factor::P, Factor::Q1, p_shifted_arg, x + b,
                         kernel(C, d1 * a, d2 * b, C), {}});
    }
    {
        const MultiPoly C = MultiPoly(2) + d2 * (a + b);
        const MultiPoly one_minus_x = MultiPoly(1) - x;
        terms.push_back({"(1-x)^2 Q(x+a)Q(x+b)", d2 / Rational(2), Factor::Q, Factor::Q, x + a, x + b,
                         kernel(C, d2 * a, d2 * b, mul(C, one_minus_x * one_minus_x)), {}});
    }
    {
        const MultiPoly C = MultiPoly(2) + d2 * (a + b - u - v);
        terms.push_back({"Q(x-u+a)Q(x-v+b)", d2, Factor::Q, Factor::Q, x - u + a, x - v + b,
                         kernel(C, d2 * (a - v), d2 * (b - u), C), {Var::u, Var::v}});
    }
    {
        const MultiPoly C = MultiPoly(2) + d2 * (a + b - u);
        terms.push_back({"Q(x-u+a)Q1(x+b)", -d2, Factor::Q, Factor::Q1, x - u + a, x + b,
                         kernel(C, d2 * a, d2 * (b - u), C), {Var::u}});
    }
    {
        const MultiPoly C = MultiPoly(2) + d2 * (a + b);
        terms.push_back({"Q1(x+a)Q1(x+b)", d2 / Rational(4), Factor::Q1, Factor::Q1, x + a, x + b,
                         kernel(C, d2 * a, d2 * b, C), {}});
    }
    return terms;
}

Rational evaluate_term(const SecondMomentTerm& term, const UniPoly& left, const UniPoly& right) {
    if (left.is_zero() || right.is_zero()) return Rational(0);
    MultiPoly integrand = mul(term.kernel, poly_substitute_affine(left, term.left_arg, kCap));
    integrand = mul(integrand, poly_substitute_affine(right, term.right_arg, kCap));
    return mixed_partial_ab(integrate_term(std::move(integrand), term.inner)).constant_value();
}

Rational second_moment_bracket(const MollifierSpec& spec, int k) {
    spec.validate();
    Rational total;
    for (const auto& term : second_moment_terms(spec.delta1, spec.delta2, k, !spec.one_piece())) {
        total += term.weight * evaluate_term(term, factor_poly(term.left, spec), factor_poly(term.right, spec));
    }
    return total;
}

MomentResult proportion(const MollifierSpec& spec, int k) {
    MomentResult r;
    r.k = k;
    r.c1 = first_moment_bracket(spec, k).abs();
    r.c2 = second_moment_bracket(spec, k);
    if (r.c2.is_zero()) throw DegenerateInputError("second moment vanishes (zero mollifier?)");
    r.proportion = r.c1 * r.c1 / r.c2;
    return r;
}

Rational one_piece_closed_form_c2(const UniPoly& P, int k) {
    if (k < 1) throw DomainError("closed form requires k >= 1");
    const UniPoly dP = P.derivative();
    const Rational p1 = P(Rational(1));
    const Rational kk(k);
    const Rational half = Rational(2).pow(static_cast<unsigned>(2 * k - 1));
    return Rational(2).pow(static_cast<unsigned>(2 * k + 1)) / Rational(2 * k + 1) * (dP * dP).integral01() +
           half * p1 * p1 + half * kk * kk / Rational(2 * k - 1) * (P * P).integral01();
}

Rational second_moment_polarized(const MollifierSpec& a, const MollifierSpec& b, int k) {
    if (a.delta1 != b.delta1 || a.delta2 != b.delta2) {
        throw ConfigError("bilinear form requires matching delta1 and delta2");
    }
    MollifierSpec sum = a;
    const auto add = [](std::vector<Rational>& dst, const std::vector<Rational>& src) {
        if (src.size() > dst.size()) dst.resize(src.size());
        for (std::size_t i = 0; i < src.size(); ++i) dst[i] += src[i];
    };
    add(sum.p_coeffs, b.p_coeffs);
    add(sum.q_coeffs, b.q_coeffs);
    return (second_moment_bracket(sum, k) - second_moment_bracket(a, k) - second_moment_bracket(b, k)) /
           Rational(2);
}

Rational second_moment_bilinear(const MollifierSpec& a, const MollifierSpec& b, int k) {
    if (a.delta1 != b.delta1 || a.delta2 != b.delta2) {
        throw ConfigError("bilinear form requires matching delta1 and delta2");
    }
    const auto degree = [](const std::vector<Rational>& c) { return static_cast<unsigned>(c.size()); };
    const SecondMomentForm form(a.delta1, a.delta2, k, std::max(degree(a.p_coeffs), degree(b.p_coeffs)),
                                std::max(degree(a.q_coeffs), degree(b.q_coeffs)));
    return form.bilinear(a, b);
}

// ------------------------------------------------------ SecondMomentForm

SecondMomentForm::SecondMomentForm(Rational delta1, Rational delta2, int k, unsigned max_p_degree,
                                   unsigned max_q_degree)
    : delta1_(std::move(delta1)),
      delta2_(std::move(delta2)),
      k_(k),
      max_p_degree_(max_p_degree),
      max_q_degree_(max_q_degree) {
    MollifierSpec probe{delta1_, delta2_, {Rational(1)}, {}};
    if (max_q_degree_ > 0) probe.q_coeffs = {Rational(1)};
    probe.validate();

    const auto max_degree = [&](Factor f) {
        switch (f) {
            case Factor::P: return max_p_degree_;
            case Factor::Q: return max_q_degree_;
            case Factor::Q1: return max_q_degree_ == 0 ? 0U : max_q_degree_ + 1;
        }
        return 0U;
    };

    for (const auto& term : second_moment_terms(delta1_, delta2_, k_, max_q_degree_ > 0)) {
        const unsigned nl = max_degree(term.left);
        const unsigned nr = max_degree(term.right);
        // The t-integral only touches the kernel.
        const MultiPoly kernel_t = integrate(term.kernel, Var::t, UpperBound::one);

        std::vector<MultiPoly> right_powers(nr + 1);
        for (unsigned j = 1; j <= nr; ++j) right_powers[j] = poly_pow_truncated(term.right_arg, j, kCap);

        Table table{term.weight, term.left, term.right,
                    std::vector<std::vector<Rational>>(nl + 1, std::vector<Rational>(nr + 1))};
        for (unsigned i = 1; i <= nl; ++i) {
            const MultiPoly left = mul(kernel_t, poly_pow_truncated(term.left_arg, i, kCap));
            for (unsigned j = 1; j <= nr; ++j) {
                MultiPoly p = mul(left, right_powers[j]);
                for (Var v : term.inner) p = integrate(p, v, UpperBound::x);
                p = integrate(p, Var::x, UpperBound::one);
                table.values[i][j] = mixed_partial_ab(p).constant_value();
            }
        }
        tables_.push_back(std::move(table));
    }
}

void SecondMomentForm::check_compatible(const MollifierSpec& s) const {
    if (s.delta1 != delta1_ || s.delta2 != delta2_) {
        throw ConfigError("mollifier deltas do not match the tabulated form");
    }
    const UniPoly P = s.P(), Q = s.Q();
    if (P.degree() > static_cast<int>(max_p_degree_) || Q.degree() > static_cast<int>(max_q_degree_)) {
        throw ConfigError("mollifier degree exceeds the tabulated form");
    }
}

Rational SecondMomentForm::apply(const Table& table, const MollifierSpec& l, const MollifierSpec& r) const {
    const UniPoly F = factor_poly(table.left, l);
    const UniPoly G = factor_poly(table.right, r);
    Rational sum;
    for (int i = 1; i <= F.degree(); ++i) {
        if (F.coefficient(i).is_zero()) continue;
        Rational row;
        for (int j = 1; j <= G.degree(); ++j) row += G.coefficient(j) * table.values[i][j];
        sum += F.coefficient(i) * row;
    }
    return sum;
}

Rational SecondMomentForm::bilinear(const MollifierSpec& a, const MollifierSpec& b) const {
    check_compatible(a);
    check_compatible(b);
    Rational total;
    for (const auto& table : tables_) total += table.weight * (apply(table, a, b) + apply(table, b, a));
    return total / Rational(2);
}

}  // namespace mollify
