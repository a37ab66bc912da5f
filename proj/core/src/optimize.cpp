#include "mollify/optimize.hpp"

#include "mollify/errors.hpp"

#include <utility>

namespace mollify {

std::string BasisElement::label() const {
    return std::string(polynomial == Factor::P ? "P" : "Q") + ":x^" + std::to_string(degree);
}

std::vector<BasisElement> Basis::elements() const {
    std::vector<BasisElement> out;
    out.reserve(size());
    for (unsigned i = 1; i <= p_degree; ++i) out.push_back({Factor::P, i});
    for (unsigned j = 1; j <= q_degree; ++j) out.push_back({Factor::Q, j});
    return out;
}

MollifierSpec QuadraticModel::spec_for(std::span<const Rational> x) const {
    MollifierSpec s{delta1, delta2, {}, {}};
    s.p_coeffs.assign(x.begin(), x.begin() + basis.p_degree);
    s.q_coeffs.assign(x.begin() + basis.p_degree, x.begin() + static_cast<std::ptrdiff_t>(basis.size()));
    return s;
}

std::vector<Rational> QuadraticModel::coordinates(const MollifierSpec& spec) const {
    if (spec.delta1 != delta1 || spec.delta2 != delta2) throw ConfigError("candidate deltas differ from the model");
    const UniPoly P = spec.P(), Q = spec.Q();
    if (P.degree() > static_cast<int>(basis.p_degree) || Q.degree() > static_cast<int>(basis.q_degree)) {
        throw ConfigError("candidate polynomial lies outside the model basis");
    }
    std::vector<Rational> x;
    x.reserve(basis.size());
    for (unsigned i = 1; i <= basis.p_degree; ++i) x.push_back(P.coefficient(i));
    for (unsigned j = 1; j <= basis.q_degree; ++j) x.push_back(Q.coefficient(j));
    return x;
}

QuadraticModel build_quadratic_model(int p_degree, int q_degree, const Rational& delta1, const Rational& delta2,
                                     int k) {
    if (p_degree < 1) throw ConfigError("P degree must be at least 1");
    if (q_degree < 0) throw ConfigError("Q degree must be non-negative");
    if (k < 0) throw ConfigError("derivative order k must be non-negative");

    QuadraticModel m;
    m.basis = {static_cast<unsigned>(p_degree), static_cast<unsigned>(q_degree)};
    m.delta1 = delta1;
    m.delta2 = delta2;
    m.k = k;

    const SecondMomentForm form(delta1, delta2, k, m.basis.p_degree, m.basis.q_degree);
    const std::size_t n = m.basis.size();
    std::vector<MollifierSpec> unit(n);
    for (std::size_t e = 0; e < n; ++e) {
        std::vector<Rational> x(n);
        x[e] = 1;
        unit[e] = m.spec_for(x);
    }

    m.v.resize(n);
    m.A = RationalMatrix(n, n);
    for (std::size_t e = 0; e < n; ++e) {
        m.v[e] = first_moment_bracket(unit[e], k);
        for (std::size_t f = e; f < n; ++f) {
            m.A(e, f) = form.bilinear(unit[e], unit[f]);
            m.A(f, e) = m.A(e, f);
        }
    }
    return m;
}

QuadraticModel build_one_piece_closed_form_model(int degree, int k) {
    if (degree < 1) throw ConfigError("P degree must be at least 1");
    if (k < 1) throw DomainError("the three-term one-piece form needs k >= 1");

    QuadraticModel m;
    m.basis = {static_cast<unsigned>(degree), 0};
    m.k = k;
    const auto n = static_cast<std::size_t>(degree);
    const unsigned ku = static_cast<unsigned>(k);
    const Rational derivative_weight = Rational(2).pow(2 * ku + 1) / Rational(2 * k + 1);
    const Rational boundary_weight = Rational(2).pow(2 * ku - 1);
    const Rational mass_weight = boundary_weight * Rational(k * k) / Rational(2 * k - 1);

    m.v.assign(n, Rational(2).pow(ku));
    m.A = RationalMatrix(n, n);
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 1; j <= n; ++j) {
            const long li = static_cast<long>(i), lj = static_cast<long>(j);
            m.A(i - 1, j - 1) = derivative_weight * Rational(li * lj) / Rational(li + lj - 1) + boundary_weight +
                                mass_weight / Rational(li + lj + 1);
        }
    }
    return m;
}

OptimizationResult solve_rayleigh(const QuadraticModel& model) {
    const std::size_t n = model.basis.size();
    const auto elements = model.basis.elements();
    OptimizationResult out;

    std::vector<std::size_t> keep(n);
    for (std::size_t i = 0; i < n; ++i) keep[i] = i;

    LinearSolution sol = bareiss_solve(model.A, model.v);
    if (!sol.free_columns.empty()) {
        std::vector<std::size_t> retained;
        for (std::size_t i = 0; i < n; ++i) {
            bool dropped = false;
            for (auto f : sol.free_columns) dropped = dropped || f == i;
            if (dropped) {
                out.dropped_basis.push_back(elements[i]);
            } else {
                retained.push_back(i);
            }
        }
        std::vector<Rational> v_reduced;
        for (auto i : retained) v_reduced.push_back(model.v[i]);
        const LinearSolution reduced = bareiss_solve(model.A.submatrix(retained), v_reduced);
        if (!reduced.free_columns.empty()) throw NumericalFailure("reduced system is still singular");

        std::vector<Rational> x(n);
        for (std::size_t r = 0; r < retained.size(); ++r) x[retained[r]] = reduced.x[r];
        const auto Ax = model.A.multiply(x);
        for (std::size_t i = 0; i < n; ++i) {
            if (Ax[i] != model.v[i]) throw InfeasibleError("linear functional lies outside the column space of A");
        }
        sol.x = std::move(x);
    }

    out.optimum = dot(model.v, sol.x);
    if (out.optimum.is_zero()) throw DegenerateInputError("linear functional vanishes on the basis span");

    Rational p_at_1;
    for (unsigned i = 0; i < model.basis.p_degree; ++i) p_at_1 += sol.x[i];
    out.normalized = !p_at_1.is_zero();
    if (out.normalized) {
        for (auto& c : sol.x) c /= p_at_1;
    }
    out.coefficients = std::move(sol.x);
    out.mollifier = model.spec_for(out.coefficients);
    return out;
}

Rational evaluate_candidate(const MollifierSpec& spec, const QuadraticModel& model) {
    const auto x = model.coordinates(spec);
    const Rational quad = model.A.quadratic_form(x);
    if (quad.is_zero()) throw DegenerateInputError("candidate has a vanishing second moment");
    const Rational lin = dot(model.v, x);
    return lin * lin / quad;
}

}  // namespace mollify
