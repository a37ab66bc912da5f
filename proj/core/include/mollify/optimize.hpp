#pragma once

#include "mollify/linalg.hpp"
#include "mollify/moments.hpp"
#include "mollify/rational.hpp"

#include <span>
#include <string>
#include <vector>

namespace mollify {

/// A monomial x^degree in either P or Q.
struct BasisElement {
    Factor polynomial = Factor::P;
    unsigned degree = 1;

    std::string label() const;
    friend bool operator==(const BasisElement&, const BasisElement&) = default;
};

/// P-monomials x^1..x^p_degree followed by Q-monomials x^1..x^q_degree.
struct Basis {
    unsigned p_degree = 1;
    unsigned q_degree = 0;

    std::size_t size() const { return p_degree + q_degree; }
    std::vector<BasisElement> elements() const;
};

/// The proportion as a Rayleigh quotient (v.x)^2 / (x^T A x) over a monomial basis.
struct QuadraticModel {
    Basis basis;
    Rational delta1{1};
    Rational delta2{1};
    int k = 0;
    std::vector<Rational> v;
    RationalMatrix A;

    /// The mollifier whose coordinates in the basis are x.
    MollifierSpec spec_for(std::span<const Rational> x) const;
    /// Coordinates of spec in the basis; throws ConfigError if it does not fit.
    std::vector<Rational> coordinates(const MollifierSpec& spec) const;
};

struct OptimizationResult {
    std::vector<Rational> coefficients;  // basis coordinates, P(1) = 1 when normalized
    MollifierSpec mollifier;
    Rational optimum;  // v^T A^{-1} v on the retained basis
    std::vector<BasisElement> dropped_basis;
    bool normalized = true;  // false when the optimal P has P(1) = 0
};

QuadraticModel build_quadratic_model(int p_degree, int q_degree, const Rational& delta1, const Rational& delta2,
                                     int k);

/// One-piece model (Q = 0, delta1 = 1) built from the three-term closed form
///   c2 = 2^(2k+1)/(2k+1) int P'^2 + 2^(2k-1) P(1)^2 + 2^(2k-1) k^2/(2k-1) int P^2,
/// valid for k >= 1.
QuadraticModel build_one_piece_closed_form_model(int degree, int k);

/// Maximizes the quotient: solves A x = v exactly, drops dependent basis
/// columns if A is singular, and normalizes to P(1) = 1 where possible.
OptimizationResult solve_rayleigh(const QuadraticModel& model);

/// (v.x)^2 / (x^T A x) for the candidate's coordinates.
Rational evaluate_candidate(const MollifierSpec& spec, const QuadraticModel& model);

}  // namespace mollify
