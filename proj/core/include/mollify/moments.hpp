#pragma once

#include "mollify/poly.hpp"
#include "mollify/rational.hpp"

#include <string>
#include <vector>

namespace mollify {

/// Mollifier configuration: y1 = q^delta1, y2 = q^delta2, and the
/// coefficients of P(x) = sum a_i x^i and Q(x) = sum b_j x^j, both starting at x^1.
/// An empty (or all-zero) q_coeffs is the one-piece mollifier.
struct MollifierSpec {
    Rational delta1{1};
    Rational delta2{1};
    std::vector<Rational> p_coeffs;
    std::vector<Rational> q_coeffs;

    UniPoly P() const { return UniPoly::from_shifted(p_coeffs); }
    UniPoly Q() const { return UniPoly::from_shifted(q_coeffs); }

    bool one_piece() const { return Q().is_zero(); }
    bool is_zero() const { return P().is_zero() && Q().is_zero(); }
    bool p_at_1_is_one() const { return P()(Rational(1)) == Rational(1); }

    /// Throws ConfigError unless 0 < delta2 <= delta1 <= 1 (delta2 only needs
    /// to lie in (0, 1] when Q is zero).
    void validate() const;

    MollifierSpec scaled(const Rational& lambda) const;
};

struct MomentResult {
    int k = 0;
    Rational c1;
    Rational c2;
    Rational proportion;

    std::string decimal(int digits) const { return proportion.to_decimal(digits); }
};

/// Q_1(x) = integral_0^x Q(r) dr.
UniPoly q1_antiderivative(const UniPoly& Q);

/// c1 = 2^k P(1) + d2 * int_0^1 (2 - d2 (1-x))^k Q(x) dx - 2^(k-1) d2 Q_1(1).
Rational first_moment_bracket(const MollifierSpec& spec, int k);

/// c2: the a^1 b^1 coefficient of the seven-term second-moment expression,
/// each term assembled as a polynomial and integrated exactly.
Rational second_moment_bracket(const MollifierSpec& spec, int k);

/// One-piece second moment for delta1 = 1 and k >= 1 in closed form:
///   2^(2k+1)/(2k+1) int P'^2 + 2^(2k-1) P(1)^2 + 2^(2k-1) k^2/(2k-1) int P^2.
/// Throws DomainError for k < 1.
Rational one_piece_closed_form_c2(const UniPoly& P, int k);

/// c1^2 / c2. Throws DegenerateInputError when c2 = 0.
MomentResult proportion(const MollifierSpec& spec, int k);

/// Symmetric bilinear form B with B(s, s) = second_moment_bracket(s, k),
/// assembled directly from per-monomial term tables.
Rational second_moment_bilinear(const MollifierSpec& a, const MollifierSpec& b, int k);

/// The same form obtained by polarizing second_moment_bracket.
Rational second_moment_polarized(const MollifierSpec& a, const MollifierSpec& b, int k);

/// Which mollifier polynomial occupies a factor slot of a second-moment term.
enum class Factor { P, Q, Q1 };

/// One of the seven integrals of the second moment:
///   weight * int kernel * left(left_arg) * right(right_arg),
/// with `inner` integrated over [0, x] (in order), then x and t over [0, 1].
/// The left factor carries a, the right factor carries b.
struct SecondMomentTerm {
    std::string name;
    Rational weight;
    Factor left = Factor::P;
    Factor right = Factor::P;
    MultiPoly left_arg;
    MultiPoly right_arg;
    MultiPoly kernel;
    std::vector<Var> inner;
};

/// The term list for (delta1, delta2, k). Q-dependent terms are omitted when include_q is false.
std::vector<SecondMomentTerm> second_moment_terms(const Rational& delta1, const Rational& delta2, int k,
                                                  bool include_q = true);

/// Unweighted value of one term for the given slot polynomials.
Rational evaluate_term(const SecondMomentTerm& term, const UniPoly& left, const UniPoly& right);

/// Second-moment quadratic form tabulated on monomials x^i, x^j, so that
/// bilinear evaluations for any pair of specs up to the given degrees are cheap.
class SecondMomentForm {
public:
    SecondMomentForm(Rational delta1, Rational delta2, int k, unsigned max_p_degree, unsigned max_q_degree);

    const Rational& delta1() const { return delta1_; }
    const Rational& delta2() const { return delta2_; }
    int k() const { return k_; }

    Rational bilinear(const MollifierSpec& a, const MollifierSpec& b) const;
    Rational quadratic(const MollifierSpec& s) const { return bilinear(s, s); }

private:
    struct Table {
        Rational weight;
        Factor left;
        Factor right;
        std::vector<std::vector<Rational>> values;  // values[i][j] = term(x^i, x^j)
    };

    Rational apply(const Table& table, const MollifierSpec& l, const MollifierSpec& r) const;
    void check_compatible(const MollifierSpec& s) const;

    Rational delta1_;
    Rational delta2_;
    int k_;
    unsigned max_p_degree_;
    unsigned max_q_degree_;
    std::vector<Table> tables_;
};

}  // namespace mollify
