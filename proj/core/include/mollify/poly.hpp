#pragma once

#include "mollify/rational.hpp"

#include <array>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace mollify {

/// Univariate polynomial with exact coefficients; index i holds the x^i coefficient.
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<Rational> coefficients);
    UniPoly(std::initializer_list<Rational> coefficients);

    static UniPoly monomial(unsigned degree, Rational coefficient = 1);

    /// Builds sum_{i>=1} c_i x^i from {c_1, c_2, ...}: the zero-constant
    /// layout used for mollifier polynomials.
    static UniPoly from_shifted(std::span<const Rational> coefficients_from_x1);

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<Rational>& coefficients() const { return coeffs_; }
    Rational coefficient(unsigned i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }

    Rational operator()(const Rational& x) const;
    double operator()(double x) const;

    UniPoly derivative() const;
    /// Antiderivative with zero constant term.
    UniPoly antiderivative() const;
    /// Exact integral over [0, 1].
    Rational integral01() const;

    UniPoly& operator+=(const UniPoly& o);
    UniPoly& operator-=(const UniPoly& o);
    UniPoly& operator*=(const Rational& s);
    friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
    friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
    friend UniPoly operator*(UniPoly a, const Rational& s) { return a *= s; }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
    friend bool operator==(const UniPoly&, const UniPoly&) = default;

    std::string to_string() const;

private:
    void normalize();
    std::vector<Rational> coeffs_;
};

/// The fixed variable universe: t, x, u, v are integrated out, a, b are
/// differentiated out.
enum class Var : std::uint8_t { t = 0, x = 1, u = 2, v = 3, a = 4, b = 5 };
inline constexpr std::size_t kVarCount = 6;

using Exponents = std::array<std::uint16_t, kVarCount>;

/// Maximum retained degree in a and b. Terms beyond it are dropped after every product.
struct TruncationCap {
    static constexpr unsigned kNone = std::numeric_limits<unsigned>::max();
    unsigned a = kNone;
    unsigned b = kNone;

    static constexpr TruncationCap none() { return {}; }
    static constexpr TruncationCap bilinear() { return {1, 1}; }
    bool keeps(const Exponents& e) const { return e[4] <= a && e[5] <= b; }
};

/// Upper limit of a definite integral with lower limit 0.
enum class UpperBound { one, x };

/// Sparse polynomial in {t, x, u, v, a, b} with exact coefficients.
/// Zero coefficients are never stored.
class MultiPoly {
public:
    using TermMap = std::map<Exponents, Rational>;

    MultiPoly() = default;
    MultiPoly(const Rational& constant);  // NOLINT(google-explicit-constructor)
    MultiPoly(int constant) : MultiPoly(Rational(constant)) {}  // NOLINT(google-explicit-constructor)

    static MultiPoly variable(Var v);
    static MultiPoly monomial(const Exponents& e, Rational coefficient);

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    unsigned degree(Var v) const;
    Rational coefficient(const Exponents& e) const;

    /// The value of a constant polynomial; throws DomainError otherwise.
    Rational constant_value() const;

    /// Coefficient polynomial of a^i b^j (contains no a or b).
    MultiPoly ab_coefficient(unsigned i, unsigned j) const;

    MultiPoly derivative(Var v) const;
    MultiPoly truncated(TruncationCap cap) const;

    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    MultiPoly& operator*=(const Rational& s);
    friend MultiPoly operator+(MultiPoly p, const MultiPoly& q) { return p += q; }
    friend MultiPoly operator-(MultiPoly p, const MultiPoly& q) { return p -= q; }
    friend MultiPoly operator-(MultiPoly p) { return p *= Rational(-1); }
    friend MultiPoly operator*(MultiPoly p, const Rational& s) { return p *= s; }
    friend MultiPoly operator*(const Rational& s, MultiPoly p) { return p *= s; }
    /// Full (untruncated) product.
    friend MultiPoly operator*(const MultiPoly& p, const MultiPoly& q);

    friend bool operator==(const MultiPoly&, const MultiPoly&) = default;
    friend auto operator<=>(const MultiPoly& p, const MultiPoly& q) { return p.terms_ <=> q.terms_; }

    /// Adds c * monomial(e) in place.
    void add_term(const Exponents& e, const Rational& c);

    std::string to_string() const;

private:
    TermMap terms_;
};

MultiPoly poly_mul_truncated(const MultiPoly& p, const MultiPoly& q, TruncationCap cap);

/// p^k under truncation, by binary exponentiation; p^0 = 1.
MultiPoly poly_pow_truncated(const MultiPoly& p, unsigned k, TruncationCap cap);

/// Composition P(arg) by Horner's rule, truncated under `cap`.
MultiPoly poly_substitute_affine(const UniPoly& P, const MultiPoly& arg,
                                 TruncationCap cap = TruncationCap::none());

/// Definite integral over var in [0, upper]. With upper = x only u and v may
/// be integrated; any other combination throws InvalidBoundsError.
MultiPoly integrate(const MultiPoly& p, Var var, UpperBound upper);

/// Coefficient of a^1 b^1, i.e. d^2/da db at a = b = 0.
MultiPoly mixed_partial_ab(const MultiPoly& p);

}  // namespace mollify
