#include "mollify/poly.hpp"

#include "mollify/errors.hpp"

#include <sstream>
#include <utility>

namespace mollify {

// ---------------------------------------------------------------- UniPoly

UniPoly::UniPoly(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) { normalize(); }

UniPoly::UniPoly(std::initializer_list<Rational> coefficients) : coeffs_(coefficients) { normalize(); }

UniPoly UniPoly::monomial(unsigned degree, Rational coefficient) {
    std::vector<Rational> c(degree + 1);
    c[degree] = std::move(coefficient);
    return UniPoly(std::move(c));
}

UniPoly UniPoly::from_shifted(std::span<const Rational> coefficients_from_x1) {
    std::vector<Rational> c;
    c.reserve(coefficients_from_x1.size() + 1);
    c.emplace_back(0);
    c.insert(c.end(), coefficients_from_x1.begin(), coefficients_from_x1.end());
    return UniPoly(std::move(c));
}

void UniPoly::normalize() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Rational UniPoly::operator()(const Rational& x) const {
    Rational acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

double UniPoly::operator()(double x) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + it->to_double();
    return acc;
}

UniPoly UniPoly::derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<Rational> d(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * Rational(static_cast<long>(i));
    return UniPoly(std::move(d));
}

UniPoly UniPoly::antiderivative() const {
    if (coeffs_.empty()) return {};
    std::vector<Rational> r(coeffs_.size() + 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) r[i + 1] = coeffs_[i] / Rational(static_cast<long>(i + 1));
    return UniPoly(std::move(r));
}

Rational UniPoly::integral01() const { return antiderivative()(Rational(1)); }

UniPoly& UniPoly::operator+=(const UniPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    normalize();
    return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    normalize();
    return *this;
}

UniPoly& UniPoly::operator*=(const Rational& s) {
    for (auto& c : coeffs_) c *= s;
    normalize();
    return *this;
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> r(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return UniPoly(std::move(r));
}

std::string UniPoly::to_string() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i].is_zero()) continue;
        if (!first) os << " + ";
        os << coeffs_[i];
        if (i > 0) os << "*x^" << i;
        first = false;
    }
    return os.str();
}

// -------------------------------------------------------------- MultiPoly

namespace {

constexpr std::size_t idx(Var v) { return static_cast<std::size_t>(v); }

Exponents add_exponents(const Exponents& e, const Exponents& f) {
    Exponents r{};
    for (std::size_t i = 0; i < kVarCount; ++i) r[i] = static_cast<std::uint16_t>(e[i] + f[i]);
    return r;
}

constexpr std::array<char, kVarCount> kVarNames{'t', 'x', 'u', 'v', 'a', 'b'};

}  // namespace

MultiPoly::MultiPoly(const Rational& constant) {
    if (!constant.is_zero()) terms_.emplace(Exponents{}, constant);
}

MultiPoly MultiPoly::variable(Var v) {
    Exponents e{};
    e[idx(v)] = 1;
    return monomial(e, 1);
}

MultiPoly MultiPoly::monomial(const Exponents& e, Rational coefficient) {
    MultiPoly p;
    p.add_term(e, coefficient);
    return p;
}

void MultiPoly::add_term(const Exponents& e, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

unsigned MultiPoly::degree(Var v) const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max<unsigned>(d, e[idx(v)]);
    return d;
}

Rational MultiPoly::coefficient(const Exponents& e) const {
    const auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

Rational MultiPoly::constant_value() const {
    if (terms_.empty()) return Rational(0);
    if (terms_.size() != 1 || terms_.begin()->first != Exponents{}) {
        throw DomainError("polynomial is not constant: " + to_string());
    }
    return terms_.begin()->second;
}

MultiPoly MultiPoly::ab_coefficient(unsigned i, unsigned j) const {
    MultiPoly r;
    for (const auto& [e, c] : terms_) {
        if (e[idx(Var::a)] != i || e[idx(Var::b)] != j) continue;
        Exponents f = e;
        f[idx(Var::a)] = 0;
        f[idx(Var::b)] = 0;
        r.terms_.emplace(f, c);
    }
    return r;
}

MultiPoly MultiPoly::derivative(Var v) const {
    MultiPoly r;
    for (const auto& [e, c] : terms_) {
        const auto n = e[idx(v)];
        if (n == 0) continue;
        Exponents f = e;
        f[idx(v)] = static_cast<std::uint16_t>(n - 1);
        r.add_term(f, c * Rational(static_cast<long>(n)));
    }
    return r;
}

MultiPoly MultiPoly::truncated(TruncationCap cap) const {
    MultiPoly r;
    for (const auto& [e, c] : terms_) {
        if (cap.keeps(e)) r.terms_.emplace(e, c);
    }
    return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& s) {
    if (s.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
}

MultiPoly operator*(const MultiPoly& p, const MultiPoly& q) {
    return poly_mul_truncated(p, q, TruncationCap::none());
}

std::string MultiPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c;
        for (std::size_t i = 0; i < kVarCount; ++i) {
            if (e[i] == 0) continue;
            os << '*' << kVarNames[i];
            if (e[i] > 1) os << '^' << e[i];
        }
    }
    return os.str();
}

MultiPoly poly_mul_truncated(const MultiPoly& p, const MultiPoly& q, TruncationCap cap) {
    MultiPoly r;
    for (const auto& [e, c] : p.terms()) {
        for (const auto& [f, d] : q.terms()) {
            const Exponents g = add_exponents(e, f);
            if (!cap.keeps(g)) continue;
            r.add_term(g, c * d);
        }
    }
    return r;
}

MultiPoly poly_pow_truncated(const MultiPoly& p, unsigned k, TruncationCap cap) {
    MultiPoly result(1);
    MultiPoly base = p.truncated(cap);
    while (k > 0) {
        if (k & 1U) result = poly_mul_truncated(result, base, cap);
        k >>= 1U;
        if (k > 0) base = poly_mul_truncated(base, base, cap);
    }
    return result;
}

MultiPoly poly_substitute_affine(const UniPoly& P, const MultiPoly& arg, TruncationCap cap) {
    MultiPoly acc;
    const auto& c = P.coefficients();
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        acc = poly_mul_truncated(acc, arg, cap);
        acc += MultiPoly(*it);
    }
    return acc.truncated(cap);
}

MultiPoly integrate(const MultiPoly& p, Var var, UpperBound upper) {
    if (var == Var::a || var == Var::b) {
        throw InvalidBoundsError("a and b are differentiation variables and cannot be integrated");
    }
    if (upper == UpperBound::x && var != Var::u && var != Var::v) {
        throw InvalidBoundsError("only u and v may be integrated over [0, x]");
    }
    MultiPoly r;
    for (const auto& [e, c] : p.terms()) {
        const unsigned n = e[idx(var)];
        Exponents f = e;
        f[idx(var)] = 0;
        if (upper == UpperBound::x) f[idx(Var::x)] = static_cast<std::uint16_t>(f[idx(Var::x)] + n + 1);
        r.add_term(f, c / Rational(static_cast<long>(n + 1)));
    }
    return r;
}

MultiPoly mixed_partial_ab(const MultiPoly& p) { return p.ab_coefficient(1, 1); }

}  // namespace mollify
