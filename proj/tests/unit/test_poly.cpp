#include "generators.hpp"

#include "mollify/errors.hpp"
#include "mollify/poly.hpp"

#include <doctest.h>

using mollify::MultiPoly;
using mollify::Rational;
using mollify::TruncationCap;
using mollify::UniPoly;
using mollify::UpperBound;
using mollify::Var;

namespace {

MultiPoly V(Var v) { return MultiPoly::variable(v); }

const MultiPoly t = V(Var::t), x = V(Var::x), u = V(Var::u), v = V(Var::v), a = V(Var::a), b = V(Var::b);

std::size_t slot(Var var) { return static_cast<std::size_t>(var); }

// p with `var` replaced by a constant
MultiPoly at(const MultiPoly& p, Var var, const Rational& value) {
    MultiPoly out;
    for (const auto& [e, c] : p.terms()) {
        auto f = e;
        f[slot(var)] = 0;
        out.add_term(f, c * value.pow(e[slot(var)]));
    }
    return out;
}

MultiPoly drop_high_ab(const MultiPoly& p) {
    MultiPoly out;
    for (const auto& [e, c] : p.terms()) {
        if (e[slot(Var::a)] <= 1 && e[slot(Var::b)] <= 1) out.add_term(e, c);
    }
    return out;
}

}  // namespace

TEST_CASE("truncated products") {
    const auto cap = TruncationCap::bilinear();
    CHECK(poly_mul_truncated(1 + a, 1 + a, cap) == 1 + Rational(2) * a);
    CHECK(poly_mul_truncated(x + a, x + b, cap) == x * x + x * b + x * a + a * b);
    CHECK(poly_mul_truncated(t, x, cap) == t * x);
    CHECK(poly_mul_truncated(t, x, TruncationCap::none()) == t * x);
}

TEST_CASE("truncated powers") {
    const auto cap = TruncationCap::bilinear();
    CHECK(poly_pow_truncated(Rational(2) * t - a, 2, cap) == Rational(4) * t * t - Rational(4) * t * a);
    CHECK(poly_pow_truncated(x + a + b, 0, cap) == MultiPoly(1));
    CHECK(poly_pow_truncated(Rational(2) * t, 3, cap) == Rational(8) * t * t * t);
    CHECK(poly_pow_truncated(MultiPoly(), 0, cap) == MultiPoly(1));
}

TEST_CASE("composition with affine arguments") {
    const auto cap = TruncationCap::bilinear();
    const UniPoly sq{0, 0, 1};
    CHECK(poly_substitute_affine(sq, x - u + a, cap) == x * x - Rational(2) * x * u + u * u + Rational(2) * x * a - Rational(2) * u * a);
    const UniPoly id{0, 1};
    const Rational half = Rational(1) / Rational(2);
    CHECK(poly_substitute_affine(id, 1 - (1 - x) * half) == MultiPoly(half) + x * half);
    const UniPoly cube{0, 0, 0, 1};
    CHECK(poly_substitute_affine(cube, x) == x * x * x);
}

TEST_CASE("definite integrals") {
    CHECK(integrate(t * t, Var::t, UpperBound::one) == MultiPoly(Rational(1) / Rational(3)));
    CHECK(integrate(x - u, Var::u, UpperBound::x) == x * x * (Rational(1) / Rational(2)));
    CHECK(integrate(x * x * (Rational(1) / Rational(2)), Var::x, UpperBound::one) ==
          MultiPoly(Rational(1) / Rational(6)));
    CHECK(integrate(x, Var::t, UpperBound::one) == x);
}

TEST_CASE("invalid integration bounds") {
    CHECK_THROWS_AS(integrate(x, Var::x, UpperBound::x), mollify::InvalidBoundsError);
    CHECK_THROWS_AS(integrate(t, Var::t, UpperBound::x), mollify::InvalidBoundsError);
    CHECK_THROWS_AS(integrate(a, Var::a, UpperBound::one), mollify::InvalidBoundsError);
    CHECK_THROWS_AS(integrate(b, Var::b, UpperBound::x), mollify::InvalidBoundsError);
}

TEST_CASE("mixed partial extraction") {
    CHECK(mixed_partial_ab(a * b) == MultiPoly(1));
    CHECK(mixed_partial_ab((a + b) * (a + b)) == MultiPoly(2));
    CHECK(mixed_partial_ab((x + a) * (x + b) * (2 + a + b)) == 2 + Rational(2) * x);
    CHECK(mixed_partial_ab(a * a * b).is_zero());
}

TEST_CASE("constant_value only for constants") {
    CHECK(MultiPoly(Rational(3)).constant_value() == Rational(3));
    CHECK(MultiPoly().constant_value() == Rational(0));
    CHECK_THROWS_AS(x.constant_value(), mollify::DomainError);
}

TEST_CASE("univariate basics") {
    CHECK(UniPoly{1, 0, 0} == UniPoly{1});
    const UniPoly p{0, 2, 3};
    CHECK(p.derivative() == UniPoly{2, 6});
    CHECK(p.antiderivative() == UniPoly{0, 0, 1, 1});
    CHECK(p.integral01() == Rational(2));
    CHECK(p(Rational(2)) == Rational(16));
    CHECK(p(0.5) == doctest::Approx(1.75));
    const std::vector<Rational> shifted{Rational(21) / Rational(20), Rational(-1) / Rational(20)};
    CHECK(UniPoly::from_shifted(shifted) == UniPoly{0, Rational(21) / Rational(20), Rational(-1) / Rational(20)});
    CHECK((UniPoly{0, 1} * UniPoly{0, 1}) == UniPoly::monomial(2));
}

TEST_CASE("property: ring laws at no truncation") {
    auto g = testgen::rng(2);
    for (int i = 0; i < 40; ++i) {
        const MultiPoly p = testgen::multipoly(g), q = testgen::multipoly(g), r = testgen::multipoly(g);
        CHECK(p * q == q * p);
        CHECK((p * q) * r == p * (q * r));
        CHECK(p * (q + r) == p * q + p * r);
        CHECK(p + q - q == p);
    }
}

TEST_CASE("property: truncated product equals full product with high a, b terms removed") {
    auto g = testgen::rng(3);
    for (int i = 0; i < 40; ++i) {
        const MultiPoly p = testgen::multipoly(g), q = testgen::multipoly(g);
        CHECK(poly_mul_truncated(p, q, TruncationCap::bilinear()) == drop_high_ab(p * q));
        CHECK(poly_pow_truncated(p, 3, TruncationCap::bilinear()) == drop_high_ab(p * p * p));
    }
}

TEST_CASE("property: Fubini on the unit square") {
    auto g = testgen::rng(4);
    for (int i = 0; i < 40; ++i) {
        const MultiPoly p = testgen::multipoly(g, 6, 3);
        const MultiPoly uv = integrate(integrate(p, Var::u, UpperBound::one), Var::v, UpperBound::one);
        const MultiPoly vu = integrate(integrate(p, Var::v, UpperBound::one), Var::u, UpperBound::one);
        CHECK(uv == vu);
    }
}

TEST_CASE("property: mixed partial obeys the product rule") {
    auto g = testgen::rng(5);
    for (int i = 0; i < 40; ++i) {
        const MultiPoly p = testgen::multipoly(g), q = testgen::multipoly(g);
        const auto c = [](const MultiPoly& m, unsigned i, unsigned j) { return m.ab_coefficient(i, j); };
        const MultiPoly expected = c(p, 1, 1) * c(q, 0, 0) + c(p, 1, 0) * c(q, 0, 1) + c(p, 0, 1) * c(q, 1, 0) +
                                   c(p, 0, 0) * c(q, 1, 1);
        CHECK(mixed_partial_ab(p * q) == expected);
        CHECK(mixed_partial_ab(poly_mul_truncated(p, q, TruncationCap::bilinear())) == expected);
    }
}

TEST_CASE("property: integral of an x-derivative is the boundary difference") {
    auto g = testgen::rng(6);
    for (int i = 0; i < 40; ++i) {
        const MultiPoly p = testgen::multipoly(g, 5, 3);
        const MultiPoly lhs = integrate(p.derivative(Var::x), Var::x, UpperBound::one);
        CHECK(lhs == at(p, Var::x, Rational(1)) - at(p, Var::x, Rational(0)));
    }
}

TEST_CASE("property: inner integral to x then outer integral matches the triangle area rule") {
    auto g = testgen::rng(7);
    for (int i = 0; i < 20; ++i) {
        const UniPoly f = testgen::unipoly(g);
        // int_0^1 int_0^x f(u) du dx = int_0^1 (1 - u) f(u) du
        const MultiPoly fu = poly_substitute_affine(f, u);
        const MultiPoly lhs = integrate(integrate(fu, Var::u, UpperBound::x), Var::x, UpperBound::one);
        const MultiPoly rhs = integrate((1 - u) * fu, Var::u, UpperBound::one);
        CHECK(lhs == rhs);
    }
}
