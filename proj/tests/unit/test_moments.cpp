#include "generators.hpp"

#include "mollify/errors.hpp"
#include "mollify/moments.hpp"

#include <doctest.h>

using mollify::MollifierSpec;
using mollify::Rational;
using mollify::UniPoly;

namespace {

Rational R(const char* s) { return Rational::parse(s); }

MollifierSpec spec(std::vector<Rational> p, std::vector<Rational> q = {}, Rational d1 = 1, Rational d2 = 1) {
    return MollifierSpec{d1, d2, std::move(p), std::move(q)};
}

const MollifierSpec kRow0 = spec({R("1.05"), R("-0.05")}, {R("0.9")});
const MollifierSpec kRow2 = spec({R("0.75"), 0, R("0.25")}, {R("0.06"), R("-0.05")});

}  // namespace

TEST_CASE("Q_1 is the antiderivative vanishing at 0") {
    CHECK(mollify::q1_antiderivative(UniPoly{0, R("0.9")}) == UniPoly{0, 0, R("0.45")});
    CHECK(mollify::q1_antiderivative(UniPoly{}).is_zero());
    CHECK(mollify::q1_antiderivative(UniPoly{0, R("0.15"), R("-0.11")}) == UniPoly{0, 0, R("0.075"), R("-11/300")});
}

TEST_CASE("first moment bracket") {
    CHECK(first_moment_bracket(spec({R("0.3"), R("0.7")}), 0) == Rational(1));
    CHECK(first_moment_bracket(spec({1}, {R("0.9")}), 0) == R("49/40"));
    CHECK(first_moment_bracket(spec({R("0.5"), R("0.5")}), 3) == Rational(8));
    CHECK_THROWS_AS(first_moment_bracket(spec({1}), -1), mollify::DomainError);
}

TEST_CASE("second moment bracket") {
    CHECK(second_moment_bracket(spec({1}), 0) == Rational(3));
    CHECK(second_moment_bracket(spec({1}, {}, R("1/2")), 0) == Rational(5));
    // The printed k = 0 row evaluates to 0.336008, not its published 0.3411.
    CHECK(second_moment_bracket(kRow0, 0) == R("21437/4800"));
    CHECK(mollify::proportion(kRow0, 0).decimal(6) == "0.336008");
    CHECK(mollify::proportion(spec({R("1.05"), R("-0.05")}, {R("0.45")}), 0).decimal(4) == "0.3411");
}

TEST_CASE("proportion") {
    CHECK(mollify::proportion(spec({1}), 0).proportion == R("1/3"));
    const double p2 = mollify::proportion(kRow2, 2).proportion.to_double();
    CHECK(std::abs(p2 - 0.9085) <= 5e-4);
    CHECK(mollify::proportion(kRow2.scaled(7), 2).proportion == mollify::proportion(kRow2, 2).proportion);
    CHECK_THROWS_AS(mollify::proportion(spec({0}), 1), mollify::DegenerateInputError);
    CHECK_THROWS_AS(mollify::proportion(spec({}, {}), 0), mollify::DegenerateInputError);
}

TEST_CASE("delta validation") {
    CHECK_THROWS_AS(mollify::proportion(spec({1}, {1}, R("1/2"), 1), 0), mollify::ConfigError);
    CHECK_THROWS_AS(mollify::proportion(spec({1}, {}, 0, 1), 0), mollify::ConfigError);
    CHECK_THROWS_AS(mollify::proportion(spec({1}, {}, R("3/2"), 1), 0), mollify::ConfigError);
    CHECK_NOTHROW(mollify::proportion(spec({1}, {1}, 1, 1), 0));
    CHECK_NOTHROW(mollify::proportion(spec({1}, {}, R("1/2"), 1), 0));
}

TEST_CASE("bilinear form") {
    const auto A = spec({1});
    const auto B = spec({0, 1});
    // 2 int P_A' P_B' + P_A(1) P_B(1) with P_A = x, P_B = x^2
    CHECK(second_moment_bilinear(A, B, 0) == Rational(3));
    CHECK(second_moment_polarized(A, B, 0) == Rational(3));
    CHECK(second_moment_bilinear(kRow0, kRow0, 1) == second_moment_bracket(kRow0, 1));
    CHECK_THROWS_AS(second_moment_bilinear(A, spec({1}, {}, R("1/2")), 0), mollify::ConfigError);
}

TEST_CASE("property: homogeneity") {
    auto g = testgen::rng(10);
    for (int i = 0; i < 20; ++i) {
        const MollifierSpec s = mollify::random_spec(g);
        Rational lambda = mollify::random_rational(g, 9);
        if (lambda.is_zero()) lambda = Rational(-3);
        for (int k = 0; k <= 2; ++k) {
            const auto base = mollify::proportion(s, k);
            const auto scaled = mollify::proportion(s.scaled(lambda), k);
            CHECK(base.proportion == scaled.proportion);
            CHECK(scaled.c2 == lambda * lambda * base.c2);
        }
    }
}

TEST_CASE("property: second moment is positive") {
    auto g = testgen::rng(11);
    for (int i = 0; i < 100; ++i) {
        const MollifierSpec s = mollify::random_spec(g);
        for (int k = 0; k <= 3; ++k) CHECK(second_moment_bracket(s, k).sign() > 0);
    }
}

TEST_CASE("property: direct bilinear assembly equals polarization") {
    auto g = testgen::rng(12);
    for (int i = 0; i < 15; ++i) {
        const MollifierSpec a = mollify::random_spec(g);
        MollifierSpec b = mollify::random_spec(g);
        b.delta1 = a.delta1;
        b.delta2 = a.delta2;
        for (int k = 0; k <= 2; ++k) {
            const Rational direct = second_moment_bilinear(a, b, k);
            CHECK(direct == second_moment_polarized(a, b, k));
            CHECK(direct == second_moment_bilinear(b, a, k));
        }
    }
}

TEST_CASE("property: tabulated form agrees with the direct bracket") {
    auto g = testgen::rng(13);
    for (int i = 0; i < 10; ++i) {
        const MollifierSpec s = mollify::random_spec(g);
        for (int k = 0; k <= 3; ++k) {
            const mollify::SecondMomentForm form(s.delta1, s.delta2, k, 3, 2);
            CHECK(form.quadratic(s) == second_moment_bracket(s, k));
        }
    }
}

TEST_CASE("property: k = 0 one-piece reduction") {
    auto g = testgen::rng(14);
    for (int i = 0; i < 30; ++i) {
        const MollifierSpec s = mollify::random_spec(g, {.max_p_degree = 5, .one_piece = true});
        const UniPoly P = s.P();
        const UniPoly dP = P.derivative();
        const Rational p1 = P(Rational(1));
        CHECK(second_moment_bracket(s, 0) == Rational(2) / s.delta1 * (dP * dP).integral01() + p1 * p1);
    }
}

TEST_CASE("property: one-piece closed form for k = 1..8") {
    auto g = testgen::rng(15);
    for (int k = 1; k <= 8; ++k) {
        for (int i = 0; i < 10; ++i) {
            const MollifierSpec s = mollify::random_spec(g, {.max_p_degree = 5, .one_piece = true, .unit_deltas = true});
            CHECK(second_moment_bracket(s, k) == mollify::one_piece_closed_form_c2(s.P(), k));
        }
    }
    // At k = 0 the formula's P(1)^2 weight is 1/2 where the bracket has 1.
    CHECK(second_moment_bracket(spec({1}), 0) != Rational(2) + Rational(1) / Rational(2));
    CHECK_THROWS_AS(mollify::one_piece_closed_form_c2(UniPoly{0, 1}, 0), mollify::DomainError);
}

TEST_CASE("seven second-moment terms, Q terms optional") {
    CHECK(mollify::second_moment_terms(1, 1, 2).size() == 7);
    CHECK(mollify::second_moment_terms(1, 1, 2, false).size() == 1);
}
