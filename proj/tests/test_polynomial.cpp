#include <doctest.h>

#include <random>

#include "kocalc/polynomial.hpp"

using namespace kocalc;

namespace {

const GeneratorScheme P = GeneratorScheme::pontrjagin();
const GeneratorScheme W = GeneratorScheme::stiefel_whitney();

GradedPolynomial p(unsigned i) { return GradedPolynomial::generator(P, 0, i); }
GradedPolynomial w(unsigned i) { return GradedPolynomial::generator(W, 0, i); }
GradedPolynomial constant(long long n) { return GradedPolynomial(P, Rational(n)); }

GradedPolynomial random_poly(std::mt19937& rng, const GeneratorScheme& scheme,
                             unsigned num_gens, unsigned max_terms, unsigned max_degree,
                             bool unit) {
    std::uniform_int_distribution<unsigned> gen(1, num_gens);
    std::uniform_int_distribution<unsigned> exp(1, 2);
    std::uniform_int_distribution<long long> coeff(-4, 4);
    std::uniform_int_distribution<unsigned> len(0, 2);
    GradedPolynomial out(scheme);
    if (unit) out.add_term(Monomial{}, Rational(1 + std::abs(coeff(rng)) % 3));
    for (unsigned t = 0; t < max_terms; ++t) {
        std::vector<GeneratorPower> powers;
        for (unsigned j = 0; j <= len(rng); ++j) powers.push_back({0, gen(rng), exp(rng)});
        Monomial m(powers, scheme);
        if (m.degree() > max_degree || (unit && m.is_constant())) continue;
        out.add_term(m, Rational(coeff(rng)));
    }
    return out;
}

}  // namespace

TEST_CASE("rational arithmetic stays normalized") {
    Rational a(6, 4);
    CHECK(a.numerator() == 3);
    CHECK(a.denominator() == 2);
    CHECK((Rational(1, 3) + Rational(1, 6)) == Rational(1, 2));
    CHECK((Rational(-2, 8)).denominator() == 4);
    CHECK((Rational(1, -3)).numerator() == -1);
    CHECK(Rational(7, 5).floor() == 1);
    CHECK(Rational(-7, 5).floor() == -2);
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("poly_add basics") {
    CHECK(poly_add(p(1), p(1)) == p(1).scaled(Rational(2)));
    CHECK(poly_add(p(1), -p(1)).is_zero());
    GradedPolynomial s = poly_add(poly_add(constant(1), p(1)), p(2));
    CHECK(s.terms().size() == 3);
    CHECK(s.str() == "1 + p1 + p2");
    GradedPolynomial x = GradedPolynomial::generator(GeneratorScheme::chern_roots(), 0, 1);
    CHECK_THROWS_AS(poly_add(p(1), x), std::invalid_argument);
}

TEST_CASE("poly_mul truncation and characteristic 2") {
    CHECK(poly_mul(p(1), p(1), 8) == GradedPolynomial::generator(P, 0, 1, 2));
    // (1+w1)^2 = 1 + w1^2 over Z/2
    GradedPolynomial one_w1 = poly_add(GradedPolynomial(W, Rational(1)), w(1));
    GradedPolynomial sq = poly_mul(one_w1, one_w1, 4);
    GradedPolynomial expect = poly_add(GradedPolynomial(W, Rational(1)),
                                       GradedPolynomial::generator(W, 0, 1, 2));
    CHECK(sq == expect);
    // truncation drops p2
    GradedPolynomial a = poly_add(constant(1), p(1));
    GradedPolynomial b = poly_add(constant(1), p(2));
    CHECK(poly_mul(a, b, 4) == poly_add(constant(1), p(1)));
}

TEST_CASE("invert_unit") {
    CHECK(invert_unit(constant(1), 12) == constant(1));
    // 1/(1+p1) = 1 - p1 + p1^2 - p1^3 through degree 12
    GradedPolynomial inv = invert_unit(poly_add(constant(1), p(1)), 12);
    GradedPolynomial expect = constant(1);
    for (unsigned k = 1; k <= 3; ++k)
        expect = poly_add(expect, GradedPolynomial::generator(P, 0, 1, k)
                                      .scaled(k % 2 ? Rational(-1) : Rational(1)));
    CHECK(inv == expect);
    CHECK_THROWS_AS(invert_unit(p(1), 8), std::domain_error);
}

TEST_CASE("invert_unit against randomized units") {
    std::mt19937 rng(20240811);
    for (int trial = 0; trial < 40; ++trial) {
        GradedPolynomial a = random_poly(rng, P, 6, 5, 24, /*unit=*/true);
        GradedPolynomial inv = invert_unit(a, 24);
        CHECK(poly_mul(a, inv, 24) == constant(1));
    }
}

TEST_CASE("ring axioms on random polynomials") {
    std::mt19937 rng(777);
    for (int trial = 0; trial < 30; ++trial) {
        GradedPolynomial a = random_poly(rng, P, 4, 4, 24, false);
        GradedPolynomial b = random_poly(rng, P, 4, 4, 24, false);
        GradedPolynomial c = random_poly(rng, P, 4, 4, 24, false);
        CHECK(poly_add(poly_add(a, b), c) == poly_add(a, poly_add(b, c)));
        CHECK(poly_mul(a, b, 24) == poly_mul(b, a, 24));
        CHECK(poly_mul(a, poly_add(b, c), 24) ==
              poly_add(poly_mul(a, b, 24), poly_mul(a, c, 24)));
    }
}

TEST_CASE("homogeneous components decompose the polynomial") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        GradedPolynomial a = random_poly(rng, P, 5, 6, 24, true);
        GradedPolynomial sum(P);
        for (unsigned d = 0; d <= a.degree(); ++d)
            sum = poly_add(sum, homogeneous_component(a, d));
        CHECK(sum == a);
        for (unsigned d = 0; d <= a.degree(); ++d) {
            GradedPolynomial comp = homogeneous_component(a, d);
            if (!comp.is_zero()) CHECK(comp.degree() == d);
        }
    }
}

TEST_CASE("canonical text rendering") {
    GradedPolynomial s = poly_add(constant(1), p(1));
    s = poly_add(s, p(2).scaled(Rational(-1, 6)));
    CHECK(s.str() == "1 + p1 - 1/6*p2");
    GradedPolynomial m = poly_mul(poly_mul(w(1), w(2), 6), w(3), 6);
    CHECK(m.str() == "w1*w2*w3");
    CHECK(GradedPolynomial(P).str() == "0");
}
