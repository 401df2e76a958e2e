#include <doctest.h>

#include "kocalc/genus.hpp"

using namespace kocalc;

namespace {

const GeneratorScheme P = GeneratorScheme::pontrjagin();

GradedPolynomial p(unsigned i, unsigned e = 1) {
    return GradedPolynomial::generator(P, 0, i, e);
}
GradedPolynomial c(const Rational& r) { return GradedPolynomial(P, r); }

// independent elementary symmetric polynomial in y_1..y_m (root squares)
GradedPolynomial elementary_y(const GeneratorScheme& y, unsigned k, unsigned m) {
    GradedPolynomial acc(y);
    std::vector<unsigned> idx(k);
    for (unsigned i = 0; i < k; ++i) idx[i] = i + 1;
    while (true) {
        std::vector<GeneratorPower> powers;
        for (unsigned i : idx) powers.push_back({0, i, 1});
        acc.add_term(Monomial(powers, y), Rational(1));
        int pos = int(k) - 1;
        while (pos >= 0 && idx[pos] == m - (k - 1 - pos)) --pos;
        if (pos < 0) break;
        ++idx[pos];
        for (unsigned i = unsigned(pos) + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
    return acc;
}

// cosh of a polynomial with zero constant term
GradedPolynomial cosh_poly(const GradedPolynomial& a, unsigned max_degree) {
    GradedPolynomial acc(a.scheme(), Rational(1));
    GradedPolynomial sq = poly_mul(a, a, max_degree);
    GradedPolynomial power(a.scheme(), Rational(1));
    Rational inv(1);
    for (unsigned k = 1; 2 * k <= max_degree; ++k) {
        power = poly_mul(power, sq, max_degree);
        if (power.is_zero()) break;
        inv /= Rational((2 * k) * (2 * k - 1));
        acc = acc + power.scaled(inv);
    }
    return acc;
}

}  // namespace

TEST_CASE("newton identities: power sums from elementary") {
    auto s = newton_convert(NewtonDirection::PowerSumsFromElementary, 3, P);
    CHECK(s[0] == p(1));
    CHECK(s[1] == p(1, 2) - p(2).scaled(Rational(2)));
    GradedPolynomial s3 = p(1, 3) - poly_mul(p(1), p(2), 12).scaled(Rational(3)) +
                          p(3).scaled(Rational(3));
    CHECK(s[2] == s3);
}

TEST_CASE("newton round trip is the identity for n <= 8") {
    auto s = newton_convert(NewtonDirection::PowerSumsFromElementary, 8, P);
    auto e = newton_convert(NewtonDirection::ElementaryFromPowerSums, 8, P);
    std::map<std::pair<uint8_t, unsigned>, GradedPolynomial> images;
    for (unsigned i = 1; i <= 8; ++i) images[{0, i}] = s[i - 1];
    for (unsigned k = 1; k <= 8; ++k)
        CHECK(substitute(e[k - 1], P, images, 32) == p(k));
}

TEST_CASE("A-hat multiplicative sequence through degree 8") {
    GenusExpansion K = multiplicative_sequence(a_hat_series(2), 2);
    CHECK(K.K[0] == c(Rational(1)));
    CHECK(K.K[1] == p(1).scaled(Rational(-1, 24)));
    CHECK(K.K[2] == p(2).scaled(Rational(-4, 5760)) + p(1, 2).scaled(Rational(7, 5760)));
}

TEST_CASE("trivial characteristic series gives the trivial sequence") {
    PowerSeries1D one;
    one.coefficients = {Rational(1)};
    GenusExpansion K = multiplicative_sequence(one, 4);
    for (unsigned j = 1; j <= 4; ++j) CHECK(K.K[j].is_zero());
    PowerSeries1D bad;
    bad.coefficients = {Rational(2)};
    CHECK_THROWS_AS(multiplicative_sequence(bad, 2), std::invalid_argument);
}

TEST_CASE("K_3 of A-hat against the direct 3-root expansion") {
    // oracle: expand Q(y_1)Q(y_2)Q(y_3) directly and compare with
    // K_j(e_1(y), e_2(y), e_3(y))
    const unsigned m = 3, deg = 12;
    GeneratorScheme y = GeneratorScheme::root_squares();
    PowerSeries1D Q = a_hat_series(3);
    GradedPolynomial prod(y, Rational(1));
    for (unsigned j = 1; j <= m; ++j) {
        GradedPolynomial qy(y);
        for (unsigned k = 0; 4 * k <= deg; ++k) {
            if (k == 0)
                qy.add_term(Monomial{}, Q.at(0));
            else
                qy.add_term(Monomial({{0, j, k}}, y), Q.at(k));
        }
        prod = poly_mul(prod, qy, deg);
    }
    GenusExpansion K = multiplicative_sequence(Q, 3);
    std::map<std::pair<uint8_t, unsigned>, GradedPolynomial> images;
    for (unsigned k = 1; k <= 3; ++k) images[{0, k}] = elementary_y(y, k, m);
    GradedPolynomial total(y);
    for (unsigned j = 0; j <= 3; ++j)
        total = total + substitute(K.K[j], y, images, deg);
    CHECK(total == prod);
}

TEST_CASE("Pontrjagin character matches the printed expansions") {
    GradedPolynomial ph8 = pontrjagin_character(8, Rational(5));
    GradedPolynomial expect8 =
        c(Rational(5)) + p(1) + (p(1, 2) - p(2).scaled(Rational(2))).scaled(Rational(1, 12));
    CHECK(ph8 == expect8);

    GradedPolynomial ph12 = pontrjagin_character(12, Rational(0));
    GradedPolynomial deg12 = homogeneous_component(ph12, 12);
    GradedPolynomial expect12 = (p(1, 3) - poly_mul(p(1), p(2), 12).scaled(Rational(3)) +
                                 p(3).scaled(Rational(3)))
                                    .scaled(Rational(1, 360));
    CHECK(deg12 == expect12);

    CHECK(pontrjagin_character(0, Rational(7)) == c(Rational(7)));
}

TEST_CASE("degree-4k component of Ph is (2/(2k)!) s_k for k <= 6") {
    GradedPolynomial ph = pontrjagin_character(24, Rational(3));
    auto s = newton_convert(NewtonDirection::PowerSumsFromElementary, 6, P);
    for (unsigned k = 1; k <= 6; ++k)
        CHECK(homogeneous_component(ph, 4 * k) ==
              s[k - 1].scaled(Rational(2, factorial(2 * k))));
}

TEST_CASE("a_hat expansion and unit inverse") {
    GradedPolynomial a = a_hat(8);
    GradedPolynomial expect = c(Rational(1)) + p(1).scaled(Rational(-1, 24)) +
                              p(2).scaled(Rational(-4, 5760)) +
                              p(1, 2).scaled(Rational(7, 5760));
    CHECK(a == expect);
    CHECK(a_hat(0) == c(Rational(1)));

    // frozen inverse through degree 8, checked by multiplying back
    GradedPolynomial inv = invert_unit(a_hat(8), 8);
    GradedPolynomial frozen = c(Rational(1)) + p(1).scaled(Rational(1, 24)) +
                              p(1, 2).scaled(Rational(1, 1920)) +
                              p(2).scaled(Rational(1, 1440));
    CHECK(inv == frozen);
    CHECK(poly_mul(inv, a_hat(8), 8) == c(Rational(1)));

    GradedPolynomial a24 = a_hat(24);
    CHECK(poly_mul(invert_unit(a24, 24), a24, 24) == c(Rational(1)));
}

TEST_CASE("evaluate_genus on the quaternionic projective plane model") {
    GeneratorScheme x_scheme{{{"x", 0, 4}}, CoeffField::Rationals};
    GradedPolynomial x = GradedPolynomial::generator(x_scheme, 0, 1);
    GradedPolynomial total_p = GradedPolynomial(x_scheme, Rational(1)) +
                               x.scaled(Rational(2)) +
                               GradedPolynomial::generator(x_scheme, 0, 1, 2)
                                   .scaled(Rational(7));
    std::map<Monomial, Rational> pairing{
        {Monomial({{0, 1, 2}}, x_scheme), Rational(1)}};

    CHECK(evaluate_genus(a_hat(8), total_p, 8, pairing) == Rational(0));

    // (p_2 - (p_1/2)^2)/48 evaluates to 1/8
    GradedPolynomial cls =
        (p(2) - p(1, 2).scaled(Rational(1, 4))).scaled(Rational(1, 48));
    CHECK(evaluate_genus(cls, total_p, 8, pairing) == Rational(1, 8));

    // spheres have trivial Pontrjagin classes
    GeneratorScheme s_scheme{{{"s", 0, 8}}, CoeffField::Rationals};
    GradedPolynomial trivial(s_scheme, Rational(1));
    std::map<Monomial, Rational> sphere_pairing{
        {Monomial({{0, 1, 1}}, s_scheme), Rational(1)}};
    CHECK(evaluate_genus(a_hat(8), trivial, 8, sphere_pairing) == Rational(0));

    // a missing pairing entry is an error
    GradedPolynomial needs_pairing = p(2);
    std::map<Monomial, Rational> empty_pairing;
    CHECK_THROWS_AS(evaluate_genus(needs_pairing, total_p, 8, empty_pairing),
                    std::invalid_argument);
}

TEST_CASE("Thom/genus identity") {
    CHECK(verify_thom_genus_identity(1, 0));
    CHECK(verify_thom_genus_identity(2, 8));
    CHECK(verify_thom_genus_identity(4, 16));
    CHECK_THROWS_AS(verify_thom_genus_identity(0, 8), std::invalid_argument);
    // stability guard: too few root pairs for the requested degree
    CHECK_THROWS_AS(roots_to_pontrjagin(GradedPolynomial(GeneratorScheme::chern_roots()),
                                        1, 16),
                    std::invalid_argument);
}

TEST_CASE("A-hat is multiplicative for Whitney sums") {
    // two independent families of Pontrjagin classes, each of degree 4i
    GeneratorScheme ab{{{"a", 4, 0}, {"b", 4, 0}}, CoeffField::Rationals};
    const unsigned deg = 16;
    GradedPolynomial k_total = a_hat(deg);

    auto subst_family = [&](uint8_t family) {
        std::map<std::pair<uint8_t, unsigned>, GradedPolynomial> images;
        for (unsigned j = 1; 4 * j <= deg; ++j)
            images[{0, j}] = GradedPolynomial::generator(ab, family, j);
        return substitute(k_total, ab, images, deg);
    };
    GradedPolynomial k_a = subst_family(0);
    GradedPolynomial k_b = subst_family(1);

    // p_j(E + F) = sum_{u+v=j} a_u b_v with a_0 = b_0 = 1
    std::map<std::pair<uint8_t, unsigned>, GradedPolynomial> whitney;
    for (unsigned j = 1; 4 * j <= deg; ++j) {
        GradedPolynomial sum(ab);
        for (unsigned u = 0; u <= j; ++u) {
            unsigned v = j - u;
            GradedPolynomial term(ab, Rational(1));
            if (u > 0) term = poly_mul(term, GradedPolynomial::generator(ab, 0, u), deg);
            if (v > 0) term = poly_mul(term, GradedPolynomial::generator(ab, 1, v), deg);
            sum = sum + term;
        }
        whitney[{0, j}] = sum;
    }
    GradedPolynomial k_sum = substitute(k_total, ab, whitney, deg);
    CHECK(k_sum == poly_mul(k_a, k_b, deg));
}

TEST_CASE("Ph is additive and multiplicative in the Chern-root model") {
    // E with roots x_1, x_2 and E' with roots x_3; degree <= 12
    GeneratorScheme roots = GeneratorScheme::chern_roots();
    const unsigned deg = 12;
    auto x = [&](unsigned i) { return GradedPolynomial::generator(roots, 0, i); };
    auto ph_of = [&](const std::vector<GradedPolynomial>& rs) {
        GradedPolynomial acc(roots);
        for (const auto& r : rs) acc = acc + cosh_poly(r, deg).scaled(Rational(2));
        return acc;
    };

    GradedPolynomial ph_e = ph_of({x(1), x(2)});
    GradedPolynomial ph_f = ph_of({x(3)});

    // additivity: disjoint union of roots
    CHECK(ph_of({x(1), x(2), x(3)}) == ph_e + ph_f);

    // multiplicativity: roots of the tensor product are x_i +- x_j
    GradedPolynomial ph_tensor =
        ph_of({x(1) + x(3), x(1) - x(3), x(2) + x(3), x(2) - x(3)});
    CHECK(ph_tensor == poly_mul(ph_e, ph_f, deg));
}
