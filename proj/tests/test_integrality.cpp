#include <doctest.h>

#include <random>

#include "kocalc/genus.hpp"
#include "kocalc/integrality.hpp"

using namespace kocalc;

namespace {

// the twelve odd parts of the denominator table, k = 1..12
const char* kOddParts[12] = {"1", "1",     "1",     "3",       "3",       "3*5",
                             "3^2*5", "3^2*5*7", "3^2*5*7", "3^3*5*7", "3^3*5^2*7",
                             "3^3*5^2*7*11"};

CohomologyPresentation admissible_space() {
    CohomologyPresentation p;
    p.name = "synthAdmissible";
    p.dimension = 16;
    IntegralDegree h0;
    h0.group.orders = {0};
    h0.group.labels = {"1"};
    p.integral[0] = h0;
    IntegralDegree h8;
    h8.group.orders = {9};
    h8.group.labels = {"t"};
    p.integral[8] = h8;
    p.mod2_basis[0] = {"1"};
    F2Mat id(1, 1);
    id.at(0, 0) = 1;
    p.rho2[0] = id;
    OddPrimaryData od;
    od.p = 3;
    od.basis[8] = {"t3"};
    od.basis[16] = {"z"};
    IntMat one(1, 1);
    one.at(0, 0) = 1;
    od.rho[8] = one;
    od.power_ops[{2, 8}] = one;
    od.bockstein[16] = IntMat(0, 1);
    p.odd_primary.push_back(od);
    p.validate();
    return p;
}

}  // namespace

TEST_CASE("phi is the greatest integer strictly below x") {
    CHECK(phi(Rational(6)) == 5);
    CHECK(phi(Rational(12, 5)) == 2);
    CHECK(phi(Rational(7, 5)) == 1);
    CHECK(phi(Rational(1)) == 0);
    CHECK(phi(Rational(1, 2)) == 0);
    CHECK_THROWS_AS(phi(Rational(0)), std::domain_error);
    CHECK_THROWS_AS(phi(Rational(-3)), std::domain_error);
}

TEST_CASE("denominator table k = 1..12") {
    for (unsigned k = 1; k <= 12; ++k) {
        DenominatorReport rep = ph_denominator(k);
        INFO("k = ", k);
        CHECK(rep.odd_part_factored() == kOddParts[k - 1]);
    }
    CHECK(ph_denominator(1).odd_part == 1);
    CHECK(ph_denominator(6).odd_part == 15);
    CHECK(ph_denominator(12).odd_part == Int(27) * 25 * 7 * 11);
    // primes above k contribute exponent zero
    for (const auto& [p, e] : ph_denominator(7).prime_exponents)
        if (p > 7) CHECK(e == 0);
}

TEST_CASE("prime exponents are nondecreasing in k") {
    for (unsigned p : {2u, 3u, 5u, 7u, 11u}) {
        Int prev = 0;
        for (unsigned k = p; k <= 40; ++k) {
            Int e = phi(Rational(k, p));
            CHECK(e >= prev);
            prev = e;
        }
    }
}

TEST_CASE("the denominator bound is realized inside the Ph coefficients") {
    // the odd part of the bound divides the odd part of the least common
    // denominator of the degree-4k component
    GradedPolynomial ph = pontrjagin_character(24, Rational(0));
    for (unsigned k = 1; k <= 6; ++k) {
        Int lcd = 1;
        GradedPolynomial comp = homogeneous_component(ph, 4 * k);
        for (const auto& [m, c] : comp.terms()) {
            Int d = c.denominator();
            Int g = boost::multiprecision::gcd(lcd, d);
            lcd = lcd / g * d;
        }
        Int odd_lcd = lcd;
        while (odd_lcd % 2 == 0) odd_lcd /= 2;
        INFO("k = ", k);
        CHECK(odd_lcd % ph_denominator(k).odd_part == 0);
    }
}

TEST_CASE("d4k survival witnesses") {
    FormSlot slot;
    slot.periods[8] = {Rational(3), Rational(7)};
    CHECK(d4k_survival(slot, 2).survives);  // integral periods in degree 8

    FormSlot odd;
    odd.periods[4] = {Rational(1)};
    SurvivalWitness w = d4k_survival(odd, 1);
    CHECK(!w.survives);
    REQUIRE(w.value.size() == 1);
    CHECK(w.value[0] == Rational(1, 2));  // the witness

    FormSlot even;
    even.periods[4] = {Rational(2)};
    CHECK(d4k_survival(even, 1).survives);

    // with a known incoming image the quotient is taken seriously
    FormSlot third;
    third.periods[8] = {Rational(1, 3)};
    CHECK(!d4k_survival(third, 2).survives);  // conservative mode
    std::vector<std::vector<Rational>> image{{Rational(1, 3)}};
    CHECK(d4k_survival(third, 2, image).survives);
}

TEST_CASE("d4k survival is invariant under the allowed period shifts") {
    std::mt19937 rng(2026);
    std::uniform_int_distribution<long long> num(-8, 8);
    std::uniform_int_distribution<long long> den(1, 6);
    for (int trial = 0; trial < 40; ++trial) {
        FormSlot a;
        a.periods[8] = {Rational(num(rng), den(rng)), Rational(num(rng), den(rng))};
        a.periods[4] = {Rational(num(rng), den(rng))};
        FormSlot b = a;
        // integral shifts in degree 8k, even shifts in degree 8k+4
        b.periods[8][0] += Rational(num(rng));
        b.periods[8][1] += Rational(num(rng));
        b.periods[4][0] += Rational(2 * num(rng));
        CHECK(d4k_survival(a, 2).survives == d4k_survival(b, 2).survives);
        CHECK(d4k_survival(a, 1).survives == d4k_survival(b, 1).survives);
    }
}

TEST_CASE("degree-8 criterion") {
    Degree8Verdict s8 = degree8_criterion(builtin::sphere(8));
    CHECK(s8.applicable);

    Degree8Verdict rp4 = degree8_criterion(builtin::real_projective(4));
    CHECK(!rp4.applicable);
    CHECK(rp4.statement.find("H^1") != std::string::npos);

    // simply-connected synthetic with 2-divisible H^4 torsion
    CohomologyPresentation p;
    p.name = "synthDeg8";
    p.dimension = 8;
    IntegralDegree h0;
    h0.group.orders = {0};
    p.integral[0] = h0;
    IntegralDegree h4;
    h4.group.orders = {4};
    h4.divisibility = {2};
    p.integral[4] = h4;
    p.validate();
    CHECK(degree8_criterion(p).applicable);

    // without the divisibility annotation the hypothesis fails
    p.integral[4].divisibility = {1};
    Degree8Verdict v = degree8_criterion(p);
    CHECK(!v.applicable);
    CHECK(v.statement.find("H^4") != std::string::npos);
}

TEST_CASE("admissible pairs") {
    // spheres carry no torsion: every candidate is not admissible
    AdmissibleReport sphere_rep = admissible_pairs(16, 3, builtin::sphere(8));
    CHECK(sphere_rep.admissible_count == 0);
    for (const auto& pair : sphere_rep.pairs)
        CHECK(pair.status == AdmissiblePair::Status::NotAdmissible);

    // ell = 16, p = 3 enumerates the candidate (r,k) = (1,2)
    bool found = false;
    for (const auto& pair : sphere_rep.pairs)
        if (pair.r == 1 && pair.k == 2) found = true;
    CHECK(found);

    // engineered admissible pair: s = 1, denominator 3
    AdmissibleReport rep = admissible_pairs(16, 3, admissible_space());
    CHECK(rep.admissible_count == 1);
    CHECK(rep.denominator == 3);
    CHECK(!rep.has_undetermined);

    // without power-operation data the pair is undetermined, not admissible
    CohomologyPresentation blind = admissible_space();
    blind.odd_primary.clear();
    AdmissibleReport rep2 = admissible_pairs(16, 3, blind);
    CHECK(rep2.admissible_count == 0);
    CHECK(rep2.has_undetermined);

    // the statement convention enumerates with weight (p-1) instead of 4(p-1)
    AdmissibleReport rep3 =
        admissible_pairs(16, 3, builtin::sphere(8), AdmissibleIndexing::StatementConvention);
    bool has_r2 = false;
    for (const auto& pair : rep3.pairs) has_r2 = has_r2 || pair.r == 2;
    CHECK(has_r2);
}

TEST_CASE("obstruction classes") {
    ObstructionReport rep = obstruction_examples();
    GeneratorScheme P = GeneratorScheme::pontrjagin();

    // Ph_8 at p_1 = 0 is -(1/6) p_2: the p_2 coefficient has denominator 6
    GradedPolynomial expect8 =
        GradedPolynomial::generator(P, 0, 2).scaled(Rational(-1, 6));
    CHECK(rep.ph8_p1_zero == expect8);
    Monomial p2({{0, 2, 1}}, P);
    CHECK(rep.ph8_p1_zero.coefficient(p2).denominator() == 6);

    // (1/2) Ph_12 at p_1 = p_2 = 0 is (1/240) p_3
    GradedPolynomial expect12 =
        GradedPolynomial::generator(P, 0, 3).scaled(Rational(1, 240));
    CHECK(rep.half_ph12_p12_zero == expect12);

    // Ph_4 = p_1, no denominator
    CHECK(rep.ph4 == GradedPolynomial::generator(P, 0, 1));
}
