#include <doctest.h>

#include "kocalc/ko_ring.hpp"

using namespace kocalc;

TEST_CASE("coefficient ring relations") {
    KOElement eta = KOElement::eta();
    KOElement eta2 = ko_mul(eta, eta);
    CHECK(ko_mul(eta, eta2).is_zero());                      // eta^3 = 0
    CHECK(ko_mul(KOElement::alpha(), eta).is_zero());        // eta alpha = 0
    CHECK(ko_mul(KOElement::alpha(), KOElement::alpha()) ==  // alpha^2 = 4 beta
          KOElement::beta().scaled(4));
    CHECK(eta + eta == KOElement{});                         // 2 eta = 0
    CHECK(ko_mul(KOElement::beta(1), KOElement::beta(-1)) == KOElement::unit());
}

TEST_CASE("ko_mul is associative and commutative on basis elements") {
    std::vector<KOElement> basis;
    for (int k = -3; k <= 3; ++k) {
        basis.push_back(KOElement::monomial({0, 0, k}, 1));
        basis.push_back(KOElement::monomial({0, 1, k}, 1));
        basis.push_back(KOElement::monomial({1, 0, k}, 1));
        basis.push_back(KOElement::monomial({2, 0, k}, 1));
    }
    for (size_t i = 0; i < basis.size(); ++i)
        for (size_t j = i; j < basis.size(); ++j) {
            CHECK(ko_mul(basis[i], basis[j]) == ko_mul(basis[j], basis[i]));
            for (size_t k = 0; k < basis.size(); ++k)
                CHECK(ko_mul(ko_mul(basis[i], basis[j]), basis[k]) ==
                      ko_mul(basis[i], ko_mul(basis[j], basis[k])));
        }
}

TEST_CASE("coefficient groups of the point") {
    CHECK(ko_coefficient_group(0).free_rank == 1);
    CHECK(ko_coefficient_group(3).is_zero());
    GroupDescriptor minus10 = ko_coefficient_group(-10);
    REQUIRE(minus10.torsion.size() == 1);
    CHECK(minus10.torsion[0] == 2);
    CHECK(minus10.generators[0] == "eta^2*beta");
    // Bott periodicity
    for (int i = -17; i <= 17; ++i)
        CHECK(ko_coefficient_group(i) == ko_coefficient_group(i + 8));
}

TEST_CASE("flat coefficient groups") {
    GroupDescriptor m1 = flat_coefficient_group(-1);
    CHECK(m1.circles == 1);
    CHECK(m1.torsion.empty());
    GroupDescriptor p3 = flat_coefficient_group(3);
    CHECK(p3.circles == 1);
    REQUIRE(p3.torsion.size() == 1);
    CHECK(p3.torsion[0] == 2);
    CHECK(flat_coefficient_group(0).is_zero());
    CHECK(flat_coefficient_group(4).is_zero());
    // the corollary table, 8-periodic
    for (int i = -16; i <= 16; ++i)
        CHECK(flat_coefficient_group(i) == flat_coefficient_group(i + 8));
}

TEST_CASE("complexification and realification") {
    CHECK(complexify(KOElement::eta()).is_zero());
    CHECK(complexify(KOElement::alpha()) == KElement::u_power(2, 2));
    CHECK(complexify(KOElement::beta()) == KElement::u_power(4));
    // alpha beta -> 2 u^6 multiplicatively
    CHECK(complexify(ko_mul(KOElement::alpha(), KOElement::beta())) ==
          KElement::u_power(6, 2));
    CHECK(complexify(KOElement::unit()) == KElement::u_power(0));

    CHECK(realify(KElement::u_power(4)) == KOElement::beta().scaled(2));
    CHECK(realify(KElement::u_power(3)).is_zero());
    CHECK(realify(KElement::u_power(2)) == KOElement::alpha());
    CHECK(realify(KElement::u_power(1)) == ko_mul(KOElement::eta(), KOElement::eta()));
    CHECK(realify(KElement::u_power(0)) == KOElement::unit().scaled(2));
}

TEST_CASE("Bott identities and the projection formula") {
    CHECK(check_bott_identities(4));
    CHECK(check_projection_formula(3));
    // spot checks from the identities
    CHECK(realify(complexify(KOElement::beta())) == KOElement::beta().scaled(2));
    CHECK(realify(complexify(KOElement::eta())).is_zero());  // 2 eta = 0
    // c(r(u)) = c(eta^2) = 0 = (1 + (-1)) u
    CHECK(complexify(realify(KElement::u_power(1))).is_zero());
}

TEST_CASE("the maps m_O and f_U agree with c and r on the listed generators") {
    // m_O: eta -> 0, alpha -> 2u^2, beta -> u^4 is complexification
    CHECK(complexify(KOElement::eta()).is_zero());
    CHECK(complexify(KOElement::alpha()) == KElement::u_power(2, 2));
    CHECK(complexify(KOElement::beta()) == KElement::u_power(4));
    // f_U: 1 -> 2, u -> eta^2, u^2 -> alpha, u^3 -> 0 is realification
    CHECK(realify(KElement::u_power(0)) == KOElement::unit().scaled(2));
    CHECK(realify(KElement::u_power(1)) == ko_mul(KOElement::eta(), KOElement::eta()));
    CHECK(realify(KElement::u_power(2)) == KOElement::alpha());
    CHECK(realify(KElement::u_power(3)).is_zero());
}

TEST_CASE("Adams operations on coefficients") {
    CHECK(adams_coefficient(2, KOElement::eta()).is_zero());  // 2 eta = 0
    CHECK(adams_coefficient(3, ko_mul(KOElement::alpha(), KOElement::beta())) ==
          ko_mul(KOElement::alpha(), KOElement::beta()).scaled(729));
    CHECK(adams_coefficient(2, KOElement::beta()) == KOElement::beta().scaled(16));
    for (unsigned k = 1; k <= 5; ++k) {
        KOElement x = KOElement::alpha() + KOElement::beta().scaled(3);
        CHECK(adams_coefficient(1, x) == x);
    }
    CHECK_THROWS_AS(adams_coefficient(2, KOElement::beta(-1)), std::domain_error);
}

TEST_CASE("psi^r psi^s = psi^{rs} on generators for r, s <= 5") {
    const KOElement gens[4] = {KOElement::unit(), KOElement::eta(), KOElement::alpha(),
                               KOElement::beta()};
    for (unsigned r = 1; r <= 5; ++r)
        for (unsigned s = 1; s <= 5; ++s)
            for (const auto& g : gens)
                CHECK(adams_coefficient(r, adams_coefficient(s, g)) ==
                      adams_coefficient(r * s, g));
}

TEST_CASE("localized Bott compatibility") {
    CHECK(localized_extension_check(1, 1));
    for (unsigned r = 2; r <= 4; ++r)
        for (unsigned k = 1; k <= 3; ++k) CHECK(localized_extension_check(r, k));
}

TEST_CASE("form shadow of the Adams operations rescales alpha powers") {
    CHECK(adams_form_scaling(2, 1) == Rational(1, 4));
    CHECK(adams_form_scaling(3, 2) == Rational(1, 81));
    CHECK(adams_form_scaling(2, -1) == Rational(4));
    CHECK(adams_form_scaling(5, 0) == Rational(1));
    // multiplicative in the alpha power
    for (unsigned r = 2; r <= 4; ++r)
        for (int j = -2; j <= 2; ++j)
            CHECK(adams_form_scaling(r, j) * adams_form_scaling(r, 1) ==
                  adams_form_scaling(r, j + 1));
}

TEST_CASE("spectrum-level homotopy table") {
    auto t = spectrum_level_table();
    auto Z = [] {
        GroupDescriptor g;
        g.free_rank = 1;
        return g;
    }();
    auto Z2 = [] {
        GroupDescriptor g;
        g.torsion = {2};
        return g;
    }();
    GroupDescriptor zero;
    // column order: O, BO, Sp, BSp, O/U, Sp/U, U/SO, U/Sp
    const GroupDescriptor* expected[8][8] = {
        {&Z2, &Z, &zero, &Z, &Z2, &zero, &zero, &zero},    // n = 0
        {&Z2, &Z2, &zero, &zero, &zero, &zero, &Z, &Z},    // n = 1
        {&zero, &Z2, &zero, &zero, &Z, &Z, &Z2, &zero},    // n = 2
        {&Z, &zero, &Z, &zero, &zero, &Z2, &Z2, &zero},    // n = 3
        {&zero, &Z, &Z2, &Z, &zero, &Z2, &zero, &zero},    // n = 4
        {&zero, &zero, &Z2, &Z2, &zero, &zero, &Z, &Z},    // n = 5
        {&zero, &zero, &zero, &Z2, &Z, &Z, &zero, &Z2},    // n = 6
        {&Z, &zero, &Z, &zero, &Z2, &zero, &zero, &Z2},    // n = 7
    };
    for (int n = 0; n < 8; ++n)
        for (int c = 0; c < 8; ++c) {
            INFO("n = ", n, ", column ", spectrum_level_names[c]);
            CHECK(t[n][c] == *expected[n][c]);
        }
}
