#include <doctest.h>

#include "kocalc/presentation.hpp"

using namespace kocalc;

TEST_CASE("built-in presentations pass validation and round-trip as JSON") {
    for (const auto& name : builtin::names()) {
        CohomologyPresentation p = builtin::by_name(name);
        CHECK_NOTHROW(p.validate());
        CohomologyPresentation q = load_presentation(presentation_to_json(p));
        CHECK(q.name == p.name);
        CHECK(q.mod2_basis == p.mod2_basis);
        for (const auto& [d, deg] : p.integral) {
            REQUIRE(q.integral.count(d) == 1);
            CHECK(q.integral.at(d).group == deg.group);
        }
        CHECK(q.cup2.size() == p.cup2.size());
        CHECK(q.sq.size() == p.sq.size());
    }
}

TEST_CASE("load_presentation checks the schema and the invariants") {
    CHECK_THROWS_AS(load_presentation("{}"), std::invalid_argument);
    CHECK_THROWS_AS(load_presentation(R"({"schema_version": 2})"), std::invalid_argument);

    // S8 document loads with Z in degrees 0 and 8 only
    CohomologyPresentation s8 =
        load_presentation(presentation_to_json(builtin::sphere(8)));
    CHECK(s8.integral.size() == 2);
    CHECK(s8.betti(0) == 1);
    CHECK(s8.betti(8) == 1);
    CHECK(s8.integral_group(8)->free_rank() == 1);

    // RP4 document: F_2[a]/(a^5) with Cartan squares
    CohomologyPresentation rp4 =
        load_presentation(presentation_to_json(builtin::real_projective(4)));
    for (unsigned d = 0; d <= 4; ++d) CHECK(rp4.mod2_dim(d) == 1);
    CHECK(rp4.integral_group(2)->torsion() == std::vector<Int>{2});

    // malformed action data: Sq^1 Sq^1 != 0
    std::string bad = R"({
      "schema_version": 1,
      "name": "bad",
      "dimension": 3,
      "integral": {"0": {"free": 1, "torsion": []}},
      "mod2": {"1": ["a"], "2": ["b"], "3": ["c"]},
      "sq": [
        {"i": 1, "d": 1, "matrix": [[1]]},
        {"i": 1, "d": 2, "matrix": [[1]]}
      ]
    })";
    bool threw = false;
    try {
        load_presentation(bad);
    } catch (const std::invalid_argument& e) {
        threw = true;
        CHECK(std::string(e.what()).find("Sq^1 Sq^1 != 0") != std::string::npos);
    }
    CHECK(threw);
}

TEST_CASE("u1_cohomology via the splitting") {
    CohomologyPresentation s8 = builtin::sphere(8);
    GroupDescriptor top = u1_cohomology(s8, 8);
    CHECK(top.circles == 1);
    CHECK(top.torsion.empty());

    CohomologyPresentation rp4 = builtin::real_projective(4);
    GroupDescriptor g1 = u1_cohomology(rp4, 1);
    CHECK(g1.circles == 0);
    CHECK(g1.torsion == std::vector<Int>{2});

    CohomologyPresentation pt = builtin::point();
    for (unsigned k = 1; k <= 4; ++k) CHECK(u1_cohomology(pt, k).is_zero());

    // torsion-free spaces give pure tori of rank b_k
    CohomologyPresentation cp2 = builtin::complex_projective(2);
    for (unsigned k = 0; k <= 4; k += 2) {
        GroupDescriptor g = u1_cohomology(cp2, k);
        CHECK(g.circles == cp2.betti(k));
        CHECK(g.torsion.empty());
    }
}

TEST_CASE("kunneth products of torsion-free spaces") {
    CohomologyPresentation s4s8 =
        kunneth_product(builtin::sphere(4), builtin::sphere(8));
    CHECK(s4s8.betti(0) == 1);
    CHECK(s4s8.betti(4) == 1);
    CHECK(s4s8.betti(8) == 1);
    CHECK(s4s8.betti(12) == 1);
    CHECK(s4s8.betti(2) == 0);
    CHECK_NOTHROW(s4s8.validate());

    CohomologyPresentation t2 = kunneth_product(builtin::sphere(1), builtin::sphere(1));
    CHECK(t2.betti(0) == 1);
    CHECK(t2.betti(1) == 2);
    CHECK(t2.betti(2) == 1);

    CHECK_THROWS_AS(kunneth_product(builtin::real_projective(2), builtin::sphere(1)),
                    UnsupportedOperation);
}

TEST_CASE("kunneth is commutative up to relabeling") {
    CohomologyPresentation a = kunneth_product(builtin::sphere(2), builtin::sphere(4));
    CohomologyPresentation b = kunneth_product(builtin::sphere(4), builtin::sphere(2));
    for (unsigned d = 0; d <= 6; ++d) {
        CHECK(a.betti(d) == b.betti(d));
        CHECK(a.mod2_dim(d) == b.mod2_dim(d));
    }
}

TEST_CASE("kunneth Sq is Cartan-extended") {
    // on S4 x S8 all positive squares vanish except Sq^0
    CohomologyPresentation p = kunneth_product(builtin::sphere(4), builtin::sphere(8));
    for (const auto& [key, m] : p.sq) {
        for (size_t r = 0; r < m.rows(); ++r)
            for (size_t c = 0; c < m.cols(); ++c)
                if (key.first > 0) CHECK(m.at(r, c) == 0);
    }
    // on S1 x S1 the only possible square Sq^1 vanishes on the torus classes
    CohomologyPresentation t2 = kunneth_product(builtin::sphere(1), builtin::sphere(1));
    auto it = t2.sq.find({1u, 1u});
    REQUIRE(it != t2.sq.end());
    for (size_t r = 0; r < it->second.rows(); ++r)
        for (size_t c = 0; c < it->second.cols(); ++c) CHECK(it->second.at(r, c) == 0);
}

TEST_CASE("partial cup tables are unsupported rather than zero") {
    CohomologyPresentation p = builtin::sphere(4);
    p.cup2.clear();
    Mod2Class top = p.zero_mod2(4);
    top.coords[0] = 1;
    CHECK_THROWS_AS(p.cup(top, top), UnsupportedOperation);
}
