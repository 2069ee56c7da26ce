// Quadric families: ideal reduction, centrality and ranks of the quotient.

#include "oracle.hpp"
#include "twistcalc/quadrics.hpp"

#include <doctest.h>

using namespace twistcalc;
using oracle::operator+;
using oracle::operator*;

TEST_CASE("catalog builds every family and its twists") {
    for (auto& id : family_ids()) {
        auto fam = build_family(id);
        CHECK_FALSE(fam.twist_ids().empty());
        for (auto& tid : fam.twist_ids()) CHECK_NOTHROW(build_twist(fam, tid));
        CHECK(self_checks(fam).ok());
    }
    CHECK(build_family("f").params.at("c") == 1);
    CHECK(build_family("g").params.at("c") == -1);
    CHECK(build_family("h").params.at("c") == 0);
    CHECK_THROWS_AS(build_family("z"), CatalogError);
}

TEST_CASE("chart maps are mutually inverse") {
    oracle::Rng rng(51);
    for (auto& id : {"d", "fgh"}) {
        auto fam = build_family(id);
        CHECK(to_chart(fam, fam.f_x) == fam.f);
        for (int k = 0; k < 30; ++k) {
            Element a = Element::word(3, rng.word(true, true, 1));
            CHECK(from_chart(fam, to_chart(fam, a)) == a);
        }
    }
}

TEST_CASE("reduction modulo the quadric") {
    oracle::Rng rng(52);
    for (auto& id : {"a", "b", "d", "fgh"}) {
        auto fam = build_family(id);
        for (int k = 0; k < 40; ++k) {
            Element h = oracle::to_element(rng.poly(4));
            Element g = oracle::to_element(rng.poly(2, 2));
            Element r = reduce_mod_ideal(fam, h);
            CHECK(reduce_mod_ideal(fam, r) == r);
            CHECK(reduce_mod_ideal(fam, h + fam.f * g) == r);
            CHECK(reduce_mod_ideal(fam, fam.f * g).is_zero());
        }
    }
}

TEST_CASE("f is central for tangent twists and not for the control") {
    for (auto& id : family_ids()) {
        auto fam = build_family(id);
        for (auto& tid : fam.twist_ids()) {
            CAPTURE(tid);
            Twist T = build_twist(fam, tid);
            for (int i = 0; i < 3; ++i) {
                CHECK(star_commutator(T, fam.f, Element::x(3, i)).is_zero());
                CHECK(star_commutator(T, fam.f, Element::xi(3, i)).is_zero());
            }
        }
    }
    auto a = build_family("a");
    Twist control = centrality_control_twist(a);
    bool broken = false;
    for (int i = 0; i < 3; ++i) broken = broken || !star_commutator(control, a.f, Element::x(3, i)).is_zero();
    CHECK(broken);
}

TEST_CASE("ranks of star monomials modulo the quadric are the classical dimensions") {
    for (auto& id : {"b", "d"}) {
        auto fam = build_family(id);
        for (auto& tid : fam.twist_ids()) {
            CAPTURE(tid);
            Twist T = build_twist(fam, tid);
            for (int q = 0; q <= 3; ++q) {
                std::vector<Element> rows;
                for (auto& m : star_monomials(T, 3, q)) rows.push_back(reduce_mod_ideal(fam, m));
                CHECK(scalar_rank(rows) == binomial(q + 3, 3) - binomial(q + 1, 3));
            }
        }
    }
}

TEST_CASE("golden tables reproduce the printed values or their documented corrections") {
    for (auto& id : {"a", "b", "c"}) {
        auto fam = build_family(id);
        for (auto& tid : fam.twist_ids()) {
            Report r = verify_family_tables(fam, tid);
            CHECK(r.ok());
            CHECK(r.summary().pass > 0);
        }
    }
}
