// Affine vector fields: brackets, Lie derivatives and tangency to the quadrics.

#include "oracle.hpp"
#include "twistcalc/quadrics.hpp"

#include <doctest.h>

using namespace twistcalc;
using oracle::operator+;
using oracle::operator*;

TEST_CASE("field bracket equals the operator commutator") {
    oracle::Rng rng(31);
    for (int k = 0; k < 100; ++k) {
        AffineField X = rng.field(), Y = rng.field();
        Element x = X.to_element(), y = Y.to_element();
        CHECK(lie_bracket(X, Y).to_element() == x * y - y * x);
        CHECK(AffineField::from_element(x) == X);
    }
}

TEST_CASE("Lie derivative on functions is differentiation along the field") {
    oracle::Rng rng(32);
    for (int k = 0; k < 100; ++k) {
        AffineField X = rng.field();
        oracle::Poly h = rng.poly(4);
        CHECK(oracle::from_element(act(X, oracle::to_element(h))) == oracle::apply_field(X, h));
    }
}

TEST_CASE("Lie derivative is a derivation and a representation of the bracket") {
    oracle::Rng rng(33);
    for (int k = 0; k < 150; ++k) {
        AffineField X = rng.field(), Y = rng.field();
        Element a = Element::word(3, rng.word(true, true, 1), Scalar(rng.gauss()));
        Element b = Element::word(3, rng.word(true, true, 1)) + Element::word(3, rng.word(true, true, 1));
        CHECK(act(X, a * b) == act(X, a) * b + a * act(X, b));
        CHECK(act(X, act(Y, a)) - act(Y, act(X, a)) == act(lie_bracket(X, Y), a));
    }
}

TEST_CASE("Lie derivative commutes with the exterior derivative") {
    oracle::Rng rng(34);
    for (int k = 0; k < 50; ++k) {
        AffineField X = rng.field();
        Element h = oracle::to_element(rng.poly(3));
        CHECK(act(X, exterior_derivative(h)) == exterior_derivative(act(X, h)));
    }
}

TEST_CASE("symmetry generators are tangent and close under brackets") {
    for (auto& id : family_ids()) {
        CAPTURE(id);
        auto fam = build_family(id);
        for (auto& g : fam.gens.gens) {
            CAPTURE(g.name);
            CHECK(oracle::apply_field(g.field, oracle::from_element(fam.f)).empty());
            CHECK(tangency_check(g.field, fam.f));
        }
        CHECK(fam.gens.antisymmetric());
        CHECK(fam.gens.jacobi());
    }
}

TEST_CASE("bracket table of the generic generators L_ij") {
    auto fam = build_family("b");
    CHECK(bracket_table_check(fam.f).ok());
    CHECK(dependence_relation_check(fam.f));
}

TEST_CASE("exact linear algebra over Q(i)") {
    Matrix m = {{GaussRat(2), GaussRat(1), GaussRat(0)},
                {GaussRat(0), GaussRat::I(), GaussRat(1)},
                {GaussRat(1), GaussRat(0), GaussRat(3)}};
    auto inv = inverse(m);
    REQUIRE(inv);
    CHECK(matmul(m, *inv) == identity_matrix(3));
    Matrix singular = {{GaussRat(1), GaussRat(2)}, {GaussRat(2), GaussRat(4)}};
    CHECK_FALSE(inverse(singular));
    CHECK(rank(singular) == 1);
    auto x = solve(m, {GaussRat(1), GaussRat(2), GaussRat(3)});
    REQUIRE(x);
    for (int i = 0; i < 3; ++i) {
        GaussRat s;
        for (int j = 0; j < 3; ++j) s += m[i][j] * (*x)[j];
        CHECK(s == GaussRat(i + 1));
    }
}
