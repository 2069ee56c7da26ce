// Gaussian rationals and the nu/q coefficient ring.

#include "oracle.hpp"

#include <doctest.h>

using namespace twistcalc;
using oracle::operator+;
using oracle::operator*;

TEST_CASE("rationals parse and print canonically") {
    CHECK(parse_rational("6/4") == Rational(3, 2));
    CHECK(parse_rational("-7") == Rational(-7));
    CHECK(to_string(parse_rational("-3/6")) == "-1/2");
    CHECK_THROWS(parse_rational("1/0"));
    CHECK_THROWS(parse_rational("x"));
}

TEST_CASE("Gaussian rationals form a field") {
    oracle::Rng rng(11);
    for (int k = 0; k < 300; ++k) {
        GaussRat a = rng.gauss(), b = rng.gauss(), c = rng.gauss();
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        CHECK((a * b).conj() == a.conj() * b.conj());
        if (!a.is_zero()) CHECK(a * a.inverse() == GaussRat(1));
    }
    CHECK(GaussRat::I() * GaussRat::I() == GaussRat(-1));
    CHECK_THROWS(GaussRat(0).inverse());
}

TEST_CASE("scalar ring: q is a unit and i nu squares to -nu^2") {
    CHECK(Scalar::q(3) * Scalar::q(-3) == Scalar(1));
    CHECK(Scalar::q(2).inverse() == Scalar::q(-2));
    CHECK(Scalar::inu() * Scalar::inu() == Scalar::monomial(GaussRat(-1), 2, 0));
    CHECK_FALSE((Scalar(1) + Scalar::nu()).is_unit());
    CHECK_THROWS(Scalar::nu().inverse());
}

TEST_CASE("scalar ring axioms and conjugation on random elements") {
    oracle::Rng rng(12);
    auto random_scalar = [&] {
        Scalar s;
        for (int t = 0; t < 3; ++t) s.add_term({rng.uniform(0, 2), rng.uniform(-2, 2)}, rng.gauss());
        return s;
    };
    for (int k = 0; k < 200; ++k) {
        Scalar a = random_scalar(), b = random_scalar(), c = random_scalar();
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        CHECK(a - a == Scalar());
        CHECK(conj(a * b) == conj(a) * conj(b));
        CHECK(conj(conj(a)) == a);
    }
    // nu is real and q = exp(i nu) is unimodular
    CHECK(conj(Scalar::nu()) == Scalar::nu());
    CHECK(conj(Scalar::q()) == Scalar::q(-1));
}

TEST_CASE("classical evaluation sets nu = 0 and q = 1") {
    Scalar s = Scalar(2) + Scalar::q(3) * Scalar(GaussRat(Rational(1, 2))) + Scalar::inu();
    CHECK(s.eval_classical() == GaussRat(Rational(5, 2)));
    CHECK(s.truncate_nu(0) == Scalar(2) + Scalar::q(3) * Scalar(GaussRat(Rational(1, 2))));
    CHECK(s.max_nu() == 1);
}
