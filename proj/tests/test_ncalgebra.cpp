// Normal-ordered products in the calculus algebra against a differential-operator model.

#include "oracle.hpp"

#include <doctest.h>

using namespace twistcalc;
using oracle::operator+;
using oracle::operator*;

TEST_CASE("basic commutation relations of the calculus") {
    const int n = 3;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Element xi = Element::x(n, i), dj = Element::d(n, j);
            Element delta = i == j ? Element(n, Scalar(1)) : Element(n);
            CHECK(dj * xi - xi * dj == delta);
            CHECK(Element::xi(n, i) * Element::xi(n, j) == -(Element::xi(n, j) * Element::xi(n, i)));
            CHECK(Element::d(n, j) * Element::xi(n, i) == Element::xi(n, i) * Element::d(n, j));
            CHECK(Element::x(n, j) * Element::xi(n, i) == Element::xi(n, i) * Element::x(n, j));
        }
}

TEST_CASE("products of operator words act as composition on polynomials") {
    oracle::Rng rng(21);
    for (int k = 0; k < 300; ++k) {
        Word a = rng.word(false, true), b = rng.word(false, true);
        oracle::Poly h = rng.poly(4, 4);
        oracle::Poly composed = oracle::apply_word(a, Scalar(1), oracle::apply_word(b, Scalar(1), h));
        oracle::Poly via_product;
        for (auto& t : normal_mul_words(a, b, 3))
            via_product = via_product + oracle::apply_word(t.w, Scalar(static_cast<long>(t.c)), h);
        CHECK(composed == via_product);
    }
}

TEST_CASE("normal-ordered product is associative") {
    oracle::Rng rng(22);
    for (int k = 0; k < 200; ++k) {
        Element a = Element::word(3, rng.word(true, true, 1), Scalar(rng.gauss()));
        Element b = Element::word(3, rng.word(true, true, 1)) + Element::word(3, rng.word(true, true, 1));
        Element c = Element::word(3, rng.word(true, true, 1), Scalar::inu());
        CHECK((a * b) * c == a * (b * c));
    }
}

TEST_CASE("filtered dimensions match a direct count of words") {
    for (int p = 0; p <= 3; ++p)
        for (int q = 0; q <= 3; ++q)
            for (int r = 0; r <= 2; ++r) {
                long long count = 0;
                for (unsigned xi = 0; xi < 8; ++xi) {
                    if (__builtin_popcount(xi) != p) continue;
                    for (int a = 0; a <= q; ++a)
                        for (int b = 0; a + b <= q; ++b)
                            for (int c = 0; a + b + c <= q; ++c)
                                for (int u = 0; u <= r; ++u)
                                    for (int v = 0; u + v <= r; ++v)
                                        for (int w = 0; u + v + w <= r; ++w) ++count;
                }
                CHECK(hilbert_dim(3, {p, q, r}) == count);
            }
}

TEST_CASE("exterior derivative squares to zero and obeys Leibniz") {
    oracle::Rng rng(23);
    for (int k = 0; k < 100; ++k) {
        Element f = oracle::to_element(rng.poly(3)), g = oracle::to_element(rng.poly(3));
        CHECK(exterior_derivative(exterior_derivative(f)).is_zero());
        CHECK(exterior_derivative(f * g) == exterior_derivative(f) * g + f * exterior_derivative(g));
        Element df = exterior_derivative(f);
        Element expect(3);
        for (int i = 0; i < 3; ++i) expect += Element::xi(3, i) * oracle::to_element(oracle::partial(oracle::from_element(f), i));
        CHECK(df == expect);
    }
}

TEST_CASE("classical involution is an antilinear anti-automorphism") {
    oracle::Rng rng(24);
    for (int k = 0; k < 100; ++k) {
        Element a = Element::word(3, rng.word(true, true, 1), Scalar(rng.gauss()));
        Element b = Element::word(3, rng.word(true, true, 1), Scalar(rng.gauss()));
        CHECK(star_involution_classical(a * b) == star_involution_classical(b) * star_involution_classical(a));
        CHECK(star_involution_classical(star_involution_classical(a)) == a);
    }
    CHECK(star_involution_classical(Element::d(3, 0)) == -Element::d(3, 0));
    CHECK(star_involution_classical(Element(3, Scalar::i())) == Element(3, -Scalar::i()));
}

TEST_CASE("rendering uses chart names") {
    Element e = Element::x(3, 0) * Element::d(3, 1) + Element::xi(3, 2);
    CHECK(e.str() == e.str(ChartNames::cartesian()));
    CHECK(e.str(ChartNames::y_chart()).find("dt2") != std::string::npos);
    CHECK(e.str(ChartNames::y_chart()).find("eta3") != std::string::npos);
}
