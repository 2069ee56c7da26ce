// Star products against series oracles built from the field action alone.

#include "oracle.hpp"
#include "twistcalc/quadrics.hpp"

#include <doctest.h>

using namespace twistcalc;
using oracle::operator+;
using oracle::operator*;

namespace {

Scalar inu_pow(int k, const Rational& scale) {
    Scalar r(1);
    for (int j = 0; j < k; ++j) r = r * Scalar::monomial(GaussRat(Rational(0), scale), 1, 0);
    return r;
}

Rational factorial(int k) {
    Rational f = 1;
    for (int j = 2; j <= k; ++j) f *= j;
    return f;
}

// sum_k (-s)^k / k! e^k(a) f^k(b) for one abelian pair e (x) f
oracle::Poly abelian_oracle(const AffineField& e, const AffineField& f, const Rational& scale, const oracle::Poly& a,
                            const oracle::Poly& b) {
    oracle::Poly out, ea = a, fb = b;
    for (int k = 0; !ea.empty() && !fb.empty(); ++k) {
        Scalar c = inu_pow(k, -scale) * Scalar(Rational(1) / factorial(k));
        out = out + oracle::scale(ea * fb, c);
        ea = oracle::apply_field(e, ea);
        fb = oracle::apply_field(f, fb);
    }
    return out;
}

// binomial(x, k) for rational x
Rational binom(const Rational& x, int k) {
    Rational r = 1;
    for (int j = 0; j < k; ++j) r *= (x - j) / (j + 1);
    return r;
}

// eigenvalue of X on a single monomial, if any
std::optional<Rational> eigen(const AffineField& X, const oracle::Exp& m) {
    oracle::Poly p{{m, Scalar(1)}};
    oracle::Poly img = oracle::apply_field(X, p);
    if (img.empty()) return Rational(0);
    if (img.size() != 1 || img.begin()->first != m) return std::nullopt;
    auto c = img.begin()->second;
    if (!c.is_constant() || !c.constant_term().is_real()) return std::nullopt;
    return c.constant_term().re;
}

std::vector<oracle::Exp> monomials(int max_deg) {
    std::vector<oracle::Exp> out;
    for (int a = 0; a <= max_deg; ++a)
        for (int b = 0; a + b <= max_deg; ++b)
            for (int c = 0; a + b + c <= max_deg; ++c) out.push_back({a, b, c});
    return out;
}

}  // namespace

TEST_CASE("abelian twists match the exponential series") {
    for (const char* id : {"a", "b", "c"}) {
        auto fam = build_family(id);
        for (auto& tid : fam.twist_ids()) {
            CAPTURE(id);
            CAPTURE(tid);
            Twist T = build_twist(fam, tid);
            if (T.spec().kind != TwistSpec::Kind::Abelian || T.spec().legs.size() != 1) continue;
            auto& e = T.basis().get(T.spec().legs[0].first);
            auto& f = T.basis().get(T.spec().legs[0].second);
            for (auto& ma : monomials(2))
                for (auto& mb : monomials(2)) {
                    oracle::Poly a{{ma, Scalar(1)}}, b{{mb, Scalar(1)}};
                    oracle::Poly expect = abelian_oracle(e, f, T.spec().scale, a, b);
                    CHECK(oracle::from_element(star(T, oracle::to_element(a), oracle::to_element(b))) == expect);
                }
        }
    }
}

TEST_CASE("Jordanian twists match the binomial series on H-eigenvectors") {
    for (const char* id : {"d", "e", "f", "g"}) {
        CAPTURE(id);
        auto fam = build_family(id);
        Twist T = build_twist(fam, resolve_twist_id(fam, "jordanian"));
        auto& H = T.basis().get(T.spec().legs[0].first);
        auto& E = T.basis().get(T.spec().legs[0].second);
        for (auto& ma : monomials(2)) {
            auto lam = eigen(H, ma);
            REQUIRE(lam);  // the working chart diagonalizes H
            for (auto& mb : monomials(2)) {
                // Fbar (a (x) b) = a (x) (1 + s E)^(-lambda/2) b
                oracle::Poly a{{ma, Scalar(1)}}, b{{mb, Scalar(1)}};
                oracle::Poly series, ek = b;
                for (int k = 0; !ek.empty(); ++k) {
                    series = series + oracle::scale(ek, inu_pow(k, T.spec().scale) * Scalar(binom(-*lam / 2, k)));
                    ek = oracle::apply_field(E, ek);
                }
                CHECK(oracle::from_element(star(T, oracle::to_element(a), oracle::to_element(b))) == a * series);
            }
        }
    }
}

TEST_CASE("dilation twist multiplies eigenvectors by powers of q") {
    auto fam = build_family("h");
    Twist T = build_twist(fam, resolve_twist_id(fam, "dilation"));
    auto& D = T.basis().get(T.spec().legs[0].first);
    auto& H = T.basis().get(T.spec().legs[0].second);
    for (auto& ma : monomials(2))
        for (auto& mb : monomials(2)) {
            auto lam = eigen(D, ma);
            auto mu = eigen(H, mb);
            REQUIRE(lam);
            REQUIRE(mu);
            Rational k = -T.spec().scale * *lam * *mu / 2;
            oracle::Poly a{{ma, Scalar(1)}}, b{{mb, Scalar(1)}};
            CHECK(oracle::from_element(star(T, oracle::to_element(a), oracle::to_element(b))) ==
                  oracle::scale(a * b, q_power(k)));
        }
}

TEST_CASE("printed coordinate star products of the parabolic family") {
    // x^1 * x^2 = x^1 x^2 - i nu b^2 and its reverse for the default b
    auto fam = build_family("a");
    Twist T = build_twist(fam, resolve_twist_id(fam, "abelian"));
    Rational b = fam.params.at("b");
    Element x1 = Element::x(3, 0), x2 = Element::x(3, 1);
    Element shift(3, Scalar::monomial(GaussRat(Rational(0), b * b), 1, 0));
    CHECK(star(T, x1, x2) == x1 * x2 - shift);
    CHECK(star(T, x2, x1) == x1 * x2);
    CHECK(star_commutator(T, x2, x1) == shift);
}

TEST_CASE("twisted products are associative on random words") {
    oracle::Rng rng(41);
    for (auto& id : {"b", "d", "fgh"}) {
        CAPTURE(id);
        auto fam = build_family(id);
        for (auto& tid : fam.twist_ids()) {
            CAPTURE(tid);
            Twist T = build_twist(fam, tid);
            for (int k = 0; k < 15; ++k) {
                Element a = Element::word(3, rng.word(true, true, 1)), b = Element::word(3, rng.word(true, true, 1)),
                        c = Element::word(3, rng.word(true, false, 1));
                CHECK(star(T, star(T, a, b), c) == star(T, a, star(T, b, c)));
            }
        }
    }
}

TEST_CASE("the classical limit of a star product is the normal-ordered product") {
    oracle::Rng rng(42);
    auto fam = build_family("d");
    for (auto& tid : fam.twist_ids()) {
        Twist T = build_twist(fam, tid);
        for (int k = 0; k < 40; ++k) {
            Element a = Element::word(3, rng.word(true, true, 1)), b = Element::word(3, rng.word(true, true, 1));
            CHECK(star(T, a, b).eval_classical() == (a * b).eval_classical());
        }
    }
}

TEST_CASE("twisted involution is an involutive anti-automorphism") {
    oracle::Rng rng(43);
    for (auto& id : {"b", "d"}) {
        auto fam = build_family(id);
        for (auto& tid : fam.twist_ids()) {
            CAPTURE(tid);
            Twist T = build_twist(fam, tid);
            for (int k = 0; k < 15; ++k) {
                Element a = Element::word(3, rng.word(false, true, 1)), b = Element::word(3, rng.word(true, false, 1));
                CHECK(twisted_involution(T, twisted_involution(T, a)) == a);
                CHECK(twisted_involution(T, star(T, a, b)) ==
                      star(T, twisted_involution(T, b), twisted_involution(T, a)));
            }
        }
    }
}

TEST_CASE("series cap guards non-terminating legs") {
    CHECK(safety_cap() > 0);
    CHECK(q_power(Rational(2)) == Scalar::q(2));
    CHECK_THROWS(q_power(Rational(1, 2)));
}
