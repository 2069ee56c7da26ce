#pragma once
// Exact coefficients: Gaussian rationals and Laurent objects in nu / q = e^{i nu}.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <utility>

namespace twistcalc {

using Rational = mpq_class;

Rational parse_rational(const std::string& s);
std::string to_string(const Rational& r);

struct GaussRat {
    Rational re, im;

    GaussRat() = default;
    GaussRat(long v) : re(v), im(0) {}
    GaussRat(Rational r) : re(std::move(r)), im(0) {}
    GaussRat(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    static GaussRat I() { return GaussRat(Rational(0), Rational(1)); }

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    bool is_real() const { return sgn(im) == 0; }
    GaussRat conj() const { return GaussRat(re, -im); }
    GaussRat inverse() const;  // throws on zero

    GaussRat operator-() const { return GaussRat(-re, -im); }
    GaussRat& operator+=(const GaussRat& o);
    GaussRat& operator-=(const GaussRat& o);
    GaussRat& operator*=(const GaussRat& o);
    GaussRat& operator/=(const GaussRat& o) { return *this *= o.inverse(); }

    friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
    friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
    friend GaussRat operator*(GaussRat a, const GaussRat& b) { return a *= b; }
    friend GaussRat operator/(GaussRat a, const GaussRat& b) { return a /= b; }
    friend bool operator==(const GaussRat& a, const GaussRat& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }
};

std::string to_string(const GaussRat& g);

// exponent key: (power of nu >= 0, power of q)
struct ScalarKey {
    int nu = 0;
    int q = 0;
    auto operator<=>(const ScalarKey&) const = default;
};

class Scalar {
public:
    using Terms = std::map<ScalarKey, GaussRat>;

    Scalar() = default;
    Scalar(long v) { add_term({0, 0}, GaussRat(v)); }
    Scalar(const Rational& r) { add_term({0, 0}, GaussRat(r)); }
    Scalar(const GaussRat& g) { add_term({0, 0}, g); }
    static Scalar monomial(const GaussRat& c, int nu_exp, int q_exp);
    static Scalar i() { return Scalar(GaussRat::I()); }
    static Scalar nu() { return monomial(GaussRat(1), 1, 0); }
    static Scalar inu() { return monomial(GaussRat::I(), 1, 0); }
    static Scalar q(int k = 1) { return monomial(GaussRat(1), 0, k); }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;
    // a constant (nu^0 q^0) coefficient only, possibly zero
    bool is_constant() const;
    GaussRat constant_term() const;
    // single term c*q^k without nu: invertible in the ring
    bool is_unit() const;
    Scalar inverse() const;  // requires is_unit()
    bool has_nu() const;
    bool has_q() const;
    int max_nu() const;

    void add_term(ScalarKey k, const GaussRat& c);

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator*=(const GaussRat& c);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend bool operator==(const Scalar& a, const Scalar& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    Scalar conj() const;
    GaussRat eval_classical() const;
    // coefficients of nu^0 only (q kept)
    Scalar truncate_nu(int max_exp) const;

    // terse canonical text; parenthesized when it has several terms
    std::string str() const;
    bool needs_parens() const { return terms_.size() > 1; }

private:
    Terms terms_;
};

Scalar conj(const Scalar& a);
GaussRat eval_classical(const Scalar& a);

}  // namespace twistcalc
