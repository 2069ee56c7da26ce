#pragma once
// Test-side reference implementations, written independently of the library's
// normal-ordering and twist code: commutative polynomials in three variables with
// Scalar coefficients, vector fields acting by differentiation, random generators.

#include "twistcalc/symmetry.hpp"

#include <array>
#include <map>
#include <random>

namespace oracle {

using twistcalc::Element;
using twistcalc::GaussRat;
using twistcalc::Rational;
using twistcalc::Scalar;
using twistcalc::Word;

constexpr int N = 3;
using Exp = std::array<int, N>;
using Poly = std::map<Exp, Scalar>;

inline void add(Poly& p, const Exp& e, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = p.find(e);
    if (it == p.end()) {
        p.emplace(e, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) p.erase(it);
}

inline Poly operator+(Poly a, const Poly& b) {
    for (auto& [e, c] : b) add(a, e, c);
    return a;
}

inline Poly scale(const Poly& a, const Scalar& s) {
    Poly out;
    for (auto& [e, c] : a) add(out, e, c * s);
    return out;
}

inline Poly operator*(const Poly& a, const Poly& b) {
    Poly out;
    for (auto& [ea, ca] : a)
        for (auto& [eb, cb] : b) {
            Exp e;
            for (int i = 0; i < N; ++i) e[i] = ea[i] + eb[i];
            add(out, e, ca * cb);
        }
    return out;
}

inline Poly variable(int i) {
    Exp e{};
    e[i] = 1;
    return {{e, Scalar(1)}};
}

inline Poly constant(const Scalar& s) { return s.is_zero() ? Poly{} : Poly{{Exp{}, s}}; }

inline Poly partial(const Poly& p, int i) {
    Poly out;
    for (auto& [key, c] : p) {
        if (key[i] == 0) continue;
        Exp e = key;
        Scalar k(static_cast<long>(e[i]));
        --e[i];
        add(out, e, c * k);
    }
    return out;
}

// X(h) for X = (A x + t)^j d_j
inline Poly apply_field(const twistcalc::AffineField& X, const Poly& h) {
    Poly out;
    for (int j = 0; j < N; ++j) {
        Poly comp = constant(Scalar(X.t[j]));
        for (int i = 0; i < N; ++i) comp = comp + scale(variable(i), Scalar(X.A[j][i]));
        out = out + comp * partial(h, j);
    }
    return out;
}

// a word x^alpha d^beta acting on h: derivatives first, then multiplication
inline Poly apply_word(const Word& w, const Scalar& c, const Poly& h) {
    Poly cur = h;
    for (int i = 0; i < N; ++i)
        for (int k = 0; k < w.d[i]; ++k) cur = partial(cur, i);
    Exp e{};
    for (int i = 0; i < N; ++i) e[i] = w.x[i];
    return Poly{{e, c}} * cur;
}

inline Poly from_element(const Element& a) {
    Poly out;
    for (auto& [w, c] : a.terms()) {
        if (!w.is_polynomial()) throw std::invalid_argument("oracle: not a polynomial");
        Exp e{};
        for (int i = 0; i < N; ++i) e[i] = w.x[i];
        add(out, e, c);
    }
    return out;
}

inline Element to_element(const Poly& p) {
    Element out(N);
    for (auto& [e, c] : p) {
        Word w;
        for (int i = 0; i < N; ++i) w.x[i] = static_cast<std::uint8_t>(e[i]);
        out.add_term(w, c);
    }
    return out;
}

struct Rng {
    std::mt19937 gen;
    explicit Rng(unsigned seed) : gen(seed) {}
    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen); }
    Rational rational(int range = 5) {
        int den = uniform(1, 3);
        Rational r(uniform(-range, range), den);
        r.canonicalize();
        return r;
    }
    GaussRat gauss() { return GaussRat(rational(), uniform(0, 2) == 0 ? rational() : Rational(0)); }
    Word word(bool with_xi, bool with_d, int max_exp = 2) {
        Word w;
        for (int i = 0; i < N; ++i) {
            w.x[i] = static_cast<std::uint8_t>(uniform(0, max_exp));
            if (with_d) w.d[i] = static_cast<std::uint8_t>(uniform(0, max_exp));
            if (with_xi && uniform(0, 1)) w.xi |= 1u << i;
        }
        return w;
    }
    Poly poly(int terms, int max_exp = 3) {
        Poly p;
        for (int k = 0; k < terms; ++k) {
            Exp e;
            for (int i = 0; i < N; ++i) e[i] = uniform(0, max_exp);
            add(p, e, Scalar(rational()));
        }
        return p;
    }
    twistcalc::AffineField field() {
        twistcalc::AffineField X(N);
        for (int j = 0; j < N; ++j) {
            X.t[j] = GaussRat(rational());
            for (int i = 0; i < N; ++i) X.A[j][i] = GaussRat(uniform(-2, 2));
        }
        return X;
    }
};

}  // namespace oracle
