#include "twistcalc/exactnum.hpp"

#include <stdexcept>
#include <vector>

namespace twistcalc {

Rational parse_rational(const std::string& s) {
    Rational r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

GaussRat GaussRat::inverse() const {
    Rational n = re * re + im * im;
    if (sgn(n) == 0) throw std::domain_error("division by zero");
    return GaussRat(re / n, -im / n);
}

GaussRat& GaussRat::operator+=(const GaussRat& o) {
    re += o.re;
    im += o.im;
    return *this;
}

GaussRat& GaussRat::operator-=(const GaussRat& o) {
    re -= o.re;
    im -= o.im;
    return *this;
}

GaussRat& GaussRat::operator*=(const GaussRat& o) {
    Rational r = re * o.re - im * o.im;
    Rational i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

std::string to_string(const GaussRat& g) {
    if (g.is_real()) return to_string(g.re);
    if (sgn(g.re) == 0) {
        if (g.im == 1) return "i";
        if (g.im == -1) return "-i";
        return to_string(g.im) + "*i";
    }
    std::string s = "(" + to_string(g.re);
    if (sgn(g.im) > 0)
        s += " + ";
    else
        s += " - ";
    Rational a = abs(g.im);
    if (a != 1) s += to_string(a) + "*";
    return s + "i)";
}

Scalar Scalar::monomial(const GaussRat& c, int nu_exp, int q_exp) {
    Scalar s;
    s.add_term({nu_exp, q_exp}, c);
    return s;
}

void Scalar::add_term(ScalarKey k, const GaussRat& c) {
    if (c.is_zero()) return;
    if (k.nu < 0) throw std::domain_error("negative power of nu");
    auto [it, ins] = terms_.emplace(k, c);
    if (!ins) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

bool Scalar::is_one() const {
    return terms_.size() == 1 && terms_.begin()->first == ScalarKey{0, 0} && terms_.begin()->second == GaussRat(1);
}

bool Scalar::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == ScalarKey{0, 0});
}

GaussRat Scalar::constant_term() const {
    auto it = terms_.find({0, 0});
    return it == terms_.end() ? GaussRat() : it->second;
}

bool Scalar::is_unit() const { return terms_.size() == 1 && terms_.begin()->first.nu == 0; }

Scalar Scalar::inverse() const {
    if (!is_unit()) throw std::domain_error("scalar is not invertible: " + str());
    auto& [k, c] = *terms_.begin();
    return monomial(c.inverse(), 0, -k.q);
}

bool Scalar::has_nu() const {
    for (auto& [k, c] : terms_)
        if (k.nu != 0) return true;
    return false;
}

bool Scalar::has_q() const {
    for (auto& [k, c] : terms_)
        if (k.q != 0) return true;
    return false;
}

int Scalar::max_nu() const {
    int m = 0;
    for (auto& [k, c] : terms_) m = std::max(m, k.nu);
    return m;
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    for (auto& [k, c] : r.terms_) c = -c;
    return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    for (auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    for (auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
}

Scalar operator*(const Scalar& a, const Scalar& b) {
    Scalar r;
    for (auto& [ka, ca] : a.terms_)
        for (auto& [kb, cb] : b.terms_) r.add_term({ka.nu + kb.nu, ka.q + kb.q}, ca * cb);
    return r;
}

Scalar& Scalar::operator*=(const Scalar& o) { return *this = *this * o; }

Scalar& Scalar::operator*=(const GaussRat& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [k, v] : terms_) v *= c;
    return *this;
}

Scalar Scalar::conj() const {
    Scalar r;
    for (auto& [k, c] : terms_) r.add_term({k.nu, -k.q}, c.conj());
    return r;
}

GaussRat Scalar::eval_classical() const {
    GaussRat g;
    for (auto& [k, c] : terms_)
        if (k.nu == 0) g += c;
    return g;
}

Scalar Scalar::truncate_nu(int max_exp) const {
    Scalar r;
    for (auto& [k, c] : terms_)
        if (k.nu <= max_exp) r.add_term(k, c);
    return r;
}

namespace {

// monomial factor "nu^2*q^-1" (empty when trivial)
std::string power_part(const ScalarKey& k) {
    std::string s;
    if (k.nu == 1) s = "nu";
    if (k.nu > 1) s = "nu^" + std::to_string(k.nu);
    if (k.q != 0) {
        if (!s.empty()) s += "*";
        s += "q";
        if (k.q != 1) s += "^" + std::to_string(k.q);
    }
    return s;
}

// returns (negative?, body) for one term
std::pair<bool, std::string> term_text(const ScalarKey& k, const GaussRat& c) {
    std::string pw = power_part(k);
    bool neg = false;
    std::string coef;
    if (c.is_real()) {
        neg = sgn(c.re) < 0;
        Rational a = abs(c.re);
        if (a != 1 || pw.empty()) coef = to_string(a);
    } else if (sgn(c.re) == 0) {
        neg = sgn(c.im) < 0;
        Rational a = abs(c.im);
        coef = a == 1 ? "i" : to_string(a) + "*i";
    } else {
        coef = to_string(c);
    }
    if (coef.empty()) return {neg, pw};
    if (pw.empty()) return {neg, coef};
    return {neg, coef + "*" + pw};
}

}  // namespace

std::string Scalar::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (auto& [k, c] : terms_) {
        auto [neg, body] = term_text(k, c);
        if (first)
            s = neg ? "-" + body : body;
        else
            s += (neg ? " - " : " + ") + body;
        first = false;
    }
    return s;
}

Scalar conj(const Scalar& a) { return a.conj(); }
GaussRat eval_classical(const Scalar& a) { return a.eval_classical(); }

}  // namespace twistcalc
