#pragma once
// The differential calculus algebra: generators x^i, xi^i = dx^i, d_i over Scalars,
// stored in the normal order xi < x < d.

#include "twistcalc/exactnum.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace twistcalc {

constexpr int kMaxDim = 6;

struct Degrees {
    int p = 0, q = 0, r = 0;
    auto operator<=>(const Degrees&) const = default;
};

struct Word {
    std::uint32_t xi = 0;  // bit i set <=> xi^{i+1} present
    std::array<std::uint8_t, kMaxDim> x{};
    std::array<std::uint8_t, kMaxDim> d{};

    int p() const;
    int q() const;
    int r() const;
    Degrees degrees() const { return {p(), q(), r()}; }
    bool is_one() const { return xi == 0 && q() == 0 && r() == 0; }
    bool is_polynomial() const { return xi == 0 && r() == 0; }

    static Word x_pow(int i, int k = 1);
    static Word xi_of(int i);
    static Word d_pow(int i, int k = 1);

    friend bool operator==(const Word& a, const Word& b) { return a.xi == b.xi && a.x == b.x && a.d == b.d; }
};

// canonical order: degree totals (p,q,r), then descending exponent vectors xi, x, d
bool operator<(const Word& a, const Word& b);

// names used when rendering and parsing
struct ChartNames {
    std::string x = "x", xi = "xi", d = "d";
    static ChartNames cartesian() { return {}; }
    static ChartNames y_chart() { return {"y", "eta", "dt"}; }
};

std::string word_text(const Word& w, const ChartNames& names);
std::string word_latex(const Word& w, const ChartNames& names);

class Element {
public:
    using Terms = std::map<Word, Scalar>;

    Element() = default;
    explicit Element(int n) : n_(n) { check_dim(n); }
    Element(int n, const Scalar& s);
    static Element word(int n, const Word& w, const Scalar& c = Scalar(1));
    static Element x(int n, int i) { return word(n, Word::x_pow(i)); }
    static Element xi(int n, int i) { return word(n, Word::xi_of(i)); }
    static Element d(int n, int i) { return word(n, Word::d_pow(i)); }

    int dim() const { return n_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    void add_term(const Word& w, const Scalar& c);

    Element operator-() const;
    Element& operator+=(const Element& o);
    Element& operator-=(const Element& o);
    Element& operator*=(const Scalar& s);
    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }
    friend Element operator*(const Scalar& s, Element a) { return a *= s; }
    friend Element operator*(Element a, const Scalar& s) { return a *= s; }
    // normal-ordered product
    friend Element operator*(const Element& a, const Element& b);
    friend bool operator==(const Element& a, const Element& b);
    friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }

    bool is_polynomial() const;
    bool is_scalar() const;
    Scalar scalar_part() const;
    std::set<Degrees> degrees() const;
    int max_total_degree() const;

    Element conj_coeffs() const;
    Element eval_classical() const;
    Element truncate_nu(int max_exp) const;

    std::string str(const ChartNames& names = {}) const;
    std::string latex(const ChartNames& names = {}) const;

private:
    static void check_dim(int n);
    void adopt_dim(const Element& o);

    int n_ = 0;
    Terms terms_;
};

struct WordTerm {
    Word w;
    std::int64_t c;
};
// product of two basis words as an integer combination of basis words
std::vector<WordTerm> normal_mul_words(const Word& a, const Word& b, int n);

Element normal_mul(const Element& a, const Element& b);
Element power(const Element& a, int k);
std::set<Degrees> degrees(const Element& a);
// D acting as a differential operator on a polynomial h
Element apply_as_diffop(const Element& D, const Element& h);
// exterior derivative on forms with polynomial coefficients (no d_i factors)
Element exterior_derivative(const Element& h);
// partial derivative of a polynomial-coefficient element in x^i
Element partial(const Element& h, int i);
// dim of the filtered piece: C(n,p) C(q+n,n) C(r+n,n)
long long hilbert_dim(int n, const Degrees& d);
// antilinear anti-automorphism with x* = x, xi* = xi, d* = -d
Element star_involution_classical(const Element& a);
// all coordinate monomials of total degree <= k (degree order)
std::vector<Word> monomials_upto(int n, int k);

long long binomial(int n, int k);

}  // namespace twistcalc
