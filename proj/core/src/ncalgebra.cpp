#include "twistcalc/ncalgebra.hpp"

#include <bit>
#include <stdexcept>

namespace twistcalc {

int Word::p() const { return std::popcount(xi); }

int Word::q() const {
    int s = 0;
    for (auto v : x) s += v;
    return s;
}

int Word::r() const {
    int s = 0;
    for (auto v : d) s += v;
    return s;
}

Word Word::x_pow(int i, int k) {
    Word w;
    w.x[i] = static_cast<std::uint8_t>(k);
    return w;
}

Word Word::xi_of(int i) {
    Word w;
    w.xi = 1u << i;
    return w;
}

Word Word::d_pow(int i, int k) {
    Word w;
    w.d[i] = static_cast<std::uint8_t>(k);
    return w;
}

bool operator<(const Word& a, const Word& b) {
    Degrees da = a.degrees(), db = b.degrees();
    if (da != db) return da < db;
    if (a.xi != b.xi) {
        for (int i = 0; i < kMaxDim; ++i) {
            bool ba = a.xi >> i & 1u, bb = b.xi >> i & 1u;
            if (ba != bb) return ba;
        }
    }
    if (a.x != b.x) return a.x > b.x;
    return a.d > b.d;
}

std::string word_text(const Word& w, const ChartNames& nm) {
    std::string s;
    auto put = [&](const std::string& f) {
        if (!s.empty()) s += "*";
        s += f;
    };
    for (int i = 0; i < kMaxDim; ++i)
        if (w.xi >> i & 1u) put(nm.xi + std::to_string(i + 1));
    for (int i = 0; i < kMaxDim; ++i)
        if (w.x[i]) put(nm.x + std::to_string(i + 1) + (w.x[i] > 1 ? "^" + std::to_string(w.x[i]) : ""));
    for (int i = 0; i < kMaxDim; ++i)
        if (w.d[i]) put(nm.d + std::to_string(i + 1) + (w.d[i] > 1 ? "^" + std::to_string(w.d[i]) : ""));
    return s.empty() ? "1" : s;
}

std::string word_latex(const Word& w, const ChartNames& nm) {
    bool y = nm.x == "y";
    std::string s;
    auto put = [&](const std::string& f) {
        if (!s.empty()) s += " ";
        s += f;
    };
    for (int i = 0; i < kMaxDim; ++i)
        if (w.xi >> i & 1u) put(std::string(y ? "\\eta" : "\\xi") + "^{" + std::to_string(i + 1) + "}");
    for (int i = 0; i < kMaxDim; ++i)
        if (w.x[i]) {
            std::string b = std::string(y ? "y" : "x") + "^{" + std::to_string(i + 1) + "}";
            put(w.x[i] > 1 ? "(" + b + ")^{" + std::to_string(w.x[i]) + "}" : b);
        }
    for (int i = 0; i < kMaxDim; ++i)
        if (w.d[i]) {
            std::string b = std::string(y ? "\\tilde{\\partial}" : "\\partial") + "_{" + std::to_string(i + 1) + "}";
            put(w.d[i] > 1 ? b + "^{" + std::to_string(w.d[i]) + "}" : b);
        }
    return s.empty() ? "1" : s;
}

void Element::check_dim(int n) {
    if (n < 0 || n > kMaxDim) throw std::invalid_argument("dimension out of range");
}

Element::Element(int n, const Scalar& s) : n_(n) {
    check_dim(n);
    add_term(Word{}, s);
}

Element Element::word(int n, const Word& w, const Scalar& c) {
    Element e(n);
    e.add_term(w, c);
    return e;
}

void Element::add_term(const Word& w, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, ins] = terms_.emplace(w, c);
    if (!ins) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void Element::adopt_dim(const Element& o) {
    if (n_ == 0) n_ = o.n_;
    else if (o.n_ != 0 && o.n_ != n_) throw std::invalid_argument("dimension mismatch");
}

Element Element::operator-() const {
    Element r = *this;
    for (auto& [w, c] : r.terms_) c = -c;
    return r;
}

Element& Element::operator+=(const Element& o) {
    adopt_dim(o);
    for (auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
}

Element& Element::operator-=(const Element& o) {
    adopt_dim(o);
    for (auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
}

Element& Element::operator*=(const Scalar& s) {
    if (s.is_zero()) {
        terms_.clear();
        return *this;
    }
    Terms out;
    for (auto& [w, c] : terms_) {
        Scalar v = c * s;
        if (!v.is_zero()) out.emplace(w, std::move(v));
    }
    terms_ = std::move(out);
    return *this;
}

bool operator==(const Element& a, const Element& b) { return a.terms_ == b.terms_; }

std::int64_t falling(int n, int k) {
    std::int64_t v = 1;
    for (int j = 0; j < k; ++j) v *= (n - j);
    return v;
}

long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long v = 1;
    for (int j = 1; j <= k; ++j) v = v * (n - k + j) / j;
    return v;
}

std::vector<WordTerm> normal_mul_words(const Word& a, const Word& b, int n) {
    // xi^{pa} x^{qa} d^{ra} xi^{pb} x^{qb} d^{rb} = xi^{pa} xi^{pb} x^{qa} (d^{ra} x^{qb}) d^{rb}
    if (a.xi & b.xi) return {};
    int inversions = 0;
    for (int j = 0; j < n; ++j)
        if (b.xi >> j & 1u) inversions += std::popcount(a.xi >> (j + 1));
    std::int64_t sign = (inversions & 1) ? -1 : 1;

    // d^{ra} x^{qb} = sum_k prod_i C(ra_i,k_i) qb_i!/(qb_i-k_i)! x^{qb-k} d^{ra-k}
    std::vector<WordTerm> out;
    std::array<int, kMaxDim> k{};
    std::array<int, kMaxDim> kmax{};
    for (int i = 0; i < n; ++i) kmax[i] = std::min<int>(a.d[i], b.x[i]);
    while (true) {
        std::int64_t c = sign;
        Word w;
        w.xi = a.xi | b.xi;
        for (int i = 0; i < n; ++i) {
            c *= binomial(a.d[i], k[i]) * falling(b.x[i], k[i]);
            w.x[i] = static_cast<std::uint8_t>(a.x[i] + b.x[i] - k[i]);
            w.d[i] = static_cast<std::uint8_t>(a.d[i] + b.d[i] - k[i]);
        }
        out.push_back({w, c});
        int i = 0;
        while (i < n && k[i] == kmax[i]) k[i++] = 0;
        if (i == n) break;
        ++k[i];
    }
    return out;
}

Element operator*(const Element& a, const Element& b) {
    Element r;
    r.adopt_dim(a);
    r.adopt_dim(b);
    int n = r.n_;
    for (auto& [wa, ca] : a.terms_)
        for (auto& [wb, cb] : b.terms_) {
            Scalar c = ca * cb;
            for (auto& t : normal_mul_words(wa, wb, n)) {
                Scalar ct = c;
                ct *= GaussRat(Rational(t.c));
                r.add_term(t.w, ct);
            }
        }
    return r;
}

Element normal_mul(const Element& a, const Element& b) { return a * b; }

Element power(const Element& a, int k) {
    Element r(a.dim(), Scalar(1));
    for (int j = 0; j < k; ++j) r = r * a;
    return r;
}

bool Element::is_polynomial() const {
    for (auto& [w, c] : terms_)
        if (!w.is_polynomial()) return false;
    return true;
}

bool Element::is_scalar() const {
    for (auto& [w, c] : terms_)
        if (!w.is_one()) return false;
    return true;
}

Scalar Element::scalar_part() const {
    auto it = terms_.find(Word{});
    return it == terms_.end() ? Scalar() : it->second;
}

std::set<Degrees> Element::degrees() const {
    std::set<Degrees> s;
    for (auto& [w, c] : terms_) s.insert(w.degrees());
    return s;
}

int Element::max_total_degree() const {
    int m = 0;
    for (auto& [w, c] : terms_) m = std::max(m, w.p() + w.q() + w.r());
    return m;
}

Element Element::conj_coeffs() const {
    Element r(n_);
    for (auto& [w, c] : terms_) r.add_term(w, c.conj());
    return r;
}

Element Element::eval_classical() const {
    Element r(n_);
    for (auto& [w, c] : terms_) r.add_term(w, Scalar(c.eval_classical()));
    return r;
}

Element Element::truncate_nu(int max_exp) const {
    Element r(n_);
    for (auto& [w, c] : terms_) r.add_term(w, c.truncate_nu(max_exp));
    return r;
}

std::string Element::str(const ChartNames& names) const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (auto& [w, c] : terms_) {
        std::string body;
        bool neg = false;
        std::string ws = w.is_one() ? "" : word_text(w, names);
        if (c.needs_parens()) {
            body = "(" + c.str() + ")";
            if (!ws.empty()) body += "*" + ws;
        } else {
            std::string cs = c.str();
            if (cs[0] == '-') {
                neg = true;
                cs = cs.substr(1);
            }
            if (ws.empty())
                body = cs;
            else if (cs == "1")
                body = ws;
            else
                body = cs + "*" + ws;
        }
        if (first)
            s = neg ? "-" + body : body;
        else
            s += (neg ? " - " : " + ") + body;
        first = false;
    }
    return s;
}

namespace {

std::string scalar_latex(const Scalar& c) {
    std::string s = c.str();
    std::string out;
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (s[k] == '*') {
            out += " ";
        } else if (s.compare(k, 2, "nu") == 0) {
            out += "\\nu";
            ++k;
        } else if (s[k] == '^') {
            std::size_t e = k + 1;
            if (e < s.size() && s[e] == '-') ++e;
            while (e < s.size() && isdigit(static_cast<unsigned char>(s[e]))) ++e;
            out += "^{" + s.substr(k + 1, e - k - 1) + "}";
            k = e - 1;
        } else if (isdigit(static_cast<unsigned char>(s[k]))) {
            std::size_t e = k;
            while (e < s.size() && isdigit(static_cast<unsigned char>(s[e]))) ++e;
            if (e < s.size() && s[e] == '/') {
                std::size_t f = e + 1;
                while (f < s.size() && isdigit(static_cast<unsigned char>(s[f]))) ++f;
                out += "\\frac{" + s.substr(k, e - k) + "}{" + s.substr(e + 1, f - e - 1) + "}";
                k = f - 1;
            } else {
                out += s.substr(k, e - k);
                k = e - 1;
            }
        } else {
            out += s[k];
        }
    }
    return out;
}

}  // namespace

std::string Element::latex(const ChartNames& names) const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (auto& [w, c] : terms_) {
        std::string ws = w.is_one() ? "" : word_latex(w, names);
        std::string cs = scalar_latex(c);
        bool neg = false;
        if (c.needs_parens()) {
            cs = "\\left(" + cs + "\\right)";
        } else if (cs[0] == '-') {
            neg = true;
            cs = cs.substr(1);
        }
        std::string body = ws.empty() ? cs : (cs == "1" ? ws : cs + "\\," + ws);
        if (first)
            s = neg ? "-" + body : body;
        else
            s += (neg ? " - " : " + ") + body;
        first = false;
    }
    return s;
}

std::set<Degrees> degrees(const Element& a) { return a.degrees(); }

Element apply_as_diffop(const Element& D, const Element& h) {
    if (!h.is_polynomial()) throw std::invalid_argument("apply_as_diffop: argument is not a polynomial");
    for (auto& [w, c] : D.terms())
        if (w.p() != 0) throw std::invalid_argument("apply_as_diffop: operator has form degree");
    Element prod = D * h;
    Element r(prod.dim());
    for (auto& [w, c] : prod.terms())
        if (w.r() == 0) r.add_term(w, c);
    return r;
}

Element partial(const Element& h, int i) {
    Element r(h.dim());
    for (auto& [w, c] : h.terms()) {
        if (w.r() != 0) throw std::invalid_argument("partial: element contains derivatives");
        if (w.x[i] == 0) continue;
        Word v = w;
        v.x[i]--;
        Scalar s = c;
        s *= GaussRat(static_cast<long>(w.x[i]));
        r.add_term(v, s);
    }
    return r;
}

Element exterior_derivative(const Element& h) {
    int n = h.dim();
    Element r(n);
    for (auto& [w, c] : h.terms()) {
        if (w.r() != 0) throw std::invalid_argument("exterior derivative needs polynomial coefficients");
        for (int i = 0; i < n; ++i) {
            if (w.x[i] == 0 || (w.xi >> i & 1u)) continue;
            Word v = w;
            v.x[i]--;
            v.xi |= 1u << i;
            int before = std::popcount(w.xi & ((1u << i) - 1u));
            Scalar s = c;
            s *= GaussRat(static_cast<long>(before % 2 ? -w.x[i] : w.x[i]));
            r.add_term(v, s);
        }
    }
    return r;
}

long long hilbert_dim(int n, const Degrees& d) {
    if (d.p < 0 || d.p > n) throw std::invalid_argument("form degree out of range");
    if (d.q < 0 || d.r < 0) throw std::invalid_argument("negative filtration degree");
    return binomial(n, d.p) * binomial(d.q + n, n) * binomial(d.r + n, n);
}

Element star_involution_classical(const Element& a) {
    int n = a.dim();
    Element r(n);
    for (auto& [w, c] : a.terms()) {
        int k = w.p();
        bool neg = ((k * (k - 1) / 2) + w.r()) % 2 != 0;
        Word dw, xw, xiw;
        dw.d = w.d;
        xw.x = w.x;
        xiw.xi = w.xi;
        Scalar cc = c.conj();
        if (neg) cc = -cc;
        // d^r x^q then xi^p on the right; xi commutes with both
        for (auto& t : normal_mul_words(dw, xw, n)) {
            Word v = t.w;
            v.xi = xiw.xi;
            Scalar s = cc;
            s *= GaussRat(Rational(t.c));
            r.add_term(v, s);
        }
    }
    return r;
}

std::vector<Word> monomials_upto(int n, int k) {
    std::vector<Word> out;
    std::vector<Word> layer{Word{}};
    out.push_back(Word{});
    for (int deg = 1; deg <= k; ++deg) {
        std::set<Word> next;
        for (auto& w : layer)
            for (int i = 0; i < n; ++i) {
                Word v = w;
                v.x[i]++;
                next.insert(v);
            }
        layer.assign(next.begin(), next.end());
        out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
}

}  // namespace twistcalc
