#include "twistcalc/twist.hpp"

#include <cstdlib>
#include <map>

namespace twistcalc {

int safety_cap() {
    static const int cap = [] {
        if (const char* e = std::getenv("TWISTCALC_SAFETY_CAP")) {
            int v = std::atoi(e);
            if (v > 0) return v;
        }
        return 64;
    }();
    return cap;
}

std::vector<Element> split_terms(const Element& e) {
    std::vector<Element> out;
    out.reserve(e.size());
    for (auto& [w, c] : e.terms()) out.push_back(Element::word(e.dim(), w, c));
    return out;
}

std::optional<GaussRat> ratio(const Element& image, const Element& piece) {
    if (image.is_zero()) return GaussRat(0);
    if (image.size() != 1 || piece.size() != 1) return std::nullopt;
    auto& [wi, ci] = *image.terms().begin();
    auto& [wp, cp] = *piece.terms().begin();
    if (!(wi == wp)) return std::nullopt;
    // ci = lambda * cp with lambda a plain number
    auto& [k0, c0] = *cp.terms().begin();
    auto it = ci.terms().find(k0);
    if (it == ci.terms().end()) return std::nullopt;
    GaussRat lam = it->second / c0;
    Scalar check = cp;
    check *= lam;
    if (check != ci) return std::nullopt;
    return lam;
}

void PairModule::add(Element a, Element b) {
    if (a.is_zero() || b.is_zero()) return;
    if (n == 0) n = a.dim();
    terms.emplace_back(std::move(a), std::move(b));
}

void PairModule::normalize() {
    // expand into word pairs with the coefficient on the left factor
    std::map<std::pair<Word, Word>, Scalar> acc;
    for (auto& [a, b] : terms)
        for (auto& [wa, ca] : a.terms())
            for (auto& [wb, cb] : b.terms()) {
                auto [it, ins] = acc.emplace(std::make_pair(wa, wb), ca * cb);
                if (!ins) it->second += ca * cb;
            }
    terms.clear();
    for (auto& [k, c] : acc)
        if (!c.is_zero()) terms.emplace_back(Element::word(n, k.first, c), Element::word(n, k.second));
}

PairModule act(const AffineField& X, const PairModule& m) {
    PairModule r;
    r.n = m.n;
    for (auto& [a, b] : m.terms) {
        r.add(act(X, a), b);
        r.add(a, act(X, b));
    }
    r.normalize();
    return r;
}

bool is_zero(const PairModule& m) {
    PairModule c = m;
    c.normalize();
    return c.terms.empty();
}

PairModule zero_like(const PairModule& m) {
    PairModule r;
    r.n = m.n;
    return r;
}

std::vector<PairModule> split_terms(const PairModule& m) {
    PairModule c = m;
    c.normalize();
    std::vector<PairModule> out;
    for (auto& t : c.terms) {
        PairModule p;
        p.n = m.n;
        p.terms.push_back(t);
        out.push_back(std::move(p));
    }
    return out;
}

std::optional<GaussRat> ratio(const PairModule& image, const PairModule& piece) {
    PairModule im = image, pc = piece;
    im.normalize();
    pc.normalize();
    if (im.terms.empty()) return GaussRat(0);
    if (im.terms.size() != 1 || pc.terms.size() != 1) return std::nullopt;
    if (im.terms[0].second != pc.terms[0].second) return std::nullopt;
    return ratio(im.terms[0].first, pc.terms[0].first);
}

PairModule operator+(const PairModule& a, const PairModule& b) {
    PairModule r = a;
    if (r.n == 0) r.n = b.n;
    for (auto& t : b.terms) r.terms.push_back(t);
    r.normalize();
    return r;
}

PairModule operator*(const Scalar& s, const PairModule& m) {
    PairModule r;
    r.n = m.n;
    for (auto& [a, b] : m.terms) r.add(s * a, b);
    return r;
}

std::string TwistSpec::describe() const {
    std::string body;
    switch (kind) {
        case Kind::Abelian:
            for (auto& [e, f] : legs) body += (body.empty() ? "" : " + ") + e + "(x)" + f;
            return "exp(" + to_string(scale) + "*i*nu*(" + body + "))";
        case Kind::Jordanian:
            return "exp(" + legs.at(0).first + "/2 (x) log(1 + " + to_string(scale) + "*i*nu*" + legs.at(0).second +
                   "))";
        case Kind::Dilation:
            return "exp(" + to_string(scale) + "*i*nu*" + legs.at(0).first + "(x)" + legs.at(0).second + "/2)";
    }
    return body;
}

namespace {

int nilpotency(const Matrix& m) {
    int n = static_cast<int>(m.size());
    Matrix p = m;
    for (int k = 1; k <= n + 1; ++k) {
        bool zero = true;
        for (auto& row : p)
            for (auto& v : row)
                if (!v.is_zero()) zero = false;
        if (zero) return k;
        p = matmul(p, m);
    }
    return -1;
}

}  // namespace

Twist::Twist(TwistSpec spec, const LieAlgebraBasis& basis) : spec_(std::move(spec)), basis_(basis) {
    if (spec_.legs.empty()) throw std::invalid_argument("twist without legs");
    switch (spec_.kind) {
        case TwistSpec::Kind::Abelian:
            for (auto& [e, f] : spec_.legs) abelian_.push_back({basis_.get(e), basis_.get(f), spec_.scale});
            for (auto& a : abelian_)
                for (auto& b : abelian_)
                    for (auto* x : {&a.e, &a.f})
                        for (auto* y : {&b.e, &b.f})
                            if (!lie_bracket(*x, *y).is_zero())
                                throw std::invalid_argument("abelian twist legs do not commute");
            break;
        case TwistSpec::Kind::Dilation: {
            auto& [d, h] = spec_.legs.at(0);
            abelian_.push_back({basis_.get(d), basis_.get(h), spec_.scale / 2});
            if (!lie_bracket(abelian_[0].e, abelian_[0].f).is_zero())
                throw std::invalid_argument("dilation twist legs do not commute");
            break;
        }
        case TwistSpec::Kind::Jordanian: {
            H_ = basis_.get(spec_.legs.at(0).first);
            E_ = basis_.get(spec_.legs.at(0).second);
            AffineField he = lie_bracket(H_, E_);
            AffineField twoE = E_;
            twoE *= GaussRat(2);
            if (!(he == twoE)) throw std::invalid_argument("Jordanian pair violates [H,E] = 2E");
            int n = E_.n;
            Matrix aff = zero_matrix(n + 1, n + 1);
            for (int j = 0; j < n; ++j) {
                for (int i = 0; i < n; ++i) aff[j][i] = E_.A[j][i];
                aff[j][n] = E_.t[j];
            }
            nil_index_ = nilpotency(aff);
            if (nil_index_ < 0) throw std::invalid_argument("Jordanian E leg is not nilpotent");
            break;
        }
    }
}

Scalar Twist::s() const { return Scalar::monomial(GaussRat(Rational(0), spec_.scale), 1, 0); }

Scalar q_power(const Rational& k) {
    Rational c = k;
    c.canonicalize();
    if (c.get_den() != 1) throw std::domain_error("exp(i nu k) with non-integral k = " + to_string(c));
    return Scalar::q(static_cast<int>(c.get_num().get_si()));
}

Element Twist::beta_action(Beta variant, const Element& a) const {
    if (spec_.kind != TwistSpec::Kind::Jordanian) {
        // F = prod exp(c e⊗f) with commuting legs: beta = S(beta) = prod exp(-c e f)
        Element v = a;
        for (std::size_t k = 0; k < abelian_.size(); ++k) {
            const auto& leg = abelian_[k];
            int sign = variant == Beta::BetaInv ? 1 : -1;
            Scalar c = Scalar::monomial(GaussRat(Rational(0), leg.r * sign), 1, 0);
            std::string e = spec_.legs[k].first, f = spec_.legs[k].second;
            Op ef = Op::prod({Op::gen(e), Op::gen(f)});
            // the dilation leg carries the 1/2 in r already
            v = apply_op(Op::exp(c, ef), basis_, v);
        }
        return v;
    }
    const int cap = safety_cap();
    Scalar half(Rational(1, 2));
    Element acc(a.dim());
    switch (variant) {
        case Beta::Beta: {
            // sum 1/n! (H/2)^n log(1 - sE)^n
            Element ln = a;
            for (int n = 0; !ln.is_zero(); ++n) {
                if (n > cap) throw SeriesCapExceeded("beta series does not terminate");
                Element t = ln;
                for (int j = 0; j < n; ++j) t = half * act(H_, t);
                acc += Scalar(1 / detail::factorial(n)) * t;
                ln = log_action(ln, -s());
            }
            return acc;
        }
        case Beta::BetaInv: {
            // sum 1/n! (H/2)^n log(1 + sE)^n
            Element ln = a;
            for (int n = 0; !ln.is_zero(); ++n) {
                if (n > cap) throw SeriesCapExceeded("beta^-1 series does not terminate");
                Element t = ln;
                for (int j = 0; j < n; ++j) t = half * act(H_, t);
                acc += Scalar(1 / detail::factorial(n)) * t;
                ln = log_action(ln, s());
            }
            return acc;
        }
        case Beta::SBeta: {
            // sum 1/n! log(1 + sE)^n (-H/2)^n; log^n kills degree-D words once n > D (k-1)
            int bound = a.max_total_degree() * (nil_index_ - 1) + 1;
            Element hn = a;
            for (int n = 0; n <= bound && !hn.is_zero(); ++n) {
                Element t = hn;
                for (int j = 0; j < n && !t.is_zero(); ++j) t = log_action(t, s());
                acc += Scalar(1 / detail::factorial(n)) * t;
                hn = Scalar(Rational(-1, 2)) * act(H_, hn);
            }
            return acc;
        }
    }
    return acc;
}

Element star(const Twist& T, const Element& a, const Element& b) {
    Element r(a.dim() ? a.dim() : b.dim());
    for (auto& [u, v] : T.inverse_pair(a, b)) r += u * v;
    return r;
}

Element star_commutator(const Twist& T, const Element& a, const Element& b) { return star(T, a, b) - star(T, b, a); }

Element braided_commutator(const Twist& T, const Element& a, const Element& b) {
    Element r = star(T, a, b);
    for (auto& [u, v] : T.r_pair(b, a)) r -= star(T, u, v);
    return r;
}

Element twisted_involution(const Twist& T, const Element& a) {
    return T.beta_action(Twist::Beta::SBeta, star_involution_classical(a));
}

RRep r_matrix_rep(const Twist& T, int n, bool inverse) {
    RRep rep(n + 1, std::vector<std::vector<std::vector<Scalar>>>(
                        n + 1, std::vector<std::vector<Scalar>>(n + 1, std::vector<Scalar>(n + 1))));
    auto gen = [&](int i) { return i == 0 ? Element(n, Scalar(1)) : Element::x(n, i - 1); };
    auto coords = [&](const Element& e) {
        std::vector<Scalar> c(n + 1);
        for (auto& [w, s] : e.terms()) {
            if (w.is_one()) {
                c[0] += s;
                continue;
            }
            if (w.p() || w.r() || w.q() != 1) throw std::domain_error("R leaves span(1, x)");
            int i = 0;
            while (w.x[i] == 0) ++i;
            c[i + 1] += s;
        }
        return c;
    };
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) {
            auto pairs = inverse ? T.r_pair(gen(i), gen(j)) : T.r_forward_pair(gen(i), gen(j));
            for (auto& [u, v] : pairs) {
                auto cu = coords(u), cv = coords(v);
                for (int mu = 0; mu <= n; ++mu)
                    for (int nu = 0; nu <= n; ++nu) rep[mu][nu][i][j] += cu[mu] * cv[nu];
            }
        }
    return rep;
}

Op Op::gen(std::string n) {
    Op o;
    o.kind = Kind::Gen;
    o.name = std::move(n);
    return o;
}

Op Op::constant(Scalar v) {
    Op o;
    o.kind = Kind::Const;
    o.c = std::move(v);
    return o;
}

Op Op::sum(std::vector<Op> a) {
    Op o;
    o.kind = Kind::Sum;
    o.args = std::move(a);
    return o;
}

Op Op::prod(std::vector<Op> a) {
    Op o;
    o.kind = Kind::Prod;
    o.args = std::move(a);
    return o;
}

Op Op::exp(Scalar c, Op x) {
    Op o;
    o.kind = Kind::Exp;
    o.c = std::move(c);
    o.args.push_back(std::move(x));
    return o;
}

Op Op::log1p(Scalar c, Op x) {
    Op o;
    o.kind = Kind::Log1p;
    o.c = std::move(c);
    o.args.push_back(std::move(x));
    return o;
}

Op Op::pow1p(Scalar c, Op x, int m) {
    Op o;
    o.kind = Kind::Pow1p;
    o.c = std::move(c);
    o.m = m;
    o.args.push_back(std::move(x));
    return o;
}

std::string Op::str() const {
    auto wrap = [](const std::string& s) { return "(" + s + ")"; };
    switch (kind) {
        case Kind::Gen:
            return name;
        case Kind::Const:
            return c.needs_parens() ? wrap(c.str()) : c.str();
        case Kind::Sum: {
            std::string s;
            for (auto& a : args) s += (s.empty() ? "" : " + ") + a.str();
            return wrap(s);
        }
        case Kind::Prod: {
            std::string s;
            for (auto& a : args) s += (s.empty() ? "" : "*") + a.str();
            return s;
        }
        case Kind::Exp:
            return "exp(" + wrap(c.str()) + "*" + args[0].str() + ")";
        case Kind::Log1p:
            return "log(1 + " + wrap(c.str()) + "*" + args[0].str() + ")";
        case Kind::Pow1p:
            return "(1 + " + wrap(c.str()) + "*" + args[0].str() + ")^" + std::to_string(m);
    }
    return {};
}

Op antipode_transform(const Op& op, const std::map<std::string, Op>& sf) {
    switch (op.kind) {
        case Op::Kind::Gen: {
            auto it = sf.find(op.name);
            if (it != sf.end()) return it->second;
            return Op::prod({Op::constant(Scalar(-1)), op});
        }
        case Op::Kind::Const:
            return op;
        case Op::Kind::Sum: {
            std::vector<Op> a;
            for (auto& x : op.args) a.push_back(antipode_transform(x, sf));
            return Op::sum(std::move(a));
        }
        case Op::Kind::Prod: {
            std::vector<Op> a;
            for (auto it = op.args.rbegin(); it != op.args.rend(); ++it) a.push_back(antipode_transform(*it, sf));
            return Op::prod(std::move(a));
        }
        default: {
            Op r = op;
            r.args[0] = antipode_transform(op.args[0], sf);
            return r;
        }
    }
}

bool twisted_leibniz_check(const Twist& T, const Op& g, const OpTensor& delta, const Element& a, const Element& b) {
    const auto& basis = T.basis();
    Element lhs = apply_op(g, basis, star(T, a, b));
    Element rhs(lhs.dim());
    for (auto& [l, r] : delta) rhs += star(T, apply_op(l, basis, a), apply_op(r, basis, b));
    return lhs == rhs;
}

bool antipode_check(const Twist& T, const OpTensor& delta, const std::map<std::string, Op>& sf,
                    const std::vector<Element>& tests) {
    const auto& basis = T.basis();
    for (auto& v : tests) {
        Element acc(v.dim());
        for (auto& [l, r] : delta) acc += apply_op(antipode_transform(l, sf), basis, apply_op(r, basis, v));
        if (!acc.is_zero()) return false;
    }
    return true;
}

std::vector<Element> antipode_test_set(int n) {
    std::vector<Element> out;
    for (auto& w : monomials_upto(n, 3)) out.push_back(Element::word(n, w));
    for (int i = 0; i < n; ++i) out.push_back(Element::xi(n, i));
    for (int i = 0; i < n; ++i) out.push_back(Element::d(n, i));
    return out;
}

}  // namespace twistcalc
