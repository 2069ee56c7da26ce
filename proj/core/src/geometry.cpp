#include "twistcalc/geometry.hpp"

#include "twistcalc/expr.hpp"

#include <algorithm>
#include <sstream>

namespace twistcalc {

// ---- metric -----------------------------------------------------------------------------------

Metric Metric::from_matrix(Matrix g) {
    auto inv = inverse(g);
    if (!inv) throw GeometryError("metric is degenerate");
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j)
            if (g[i][j] != g[j][i]) throw GeometryError("metric is not symmetric");
    return {std::move(g), std::move(*inv)};
}

Metric Metric::euclidean(int n) { return from_matrix(identity_matrix(n)); }

Metric Metric::minkowski(int n) {
    Matrix g = identity_matrix(n);
    g[n - 1][n - 1] = GaussRat(-1);
    return from_matrix(std::move(g));
}

Metric chart_metric(const QuadricFamily& fam) {
    Metric ambient;
    if (fam.metric == "euclidean")
        ambient = Metric::euclidean(fam.n);
    else if (fam.metric == "minkowski")
        ambient = Metric::minkowski(fam.n);
    else
        throw GeometryError("family " + fam.id + " carries no metric");
    // d/dy^i = M^k_i d/dx^k
    return Metric::from_matrix(matmul(transpose(fam.to_x), matmul(ambient.g, fam.to_x)));
}

// ---- fields and forms -------------------------------------------------------------------------

namespace {

int single_index(const std::array<std::uint8_t, kMaxDim>& e, int n) {
    int idx = -1;
    for (int j = 0; j < n; ++j) {
        if (e[j] == 0) continue;
        if (e[j] != 1 || idx >= 0) return -1;
        idx = j;
    }
    return idx;
}

int single_xi(std::uint32_t bits, int n) {
    int idx = -1;
    for (int j = 0; j < n; ++j) {
        if (!(bits >> j & 1u)) continue;
        if (idx >= 0) return -1;
        idx = j;
    }
    return idx;
}

Element one(int n) { return Element(n, Scalar(1)); }

}  // namespace

bool is_vector_field(const Element& X) {
    for (auto& [w, c] : X.terms())
        if (w.xi != 0 || single_index(w.d, X.dim()) < 0) return false;
    return true;
}

bool is_one_form(const Element& w) {
    for (auto& [wd, c] : w.terms())
        if (wd.r() != 0 || single_xi(wd.xi, w.dim()) < 0) return false;
    return true;
}

std::vector<Element> field_components(const Element& X) {
    int n = X.dim();
    std::vector<Element> out(n, Element(n));
    for (auto& [w, c] : X.terms()) {
        int j = w.xi == 0 ? single_index(w.d, n) : -1;
        if (j < 0) throw GeometryError("not a vector field: " + X.str());
        Word p = w;
        p.d[j] = 0;
        out[j].add_term(p, c);
    }
    return out;
}

std::vector<Element> form_components(const Element& w) {
    int n = w.dim();
    std::vector<Element> out(n, Element(n));
    for (auto& [wd, c] : w.terms()) {
        int j = wd.r() == 0 ? single_xi(wd.xi, n) : -1;
        if (j < 0) throw GeometryError("not a one-form: " + w.str());
        Word p = wd;
        p.xi = 0;
        out[j].add_term(p, c);
    }
    return out;
}

Element make_field(const std::vector<Element>& comps) {
    int n = static_cast<int>(comps.size());
    Element out(n);
    for (int j = 0; j < n; ++j) out += comps[j] * Element::d(n, j);
    return out;
}

Element make_form(const std::vector<Element>& comps) {
    int n = static_cast<int>(comps.size());
    Element out(n);
    for (int j = 0; j < n; ++j) out += Element::xi(n, j) * comps[j];
    return out;
}

Element times(const Element& h, const Element& X) {
    if (!h.is_polynomial()) throw GeometryError("coefficient is not a function: " + h.str());
    if (is_vector_field(X)) {
        auto c = field_components(X);
        for (auto& e : c) e = h * e;
        return make_field(c);
    }
    // forms and functions commute with functions
    return h * X;
}

Element derivative(const Element& X, const Element& h) {
    auto c = field_components(X);
    Element out(X.dim());
    for (int j = 0; j < X.dim(); ++j)
        if (!c[j].is_zero()) out += c[j] * partial(h, j);
    return out;
}

Element field_bracket(const Element& X, const Element& Y) { return nabla(X, Y) - nabla(Y, X); }

// ---- pairings ---------------------------------------------------------------------------------

Tensor pairing(const Tensor& a, const Tensor& b) {
    Tensor out;
    for (auto& ta : a) {
        for (auto& tb : b) {
            std::size_t p = ta.factors.size();
            if (tb.factors.size() < p) throw GeometryError("pairing: second argument too short");
            bool zero = false;
            for (std::size_t k = 0; k < p; ++k) {
                // onion order: the last factor of a meets the first of b
                const auto& u = ta.factors[p - 1 - k];
                const auto& v = tb.factors[k];
                if (u.form == v.form) throw GeometryError("pairing: field paired with field or form with form");
                if (u.index != v.index) zero = true;
            }
            if (zero) continue;
            TensorWord w{ta.coeff * tb.coeff, {tb.factors.begin() + static_cast<long>(p), tb.factors.end()}};
            if (w.coeff.is_zero()) continue;
            auto it = std::find_if(out.begin(), out.end(), [&](const TensorWord& o) { return o.factors == w.factors; });
            if (it == out.end())
                out.push_back(std::move(w));
            else
                it->coeff += w.coeff;
        }
    }
    std::erase_if(out, [](const TensorWord& w) { return w.coeff.is_zero(); });
    return out;
}

Element pairing(const Element& a, const Element& b) {
    bool field_first = is_vector_field(a);
    const Element& X = field_first ? a : b;
    const Element& w = field_first ? b : a;
    auto xc = field_components(X);
    auto wc = form_components(w);
    Element out(a.dim());
    for (int j = 0; j < a.dim(); ++j) out += xc[j] * wc[j];
    return out;
}

Element star_pairing(const Twist& T, const Element& a, const Element& b) {
    Element out(a.dim());
    for (auto& [u, v] : T.inverse_pair(a, b)) out += pairing(u, v);
    return out;
}

// ---- metric and connection --------------------------------------------------------------------

Element g_eval(const Metric& m, const Element& X, const Element& Y) {
    auto xc = field_components(X), yc = field_components(Y);
    int n = X.dim();
    Element out(n);
    for (int i = 0; i < n; ++i) {
        if (xc[i].is_zero()) continue;
        Element row(n);
        for (int j = 0; j < n; ++j)
            if (!m.g[i][j].is_zero()) row += Scalar(m.g[i][j]) * yc[j];
        out += xc[i] * row;
    }
    return out;
}

Element g_inverse_eval(const Metric& m, const Element& w, const Element& v) {
    auto wc = form_components(w), vc = form_components(v);
    int n = w.dim();
    Element out(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!m.ginv[i][j].is_zero()) out += Scalar(m.ginv[i][j]) * (wc[i] * vc[j]);
    return out;
}

Element g_star(const Metric& m, const Twist& T, const Element& X, const Element& Y) {
    Element out(X.dim());
    for (auto& [u, v] : T.inverse_pair(X, Y)) out += g_eval(m, u, v);
    return out;
}

Element star_derivative(const Twist& T, const Element& X, const Element& h) {
    Element out(X.dim());
    for (auto& [u, v] : T.inverse_pair(X, h)) out += derivative(u, v);
    return out;
}

Element star_bracket(const Twist& T, const Element& X, const Element& Y) {
    Element out(X.dim());
    for (auto& [u, v] : T.inverse_pair(X, Y)) out += field_bracket(u, v);
    return out;
}

Element function_star_field(const Twist& T, const Element& h, const Element& X) {
    Element out(X.dim());
    for (auto& [u, v] : T.inverse_pair(h, X)) out += times(u, v);
    return out;
}

Element field_star_function(const Twist& T, const Element& X, const Element& h) {
    Element out(X.dim());
    for (auto& [u, v] : T.inverse_pair(X, h)) out += times(v, u);
    return out;
}

Element nabla(const Element& X, const Element& Y) {
    auto yc = field_components(Y);
    for (auto& c : yc) c = derivative(X, c);
    return make_field(yc);
}

Element nabla_F(const Twist& T, const Element& X, const Element& Y) {
    Element out(X.dim());
    for (auto& [u, v] : T.inverse_pair(X, Y)) out += nabla(u, v);
    return out;
}

namespace {

std::vector<std::pair<Element, Element>> r_bar(const Twist* T, const Element& a, const Element& b) {
    if (!T) return {{a, b}};
    return T->r_pair(a, b);
}

Element bracket_of(const Twist* T, const Element& X, const Element& Y) {
    return T ? star_bracket(*T, X, Y) : field_bracket(X, Y);
}

}  // namespace

Element torsion(const Connection& nab, const Twist* T, const Element& X, const Element& Y) {
    Element out = nab(X, Y) - bracket_of(T, X, Y);
    for (auto& [y, x] : r_bar(T, Y, X)) out -= nab(y, x);
    return out;
}

Element curvature(const Connection& nab, const Twist* T, const Element& X, const Element& Y, const Element& Z) {
    Element out = nab(X, nab(Y, Z)) - nab(bracket_of(T, X, Y), Z);
    for (auto& [y, x] : r_bar(T, Y, X)) out -= nab(y, nab(x, Z));
    return out;
}

Element torsion_F(const Twist& T, const Element& X, const Element& Y) {
    return torsion([&](const Element& a, const Element& b) { return nabla_F(T, a, b); }, &T, X, Y);
}

Element curvature_F(const Twist& T, const Element& X, const Element& Y, const Element& Z) {
    return curvature([&](const Element& a, const Element& b) { return nabla_F(T, a, b); }, &T, X, Y, Z);
}

namespace {

// a lone factor rides in a pair module as a (x) 1; the legs annihilate 1
PairModule lone(const Element& a) {
    PairModule m;
    m.n = a.dim();
    m.add(a, one(a.dim()));
    return m;
}

std::vector<Element> unlone(const PairModule& m) {
    std::vector<Element> out;
    for (auto& [a, b] : m.terms) out.push_back(b.scalar_part() * a);
    return out;
}

PairModule pair_of(const std::vector<std::pair<Element, Element>>& pairs, int n) {
    PairModule m;
    m.n = n;
    for (auto& [a, b] : pairs) m.add(a, b);
    m.normalize();
    return m;
}

}  // namespace

std::vector<std::array<Element, 3>> inverse_triple(const Twist& T, const Element& X, const Element& Y,
                                                   const Element& Z) {
    // ((Delta (x) id) Fbar) (Fbar (x) 1)
    int n = X.dim();
    PairModule xy = pair_of(T.inverse_pair(X, Y), n);
    std::vector<std::array<Element, 3>> out;
    if (xy.terms.empty()) return out;
    for (auto& [pm, zm] : T.inverse_pair(xy, lone(Z)))
        for (auto& z : unlone(zm))
            for (auto& [a, b] : pm.terms) out.push_back({a, b, z});
    return out;
}

// ---- hypersurface -------------------------------------------------------------------------------

Hypersurface::Hypersurface(const QuadricFamily& fam, Metric m) : fam_(&fam), m_(std::move(m)) {
    int n = fam.n;
    std::vector<Element> grad(n, Element(n)), up(n, Element(n));
    for (int j = 0; j < n; ++j) grad[j] = partial(fam.f, j);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!m_.ginv[i][j].is_zero()) up[i] += Scalar(m_.ginv[i][j]) * grad[j];
    v_perp_ = make_field(up);
    df_ = make_form(grad);
    Element e = reduce(derivative(v_perp_, fam.f));
    if (!e.is_scalar() || e.scalar_part().has_nu() || e.scalar_part().has_q())
        throw GeometryError("E_f = " + e.str(fam.names) + " is not constant on the surface; projections need a circular member");
    e_f_ = e.scalar_part().constant_term();
    if (e_f_.is_zero()) throw GeometryError("E_f vanishes on the surface (the cone): the induced metric is degenerate");
    k_ = GaussRat(1) / e_f_;
}

Element Hypersurface::reduce(const Element& e) const { return reduce_mod_ideal(*fam_, e); }

bool Hypersurface::equal_mod_ideal(const Element& a, const Element& b) const { return reduce(a - b).is_zero(); }

Element Hypersurface::project_normal(const Element& X) const {
    return reduce(times(g_eval(m_, X, v_perp_), v_perp_) * Scalar(k_));
}

Element Hypersurface::project_tangent(const Element& X) const { return reduce(X - project_normal(X)); }

Element Hypersurface::project_normal_star(const Twist& T, const Element& X) const {
    Element h = g_star(m_, T, X, v_perp_) * Scalar(k_);
    return reduce(function_star_field(T, h, v_perp_));
}

Element Hypersurface::second_form(const Element& X, const Element& Y) const { return project_normal(nabla(X, Y)); }

Element Hypersurface::second_form_F(const Twist& T, const Element& X, const Element& Y) const {
    return project_normal(nabla_F(T, X, Y));
}

Element Hypersurface::nabla_t(const Element& X, const Element& Y) const { return project_tangent(nabla(X, Y)); }

Element Hypersurface::nabla_t_F(const Twist& T, const Element& X, const Element& Y) const {
    return project_tangent(nabla_F(T, X, Y));
}

Element Hypersurface::curvature_t(const Element& X, const Element& Y, const Element& Z) const {
    return reduce(curvature([&](const Element& a, const Element& b) { return nabla_t(a, b); }, nullptr, X, Y, Z));
}

Element Hypersurface::curvature_t_F(const Twist& T, const Element& X, const Element& Y, const Element& Z) const {
    return reduce(curvature([&](const Element& a, const Element& b) { return nabla_t_F(T, a, b); }, &T, X, Y, Z));
}

Element Hypersurface::ricci_t(const Element& Y, const Element& Z) const {
    int n = fam_->n;
    Element out(n);
    for (int i = 0; i < n; ++i) {
        Element w = project_tangent(Element::d(n, i));
        out += field_components(curvature_t(w, Y, Z))[i];
    }
    return reduce(out);
}

namespace {

// inverse of a scalar matrix P = D (1 + N) with D a diagonal of units and N nilpotent
std::vector<std::vector<Scalar>> invert_unipotent(std::vector<std::vector<Scalar>> P) {
    std::size_t n = P.size();
    std::vector<Scalar> dinv(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!P[i][i].is_unit()) throw GeometryError("star-dual frame: pairing matrix is not unipotent");
        dinv[i] = P[i][i].inverse();
    }
    // N = D^{-1} P - 1
    std::vector<std::vector<Scalar>> N(n, std::vector<Scalar>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) N[i][j] = dinv[i] * P[i][j] - Scalar(i == j ? 1 : 0);
    auto mul = [&](const auto& A, const auto& B) {
        std::vector<std::vector<Scalar>> C(n, std::vector<Scalar>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k)
                if (!A[i][k].is_zero())
                    for (std::size_t j = 0; j < n; ++j) C[i][j] += A[i][k] * B[k][j];
        return C;
    };
    auto is_zero_matrix = [&](const auto& A) {
        for (auto& row : A)
            for (auto& v : row)
                if (!v.is_zero()) return false;
        return true;
    };
    // (1 + N)^{-1} = sum (-N)^k
    std::vector<std::vector<Scalar>> S(n, std::vector<Scalar>(n)), term(n, std::vector<Scalar>(n));
    for (std::size_t i = 0; i < n; ++i) S[i][i] = term[i][i] = Scalar(1);
    for (std::size_t k = 1;; ++k) {
        term = mul(term, N);
        for (auto& row : term)
            for (auto& v : row) v = -v;
        if (is_zero_matrix(term)) break;
        if (k > n + 1) throw GeometryError("star-dual frame: pairing matrix is not unipotent");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) S[i][j] += term[i][j];
    }
    // P^{-1} = S D^{-1}
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) S[i][j] = S[i][j] * dinv[j];
    return S;
}

}  // namespace

Element Hypersurface::ricci_t_F(const Twist& T, const Element& Y, const Element& Z) const {
    int n = fam_->n;
    // P_ij = <d_i, xi^j>_star; theta^j = sum_k (P^{-1})_kj xi^k gives <d_i, theta^j>_star = delta
    std::vector<std::vector<Scalar>> P(n, std::vector<Scalar>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Element p = star_pairing(T, Element::d(n, i), Element::xi(n, j));
            if (!p.is_scalar()) throw GeometryError("star pairing of frames is not constant");
            P[i][j] = p.scalar_part();
        }
    auto Pinv = invert_unipotent(P);
    Element out(n);
    for (int j = 0; j < n; ++j) {
        Element theta(n);
        for (int k = 0; k < n; ++k)
            if (!Pinv[k][j].is_zero()) theta += Pinv[k][j] * Element::xi(n, k);
        Element e = project_tangent(Element::d(n, j));
        out += star_pairing(T, theta, curvature_t_F(T, e, Y, Z));
    }
    return reduce(out);
}

Element Hypersurface::scalar_t() const {
    int n = fam_->n;
    Element out(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!m_.ginv[i][j].is_zero())
                out += Scalar(m_.ginv[i][j]) *
                       ricci_t(project_tangent(Element::d(n, i)), project_tangent(Element::d(n, j)));
    return reduce(out);
}

Element Hypersurface::scalar_t_F(const Twist& T) const {
    // g^{-1} = g^{-1A} (x)_star g^{-1}_A with g^{-1A} (x) g^{-1}_A = F (g^{-1 alpha} (x) g^{-1}_alpha)
    int n = fam_->n;
    Element out(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (m_.ginv[i][j].is_zero()) continue;
            for (auto& [a, b] : T.forward_pair(Element::d(n, i), Element::d(n, j)))
                out += Scalar(m_.ginv[i][j]) * ricci_t_F(T, project_tangent(a), project_tangent(b));
        }
    return reduce(out);
}

Hypersurface::GaussSides Hypersurface::gauss_sides(const Twist* T, const Element& X, const Element& Y,
                                                   const Element& Z, const Element& W) const {
    auto g = [&](const Element& a, const Element& b) { return T ? g_star(m_, *T, a, b) : g_eval(m_, a, b); };
    auto nab = [&](const Element& a, const Element& b) { return T ? nabla_F(*T, a, b) : nabla(a, b); };
    auto II = [&](const Element& a, const Element& b) { return T ? second_form_F(*T, a, b) : second_form(a, b); };
    GaussSides s;
    s.lhs = reduce(g(curvature(nab, T, X, Y, Z), W));
    Element rhs = g(T ? curvature_t_F(*T, X, Y, Z) : curvature_t(X, Y, Z), W);
    for (auto& [z, y] : r_bar(T, Z, Y)) rhs += g(II(X, z), II(y, W));
    if (!T) {
        rhs -= g(II(Y, Z), II(X, W));
    } else {
        // Rbar_1(1^) Y (x) Rbar_1(2^) Z (x) Rbar_2 X = (F (x) 1)((Delta (x) id) Rbar)(Fbar (x) 1)
        int n = X.dim();
        PairModule yz = pair_of(T->inverse_pair(Y, Z), n);
        if (!yz.terms.empty())
            for (auto& [pm, xm] : T->r_pair(yz, lone(X)))
                for (auto& x : unlone(xm))
                    for (auto& [a, b] : pm.terms)
                        for (auto& [a2, b2] : T->forward_pair(a, b)) rhs -= g(II(a2, b2), II(x, W));
    }
    s.rhs = reduce(rhs);
    return s;
}


// ---- reports ------------------------------------------------------------------------------

namespace {

std::string first_few(const std::vector<std::string>& items, std::size_t max = 4) {
    std::string s;
    for (std::size_t k = 0; k < items.size() && k < max; ++k) s += (k ? "; " : "") + items[k];
    if (items.size() > max) s += "; ... (" + std::to_string(items.size()) + " in all)";
    return s;
}

// comparisons against printed values, exact or modulo the ideal of the surface
class Checks {
public:
    Checks(Report& rep, const EvalContext* ctx, const Hypersurface* S, ChartNames names)
        : rep_(rep), ctx_(ctx), S_(S), names_(std::move(names)) {}

    void anchor(std::string a) { anchor_ = std::move(a); }
    void modulo_ideal(bool on) { mod_ = on; }

    Element reduce(const Element& e) const { return mod_ && S_ ? S_->reduce(e) : e; }
    bool same(const Element& a, const Element& b) const { return reduce(a - b).is_zero(); }
    std::string str(const Element& e) const { return reduce(e).str(names_); }

    // a corrected form that holds turns a mismatch into a discrepancy
    void expect(const std::string& id, const Element& computed, const std::string& printed_text, const Element& printed,
                const std::optional<Element>& corrected = {}, const std::string& why = {}) {
        ReportEntry e;
        e.id = id;
        e.anchor = anchor_;
        e.expected = printed_text;
        e.computed = computed.str(names_);
        if (same(computed, printed)) {
            e.status = Status::Pass;
        } else if (corrected && same(computed, *corrected)) {
            e.status = Status::Discrepancy;
            e.note = why.empty() ? "misprint; the corrected form holds" : why;
        } else {
            e.status = Status::Fail;
            e.note = "difference " + str(computed - printed);
        }
        rep_.add(std::move(e));
    }

    void expect(const std::string& id, const Element& computed, const std::string& printed,
                const std::string& corrected = {}, const std::string& why = {}) {
        std::optional<Element> fix;
        if (!corrected.empty()) fix = evaluate(corrected, *ctx_);
        expect(id, computed, printed, evaluate(printed, *ctx_), fix,
               why.empty() && !corrected.empty() ? "misprint; corrected form " + corrected + " holds" : why);
    }

    void all(const std::string& id, const std::vector<std::string>& bad, int count) {
        rep_.check(id, anchor_, bad.empty(), std::to_string(count) + " cases",
                   bad.empty() ? std::to_string(count) + " cases" : first_few(bad));
    }

    // the printed statement fails on every case while its sign-corrected form holds
    void all_or_corrected(const std::string& id, const std::vector<std::string>& bad,
                          const std::vector<std::string>& bad_corrected, int count, const std::string& why) {
        ReportEntry e;
        e.id = id;
        e.anchor = anchor_;
        e.expected = std::to_string(count) + " cases";
        if (bad.empty()) {
            e.status = Status::Pass;
            e.computed = e.expected;
        } else if (bad_corrected.empty()) {
            e.status = Status::Discrepancy;
            e.computed = std::to_string(count - static_cast<int>(bad.size())) + " of " + e.expected;
            e.note = why;
        } else {
            e.status = Status::Fail;
            e.computed = first_few(bad);
        }
        rep_.add(std::move(e));
    }

    void check(const std::string& id, bool ok, const std::string& expected = {}, const std::string& computed = {}) {
        rep_.check(id, anchor_, ok, expected, computed);
    }

private:
    Report& rep_;
    const EvalContext* ctx_;
    const Hypersurface* S_;
    ChartNames names_;
    std::string anchor_;
    bool mod_ = true;
};

Element scaled(const Element& e, const Rational& r) { return e * Scalar(r); }

std::string pair_name(const std::string& a, const std::string& b) { return "(" + a + ", " + b + ")"; }

}  // namespace

Report cylinder_report(const Rational& c) {
    if (c <= Rational(0)) throw GeometryError("the circular cylinder needs c > 0");
    Rational R;
    try {
        R = exact_sqrt(Rational(2) * c);
    } catch (const std::exception&) {
        throw GeometryError("the radius sqrt(2c) must be rational for the normalized frame");
    }
    auto fam = build_family("c", {{"a", Rational(1)}, {"c", c}});
    Twist T = build_twist(fam, resolve_twist_id(fam, "killing"));
    FamilyContext ctx(fam, &T);
    Hypersurface S(fam, chart_metric(fam));
    const Metric& m = S.metric();
    const int n = fam.n;
    const Rational rinv = Rational(1) / R;

    Report rep("circular cylinder R = " + to_string(R) + ", twist exp(i nu d3 (x) L12)");
    Checks ck(rep, &ctx, &S, fam.names);
    const std::string tag = "cylinder R = " + to_string(R) + ": ";

    Element L = scaled(evaluate("L12", ctx), rinv);
    Element N = scaled(S.normal(), rinv);
    Element d1 = Element::d(n, 0), d2 = Element::d(n, 1), d3 = Element::d(n, 2);
    std::vector<std::pair<std::string, Element>> frame{{"L", L}, {"d3", d3}, {"N", N}};
    std::vector<std::pair<std::string, Element>> coord{{"d1", d1}, {"d2", d2}, {"d3", d3}};
    std::vector<std::pair<std::string, Element>> tangent{{"L", L}, {"d3", d3}};
    std::vector<std::pair<std::string, Element>> both{{"d1", d1}, {"d2", d2}, {"d3", d3}, {"L", L}, {"N", N}};

    ck.anchor(tag + "orthonormal frame");
    {
        std::vector<std::string> bad;
        for (std::size_t i = 0; i < frame.size(); ++i)
            for (std::size_t j = 0; j < frame.size(); ++j) {
                Element gij = g_eval(m, frame[i].second, frame[j].second);
                if (!ck.same(gij, Element(n, Scalar(i == j ? 1 : 0)))) bad.push_back(pair_name(frame[i].first, frame[j].first));
            }
        ck.all("{L, d3, N} is orthonormal on the surface", bad, 9);
        ck.check("L and d3 are tangent", S.reduce(derivative(L, fam.f)).is_zero() && derivative(d3, fam.f).is_zero());
    }

    ck.anchor(tag + "flat connection");
    ck.modulo_ideal(false);
    {
        std::vector<std::string> bad;
        for (auto& [a, X] : coord)
            for (auto& [b, Y] : coord)
                if (!nabla(X, Y).is_zero()) bad.push_back(pair_name(a, b));
        ck.all("nabla_X Y = 0 on coordinate fields", bad, 9);
        Element mN = scaled(N, -rinv), rL = scaled(L, rinv), rN = scaled(N, rinv);
        ck.expect("nabla_L L", nabla(L, L), "-(1/R) N", mN);
        ck.expect("nabla_L N", nabla(L, N), "(1/R) L", rL);
        ck.expect("nabla_N L", nabla(N, L), "(1/R) L", rL);
        ck.expect("nabla_N N", nabla(N, N), "(1/R) N", rN);
        bad.clear();
        for (auto& [a, X] : frame)
            for (auto& [b, Y] : frame)
                if ((a == "d3" || b == "d3") && !nabla(X, Y).is_zero()) bad.push_back(pair_name(a, b));
        ck.all("nabla vanishes on the remaining frame pairs", bad, 5);
    }

    ck.anchor(tag + "second fundamental form");
    ck.modulo_ideal(true);
    Element kappa1 = g_eval(m, S.second_form(d3, d3), N), kappa2 = g_eval(m, S.second_form(L, L), N);
    {
        ck.expect("II(L, L)", S.second_form(L, L), "-(1/R) N", scaled(N, -rinv));
        std::vector<std::string> bad;
        for (auto& [a, X] : tangent)
            for (auto& [b, Y] : tangent)
                if ((a == "d3" || b == "d3") && !S.second_form(X, Y).is_zero()) bad.push_back(pair_name(a, b));
        ck.all("II vanishes on the pairs containing d3", bad, 3);
        Element zero(n), k2(n, Scalar(-rinv));
        ck.expect("principal curvature kappa1 along d3", kappa1, "0", zero);
        ck.expect("principal curvature kappa2 along L, outward normal", kappa2, "-1/R", k2);
        // the same section also states the opposite sign after the twisted second form
        ck.expect("principal curvature kappa2 as restated with the twisted second form", kappa2, "1/R",
                  Element(n, Scalar(rinv)), k2,
                  "the outward normal N gives -1/R; +1/R belongs to the inward normal -N");
        ck.expect("Gauss curvature kappa1 kappa2", S.reduce(kappa1 * kappa2), "0", zero);
        ck.expect("mean curvature (kappa1 + kappa2)/2", scaled(kappa1 + kappa2, Rational(1, 2)), "-1/(2R)",
                  Element(n, Scalar(-rinv / Rational(2))));
        bad.clear();
        for (auto& [a, X] : tangent)
            for (auto& [b, Y] : tangent)
                for (auto& [cn, Z] : tangent)
                    if (!S.curvature_t(X, Y, Z).is_zero()) bad.push_back(a + "," + b + "," + cn);
        ck.all("R_t = 0 on the tangent frame", bad, 8);
    }

    ck.anchor(tag + "twisted connection");
    {
        std::vector<std::string> bad;
        ck.modulo_ideal(false);
        for (auto& [a, X] : both)
            for (auto& [b, Y] : both)
                if (!ck.same(nabla_F(T, X, Y), nabla(X, Y))) bad.push_back(pair_name(a, b));
        ck.all("nabla^F_X Y = nabla_X Y on {d1, d2, d3, L, N}", bad, 25);
        bad.clear();
        for (auto& [a, X] : both)
            for (auto& [b, Y] : both)
                if (!torsion_F(T, X, Y).is_zero()) bad.push_back(pair_name(a, b));
        ck.all("twisted torsion vanishes", bad, 25);
        bad.clear();
        for (auto& [a, X] : coord)
            for (auto& [b, Y] : coord)
                for (auto& [cn, Z] : frame)
                    if (!curvature_F(T, X, Y, Z).is_zero()) bad.push_back(a + "," + b + "," + cn);
        ck.all("twisted ambient curvature vanishes", bad, 27);
        ck.modulo_ideal(true);
        std::vector<std::string> bad_t, bad_ii, bad_r, bad_proj;
        for (auto& [a, X] : tangent)
            for (auto& [b, Y] : tangent) {
                if (!ck.same(S.nabla_t_F(T, X, Y), S.nabla_t(X, Y))) bad_t.push_back(pair_name(a, b));
                if (!ck.same(S.second_form_F(T, X, Y), S.second_form(X, Y))) bad_ii.push_back(pair_name(a, b));
                for (auto& [cn, Z] : tangent)
                    if (!S.curvature_t_F(T, X, Y, Z).is_zero()) bad_r.push_back(a + "," + b + "," + cn);
            }
        for (auto& [a, X] : both)
            if (!ck.same(S.project_normal_star(T, X), S.project_normal(X))) bad_proj.push_back(a);
        ck.all("nabla^F_t = nabla_t on the tangent frame", bad_t, 4);
        ck.all("II^F = II on the tangent frame", bad_ii, 4);
        ck.all("twisted tangential curvature vanishes", bad_r, 8);
        ck.all("twisted normal projection equals the classical one", bad_proj, 5);
        ck.expect("kappa2 from the twisted second form", g_eval(m, S.second_form_F(T, L, L), N), "-1/R",
                  Element(n, Scalar(-rinv)));
    }

    ck.anchor(tag + "Gauss equation");
    {
        std::vector<std::string> bad, bad_c;
        int count = 0;
        for (auto& [a, X] : tangent)
            for (auto& [b, Y] : tangent)
                for (auto& [cn, Z] : tangent)
                    for (auto& [dn, W] : tangent) {
                        ++count;
                        std::string id = a + "," + b + "," + cn + "," + dn;
                        auto s = S.gauss_sides(&T, X, Y, Z, W);
                        if (!ck.same(s.lhs, s.rhs)) bad.push_back(id);
                        auto k = S.gauss_sides(nullptr, X, Y, Z, W);
                        if (!ck.same(k.lhs, k.rhs)) bad_c.push_back(id);
                    }
        ck.all("twisted Gauss equation on tangent 4-tuples", bad, count);
        ck.all("classical Gauss equation on tangent 4-tuples", bad_c, count);
    }
    return rep;
}

Report hyperboloid_report(const Rational& c) {
    if (c == Rational(0)) throw GeometryError("the cone c = 0 has a degenerate induced metric; geometry is refused");
    auto fam = build_family("fgh", {{"a", Rational(1)}, {"b", Rational(1)}, {"c", c}});
    Twist T = build_twist(fam, resolve_twist_id(fam, "jordanian"));
    FamilyContext ctx(fam, &T);
    Hypersurface S(fam, chart_metric(fam));
    const Metric& m = S.metric();
    const int n = fam.n;
    const Element& V = S.normal();
    const Rational half_c = Rational(1) / (Rational(2) * c);

    Report rep("circular hyperboloid c = " + to_string(c) + ", Jordanian twist");
    Checks ck(rep, &ctx, &S, fam.names);
    const std::string tag = "hyperboloid c = " + to_string(c) + ": ";
    const std::vector<std::string> names{"E", "Ep", "H"};
    std::map<std::string, Element> gen;
    for (auto& nm : names) gen.emplace(nm, evaluate(nm, ctx));
    auto each_pair = [&](auto&& fn) {
        for (auto& a : names)
            for (auto& b : names) fn(a, b, gen.at(a), gen.at(b));
    };
    auto each_triple = [&](auto&& fn) {
        for (auto& a : names)
            for (auto& b : names)
                for (auto& cn : names) fn(a + "," + b + "," + cn, gen.at(a), gen.at(b), gen.at(cn));
    };

    struct Row {
        const char *a, *b, *printed, *corrected, *why;
    };
    const char* why_hh = "misprint; pairing the tangency relation y3 E - y1 Ep - y2 H = 0 with H forces -4 y1 y3";
    const char* why_eph = "misprint; pairing the tangency relation y3 E - y1 Ep - y2 H = 0 with Ep forces +2 y2 y3";

    ck.anchor(tag + "metric on H, E, Ep");
    {
        const Row rows[] = {
            {"E", "E", "y1^2", "", ""},
            {"Ep", "Ep", "y3^2", "", ""},
            {"H", "H", "-8*y1*y3", "-4*y1*y3", why_hh},
            {"E", "Ep", "2*c + y2^2", "", ""},
            {"E", "H", "-2*y1*y2", "", ""},
            {"Ep", "H", "-2*y2*y3", "2*y2*y3", why_eph},
            {"Ep", "E", "2*c + y2^2", "", ""},
            {"H", "E", "-2*y1*y2", "", ""},
            {"H", "Ep", "-2*y2*y3", "2*y2*y3", why_eph},
        };
        for (auto& r : rows)
            ck.expect("g" + pair_name(r.a, r.b), g_eval(m, gen.at(r.a), gen.at(r.b)), r.printed, r.corrected, r.why);
        ck.check("tangency relation y3 E - y1 Ep - y2 H = 0",
                 S.reduce(evaluate("y3*E - y1*Ep - y2*H", ctx)).is_zero());
    }

    ck.anchor(tag + "twisted metric on H, E, Ep");
    {
        const Row rows[] = {
            {"H", "H", "-8*y1*y3", "-4*y1*y3", why_hh},
            {"H", "E", "-2*y1*y2", "", ""},
            {"H", "Ep", "-2*y2*y3", "2*y2*y3", why_eph},
            {"E", "E", "y1^2", "", ""},
            {"E", "Ep", "2*c + y2^2 - 2*i*nu*y1*y2 - 2*nu^2*y1^2", "", ""},
            {"E", "H", "-2*y1*y2 + 2*i*nu*y1^2", "", ""},
            {"Ep", "E", "2*c + y2^2", "", ""},
            {"Ep", "Ep", "y3^2", "y3^2 - 2*i*nu*y2*y3",
             "misprint; the first order term -(i nu/2) g(H > Ep, E > Ep) = -2 i nu y2 y3 is missing"},
            {"Ep", "H", "-2*y2*y3 - 2*i*nu*(2*c + y2^2) + 2*i*nu*y2*y3", "2*y2*y3 - 2*i*nu*(2*c + y2^2)",
             "misprint; the classical part has the sign of g(Ep, H) and no 2 i nu y2 y3 term occurs"},
        };
        for (auto& r : rows)
            ck.expect("g*" + pair_name(r.a, r.b), g_star(m, T, gen.at(r.a), gen.at(r.b)), r.printed, r.corrected,
                      r.why);
    }

    ck.anchor(tag + "twisted Levi-Civita connection");
    ck.modulo_ideal(false);
    {
        const Row rows[] = {
            {"E", "E", "-2*y1*dt3", "", ""},
            {"E", "Ep", "-2*y1*dt1 - 2*y2*dt2 + 4*i*nu*dt3 + 4*nu^2*y1*dt3",
             "-2*y1*dt1 - 2*y2*dt2 + 4*i*nu*y2*dt3 + 4*nu^2*y1*dt3",
             "misprint; derivatives of linear fields have linear coefficients; the term 4 i nu dt3 lacks the factor y2"},
            {"E", "H", "4*y2*dt3 - 4*i*nu*y1*dt3", "", ""},
            {"Ep", "E", "-2*y3*dt3 - 2*y2*dt2", "", ""},
            {"Ep", "Ep", "-2*y3*dt1 + 4*i*nu*y2*dt1", "", ""},
            {"Ep", "H", "-4*y2*dt1 + 4*i*nu*(y2*dt2 + y3*dt3)", "", ""},
            {"H", "E", "2*y1*dt2", "", ""},
            {"H", "Ep", "-2*y3*dt2", "", ""},
            {"H", "H", "4*y1*dt1 + 4*y3*dt3", "", ""},
        };
        for (auto& r : rows)
            ck.expect("nabla^F_" + std::string(r.a) + " " + r.b, nabla_F(T, gen.at(r.a), gen.at(r.b)), r.printed,
                      r.corrected, r.why);

        std::vector<std::string> bad_t, bad_r, bad_m, bad_v;
        each_pair([&](auto& a, auto& b, auto& X, auto& Y) {
            if (!torsion_F(T, X, Y).is_zero()) bad_t.push_back(pair_name(a, b));
        });
        each_triple([&](const std::string& id, auto& X, auto& Y, auto& Z) {
            if (!curvature_F(T, X, Y, Z).is_zero()) bad_r.push_back(id);
            Element lhs = star_derivative(T, X, g_star(m, T, Y, Z));
            Element rhs = g_star(m, T, nabla_F(T, X, Y), Z);
            for (auto& [y, x] : r_bar(&T, Y, X)) rhs += g_star(m, T, y, nabla_F(T, x, Z));
            if (!(lhs - rhs).is_zero()) bad_m.push_back(id);
        });
        for (auto& nm : names)
            if (!field_bracket(gen.at(nm), V).is_zero()) bad_v.push_back(nm);
        ck.all("twisted torsion vanishes on H, E, Ep", bad_t, 9);
        ck.all("twisted ambient curvature vanishes on H, E, Ep", bad_r, 27);
        ck.all("twisted metric compatibility on H, E, Ep", bad_m, 27);
        ck.all("the normal V is invariant under H, E, Ep", bad_v, 3);
    }

    ck.anchor(tag + "second fundamental form");
    ck.modulo_ideal(true);
    {
        std::vector<std::string> bad, bad_f, bad_fs, bad_rigid;
        each_pair([&](auto& a, auto& b, auto& X, auto& Y) {
            Element g = g_eval(m, X, Y), gs = g_star(m, T, X, Y);
            if (!ck.same(S.second_form(X, Y), scaled(times(g, V), -half_c))) bad.push_back(pair_name(a, b));
            Element iif = S.second_form_F(T, X, Y);
            if (!ck.same(iif, scaled(times(gs, V), -half_c))) bad_f.push_back(pair_name(a, b));
            if (!ck.same(iif, scaled(function_star_field(T, gs, V), -half_c))) bad_fs.push_back(pair_name(a, b));
            Element pulled(n);
            for (auto& [x, y] : T.inverse_pair(X, Y)) pulled += S.second_form(x, y);
            if (!ck.same(iif, pulled)) bad_rigid.push_back(pair_name(a, b));
        });
        ck.all("II(X, Y) = -(1/2c) g(X, Y) V", bad, 9);
        ck.all("II^F(X, Y) = -(1/2c) g*(X, Y) V", bad_f, 9);
        ck.all("II^F(X, Y) = -(1/2c) g*(X, Y) * V", bad_fs, 9);
        ck.all("II^F equals II on the inverse-twisted arguments", bad_rigid, 9);
        std::vector<std::string> bad_p;
        std::vector<std::pair<std::string, Element>> probes{
            {"dt1", Element::d(n, 0)}, {"dt2", Element::d(n, 1)}, {"dt3", Element::d(n, 2)}, {"V", V}};
        for (auto& nm : names) probes.emplace_back(nm, gen.at(nm));
        probes.emplace_back("y2*dt1", evaluate("y2*dt1", ctx));
        for (auto& [a, X] : probes)
            if (!ck.same(S.project_normal_star(T, X), S.project_normal(X))) bad_p.push_back(a);
        ck.all("twisted normal projection equals the classical one", bad_p, static_cast<int>(probes.size()));
    }

    ck.anchor(tag + "curvature");
    {
        const std::string sign_note =
            "sign: the defining curvature and trace give the opposite sign; for c < 0 the surface is a "
            "hyperbolic plane, whose curvature is negative";
        std::vector<std::string> bad, bad_neg, bad_f, bad_fneg, bad_rigid;
        each_triple([&](const std::string& id, auto& X, auto& Y, auto& Z) {
            Element closed = scaled(times(g_eval(m, X, Z), Y) - times(g_eval(m, Y, Z), X), half_c);
            Element r = S.curvature_t(X, Y, Z);
            if (!ck.same(r, closed)) bad.push_back(id);
            if (!ck.same(r, scaled(closed, Rational(-1)))) bad_neg.push_back(id);
            Element rf = S.curvature_t_F(T, X, Y, Z);
            Element closed_f = scaled(field_star_function(T, X, g_star(m, T, Y, Z)), Rational(-1));
            for (auto& [y, x] : r_bar(&T, Y, X)) closed_f += field_star_function(T, y, g_star(m, T, x, Z));
            closed_f = scaled(closed_f, half_c);
            if (!ck.same(rf, closed_f)) bad_f.push_back(id);
            if (!ck.same(rf, scaled(closed_f, Rational(-1)))) bad_fneg.push_back(id);
            Element pulled(n);
            for (auto& t : inverse_triple(T, X, Y, Z)) pulled += S.curvature_t(t[0], t[1], t[2]);
            if (!ck.same(rf, pulled)) bad_rigid.push_back(id);
        });
        ck.all_or_corrected("R_t(X, Y, Z) = [Y g(X, Z) - X g(Y, Z)]/2c", bad, bad_neg, 27, sign_note);
        ck.all_or_corrected("R^F_t(X, Y, Z) = [(Rbar1 Y) * g*(Rbar2 X, Z) - X * g*(Y, Z)]/2c", bad_f, bad_fneg, 27,
                            sign_note);
        ck.all("R^F_t equals R_t on the inverse-twisted arguments", bad_rigid, 27);

        std::vector<std::string> bad_ric, bad_ric_neg, bad_ricf, bad_ricf_neg;
        each_pair([&](auto& a, auto& b, auto& Y, auto& Z) {
            Element g = scaled(g_eval(m, Y, Z), half_c), gs = scaled(g_star(m, T, Y, Z), half_c);
            Element ric = S.ricci_t(Y, Z), ricf = S.ricci_t_F(T, Y, Z);
            if (!ck.same(ric, scaled(g, Rational(-1)))) bad_ric.push_back(pair_name(a, b));
            if (!ck.same(ric, g)) bad_ric_neg.push_back(pair_name(a, b));
            if (!ck.same(ricf, scaled(gs, Rational(-1)))) bad_ricf.push_back(pair_name(a, b));
            if (!ck.same(ricf, gs)) bad_ricf_neg.push_back(pair_name(a, b));
        });
        ck.all_or_corrected("Ric_t(Y, Z) = -g(Y, Z)/2c", bad_ric, bad_ric_neg, 9, sign_note);
        ck.all_or_corrected("Ric^F_t(Y, Z) = -g*(Y, Z)/2c", bad_ricf, bad_ricf_neg, 9, sign_note);
        Element minus(n, Scalar(Rational(-1) / c)), plus(n, Scalar(Rational(1) / c));
        ck.expect("scalar curvature of the surface", S.scalar_t(), "-1/c", minus, plus, sign_note);
        ck.expect("twisted scalar curvature of the surface", S.scalar_t_F(T), "-1/c", minus, plus, sign_note);
    }

    ck.anchor(tag + "Gauss equation");
    {
        std::vector<std::string> bad, bad_c, bad_lhs;
        int count = 0;
        for (auto& a : names)
            for (auto& b : names)
                for (auto& cn : names)
                    for (auto& dn : names) {
                        ++count;
                        std::string id = a + "," + b + "," + cn + "," + dn;
                        auto& X = gen.at(a);
                        auto& Y = gen.at(b);
                        auto& Z = gen.at(cn);
                        auto& W = gen.at(dn);
                        auto s = S.gauss_sides(&T, X, Y, Z, W);
                        if (!s.lhs.is_zero()) bad_lhs.push_back(id);
                        if (!ck.same(s.lhs, s.rhs)) bad.push_back(id);
                        auto k = S.gauss_sides(nullptr, X, Y, Z, W);
                        if (!ck.same(k.lhs, k.rhs)) bad_c.push_back(id);
                    }
        ck.all("ambient side g*(R^F(X, Y, Z), W) vanishes", bad_lhs, count);
        ck.all("twisted Gauss equation on 4-tuples from {E, Ep, H}", bad, count);
        ck.all("classical Gauss equation on 4-tuples from {E, Ep, H}", bad_c, count);
    }
    return rep;
}

Report hyperboloid_frame_report() {
    Report rep("orthogonal frames on the circular hyperboloids");
    const int n = 3;
    auto x = [&](int i) { return Element::x(n, i); };
    auto d = [&](int i) { return Element::d(n, i); };
    auto xi = [&](int i) { return Element::xi(n, i); };
    Metric mk = Metric::minkowski(n);
    Element rho2 = x(0) * x(0) + x(1) * x(1);
    Element E = rho2 - x(2) * x(2);
    Element f = scaled(E, Rational(1, 2));
    std::vector<Element> v{x(0) * d(1) - x(1) * d(0), rho2 * d(2) + x(2) * (x(0) * d(0) + x(1) * d(1)),
                           x(0) * d(0) + x(1) * d(1) + x(2) * d(2)};
    // coframe scaled by rho^2, E rho^2 and E
    std::vector<Element> theta{x(0) * xi(1) - x(1) * xi(0), x(2) * (x(0) * xi(0) + x(1) * xi(1)) - rho2 * xi(2),
                               x(0) * xi(0) + x(1) * xi(1) - x(2) * xi(2)};
    std::vector<Element> diag{rho2, Element(n, Scalar(-1)) * E * rho2, E};
    std::vector<Element> scale{rho2, E * rho2, E};

    Checks ck(rep, nullptr, nullptr, ChartNames{});
    ck.modulo_ideal(false);
    ck.anchor("hyperboloid frames: Cartesian identities");
    {
        std::vector<std::string> bad_g, bad_dual, bad_dual_fixed;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                std::string id = "(v" + std::to_string(i + 1) + ", v" + std::to_string(j + 1) + ")";
                Element want = i == j ? diag[i] : Element(n);
                if (!(g_eval(mk, v[i], v[j]) - want).is_zero()) bad_g.push_back(id);
                Element want_dual = i == j ? scale[i] : Element(n);
                if (!(pairing(v[j], theta[i]) - want_dual).is_zero()) bad_dual.push_back(id);
                Element fixed = i == 1 ? Element(n, Scalar(-1)) * theta[i] : theta[i];
                if (!(pairing(v[j], fixed) - want_dual).is_zero()) bad_dual_fixed.push_back(id);
            }
        ck.all("g(v_i, v_j) = diag(rho^2, -E rho^2, E)", bad_g, 9);
        ck.all_or_corrected("scaled coframe is dual to v_1, v_2, v_3", bad_dual, bad_dual_fixed, 9,
                            "misprint; theta^2 has the wrong overall sign: <v2, x3(x1 xi1 + x2 xi2) - rho^2 xi3> = -E rho^2");
        ck.check("v1 and v2 annihilate f", derivative(v[0], f).is_zero() && derivative(v[1], f).is_zero());
        ck.check("v3 = x^i d_i is the gradient of f", (derivative(v[2], f) - E).is_zero());
    }

    for (int sgn : {1, -1}) {
        Rational c(sgn);
        auto fam = build_family("fgh", {{"a", Rational(1)}, {"b", Rational(1)}, {"c", c}});
        Hypersurface S(fam, chart_metric(fam));
        const Metric& m = S.metric();
        FamilyContext ctx(fam, nullptr);
        Checks cc(rep, &ctx, &S, fam.names);
        cc.anchor("hyperboloid frames c = " + to_string(c));
        std::vector<Element> w;
        for (auto& e : v) w.push_back(to_chart(fam, e));
        std::vector<std::string> bad_chart, bad_ii;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (!(g_eval(m, w[i], w[j]) - to_chart(fam, g_eval(mk, v[i], v[j]))).is_zero())
                    bad_chart.push_back("(v" + std::to_string(i + 1) + ", v" + std::to_string(j + 1) + ")");
        cc.all("chart metric agrees with the Cartesian one on the frame", bad_chart, 9);
        cc.check("v3 is the normal V", (w[2] - S.normal()).is_zero());
        cc.check("E = 2c on the surface", cc.same(to_chart(fam, E), Element(n, Scalar(Rational(2) * c))));
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                Element want = scaled(times(g_eval(m, w[a], w[b]), S.normal()), Rational(-1) / (Rational(2) * c));
                if (!cc.same(S.second_form(w[a], w[b]), want))
                    bad_ii.push_back("(v" + std::to_string(a + 1) + ", v" + std::to_string(b + 1) + ")");
            }
        cc.all("II(v_a, v_b) = -(1/2c) g(v_a, v_b) V", bad_ii, 4);
        Element r2 = to_chart(fam, rho2);
        // kappa1 = -sign(c)/sqrt|2c| and kappa2 = 1/sqrt|2c| in the normalized frame
        cc.check("g(II(v1, v1), V) = -rho^2", cc.same(g_eval(m, S.second_form(w[0], w[0]), S.normal()),
                                                       scaled(r2, Rational(-1))));
        cc.check("g(II(v2, v2), V) = 2c rho^2", cc.same(g_eval(m, S.second_form(w[1], w[1]), S.normal()),
                                                        scaled(r2, Rational(2) * c)));
        cc.check("induced metric is " + std::string(sgn > 0 ? "Lorentzian" : "Riemannian"),
                 cc.same(g_eval(m, w[1], w[1]), scaled(r2, Rational(-2) * c)));
    }

    ck.anchor("hyperboloid frames: cone");
    bool refused = false;
    try {
        auto cone = build_family("fgh", {{"a", Rational(1)}, {"b", Rational(1)}, {"c", Rational(0)}});
        Hypersurface S(cone, chart_metric(cone));
    } catch (const GeometryError&) {
        refused = true;
    }
    ck.check("the cone c = 0 is refused (degenerate induced metric)", refused);
    return rep;
}

Report geometry_report(const std::string& family_id, const std::map<std::string, Rational>& params) {
    auto param = [&](const std::string& k) -> std::optional<Rational> {
        auto it = params.find(k);
        if (it == params.end()) return std::nullopt;
        return it->second;
    };
    auto require_one = [&](const char* k) {
        if (auto v = param(k); v && *v != Rational(1))
            throw GeometryError("geometry covers only the circular members (" + std::string(k) + " = 1)");
    };
    if (family_id == "c") {
        require_one("a");
        return cylinder_report(param("c").value_or(Rational(1, 2)));
    }
    if (family_id == "f" || family_id == "g" || family_id == "fgh") {
        require_one("a");
        require_one("b");
        std::vector<Rational> cs;
        if (family_id == "f") cs = {Rational(1)};
        if (family_id == "g") cs = {Rational(-1)};
        if (auto v = param("c")) {
            if (!cs.empty() && cs[0] != *v) throw GeometryError("family " + family_id + " fixes c = " + to_string(cs[0]));
            cs = {*v};
        }
        if (cs.empty()) cs = {Rational(1), Rational(-1)};
        Report rep("geometry of the circular hyperboloids");
        for (auto& c : cs) rep.append(hyperboloid_report(c));
        rep.append(hyperboloid_frame_report());
        return rep;
    }
    if (family_id == "h") throw GeometryError("the cone c = 0 has a degenerate induced metric; geometry is refused");
    throw GeometryError("no geometry suite for family " + family_id + "; available: c, f, g, fgh");
}

}  // namespace twistcalc
