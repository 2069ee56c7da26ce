#include "twistcalc/symmetry.hpp"

#include <bit>
#include <stdexcept>

namespace twistcalc {

Matrix zero_matrix(int rows, int cols) { return Matrix(rows, std::vector<GaussRat>(cols)); }

Matrix identity_matrix(int n) {
    Matrix m = zero_matrix(n, n);
    for (int i = 0; i < n; ++i) m[i][i] = GaussRat(1);
    return m;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    int r = static_cast<int>(a.size()), k = static_cast<int>(b.size());
    int c = k ? static_cast<int>(b[0].size()) : 0;
    Matrix m = zero_matrix(r, c);
    for (int i = 0; i < r; ++i)
        for (int l = 0; l < k; ++l) {
            if (a[i][l].is_zero()) continue;
            for (int j = 0; j < c; ++j) m[i][j] += a[i][l] * b[l][j];
        }
    return m;
}

Matrix transpose(const Matrix& a) {
    if (a.empty()) return {};
    Matrix m = zero_matrix(static_cast<int>(a[0].size()), static_cast<int>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[0].size(); ++j) m[j][i] = a[i][j];
    return m;
}

namespace {

// row echelon in place, returns pivot columns
std::vector<int> echelon(Matrix& m, int ncols) {
    std::vector<int> piv;
    int rows = static_cast<int>(m.size());
    int r = 0;
    for (int c = 0; c < ncols && r < rows; ++c) {
        int sel = -1;
        for (int i = r; i < rows; ++i)
            if (!m[i][c].is_zero()) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        std::swap(m[r], m[sel]);
        GaussRat inv = m[r][c].inverse();
        for (auto& v : m[r]) v *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || m[i][c].is_zero()) continue;
            GaussRat f = m[i][c];
            for (std::size_t j = 0; j < m[i].size(); ++j) m[i][j] -= f * m[r][j];
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

}  // namespace

int rank(Matrix m) {
    if (m.empty()) return 0;
    return static_cast<int>(echelon(m, static_cast<int>(m[0].size())).size());
}

std::optional<std::vector<GaussRat>> solve(Matrix m, std::vector<GaussRat> rhs) {
    int rows = static_cast<int>(m.size());
    int cols = rows ? static_cast<int>(m[0].size()) : 0;
    for (int i = 0; i < rows; ++i) m[i].push_back(rhs[i]);
    auto piv = echelon(m, cols);
    for (int i = static_cast<int>(piv.size()); i < rows; ++i)
        if (!m[i][cols].is_zero()) return std::nullopt;
    std::vector<GaussRat> x(cols);
    for (std::size_t k = 0; k < piv.size(); ++k) x[piv[k]] = m[k][cols];
    return x;
}

std::optional<Matrix> inverse(const Matrix& a) {
    int n = static_cast<int>(a.size());
    Matrix m = a;
    for (int i = 0; i < n; ++i) {
        m[i].resize(2 * n);
        m[i][n + i] = GaussRat(1);
    }
    auto piv = echelon(m, n);
    if (static_cast<int>(piv.size()) != n) return std::nullopt;
    Matrix r = zero_matrix(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r[i][j] = m[i][n + j];
    return r;
}

AffineField::AffineField(int dim) : n(dim), A(zero_matrix(dim, dim)), t(dim) {}

AffineField AffineField::from_element(const Element& e) {
    AffineField X(e.dim());
    for (auto& [w, c] : e.terms()) {
        if (!c.is_constant()) throw std::invalid_argument("vector field coefficient depends on nu");
        if (w.p() != 0 || w.r() != 1 || w.q() > 1) throw std::invalid_argument("not an affine vector field");
        int j = 0;
        while (w.d[j] == 0) ++j;
        if (w.q() == 0) {
            X.t[j] += c.constant_term();
        } else {
            int i = 0;
            while (w.x[i] == 0) ++i;
            X.A[j][i] += c.constant_term();
        }
    }
    return X;
}

Element AffineField::to_element() const {
    Element e(n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            if (A[j][i].is_zero()) continue;
            Word w;
            w.x[i] = 1;
            w.d[j] = 1;
            e.add_term(w, Scalar(A[j][i]));
        }
        if (!t[j].is_zero()) e.add_term(Word::d_pow(j), Scalar(t[j]));
    }
    return e;
}

bool AffineField::is_zero() const {
    for (auto& row : A)
        for (auto& v : row)
            if (!v.is_zero()) return false;
    for (auto& v : t)
        if (!v.is_zero()) return false;
    return true;
}

AffineField AffineField::operator-() const {
    AffineField r = *this;
    r *= GaussRat(-1);
    return r;
}

AffineField& AffineField::operator+=(const AffineField& o) {
    if (n == 0) *this = AffineField(o.n);
    if (o.n != n) throw std::invalid_argument("dimension mismatch");
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) A[j][i] += o.A[j][i];
        t[j] += o.t[j];
    }
    return *this;
}

AffineField& AffineField::operator*=(const GaussRat& c) {
    for (auto& row : A)
        for (auto& v : row) v *= c;
    for (auto& v : t) v *= c;
    return *this;
}

AffineField lie_bracket(const AffineField& X, const AffineField& Y) {
    if (X.n != Y.n) throw std::invalid_argument("dimension mismatch");
    int n = X.n;
    AffineField Z(n);
    Matrix yx = matmul(Y.A, X.A), xy = matmul(X.A, Y.A);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) Z.A[j][i] = yx[j][i] - xy[j][i];
        GaussRat s;
        for (int i = 0; i < n; ++i) s += Y.A[j][i] * X.t[i] - X.A[j][i] * Y.t[i];
        Z.t[j] = s;
    }
    return Z;
}

Element act_word(const AffineField& X, const Word& w, int n) {
    Element out(n);
    // forms
    for (int j = 0; j < n; ++j) {
        if (!(w.xi >> j & 1u)) continue;
        std::uint32_t rest = w.xi & ~(1u << j);
        for (int i = 0; i < n; ++i) {
            const GaussRat& a = X.A[j][i];
            if (a.is_zero() || (rest >> i & 1u)) continue;
            int lo = std::min(i, j), hi = std::max(i, j);
            std::uint32_t between = hi - lo > 1 ? (((1u << hi) - 1u) & ~((1u << (lo + 1)) - 1u)) : 0u;
            int s = std::popcount(rest & between);
            Word v = w;
            v.xi = rest | (1u << i);
            out.add_term(v, Scalar(s % 2 ? -a : a));
        }
    }
    // coordinates
    for (int j = 0; j < n; ++j) {
        if (w.x[j] == 0) continue;
        GaussRat mult(static_cast<long>(w.x[j]));
        Word base = w;
        base.x[j]--;
        for (int i = 0; i < n; ++i) {
            if (X.A[j][i].is_zero()) continue;
            Word v = base;
            v.x[i]++;
            out.add_term(v, Scalar(mult * X.A[j][i]));
        }
        if (!X.t[j].is_zero()) out.add_term(base, Scalar(mult * X.t[j]));
    }
    // derivatives transform contragrediently
    for (int j = 0; j < n; ++j) {
        if (w.d[j] == 0) continue;
        GaussRat mult(-static_cast<long>(w.d[j]));
        Word base = w;
        base.d[j]--;
        for (int i = 0; i < n; ++i) {
            if (X.A[i][j].is_zero()) continue;
            Word v = base;
            v.d[i]++;
            out.add_term(v, Scalar(mult * X.A[i][j]));
        }
    }
    return out;
}

Element act(const AffineField& X, const Element& a) {
    Element out(a.dim());
    for (auto& [w, c] : a.terms()) {
        Element t = act_word(X, w, a.dim());
        out += t * c;
    }
    return out;
}

Element act_sequence(const std::vector<const AffineField*>& gs, const Element& a) {
    Element r = a;
    for (auto it = gs.rbegin(); it != gs.rend(); ++it) r = act(**it, r);
    return r;
}

std::optional<GaussRat> eigenvalue(const AffineField& X, const Word& w, int n) {
    Element e = act_word(X, w, n);
    if (e.is_zero()) return GaussRat(0);
    if (e.size() != 1 || !(e.terms().begin()->first == w)) return std::nullopt;
    const Scalar& c = e.terms().begin()->second;
    if (!c.is_constant()) return std::nullopt;
    return c.constant_term();
}

int LieAlgebraBasis::find(const std::string& name) const {
    for (std::size_t k = 0; k < gens.size(); ++k)
        if (gens[k].name == name) return static_cast<int>(k);
    return -1;
}

const AffineField& LieAlgebraBasis::get(const std::string& name) const {
    int k = find(name);
    if (k < 0) throw std::out_of_range("unknown generator " + name);
    return gens[k].field;
}

namespace {

std::vector<GaussRat> flatten(const AffineField& X) {
    std::vector<GaussRat> v;
    for (auto& row : X.A) v.insert(v.end(), row.begin(), row.end());
    v.insert(v.end(), X.t.begin(), X.t.end());
    return v;
}

}  // namespace

std::vector<GaussRat> LieAlgebraBasis::expand(const AffineField& X) const {
    std::vector<std::vector<GaussRat>> cols;
    for (auto& g : gens) cols.push_back(flatten(g.field));
    auto rhs = flatten(X);
    Matrix m = zero_matrix(static_cast<int>(rhs.size()), static_cast<int>(gens.size()));
    for (std::size_t r = 0; r < rhs.size(); ++r)
        for (std::size_t c = 0; c < gens.size(); ++c) m[r][c] = cols[c][r];
    auto sol = solve(m, rhs);
    if (!sol) throw std::domain_error("field is outside the span of the basis");
    return *sol;
}

void LieAlgebraBasis::compute_structure() {
    std::size_t m = gens.size();
    structure.assign(m, std::vector<std::vector<GaussRat>>(m));
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) structure[a][b] = expand(lie_bracket(gens[a].field, gens[b].field));
}

bool LieAlgebraBasis::antisymmetric() const {
    for (std::size_t a = 0; a < gens.size(); ++a)
        for (std::size_t b = 0; b < gens.size(); ++b)
            if (!(lie_bracket(gens[a].field, gens[b].field) == -lie_bracket(gens[b].field, gens[a].field)))
                return false;
    return true;
}

bool LieAlgebraBasis::jacobi() const {
    for (auto& x : gens)
        for (auto& y : gens)
            for (auto& z : gens) {
                AffineField s = lie_bracket(x.field, lie_bracket(y.field, z.field)) +
                                lie_bracket(y.field, lie_bracket(z.field, x.field)) +
                                lie_bracket(z.field, lie_bracket(x.field, y.field));
                if (!s.is_zero()) return false;
            }
    return true;
}

bool tangency_check(const AffineField& X, const Element& f) { return act(X, f).is_zero(); }

Element lij_element(const Element& f, int i, int j) {
    int n = f.dim();
    return partial(f, i) * Element::d(n, j) - partial(f, j) * Element::d(n, i);
}

bool dependence_relation_check(const Element& f) {
    if (f.dim() != 3) throw std::invalid_argument("dependence relation is stated for n = 3");
    static const int perm[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {2, 1, 0}, {1, 0, 2}};
    Element s(3);
    for (int k = 0; k < 6; ++k) {
        Element t = partial(f, perm[k][0]) * lij_element(f, perm[k][1], perm[k][2]);
        s += k < 3 ? t : -t;
    }
    return s.is_zero();
}

BracketReport bracket_table_check(const Element& f) {
    int n = f.dim();
    BracketReport rep;
    auto a = [&](int i, int j) {
        Element s = partial(partial(f, i), j);
        if (!s.is_scalar()) throw std::invalid_argument("f is not quadratic");
        return s.scalar_part();
    };
    auto L = [&](int i, int j) { return AffineField::from_element(lij_element(f, i, j)); };
    auto scaled = [](const Scalar& s, AffineField X) {
        X *= s.constant_term();
        return X;
    };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int h = 0; h < n; ++h)
                for (int k = h + 1; k < n; ++k) {
                    AffineField lhs = lie_bracket(L(i, j), L(h, k));
                    AffineField rhs = scaled(a(j, h), L(i, k)) + scaled(-a(i, h), L(j, k)) +
                                      scaled(-a(j, k), L(i, h)) + scaled(a(i, k), L(j, h));
                    ++rep.checked;
                    if (!(lhs == rhs)) {
                        ++rep.failed;
                        rep.failures.push_back("[L" + std::to_string(i + 1) + std::to_string(j + 1) + ",L" +
                                               std::to_string(h + 1) + std::to_string(k + 1) + "]");
                    }
                }
    return rep;
}

}  // namespace twistcalc
