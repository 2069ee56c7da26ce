// Metric layer against component formulas, a closed-form twisted metric on
// eigenvectors and a floating-point curvature computation from embeddings.

#include "oracle.hpp"
#include "twistcalc/geometry.hpp"

#include <doctest.h>

#include <cmath>
#include <functional>

using namespace twistcalc;
using oracle::operator+;
using oracle::operator*;

namespace {

std::vector<Element> components(const Element& X) {
    std::vector<Element> out(3, Element(3));
    for (auto& [w, c] : X.terms()) {
        REQUIRE(w.xi == 0);
        REQUIRE(w.r() == 1);
        Word coeff = w;
        int j = 0;
        while (coeff.d[j] == 0) ++j;
        coeff.d[j] = 0;
        out[j].add_term(coeff, c);
    }
    return out;
}

Element component_metric(const Metric& m, const Element& X, const Element& Y) {
    auto x = components(X), y = components(Y);
    Element out(3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (!m.g[i][j].is_zero()) out += Scalar(m.g[i][j]) * (x[i] * y[j]);
    return out;
}

Element ad(const Element& X, const Element& Y) { return X * Y - Y * X; }

Rational binom(const Rational& x, int k) {
    Rational r = 1;
    for (int j = 0; j < k; ++j) r *= (x - j) / (j + 1);
    return r;
}

QuadricFamily circular_hyperboloid(int c) {
    return build_family("fgh", {{"a", Rational(1)}, {"b", Rational(1)}, {"c", Rational(c)}});
}

// scalar curvature of a 2d metric g(u, v) by central differences of the Christoffel symbols
using Metric2 = std::function<std::array<std::array<double, 2>, 2>(double, double)>;

double scalar_curvature(const Metric2& g, double u, double v) {
    const double h = 1e-3;
    auto christoffel = [&](double u0, double v0) {
        std::array<std::array<std::array<double, 2>, 2>, 2> G{};
        std::array<std::array<std::array<double, 2>, 2>, 2> dg{};  // dg[k][i][j] = d_k g_ij
        auto gp = g(u0 + h, v0), gm = g(u0 - h, v0), gq = g(u0, v0 + h), gr = g(u0, v0 - h);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                dg[0][i][j] = (gp[i][j] - gm[i][j]) / (2 * h);
                dg[1][i][j] = (gq[i][j] - gr[i][j]) / (2 * h);
            }
        auto m = g(u0, v0);
        double det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        double inv[2][2] = {{m[1][1] / det, -m[0][1] / det}, {-m[1][0] / det, m[0][0] / det}};
        for (int a = 0; a < 2; ++a)
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) {
                    double s = 0;
                    for (int l = 0; l < 2; ++l) s += inv[a][l] * (dg[i][l][j] + dg[j][l][i] - dg[l][i][j]);
                    G[a][i][j] = s / 2;
                }
        return G;
    };
    auto G = christoffel(u, v);
    auto Gu = christoffel(u + h, v), Gd = christoffel(u - h, v), Gr = christoffel(u, v + h), Gl = christoffel(u, v - h);
    // R^a_{bcd} = d_c G^a_db - d_d G^a_cb + G^a_ce G^e_db - G^a_de G^e_cb
    auto riemann = [&](int a, int b, int c, int d) {
        auto dG = [&](int k, int x, int y, int z) {
            return k == 0 ? (Gu[x][y][z] - Gd[x][y][z]) / (2 * h) : (Gr[x][y][z] - Gl[x][y][z]) / (2 * h);
        };
        double r = dG(c, a, d, b) - dG(d, a, c, b);
        for (int e = 0; e < 2; ++e) r += G[a][c][e] * G[e][d][b] - G[a][d][e] * G[e][c][b];
        return r;
    };
    auto m = g(u, v);
    double det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    double inv[2][2] = {{m[1][1] / det, -m[0][1] / det}, {-m[1][0] / det, m[0][0] / det}};
    double s = 0;
    for (int b = 0; b < 2; ++b)
        for (int d = 0; d < 2; ++d)
            for (int a = 0; a < 2; ++a) s += inv[b][d] * riemann(a, b, a, d);
    return s;
}

// induced metric of an embedding into R^3 with signature diag(1, 1, eps)
Metric2 induced(const std::function<std::array<double, 3>(double, double)>& x, double eps) {
    return [x, eps](double u, double v) {
        const double h = 1e-5;
        std::array<std::array<double, 3>, 2> t;
        auto a = x(u + h, v), b = x(u - h, v), c = x(u, v + h), d = x(u, v - h);
        for (int k = 0; k < 3; ++k) {
            t[0][k] = (a[k] - b[k]) / (2 * h);
            t[1][k] = (c[k] - d[k]) / (2 * h);
        }
        std::array<std::array<double, 2>, 2> g{};
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) g[i][j] = t[i][0] * t[j][0] + t[i][1] * t[j][1] + eps * t[i][2] * t[j][2];
        return g;
    };
}

double constant_value(const Element& e) {
    REQUIRE(e.is_scalar());
    GaussRat g = e.scalar_part().eval_classical();
    REQUIRE(e.scalar_part().is_constant());
    REQUIRE(g.is_real());
    return g.re.get_d();
}

}  // namespace

TEST_CASE("metric agrees with the component formula") {
    oracle::Rng rng(61);
    auto fam = circular_hyperboloid(1);
    Metric m = chart_metric(fam);
    for (int k = 0; k < 50; ++k) {
        Element X = rng.field().to_element(), Y = rng.field().to_element();
        CHECK(g_eval(m, X, Y) == component_metric(m, X, Y));
        CHECK(g_eval(m, X, Y) == g_eval(m, Y, X));
    }
}

TEST_CASE("twisted metric on ad_H eigenvectors is a binomial series in ad_E") {
    for (int c : {1, -1}) {
        auto fam = circular_hyperboloid(c);
        Twist T = build_twist(fam, resolve_twist_id(fam, "jordanian"));
        Metric m = chart_metric(fam);
        Element H = T.basis().get(T.spec().legs[0].first).to_element();
        Element E = T.basis().get(T.spec().legs[0].second).to_element();
        std::vector<Element> eigen, others;
        for (auto& g : fam.gens.gens) others.push_back(g.field.to_element());
        for (int i = 0; i < 3; ++i) {
            eigen.push_back(Element::d(3, i));
            for (int j = 0; j < 3; ++j) eigen.push_back(Element::x(3, j) * Element::d(3, i));
        }
        for (auto& g : {"H", "E", "Ep"}) eigen.push_back(fam.gens.get(g).to_element());
        int pairs = 0;
        for (auto& X : eigen) {
            Element hx = ad(H, X);
            if (hx.is_zero() && X.is_zero()) continue;
            auto lam = ratio(hx, X);
            if (!lam && !hx.is_zero()) continue;
            Rational l = hx.is_zero() ? Rational(0) : lam->re;
            for (auto& Y : others) {
                Element series(3), ek = Y;
                for (int k = 0; !ek.is_zero(); ++k) {
                    Scalar s(binom(-l / 2, k));
                    for (int j = 0; j < k; ++j) s = s * T.s();
                    series += s * ek;
                    ek = ad(E, ek);
                }
                CHECK(g_star(m, T, X, Y) == g_eval(m, X, series));
                ++pairs;
            }
        }
        CHECK(pairs >= 30);
    }
}

TEST_CASE("floating-point curvature oracle reproduces known surfaces") {
    // unit sphere: scalar curvature 2
    auto sphere = induced([](double u, double v) { return std::array<double, 3>{std::sin(u) * std::cos(v), std::sin(u) * std::sin(v), std::cos(u)}; }, 1);
    CHECK(scalar_curvature(sphere, 0.7, 0.3) == doctest::Approx(2.0).epsilon(1e-4));
}

TEST_CASE("circular hyperboloids: exact scalar curvature equals the embedded curvature") {
    const double r = std::sqrt(2.0);
    // c = -1: x3^2 - x1^2 - x2^2 = 2, spacelike in diag(1, 1, -1)
    auto sheet = induced([r](double u, double v) {
        return std::array<double, 3>{r * std::sinh(u) * std::cos(v), r * std::sinh(u) * std::sin(v), r * std::cosh(u)};
    }, -1);
    // c = 1: x1^2 + x2^2 - x3^2 = 2, Lorentzian
    auto throat = induced([r](double u, double v) {
        return std::array<double, 3>{r * std::cosh(u) * std::cos(v), r * std::cosh(u) * std::sin(v), r * std::sinh(u)};
    }, -1);
    for (int c : {1, -1}) {
        CAPTURE(c);
        double numeric = scalar_curvature(c == 1 ? throat : sheet, 0.8, 0.4);
        CHECK(numeric == doctest::Approx(1.0 / c).epsilon(1e-4));
        auto fam = circular_hyperboloid(c);
        Hypersurface S(fam, chart_metric(fam));
        CHECK(constant_value(S.scalar_t()) == doctest::Approx(numeric).epsilon(1e-4));
        Twist T = build_twist(fam, resolve_twist_id(fam, "jordanian"));
        CHECK(S.scalar_t_F(T) == S.scalar_t());
    }
}

TEST_CASE("hyperboloid second fundamental form is proportional to the metric") {
    for (int c : {1, -1}) {
        auto fam = circular_hyperboloid(c);
        Hypersurface S(fam, chart_metric(fam));
        CHECK(S.e_on_shell() == GaussRat(2 * c));
        for (auto& a : {"H", "E", "Ep"})
            for (auto& b : {"H", "E", "Ep"}) {
                Element X = fam.gens.get(a).to_element(), Y = fam.gens.get(b).to_element();
                Element expect = times(Element(3, Scalar(GaussRat(Rational(-1) / (2 * c)))), times(g_eval(S.metric(), X, Y), S.normal()));
                CHECK(S.equal_mod_ideal(S.second_form(X, Y), expect));
            }
    }
}

TEST_CASE("flat connection: torsion free, flat and metric") {
    oracle::Rng rng(62);
    Metric m = Metric::euclidean(3);
    for (int k = 0; k < 20; ++k) {
        Element X = rng.field().to_element(), Y = rng.field().to_element(), Z = rng.field().to_element();
        Connection nab = [](const Element& a, const Element& b) { return nabla(a, b); };
        CHECK(torsion(nab, nullptr, X, Y).is_zero());
        CHECK(curvature(nab, nullptr, X, Y, Z).is_zero());
        CHECK(derivative(X, g_eval(m, Y, Z)) == g_eval(m, nabla(X, Y), Z) + g_eval(m, Y, nabla(X, Z)));
        CHECK(field_bracket(X, Y) == ad(X, Y));
    }
}

TEST_CASE("cylinder: flat surface with a single documented orientation item") {
    Report r = cylinder_report(Rational(1, 2));
    CHECK(r.ok());
    CHECK(r.summary().discrepancy == 1);
    auto fam = build_family("c", {{"a", Rational(1)}, {"c", Rational(1, 2)}});
    Hypersurface S(fam, chart_metric(fam));
    CHECK(S.scalar_t().is_zero());
}

TEST_CASE("geometry is refused where it does not apply") {
    CHECK_THROWS_AS(geometry_report("h"), GeometryError);
    CHECK_THROWS_AS(geometry_report("a"), GeometryError);
    auto cone = build_family("h", {{"a", Rational(1)}, {"b", Rational(1)}});
    CHECK_THROWS_AS(Hypersurface(cone, chart_metric(cone)), GeometryError);
}
