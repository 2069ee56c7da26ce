#pragma once
// Metric layer on R^n and on the quadric hypersurfaces: pairings, (twisted) metric,
// flat Levi-Civita connection and its twist, torsion, curvature, projections,
// second fundamental form, Ricci data and the twisted Gauss equation.
//
// Vector fields are first-order elements sum_j X^j d_j with polynomial X^j and
// one-forms are sum_j w_j xi^j, so the twist acts on them through the Lie derivative.

#include "twistcalc/quadrics.hpp"

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace twistcalc {

struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Metric {
    Matrix g;     // g[i][j] = g(d_i, d_j), constant
    Matrix ginv;

    static Metric from_matrix(Matrix g);
    static Metric euclidean(int n);
    static Metric minkowski(int n);  // last coordinate timelike
};

// the family's ambient metric pulled back to its working chart: M^T g M with x = M y
Metric chart_metric(const QuadricFamily& fam);

// ---- fields and forms ----------------------------------------------------------------

bool is_vector_field(const Element& X);
bool is_one_form(const Element& w);
std::vector<Element> field_components(const Element& X);  // throws GeometryError
std::vector<Element> form_components(const Element& w);
Element make_field(const std::vector<Element>& comps);
Element make_form(const std::vector<Element>& comps);
// h X over the coordinate algebra (h polynomial)
Element times(const Element& h, const Element& X);
// X(h)
Element derivative(const Element& X, const Element& h);
Element field_bracket(const Element& X, const Element& Y);

// ---- tensor words and the onion pairing -----------------------------------------------

struct TensorFactor {
    bool form = false;  // dx^index or d_index
    int index = 0;
    friend bool operator==(const TensorFactor&, const TensorFactor&) = default;
};

struct TensorWord {
    Element coeff;  // polynomial
    std::vector<TensorFactor> factors;
};
using Tensor = std::vector<TensorWord>;

// <T_p (x) ... (x) T_1, T'_1 (x) ... (x) T'_p (x) tau>: innermost pair first; the
// unpaired tail of the second argument is returned with the product coefficient
Tensor pairing(const Tensor& a, const Tensor& b);
// <X, w> for a vector field and a one-form (either order)
Element pairing(const Element& a, const Element& b);
Element star_pairing(const Twist& T, const Element& a, const Element& b);

// ---- metric and connection on R^n --------------------------------------------------------

Element g_eval(const Metric& m, const Element& X, const Element& Y);
Element g_star(const Metric& m, const Twist& T, const Element& X, const Element& Y);
Element g_inverse_eval(const Metric& m, const Element& w, const Element& v);

// star Lie derivative on functions and the star bracket of fields
Element star_derivative(const Twist& T, const Element& X, const Element& h);
Element star_bracket(const Twist& T, const Element& X, const Element& Y);
// module products h * X and X * h deformed by the twist
Element function_star_field(const Twist& T, const Element& h, const Element& X);
Element field_star_function(const Twist& T, const Element& X, const Element& h);

// flat Levi-Civita connection X^i d_i(Y^j) d_j and its twist nabla_{Fbar1 X}(Fbar2 Y)
Element nabla(const Element& X, const Element& Y);
Element nabla_F(const Twist& T, const Element& X, const Element& Y);

using Connection = std::function<Element(const Element&, const Element&)>;
// torsion and curvature of a connection; a null twist gives the classical formulas
Element torsion(const Connection& nab, const Twist* T, const Element& X, const Element& Y);
Element curvature(const Connection& nab, const Twist* T, const Element& X, const Element& Y, const Element& Z);
Element torsion_F(const Twist& T, const Element& X, const Element& Y);
Element curvature_F(const Twist& T, const Element& X, const Element& Y, const Element& Z);

// inverse of the cocycle element acting on X (x) Y (x) Z
std::vector<std::array<Element, 3>> inverse_triple(const Twist& T, const Element& X, const Element& Y,
                                                   const Element& Z);

// ---- hypersurface f_c = 0 ---------------------------------------------------------------

class Hypersurface {
public:
    // requires E_f = g^{ij} f_i f_j to be a nonzero constant modulo the ideal
    Hypersurface(const QuadricFamily& fam, Metric m);

    const QuadricFamily& family() const { return *fam_; }
    const Metric& metric() const { return m_; }
    const Element& normal() const { return v_perp_; }  // V_perp = g^{ij} f_j d_i
    const Element& df() const { return df_; }
    const GaussRat& e_on_shell() const { return e_f_; }  // E_f mod ideal
    const GaussRat& k() const { return k_; }             // 1 / E_f

    Element reduce(const Element& e) const;
    bool equal_mod_ideal(const Element& a, const Element& b) const;

    Element project_normal(const Element& X) const;
    Element project_tangent(const Element& X) const;
    // g_star(X, V) star K star V
    Element project_normal_star(const Twist& T, const Element& X) const;

    Element second_form(const Element& X, const Element& Y) const;
    Element second_form_F(const Twist& T, const Element& X, const Element& Y) const;
    Element nabla_t(const Element& X, const Element& Y) const;
    Element nabla_t_F(const Twist& T, const Element& X, const Element& Y) const;
    Element curvature_t(const Element& X, const Element& Y, const Element& Z) const;
    Element curvature_t_F(const Twist& T, const Element& X, const Element& Y, const Element& Z) const;

    // trace of X -> R_t(pr_t X, Y, Z) over the coordinate frame
    Element ricci_t(const Element& Y, const Element& Z) const;
    // star trace with star-dual frames: <theta^i, R_t^F(pr_t e_i, Y, Z)>_star
    Element ricci_t_F(const Twist& T, const Element& Y, const Element& Z) const;
    Element scalar_t() const;
    Element scalar_t_F(const Twist& T) const;

    // both sides of the twisted Gauss equation modulo the ideal
    struct GaussSides {
        Element lhs, rhs;
    };
    GaussSides gauss_sides(const Twist* T, const Element& X, const Element& Y, const Element& Z,
                           const Element& W) const;

private:
    const QuadricFamily* fam_;
    Metric m_;
    Element v_perp_, df_;
    GaussRat e_f_, k_;
};

// ---- reports ---------------------------------------------------------------------------------

// circular cylinder (a = 1, c = R^2 / 2) with the twist exp(i nu d_3 (x) L_12)
Report cylinder_report(const Rational& c = Rational(1, 2));
// circular hyperboloid (a = b = 1, c = +-1) with the Jordanian twist
Report hyperboloid_report(const Rational& c);
// orthogonal frame and dual coframe tables on the circular hyperboloids (Cartesian chart)
Report hyperboloid_frame_report();
// geometry suites applicable to a family id: c (a = 1), f, g, fgh (a = b = 1); the cone h and
// the non-circular families are refused with a GeometryError. "c" reads the radius from params["c"].
Report geometry_report(const std::string& family_id, const std::map<std::string, Rational>& params = {});

}  // namespace twistcalc
