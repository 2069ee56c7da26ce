#pragma once
// Catalog of quadric families in R^3: canonical forms, charts, symmetry algebras,
// twists, ideal reduction and golden-table verification.

#include "twistcalc/expr.hpp"
#include "twistcalc/report.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace twistcalc {

struct CatalogError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---- raw catalog records -------------------------------------------------------

struct Condition {  // "param = value"; empty name means always
    std::string param;
    Rational value;
};

struct NamedExpr {
    std::string name;
    std::string expr;
    Condition when;
};

struct TwistRecord {
    std::string id;
    TwistSpec::Kind kind = TwistSpec::Kind::Abelian;
    std::vector<std::pair<std::string, std::string>> legs;
    std::string scale = "1";
    std::vector<std::string> algebra;  // generators spanning the twist's Lie algebra
    Condition when;
    std::string note;
};

// parameter substitutions applied when a record is evaluated, e.g. a -> -a
using ParamRemap = std::map<std::string, std::string>;

struct CoproductRecord {
    std::string twist, gen, expr;
    ParamRemap remap;
};

struct AntipodeRecord {
    std::string twist, gen, expr;
    std::string label;  // "printed", or a name for an alternative candidate
    std::string flag;
    ParamRemap remap;
};

enum class GoldenKind { Exact, ModIdeal, Show, Undeformed };

struct GoldenLine {
    GoldenKind kind = GoldenKind::Exact;
    std::string twist;
    std::string anchor;
    bool relations = false;  // part of the characterizing relations of the quotient
    std::string lhs, rhs;    // for Undeformed, lhs holds the space-separated name list
    std::string flag;        // "open-question" marks an item whose printed form is doubted
    std::string erratum;     // corrected right-hand side for a known misprint
    ParamRemap remap;
    std::string origin;      // family the line was written for
    int line = 0;
};

struct InheritRecord {
    std::string family, from_twist, to_twist;
    ParamRemap remap;
};

struct FamilySource {
    std::string id, title;
    int dim = 3;
    bool y_chart = false;
    std::vector<std::pair<std::string, std::string>> params;  // name, default
    std::vector<std::string> positive, squares, fixed;
    std::vector<std::pair<std::string, std::string>> transitions;  // x^i = expr(y)
    std::string f, fx;
    std::vector<NamedExpr> gens, aliases;
    std::string metric;  // "", "euclidean", "minkowski"
    std::vector<TwistRecord> twists;
    std::vector<CoproductRecord> coproducts;
    std::vector<AntipodeRecord> antipodes;
    std::vector<GoldenLine> golden;
    std::vector<InheritRecord> inherits;
};

std::string_view catalog_text();
std::vector<FamilySource> parse_catalog(std::string_view text);
const std::vector<FamilySource>& catalog();
const FamilySource& family_source(const std::string& id);

// ---- built families ---------------------------------------------------------------

struct QuadricFamily {
    std::string id, title;
    int n = 3;
    bool y_chart = false;
    ChartNames names;
    std::map<std::string, Rational> params;
    Element f;    // in the working chart
    Element f_x;  // canonical form in Cartesian coordinates
    Matrix to_x;  // x = to_x * y (identity for Cartesian families)
    LieAlgebraBasis gens;
    std::map<std::string, Element> aliases;
    std::string metric;
    const FamilySource* source = nullptr;

    std::vector<std::string> twist_ids() const;  // those active for the current params
    const TwistRecord& twist_record(const std::string& id) const;
};

// "f" and "g" select the hyperboloid family with c = 1 / -1, "h" the cone (c = 0)
QuadricFamily build_family(const std::string& id, const std::map<std::string, Rational>& overrides = {});
std::vector<std::string> family_ids();  // a b c d e fgh
// resolve a twist by full id or by kind word (abelian, jordanian, dilation, killing)
std::string resolve_twist_id(const QuadricFamily& fam, const std::string& name);
Twist build_twist(const QuadricFamily& fam, const std::string& twist_id);

class FamilyContext : public BasicContext {
public:
    FamilyContext(const QuadricFamily& fam, const Twist* twist);
    // also resolves family generators outside the twist's algebra
    bool lookup(const std::string& name, Element& out) const override;
    Element reduce(const Element& e) const override;

private:
    const QuadricFamily* fam_;
};

// ---- chart and ideal ----------------------------------------------------------------

Element to_chart(const QuadricFamily& fam, const Element& a);    // Cartesian -> working chart
Element from_chart(const QuadricFamily& fam, const Element& a);  // working chart -> Cartesian
// x -> P x, xi -> P xi, d -> P^{-T} d
Element linear_substitution(const Element& a, const Matrix& P);

// remainder of the polynomial parts under degree-lex division by f
Element reduce_mod_ideal(const Element& f, const Element& h);
Element reduce_mod_ideal(const QuadricFamily& fam, const Element& h);

// ---- verification suites ---------------------------------------------------------------

Report self_checks(const QuadricFamily& fam);
// abelian twist d_1 (x) L with L a symmetry commuting with d_1; d_1 is not tangent,
// so f fails to be central (x-chart families)
Twist centrality_control_twist(const QuadricFamily& fam);
Report centrality_check(const QuadricFamily& fam, const Twist& T, int max_degree = 3);
Report verify_family_tables(const QuadricFamily& fam, const std::string& twist_id, bool relations = false);
Report quotient_relations_check(const QuadricFamily& fam, const std::string& twist_id);
Report coproduct_checks(const QuadricFamily& fam, const std::string& twist_id);
Report hilbert_dims_check(const QuadricFamily& fam, const Twist& T, int qmax = 4);
Report associativity_check(const QuadricFamily& fam, const Twist& T, int max_degree = 3);
Report involution_checks(const QuadricFamily& fam, const Twist& T);
Report classical_limit_check(const QuadricFamily& fam, const Twist& T, int samples, unsigned seed);
// every suite above for one twist
Report verify_twist(const QuadricFamily& fam, const std::string& twist_id, int qmax = 4);

// generator elements used by the structural suites: coordinates, differentials, derivatives
std::vector<Element> chart_generators(int n);
// rank over the fraction field of the scalar ring of the coefficient vectors
int scalar_rank(const std::vector<Element>& rows);
// ordered star monomials x^{i1} * ... * x^{ik}, i1 <= ... <= ik, k <= q
std::vector<Element> star_monomials(const Twist& T, int n, int q);

}  // namespace twistcalc
