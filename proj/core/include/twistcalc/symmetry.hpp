#pragma once
// Affine vector fields X = (A^j_i x^i + t^j) d_j and their action on the calculus.

#include "twistcalc/ncalgebra.hpp"

#include <optional>
#include <string>
#include <vector>

namespace twistcalc {

using Matrix = std::vector<std::vector<GaussRat>>;

Matrix zero_matrix(int rows, int cols);
Matrix identity_matrix(int n);
Matrix matmul(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& a);
// exact inverse, nullopt if singular
std::optional<Matrix> inverse(const Matrix& a);
// rank over Q(i)
int rank(Matrix m);
// solve m*x = rhs for one solution, nullopt if inconsistent
std::optional<std::vector<GaussRat>> solve(Matrix m, std::vector<GaussRat> rhs);

struct AffineField {
    int n = 0;
    Matrix A;  // A[j][i]: coefficient of x^i d_j
    std::vector<GaussRat> t;

    AffineField() = default;
    explicit AffineField(int dim);
    // from a first-order element sum (a x^i + b) d_j; throws if not affine
    static AffineField from_element(const Element& e);
    Element to_element() const;
    bool is_zero() const;

    AffineField operator-() const;
    AffineField& operator+=(const AffineField& o);
    AffineField& operator*=(const GaussRat& c);
    friend AffineField operator+(AffineField a, const AffineField& b) { return a += b; }
    friend AffineField operator-(AffineField a, const AffineField& b) { return a += -b; }
    friend AffineField operator*(const GaussRat& c, AffineField a) { return a *= c; }
    friend bool operator==(const AffineField& a, const AffineField& b) { return a.A == b.A && a.t == b.t; }
};

// vector-field commutator: matrix A_Y A_X - A_X A_Y, translation A_Y t_X - A_X t_Y
AffineField lie_bracket(const AffineField& X, const AffineField& Y);

// Lie derivative: derivation on words; x -> A x + t, xi -> A xi, d -> -A^T d
Element act(const AffineField& X, const Element& a);
Element act_word(const AffineField& X, const Word& w, int n);
// left-to-right composition g1 g2 ... acting as g1(g2(...(a)))
Element act_sequence(const std::vector<const AffineField*>& gs, const Element& a);
// eigenvalue if X acts diagonally on the word
std::optional<GaussRat> eigenvalue(const AffineField& X, const Word& w, int n);

struct NamedField {
    std::string name;
    AffineField field;
};

struct LieAlgebraBasis {
    std::vector<NamedField> gens;
    // brackets[a][b][c]: coefficient of gens[c] in [gens[a], gens[b]]
    std::vector<std::vector<std::vector<GaussRat>>> structure;

    int find(const std::string& name) const;
    const AffineField& get(const std::string& name) const;
    // fills structure; throws if a bracket leaves the span
    void compute_structure();
    bool antisymmetric() const;
    bool jacobi() const;
    std::vector<GaussRat> expand(const AffineField& X) const;  // throws if outside span
};

bool tangency_check(const AffineField& X, const Element& f);
// generic L_ij = f_i d_j - f_j d_i as a first-order operator
Element lij_element(const Element& f, int i, int j);
// sum_{ijk} eps^{ijk} f_i L_jk == 0 (n = 3)
bool dependence_relation_check(const Element& f);

struct BracketReport {
    int checked = 0;
    int failed = 0;
    std::vector<std::string> failures;
    bool ok() const { return failed == 0; }
};
// [L_ij, L_hk] = a_jh L_ik - a_ih L_jk - a_jk L_ih + a_ik L_jh with a_ij = d_i d_j f
BracketReport bracket_table_check(const Element& f);

}  // namespace twistcalc
