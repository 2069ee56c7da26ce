#pragma once
// Twist evaluators: inverse-twist pair actions, star products, R-matrix, beta and
// the twisted involution. Leg actions are exact: series stop once the iterated
// action vanishes, diagonal legs use q = e^{i nu} monomials.

#include "twistcalc/symmetry.hpp"

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace twistcalc {

struct SeriesCapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int safety_cap();  // TWISTCALC_SAFETY_CAP or 64

// ---- module plumbing -------------------------------------------------------

inline bool is_zero(const Element& e) { return e.is_zero(); }
inline Element zero_like(const Element& e) { return Element(e.dim()); }
std::vector<Element> split_terms(const Element& e);
// lambda with image == lambda * piece (piece has a single term)
std::optional<GaussRat> ratio(const Element& image, const Element& piece);

// a ⊗ b pairs acted on through the primitive coproduct; used for the
// coproduct legs of R in braided identities
struct PairModule {
    int n = 0;
    std::vector<std::pair<Element, Element>> terms;
    void add(Element a, Element b);
    void normalize();
};
PairModule act(const AffineField& X, const PairModule& m);
bool is_zero(const PairModule& m);
PairModule zero_like(const PairModule& m);
std::vector<PairModule> split_terms(const PairModule& m);
std::optional<GaussRat> ratio(const PairModule& image, const PairModule& piece);
PairModule operator+(const PairModule& a, const PairModule& b);
PairModule operator*(const Scalar& s, const PairModule& m);

template <class M>
using PairList = std::vector<std::pair<M, M>>;

// ---- twist specifications ---------------------------------------------------

struct TwistSpec {
    enum class Kind { Abelian, Jordanian, Dilation };
    Kind kind = Kind::Abelian;
    // Abelian: pairs (e,f); Jordanian: one pair (H,E); Dilation: one pair (D,H)
    std::vector<std::pair<std::string, std::string>> legs;
    Rational scale = 1;  // the deformation parameter enters as scale * i * nu
    std::string id;

    std::string describe() const;
};

class Twist {
public:
    Twist() = default;
    Twist(TwistSpec spec, const LieAlgebraBasis& basis);

    const TwistSpec& spec() const { return spec_; }
    const LieAlgebraBasis& basis() const { return basis_; }
    // scale * i * nu
    Scalar s() const;

    // Fbar acting on a ⊗ b
    template <class M>
    PairList<M> inverse_pair(const M& a, const M& b) const;
    // F acting on a ⊗ b
    template <class M>
    PairList<M> forward_pair(const M& a, const M& b) const;
    // Rbar = F Fbar_21 acting on a ⊗ b
    template <class M>
    PairList<M> r_pair(const M& a, const M& b) const;
    // R = F_21 Fbar acting on a ⊗ b
    template <class M>
    PairList<M> r_forward_pair(const M& a, const M& b) const;

    enum class Beta { Beta, SBeta, BetaInv };
    Element beta_action(Beta variant, const Element& a) const;

    // nilpotency index of E (Jordanian) on the coordinate, form and derivative modules
    int nilpotency_index() const { return nil_index_; }

private:
    struct AbelianLeg {
        AffineField e, f;
        Rational r;  // exp(r i nu e ⊗ f)
    };
    template <class M>
    void abelian_step(const AbelianLeg& leg, int sign, PairList<M>& pairs) const;
    template <class M>
    PairList<M> jordanian(const M& a, const M& b, int sign) const;
    template <class M>
    PairList<M> apply(const M& a, const M& b, int sign) const;
    template <class M>
    M log_action(const M& b, const Scalar& c) const;  // log(1 + c E) acting on b

    TwistSpec spec_;
    LieAlgebraBasis basis_;
    std::vector<AbelianLeg> abelian_;
    AffineField H_, E_;
    int nil_index_ = 0;
};

// q-monomial for exp(i nu * k) with rational k; throws unless k is integral
Scalar q_power(const Rational& k);

Element star(const Twist& T, const Element& a, const Element& b);
Element star_commutator(const Twist& T, const Element& a, const Element& b);  // plain
Element braided_commutator(const Twist& T, const Element& a, const Element& b);
Element twisted_involution(const Twist& T, const Element& a);

// representation of R (or Rbar) on span(1, x^1..x^n): rep[mu][nu][i][j] is the
// coefficient of x^mu ⊗ x^nu in R (x^i ⊗ x^j); index 0 is the unit
using RRep = std::vector<std::vector<std::vector<std::vector<Scalar>>>>;
RRep r_matrix_rep(const Twist& T, int n, bool inverse = false);

// ---- operator expressions in the enveloping algebra --------------------------

struct Op {
    enum class Kind { Gen, Const, Sum, Prod, Exp, Log1p, Pow1p };
    Kind kind = Kind::Const;
    std::string name;  // Gen
    Scalar c;          // Const value, or the series coefficient
    int m = 1;         // Pow1p exponent
    std::vector<Op> args;

    static Op gen(std::string n);
    static Op constant(Scalar v);
    static Op sum(std::vector<Op> a);
    static Op prod(std::vector<Op> a);
    static Op exp(Scalar c, Op x);
    static Op log1p(Scalar c, Op x);
    static Op pow1p(Scalar c, Op x, int m);

    std::string str() const;
};

using OpTensor = std::vector<std::pair<Op, Op>>;  // sum of left ⊗ right

// exact action of an operator expression; series need a locally nilpotent argument
// unless the argument acts diagonally (then exp and powers use q monomials)
template <class M>
M apply_op(const Op& op, const LieAlgebraBasis& basis, const M& v);

// S_F extended as an antihomomorphism from its values on generators; generators
// without a candidate use the classical antipode -g
Op antipode_transform(const Op& op, const std::map<std::string, Op>& sf);

bool twisted_leibniz_check(const Twist& T, const Op& g, const OpTensor& delta, const Element& a, const Element& b);
// sum S_F(left) right acting on v == 0 for every test element (g is primitive, counit 0)
bool antipode_check(const Twist& T, const OpTensor& delta, const std::map<std::string, Op>& sf,
                    const std::vector<Element>& tests);
// all coordinate monomials of degree <= 3 plus every xi^i and d_i
std::vector<Element> antipode_test_set(int n);

}  // namespace twistcalc

#include "twistcalc/twist_impl.hpp"
