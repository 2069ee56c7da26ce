#pragma once
// Expression language shared by the catalog and the command line:
// rationals, i, nu, q, parameters, chart names, generators, + - * / ^,
// star(,), comm(,), bcomm(,), d(), act(,), conj(), invol(), sqrt(), delta(,),
// and (x) for tensor products of enveloping-algebra expressions.

#include "twistcalc/twist.hpp"

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace twistcalc {

struct SyntaxError : std::runtime_error {
    int line, column;
    SyntaxError(const std::string& msg, int l, int c);
};

struct EvalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Expr {
    enum class Kind { Num, Ident, Neg, Add, Sub, Mul, Div, Pow, Call, Tensor };
    Kind kind = Kind::Num;
    Rational num;      // Num
    std::string name;  // Ident, Call
    std::vector<std::shared_ptr<Expr>> args;
    int line = 1, column = 1;
};
using ExprPtr = std::shared_ptr<Expr>;

ExprPtr parse_expression(const std::string& src);
// canonical printing; parse(print(e)) reproduces e
std::string print_expression(const ExprPtr& e);

// name resolution and structural operations for evaluation
class EvalContext {
public:
    virtual ~EvalContext() = default;
    virtual int dim() const = 0;
    // coordinates, differentials, derivatives, generators, parameters, aliases
    virtual bool lookup(const std::string& name, Element& out) const = 0;
    virtual const Twist* twist() const { return nullptr; }
    virtual const LieAlgebraBasis* basis() const { return nullptr; }
    // reduction modulo the defining ideal (identity when there is none)
    virtual Element reduce(const Element& e) const { return e; }
};

// plain Cartesian context with x/xi/d names, optional generators and parameters
class BasicContext : public EvalContext {
public:
    explicit BasicContext(int n, ChartNames names = {}) : n_(n), names_(std::move(names)) {}
    int dim() const override { return n_; }
    bool lookup(const std::string& name, Element& out) const override;
    const Twist* twist() const override { return twist_; }
    const LieAlgebraBasis* basis() const override { return basis_; }

    void set_param(const std::string& k, const Scalar& v) { params_[k] = v; }
    void set_twist(const Twist* t) { twist_ = t; basis_ = t ? &t->basis() : basis_; }
    void set_basis(const LieAlgebraBasis* b) { basis_ = b; }
    void set_alias(const std::string& k, const Element& v) { aliases_[k] = v; }

protected:
    int n_;
    ChartNames names_;
    std::map<std::string, Scalar> params_;
    std::map<std::string, Element> aliases_;
    const Twist* twist_ = nullptr;
    const LieAlgebraBasis* basis_ = nullptr;
};

// parse an indexed chart name like "x3" with the given prefix; -1 if no match
int chart_index(const std::string& name, const std::string& prefix, int n);

Element evaluate(const ExprPtr& e, const EvalContext& ctx);
Element evaluate(const std::string& src, const EvalContext& ctx);

// enveloping-algebra expressions
Op to_op(const ExprPtr& e, const EvalContext& ctx);
OpTensor to_op_tensor(const ExprPtr& e, const EvalContext& ctx);

// exact square root of a nonnegative rational square
Rational exact_sqrt(const Rational& r);

// substitute loop indices {i} inside names and evaluate delta(i,j)
std::string substitute_indices(const std::string& src, const std::map<std::string, int>& values);

}  // namespace twistcalc
