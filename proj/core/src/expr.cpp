#include "twistcalc/expr.hpp"

#include <cctype>
#include <functional>

namespace twistcalc {

SyntaxError::SyntaxError(const std::string& msg, int l, int c)
    : std::runtime_error("syntax error at line " + std::to_string(l) + ", column " + std::to_string(c) + ": " + msg),
      line(l),
      column(c) {}

namespace {

enum class Tok { Num, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, Tensor, End };

struct Token {
    Tok kind;
    std::string text;
    int line, column;
};

std::vector<Token> tokenize(const std::string& s) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t k = 0;
    auto adv = [&](std::size_t m) {
        for (std::size_t j = 0; j < m; ++j) {
            if (s[k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++k;
        }
    };
    while (k < s.size()) {
        char ch = s[k];
        if (std::isspace(static_cast<unsigned char>(ch))) {
            adv(1);
            continue;
        }
        int l = line, c = col;
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::size_t e = k;
            while (e < s.size() && std::isdigit(static_cast<unsigned char>(s[e]))) ++e;
            out.push_back({Tok::Num, s.substr(k, e - k), l, c});
            adv(e - k);
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            std::size_t e = k;
            while (e < s.size() && (std::isalnum(static_cast<unsigned char>(s[e])) || s[e] == '_' || s[e] == '\''))
                ++e;
            out.push_back({Tok::Ident, s.substr(k, e - k), l, c});
            adv(e - k);
            continue;
        }
        if (s.compare(k, 3, "(x)") == 0) {
            out.push_back({Tok::Tensor, "(x)", l, c});
            adv(3);
            continue;
        }
        Tok t;
        switch (ch) {
            case '+': t = Tok::Plus; break;
            case '-': t = Tok::Minus; break;
            case '*': t = Tok::Star; break;
            case '/': t = Tok::Slash; break;
            case '^': t = Tok::Caret; break;
            case '(': t = Tok::LParen; break;
            case ')': t = Tok::RParen; break;
            case ',': t = Tok::Comma; break;
            default: throw SyntaxError(std::string("unexpected character '") + ch + "'", l, c);
        }
        out.push_back({t, std::string(1, ch), l, c});
        adv(1);
    }
    // the input counts as a newline-terminated line: end of input sits just past the terminator
    bool terminated = !s.empty() && s.back() == '\n';
    out.push_back({Tok::End, "", line, terminated ? col : col + 1});
    return out;
}

class Parser {
public:
    explicit Parser(std::vector<Token> t) : toks_(std::move(t)) {}

    ExprPtr parse_all() {
        auto e = sum();
        if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
        return e;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_++]; }
    [[noreturn]] void fail(const std::string& msg) const {
        const Token& t = peek();
        if (t.kind == Tok::End) throw SyntaxError("unexpected end of input", t.line, t.column);
        throw SyntaxError(msg, t.line, t.column);
    }
    bool accept(Tok k) {
        if (peek().kind != k) return false;
        ++pos_;
        return true;
    }
    void expect(Tok k, const char* what) {
        if (!accept(k)) fail(std::string("expected ") + what);
    }
    static ExprPtr node(Expr::Kind k, const Token& at, std::vector<ExprPtr> args = {}) {
        auto e = std::make_shared<Expr>();
        e->kind = k;
        e->args = std::move(args);
        e->line = at.line;
        e->column = at.column;
        return e;
    }

    ExprPtr sum() {
        auto e = tensor();
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            const Token& op = next();
            auto r = tensor();
            e = node(op.kind == Tok::Plus ? Expr::Kind::Add : Expr::Kind::Sub, op, {e, r});
        }
        return e;
    }
    ExprPtr tensor() {
        auto e = product();
        if (peek().kind == Tok::Tensor) {
            const Token& op = next();
            auto r = product();
            e = node(Expr::Kind::Tensor, op, {e, r});
            if (peek().kind == Tok::Tensor) fail("only two tensor factors are supported");
        }
        return e;
    }
    ExprPtr product() {
        auto e = unary();
        while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
            const Token& op = next();
            auto r = unary();
            e = node(op.kind == Tok::Star ? Expr::Kind::Mul : Expr::Kind::Div, op, {e, r});
        }
        return e;
    }
    ExprPtr unary() {
        if (peek().kind == Tok::Minus) {
            const Token& op = next();
            return node(Expr::Kind::Neg, op, {unary()});
        }
        return power();
    }
    ExprPtr power() {
        auto base = primary();
        if (peek().kind == Tok::Caret) {
            const Token& op = next();
            auto ex = unary();
            return node(Expr::Kind::Pow, op, {base, ex});
        }
        return base;
    }
    ExprPtr primary() {
        const Token& t = peek();
        if (t.kind == Tok::Num) {
            next();
            auto e = node(Expr::Kind::Num, t);
            e->num = Rational(mpz_class(t.text));
            return e;
        }
        if (t.kind == Tok::Ident) {
            next();
            if (accept(Tok::LParen)) {
                auto e = node(Expr::Kind::Call, t);
                e->name = t.text;
                if (!accept(Tok::RParen)) {
                    e->args.push_back(sum());
                    while (accept(Tok::Comma)) e->args.push_back(sum());
                    expect(Tok::RParen, "')'");
                }
                return e;
            }
            auto e = node(Expr::Kind::Ident, t);
            e->name = t.text;
            return e;
        }
        if (accept(Tok::LParen)) {
            auto e = sum();
            expect(Tok::RParen, "')'");
            return e;
        }
        fail("expected a value");
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

int precedence(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Add:
        case Expr::Kind::Sub: return 1;
        case Expr::Kind::Tensor: return 2;
        case Expr::Kind::Mul:
        case Expr::Kind::Div: return 3;
        case Expr::Kind::Neg: return 4;
        case Expr::Kind::Pow: return 5;
        default: return 6;
    }
}

}  // namespace

ExprPtr parse_expression(const std::string& src) { return Parser(tokenize(src)).parse_all(); }

std::string print_expression(const ExprPtr& e) {
    auto wrap_if = [](const ExprPtr& x, bool cond) {
        std::string s = print_expression(x);
        return cond ? "(" + s + ")" : s;
    };
    int p = precedence(*e);
    switch (e->kind) {
        case Expr::Kind::Num: {
            std::string s = to_string(e->num);
            return e->num.get_den() == 1 && sgn(e->num) >= 0 ? s : "(" + s + ")";
        }
        case Expr::Kind::Ident: return e->name;
        case Expr::Kind::Neg: return "-" + wrap_if(e->args[0], precedence(*e->args[0]) < p);
        case Expr::Kind::Pow:
            return wrap_if(e->args[0], precedence(*e->args[0]) <= p) + "^" +
                   wrap_if(e->args[1], precedence(*e->args[1]) < 4);
        case Expr::Kind::Call: {
            std::string s = e->name + "(";
            for (std::size_t k = 0; k < e->args.size(); ++k) s += (k ? ", " : "") + print_expression(e->args[k]);
            return s + ")";
        }
        default: {
            const char* op = e->kind == Expr::Kind::Add   ? " + "
                             : e->kind == Expr::Kind::Sub ? " - "
                             : e->kind == Expr::Kind::Mul ? "*"
                             : e->kind == Expr::Kind::Div ? "/"
                                                          : " (x) ";
            return wrap_if(e->args[0], precedence(*e->args[0]) < p) + op +
                   wrap_if(e->args[1], precedence(*e->args[1]) <= p);
        }
    }
}

int chart_index(const std::string& name, const std::string& prefix, int n) {
    if (name.size() <= prefix.size() || name.compare(0, prefix.size(), prefix) != 0) return -1;
    std::string rest = name.substr(prefix.size());
    for (char ch : rest)
        if (!std::isdigit(static_cast<unsigned char>(ch))) return -1;
    int i = std::stoi(rest);
    if (i < 1 || i > n) return -1;
    return i - 1;
}

bool BasicContext::lookup(const std::string& name, Element& out) const {
    if (auto it = aliases_.find(name); it != aliases_.end()) {
        out = it->second;
        return true;
    }
    if (auto it = params_.find(name); it != params_.end()) {
        out = Element(n_, it->second);
        return true;
    }
    int i;
    // longest prefixes first: "xi" before "x", "dt" before "d"
    if ((i = chart_index(name, names_.xi, n_)) >= 0) {
        out = Element::xi(n_, i);
        return true;
    }
    if ((i = chart_index(name, names_.x, n_)) >= 0) {
        out = Element::x(n_, i);
        return true;
    }
    if ((i = chart_index(name, names_.d, n_)) >= 0) {
        out = Element::d(n_, i);
        return true;
    }
    if (basis_) {
        int k = basis_->find(name);
        if (k >= 0) {
            out = basis_->gens[k].field.to_element();
            return true;
        }
    }
    return false;
}

Rational exact_sqrt(const Rational& r) {
    if (sgn(r) < 0) throw EvalError("square root of a negative number");
    mpz_class num = r.get_num(), den = r.get_den();
    mpz_class sn = sqrt(num), sd = sqrt(den);
    if (sn * sn != num || sd * sd != den) throw EvalError("parameter " + to_string(r) + " is not a rational square");
    return Rational(sn, sd);
}

std::string substitute_indices(const std::string& src, const std::map<std::string, int>& values) {
    std::string out;
    for (std::size_t k = 0; k < src.size(); ++k) {
        if (src[k] == '{') {
            auto e = src.find('}', k);
            if (e == std::string::npos) throw SyntaxError("unterminated index", 1, static_cast<int>(k) + 1);
            std::string var = src.substr(k + 1, e - k - 1);
            auto it = values.find(var);
            if (it == values.end()) throw SyntaxError("unknown index '" + var + "'", 1, static_cast<int>(k) + 1);
            out += std::to_string(it->second);
            k = e;
        } else {
            out += src[k];
        }
    }
    return out;
}

namespace {

[[noreturn]] void eval_fail(const Expr& e, const std::string& msg) {
    throw EvalError("at line " + std::to_string(e.line) + ", column " + std::to_string(e.column) + ": " + msg);
}

const Twist& need_twist(const Expr& e, const EvalContext& ctx) {
    if (!ctx.twist()) eval_fail(e, e.name + " needs a twist");
    return *ctx.twist();
}

long integer_value(const Expr& e, const Element& v) {
    if (!v.is_scalar()) eval_fail(e, "exponent must be an integer");
    Scalar s = v.scalar_part();
    if (!s.is_constant()) eval_fail(e, "exponent must be an integer");
    GaussRat g = s.constant_term();
    if (!g.is_real() || g.re.get_den() != 1) eval_fail(e, "exponent must be an integer");
    return g.re.get_num().get_si();
}

bool mentions_generator(const ExprPtr& e, const EvalContext& ctx) {
    if (e->kind == Expr::Kind::Ident) return ctx.basis() && ctx.basis()->find(e->name) >= 0;
    for (auto& a : e->args)
        if (mentions_generator(a, ctx)) return true;
    return false;
}

}  // namespace

Element evaluate(const ExprPtr& e, const EvalContext& ctx) {
    int n = ctx.dim();
    auto ev = [&](const ExprPtr& x) { return evaluate(x, ctx); };
    switch (e->kind) {
        case Expr::Kind::Num:
            return Element(n, Scalar(e->num));
        case Expr::Kind::Ident: {
            if (e->name == "i") return Element(n, Scalar::i());
            if (e->name == "nu") return Element(n, Scalar::nu());
            if (e->name == "q") return Element(n, Scalar::q());
            Element out;
            if (!ctx.lookup(e->name, out)) eval_fail(*e, "unknown identifier '" + e->name + "'");
            return out;
        }
        case Expr::Kind::Neg:
            return -ev(e->args[0]);
        case Expr::Kind::Add:
            return ev(e->args[0]) + ev(e->args[1]);
        case Expr::Kind::Sub:
            return ev(e->args[0]) - ev(e->args[1]);
        case Expr::Kind::Mul:
            return ev(e->args[0]) * ev(e->args[1]);
        case Expr::Kind::Div: {
            Element d = ev(e->args[1]);
            if (!d.is_scalar() || !d.scalar_part().is_unit()) eval_fail(*e, "division by a non-invertible value");
            return ev(e->args[0]) * d.scalar_part().inverse();
        }
        case Expr::Kind::Pow: {
            Element b = ev(e->args[0]);
            long k = integer_value(*e, ev(e->args[1]));
            if (k < 0) {
                if (!b.is_scalar() || !b.scalar_part().is_unit()) eval_fail(*e, "negative power of a non-invertible value");
                b = Element(n, b.scalar_part().inverse());
                k = -k;
            }
            if (k > 64) eval_fail(*e, "exponent too large");
            return power(b, static_cast<int>(k));
        }
        case Expr::Kind::Tensor:
            eval_fail(*e, "tensor product is only allowed in coproduct expressions");
        case Expr::Kind::Call: {
            const std::string& f = e->name;
            auto arity = [&](std::size_t k) {
                if (e->args.size() != k) eval_fail(*e, f + " expects " + std::to_string(k) + " argument(s)");
            };
            if (f == "star") {
                arity(2);
                return star(need_twist(*e, ctx), ev(e->args[0]), ev(e->args[1]));
            }
            if (f == "comm") {
                arity(2);
                return star_commutator(need_twist(*e, ctx), ev(e->args[0]), ev(e->args[1]));
            }
            if (f == "bcomm") {
                arity(2);
                return braided_commutator(need_twist(*e, ctx), ev(e->args[0]), ev(e->args[1]));
            }
            if (f == "cl") {  // classical commutator
                arity(2);
                Element a = ev(e->args[0]), b = ev(e->args[1]);
                return a * b - b * a;
            }
            if (f == "d") {
                arity(1);
                return exterior_derivative(ev(e->args[0]));
            }
            if (f == "act") {
                arity(2);
                if (!ctx.basis()) eval_fail(*e, "act needs a symmetry algebra");
                return apply_op(to_op(e->args[0], ctx), *ctx.basis(), ev(e->args[1]));
            }
            if (f == "conj") {
                arity(1);
                return star_involution_classical(ev(e->args[0]));
            }
            if (f == "invol") {
                arity(1);
                return twisted_involution(need_twist(*e, ctx), ev(e->args[0]));
            }
            if (f == "Sbeta" || f == "beta" || f == "betainv") {
                arity(1);
                auto v = f == "Sbeta" ? Twist::Beta::SBeta : f == "beta" ? Twist::Beta::Beta : Twist::Beta::BetaInv;
                return need_twist(*e, ctx).beta_action(v, ev(e->args[0]));
            }
            if (f == "reduce") {
                arity(1);
                return ctx.reduce(ev(e->args[0]));
            }
            if (f == "sqrt") {
                arity(1);
                Element v = ev(e->args[0]);
                if (!v.is_scalar() || !v.scalar_part().is_constant() || !v.scalar_part().constant_term().is_real())
                    eval_fail(*e, "sqrt needs a rational constant");
                return Element(n, Scalar(exact_sqrt(v.scalar_part().constant_term().re)));
            }
            if (f == "delta") {
                arity(2);
                return Element(n, Scalar(integer_value(*e, ev(e->args[0])) == integer_value(*e, ev(e->args[1])) ? 1 : 0));
            }
            if (f == "exp") {
                arity(1);
                Element v = ev(e->args[0]);
                // exp(k i nu) for rational k
                if (v.is_scalar()) {
                    Scalar s = v.scalar_part();
                    if (s.is_zero()) return Element(n, Scalar(1));
                    if (s.terms().size() == 1) {
                        auto& [key, c] = *s.terms().begin();
                        if (key.nu == 1 && key.q == 0 && c.re == 0) return Element(n, q_power(c.im));
                    }
                }
                eval_fail(*e, "exp is only defined on multiples of i*nu");
            }
            eval_fail(*e, "unknown function '" + f + "'");
        }
    }
    eval_fail(*e, "bad expression");
}

Element evaluate(const std::string& src, const EvalContext& ctx) { return evaluate(parse_expression(src), ctx); }

namespace {

// c * X split of a product; X empty when the product is a pure scalar
void split_coeff(const ExprPtr& e, const EvalContext& ctx, Scalar& c, std::vector<Op>& factors) {
    if (!mentions_generator(e, ctx)) {
        Element v = evaluate(e, ctx);
        if (!v.is_scalar()) eval_fail(*e, "coefficient is not a scalar");
        c = c * v.scalar_part();
        return;
    }
    if (e->kind == Expr::Kind::Mul) {
        split_coeff(e->args[0], ctx, c, factors);
        split_coeff(e->args[1], ctx, c, factors);
        return;
    }
    if (e->kind == Expr::Kind::Neg) {
        c = -c;
        split_coeff(e->args[0], ctx, c, factors);
        return;
    }
    factors.push_back(to_op(e, ctx));
}

Op product_op(std::vector<Op> f) { return f.size() == 1 ? f[0] : Op::prod(std::move(f)); }

// recognizes 1 + c X (or 1 - c X)
bool one_plus(const ExprPtr& e, const EvalContext& ctx, Scalar& c, Op& x) {
    if (e->kind != Expr::Kind::Add && e->kind != Expr::Kind::Sub) return false;
    const ExprPtr& l = e->args[0];
    const ExprPtr& r = e->args[1];
    if (mentions_generator(l, ctx)) return false;
    Element one = evaluate(l, ctx);
    if (!(one == Element(ctx.dim(), Scalar(1)))) return false;
    Scalar cc(1);
    std::vector<Op> f;
    split_coeff(r, ctx, cc, f);
    if (f.empty()) return false;
    c = e->kind == Expr::Kind::Add ? cc : -cc;
    x = product_op(std::move(f));
    return true;
}

// base^k with base = 1 + cX
bool one_plus_power(const ExprPtr& e, const EvalContext& ctx, Scalar& c, Op& x, int& k) {
    if (e->kind == Expr::Kind::Pow) {
        if (!one_plus(e->args[0], ctx, c, x)) return false;
        k = static_cast<int>(integer_value(*e, evaluate(e->args[1], ctx)));
        return true;
    }
    k = 1;
    return one_plus(e, ctx, c, x);
}

}  // namespace

Op to_op(const ExprPtr& e, const EvalContext& ctx) {
    if (!mentions_generator(e, ctx)) {
        Element v = evaluate(e, ctx);
        if (!v.is_scalar()) eval_fail(*e, "not an element of the enveloping algebra");
        return Op::constant(v.scalar_part());
    }
    switch (e->kind) {
        case Expr::Kind::Ident:
            return Op::gen(e->name);
        case Expr::Kind::Neg:
            return Op::prod({Op::constant(Scalar(-1)), to_op(e->args[0], ctx)});
        case Expr::Kind::Add:
            return Op::sum({to_op(e->args[0], ctx), to_op(e->args[1], ctx)});
        case Expr::Kind::Sub:
            return Op::sum({to_op(e->args[0], ctx), Op::prod({Op::constant(Scalar(-1)), to_op(e->args[1], ctx)})});
        case Expr::Kind::Mul:
            return Op::prod({to_op(e->args[0], ctx), to_op(e->args[1], ctx)});
        case Expr::Kind::Div: {
            if (!mentions_generator(e->args[1], ctx)) {
                Element d = evaluate(e->args[1], ctx);
                if (!d.is_scalar() || !d.scalar_part().is_unit()) eval_fail(*e, "division by a non-invertible value");
                return Op::prod({to_op(e->args[0], ctx), Op::constant(d.scalar_part().inverse())});
            }
            Scalar c;
            Op x;
            int k;
            if (!one_plus_power(e->args[1], ctx, c, x, k)) eval_fail(*e, "denominator must be (1 + c*X)^k");
            return Op::prod({to_op(e->args[0], ctx), Op::pow1p(c, x, -k)});
        }
        case Expr::Kind::Pow: {
            long k = integer_value(*e, evaluate(e->args[1], ctx));
            if (k < 0) {
                Scalar c;
                Op x;
                if (!one_plus(e->args[0], ctx, c, x)) eval_fail(*e, "negative power needs a base 1 + c*X");
                return Op::pow1p(c, x, static_cast<int>(k));
            }
            std::vector<Op> f(static_cast<std::size_t>(k), to_op(e->args[0], ctx));
            if (f.empty()) return Op::constant(Scalar(1));
            return product_op(std::move(f));
        }
        case Expr::Kind::Call: {
            if (e->name == "exp" && e->args.size() == 1) {
                Scalar c(1);
                std::vector<Op> f;
                split_coeff(e->args[0], ctx, c, f);
                return Op::exp(c, product_op(std::move(f)));
            }
            if (e->name == "log" && e->args.size() == 1) {
                Scalar c;
                Op x;
                if (!one_plus(e->args[0], ctx, c, x)) eval_fail(*e, "log needs an argument 1 + c*X");
                return Op::log1p(c, x);
            }
            eval_fail(*e, "function '" + e->name + "' is not allowed in the enveloping algebra");
        }
        default:
            eval_fail(*e, "not an element of the enveloping algebra");
    }
}

namespace {
bool has_tensor(const ExprPtr& e) {
    if (e->kind == Expr::Kind::Tensor) return true;
    for (auto& a : e->args)
        if (has_tensor(a)) return true;
    return false;
}
}  // namespace

OpTensor to_op_tensor(const ExprPtr& e, const EvalContext& ctx) {
    OpTensor out;
    std::function<void(const ExprPtr&, const Scalar&)> walk = [&](const ExprPtr& x, const Scalar& sign) {
        switch (x->kind) {
            case Expr::Kind::Add:
                walk(x->args[0], sign);
                walk(x->args[1], sign);
                return;
            case Expr::Kind::Sub:
                walk(x->args[0], sign);
                walk(x->args[1], -sign);
                return;
            case Expr::Kind::Neg:
                walk(x->args[0], -sign);
                return;
            case Expr::Kind::Mul:
            case Expr::Kind::Div: {
                // scalar * (sum of tensors), (sum of tensors) * scalar, (sum of tensors) / scalar
                int t = has_tensor(x->args[0]) ? 0 : 1;
                if (!has_tensor(x->args[t]) || (x->kind == Expr::Kind::Div && t == 1))
                    eval_fail(*x, "expected a sum of tensor products a (x) b");
                Element c = evaluate(x->args[1 - t], ctx);
                if (!c.is_scalar()) eval_fail(*x, "expected a scalar factor");
                Scalar s = c.scalar_part();
                if (x->kind == Expr::Kind::Div) {
                    if (!s.is_unit()) eval_fail(*x, "division by a non-invertible value");
                    s = s.inverse();
                }
                walk(x->args[t], sign * s);
                return;
            }
            case Expr::Kind::Tensor:
                out.emplace_back(Op::prod({Op::constant(sign), to_op(x->args[0], ctx)}), to_op(x->args[1], ctx));
                return;
            default:
                eval_fail(*x, "expected a sum of tensor products a (x) b");
        }
    };
    walk(e, Scalar(1));
    return out;
}

}  // namespace twistcalc
