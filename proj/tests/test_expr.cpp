// Expression language: parsing, canonical printing, evaluation and error positions.

#include "twistcalc/quadrics.hpp"

#include <doctest.h>

using namespace twistcalc;

namespace {

bool same_tree(const ExprPtr& a, const ExprPtr& b) {
    if (a->kind != b->kind || a->num != b->num || a->name != b->name || a->args.size() != b->args.size()) return false;
    for (std::size_t k = 0; k < a->args.size(); ++k)
        if (!same_tree(a->args[k], b->args[k])) return false;
    return true;
}

}  // namespace

TEST_CASE("parse after print is the identity on every catalog expression") {
    int lines = 0;
    for (auto& src : catalog())
        for (auto& gl : src.golden) {
            if (gl.kind == GoldenKind::Undeformed) continue;
            for (auto* text : {&gl.lhs, &gl.rhs}) {
                if (text->empty()) continue;
                CAPTURE(*text);
                auto e = parse_expression(*text);
                auto printed = print_expression(e);
                auto again = parse_expression(printed);
                CHECK(same_tree(e, again));
                CHECK(print_expression(again) == printed);
                ++lines;
            }
        }
    CHECK(lines > 200);
}

TEST_CASE("printing is canonical for hand-written inputs") {
    for (const char* s : {"x1*x2 - i*nu*b^2", "star(x1, comm(d2, xi3))", "-(x1 + 2/3*x2)^3", "sqrt(a)*y2",
                          "L13 (x) L23 + 1 (x) H", "exp(-i*nu)*star(y1, dt2)", "delta(1,2)*x3"}) {
        CAPTURE(s);
        auto e = parse_expression(s);
        CHECK(same_tree(e, parse_expression(print_expression(e))));
    }
}

TEST_CASE("syntax errors report line and column") {
    try {
        parse_expression("star(x1,");
        FAIL("no syntax error");
    } catch (const SyntaxError& e) {
        CHECK(e.line == 1);
        CHECK(e.column == 10);
    }
    CHECK_THROWS_AS(parse_expression("x1 + * x2"), SyntaxError);
    CHECK_THROWS_AS(parse_expression("(x1"), SyntaxError);
    CHECK_THROWS_AS(parse_expression("x1 $ x2"), SyntaxError);
}

TEST_CASE("evaluation in a plain Cartesian context") {
    BasicContext ctx(3);
    ctx.set_param("b", Scalar(3));
    CHECK(evaluate("d1*x1", ctx) == Element::x(3, 0) * Element::d(3, 0) + Element(3, Scalar(1)));
    CHECK(evaluate("b^2 - 9", ctx).is_zero());
    CHECK(evaluate("xi1*xi1", ctx).is_zero());
    CHECK(evaluate("delta(2,2) + delta(1,2)", ctx) == Element(3, Scalar(1)));
    CHECK_THROWS_AS(evaluate("zz", ctx), EvalError);
    CHECK_THROWS_AS(evaluate("star(x1, x2)", ctx), EvalError);
}

TEST_CASE("index substitution and exact square roots") {
    CHECK(substitute_indices("star(x{i}, d{j})", {{"i", 1}, {"j", 3}}) == "star(x1, d3)");
    CHECK(exact_sqrt(Rational(9, 4)) == Rational(3, 2));
    CHECK_THROWS(exact_sqrt(Rational(2)));
    CHECK(chart_index("x3", "x", 3) == 2);
    CHECK(chart_index("x4", "x", 3) == -1);
    CHECK(chart_index("xi1", "x", 3) == -1);
}
