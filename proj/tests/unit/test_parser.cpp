#include "doctest.h"

#include "liereduce/parser/parser.hpp"

using namespace liereduce;

TEST_CASE("parse reduced ODE of L2.7")
{
    Expr e = parse("k0*w' + w'^2 + (w - z*k0)*w''");
    Expr k0 = Expr::parameter("k0"), z = Expr::symbol("z");
    Expr w = Expr::function("w", 0, z), w1 = Expr::function("w", 1, z), w2 = Expr::function("w", 2, z);
    CHECK(equivalent(e, k0 * w1 + w1 * w1 + (w - z * k0) * w2));
}

TEST_CASE("zero and rational literals")
{
    CHECK(is_zero(parse("0")));
    CHECK(parse("3/2").kind() == NodeKind::Rational);
    CHECK(parse("3/2").value() == mpq_class(3, 2));
    CHECK(print(parse("0")) == "0");
    CHECK_THROWS_AS(parse("1.5"), SyntaxError);
}

TEST_CASE("syntax errors carry spans")
{
    std::string text = "D(u,x,t) - (u*D(u,x))*'";
    try {
        parse(text);
        FAIL("expected a syntax error");
    } catch (const SyntaxError& e) {
        CHECK(e.span().start == text.size() - 1);
        CHECK(e.span().end == text.size());
    }
    CHECK_THROWS_AS(parse("x y"), SyntaxError);
    CHECK_THROWS_AS(parse("(x"), SyntaxError);
    CHECK_THROWS_AS(parse("x +"), SyntaxError);
    CHECK_THROWS_AS(parse("q + 1"), UnknownIdentifier);
    CHECK_THROWS_AS(parse("x'"), SyntaxError);
}

TEST_CASE("precedence")
{
    CHECK(equivalent(parse("-x^2"), -(Expr::symbol("x") * Expr::symbol("x"))));
    CHECK(equivalent(parse("2^3^2"), Expr(512)));
    CHECK(equivalent(parse("2^-1"), Expr(mpq_class(1, 2))));
    CHECK(equivalent(parse("1/2*x"), Expr(mpq_class(1, 2)) * Expr::symbol("x")));
}

TEST_CASE("jets, functions and builtins")
{
    Expr e = parse("D(u,x,t) - D(u,t,x)");
    CHECK(is_zero(e));
    CHECK(print(parse("g''(t)*y")) == "g''*y");
    CHECK(print(parse("g(t^2)")) == "g(t^2)");
    CHECK(equivalent(parse("exp(ln(x))"), parse("x")));
    CHECK(parse("W(x)").kind() == NodeKind::Apply);
    CHECK(equivalent(parse("x^k0"), parse("exp(k0*ln(x))")));
}

TEST_CASE("printer output")
{
    CHECK(print(parse("w^2 - w'")) == "w^2 - w'");
    CHECK(print(parse("-(w^2 - w')")) == "-w^2 + w'");
    for (const char* s : {"x/(2*y)", "(x + y)^(1/2)", "exp(t/c3)*w", "-3/2*x^2 + y", "1/(x + 1)", "W(exp(-x))",
                          "z^(4/5)*w", "D(u,t,x)*u - D(u,y,y)"}) {
        Expr e = parse(s);
        CHECK_MESSAGE(equivalent(parse(print(e)), e), s, " -> ", print(e));
    }
}

TEST_CASE("rational flags")
{
    CHECK(parse_rational("-1/15") == mpq_class(-1, 15));
    CHECK(parse_rational("3") == 3);
    CHECK_THROWS(parse_rational("1/0"));
    CHECK_THROWS(parse_rational("0.5"));
}
