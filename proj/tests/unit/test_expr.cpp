#include "doctest.h"

#include "liereduce/expr/expr.hpp"

using namespace liereduce;

namespace {

Expr sym(const char* n) { return Expr::symbol(n); }
Expr q(long a, long b = 1) { return Expr(mpq_class(a, b)); }

} // namespace

TEST_CASE("binomial cancels")
{
    Expr x = sym("x"), y = sym("y");
    Expr e = Expr::power(x + y, mpq_class(2)) - x * x - q(2) * x * y - y * y;
    CHECK(is_zero(e));
}

TEST_CASE("rational function cancellation")
{
    Expr z = sym("z"), w = sym("w");
    Expr e = z * z / (z * (q(4) + w * z)) - z / (q(4) + w * z);
    CHECK(is_zero(e));
    Expr f = (z * z - q(1)) / (z - q(1));
    CHECK(equivalent(f, z + q(1)));
}

TEST_CASE("exp and ln")
{
    Expr x = sym("x"), y = sym("y");
    CHECK(equivalent(exp(x + y), exp(x) * exp(y)));
    CHECK(equivalent(exp(ln(x)), x));
    CHECK(equivalent(ln(x * y), ln(x) + ln(y)));
    CHECK(equivalent(exp(q(2) * ln(x)), x * x));
    CHECK(equivalent(ln(q(12)), q(2) * ln(q(2)) + ln(q(3))));
    CHECK(equivalent(ln(exp(x)), x));
    CHECK(equivalent(exp(x / q(2)) * exp(x / q(2)), exp(x)));
}

TEST_CASE("radicals")
{
    Expr x = sym("x"), y = sym("y");
    Expr r = Expr::power(x + y, mpq_class(1, 2));
    CHECK(equivalent(r * r, x + y));
    CHECK(equivalent(q(1) / r, r / (x + y)));
    Expr s = Expr::power(q(2), mpq_class(1, 2));
    CHECK(equivalent(s * s, q(2)));
    CHECK(equivalent(Expr::power(q(8), mpq_class(1, 3)), q(2)));
    CHECK(equivalent(Expr::power(x * x, mpq_class(1, 2)), x));
    CHECK(equivalent(Expr::power(x, mpq_class(1, 3)) * Expr::power(x, mpq_class(2, 3)), x));
}

TEST_CASE("substitution")
{
    Expr x = sym("x"), y = sym("y"), t = sym("t");
    Expr e = x * x + y;
    Expr r = substitute(e, {{x, y + t}, {y, x}});
    CHECK(equivalent(r, (y + t) * (y + t) + x));
    Expr g = Expr::function("g", 0, t);
    Expr h = substitute(g * x, {{t, x * x}});
    CHECK(equivalent(h, Expr::function("g", 0, x * x) * x));
    Expr ex = exp(x * y);
    CHECK(equivalent(substitute(ex, {{y, ln(t) / x}}), t));
}

TEST_CASE("collect")
{
    Expr x = sym("x"), y = sym("y"), a = Expr::parameter("a");
    auto c = collect(a * x * x + q(3) * x * y + a, {x});
    REQUIRE(c.size() == 3);
    CHECK(equivalent(c.at({2}), a));
    CHECK(equivalent(c.at({1}), q(3) * y));
    CHECK(equivalent(c.at({0}), a));
}
