#include "doctest.h"

#include <cmath>

#include "liereduce/calculus/diff.hpp"
#include "liereduce/calculus/taylor.hpp"
#include "liereduce/parser/parser.hpp"

using namespace liereduce;

namespace {

Expr P(const char* s) { return parse(s); }

} // namespace

TEST_CASE("partial derivatives")
{
    Expr t = P("t"), x = P("x");
    CHECK(equivalent(diff(P("g(t)*y"), t), P("g'(t)*y")));
    CHECK(equivalent(diff(P("(2*x*f' + y^2*f'')/6"), t), P("(2*x*f'' + y^2*f''')/6")));
    CHECK(equivalent(diff(P("exp(x^2)"), x), P("2*x*exp(x^2)")));
    CHECK(equivalent(diff(P("ln(x^2+1)"), x), P("2*x/(x^2+1)")));
    CHECK(equivalent(diff(P("W(x)"), x), P("W(x)/(x*(1+W(x)))")));
    CHECK(equivalent(diff(P("(x^2+1)^(1/2)"), x), P("x/(x^2+1)^(1/2)")));
    CHECK(equivalent(diff(P("x^(2/3)"), x), P("2/3*x^(-1/3)")));
    CHECK(equivalent(diff(P("w(y^2/x)"), x), P("-y^2/x^2*w'(y^2/x)")));
    CHECK(equivalent(diff(P("x*exp(x)"), x), P("(x+1)*exp(x)")));
}

TEST_CASE("frozen partials treat w as a coordinate")
{
    Expr w = P("w"), z = P("z");
    Expr e = P("w^2*z + w'*z^3");
    CHECK(equivalent(diff_frozen(e, z), P("w^2 + 3*w'*z^2")));
    CHECK(equivalent(diff_frozen(e, w), P("2*w*z")));
    CHECK(equivalent(diff(e, z), P("2*w*w'*z + w^2 + w''*z^3 + 3*w'*z^2")));
}

TEST_CASE("total derivatives")
{
    Expr x = P("x"), t = P("t");
    CHECK(equivalent(total_derivative(P("u*D(u,x)"), x), P("D(u,x)^2 + u*D(u,x,x)")));
    CHECK(is_zero(total_derivative(t, x)));
    CHECK(equivalent(total_derivative(P("D(u,x)"), t), P("D(u,x,t)")));
    CHECK(equivalent(total_derivative(P("g(t)*u"), t), P("g'(t)*u + g(t)*D(u,t)")));
}

TEST_CASE("LambertW evaluation")
{
    CHECK(lambertw(0.0) == 0.0);
    CHECK(std::fabs(lambertw(std::exp(1.0)) - 1.0) < 1e-15);
    double om = lambertw(1.0);
    CHECK(std::fabs(om * std::exp(om) - 1.0) < 1e-14);
    for (double a : {0.1, 0.5, 1.0, 2.0, 10.0, -0.3, 1e6})
        CHECK(std::fabs(lambertw(a) * std::exp(lambertw(a)) - a) < 1e-13 * std::max(1.0, a));
    CHECK_THROWS_AS(lambertw(-0.5), LambertWDomain);

    EvalPoint p;
    p.variables = {{"x", 0.0}};
    CHECK(eval_jet(P("W(x)"), p, 2).value() == 0.0);
    p.variables = {{"x", std::exp(1.0)}};
    CHECK(std::fabs(eval_jet(P("W(x)"), p, 2).value() - 1.0) < 1e-15);
}

TEST_CASE("jet coefficients match analytic derivatives")
{
    EvalPoint p;
    p.variables = {{"x", 0.7}, {"t", 0.3}};
    p.constants = {{"c3", 1.5}};
    TaylorJet j = eval_jet(P("exp(x*t)/(c3 + x^2) + W(x*t)"), p, 3);
    double x = 0.7, t = 0.3;
    double w = lambertw(x * t);
    double dx = t * std::exp(x * t) / (1.5 + x * x) - std::exp(x * t) * 2 * x / std::pow(1.5 + x * x, 2) +
                t * w / (x * t * (1 + w));
    CHECK(std::fabs(j.derivative({1, 0}) - dx) < 1e-12 * std::fabs(dx));

    Expr e = P("exp(x*t)/(c3 + x^2) + W(x*t)");
    Expr dxt = diff(diff(e, P("x")), P("t"));
    std::map<std::string, double> c = {{"x", x}, {"t", t}, {"c3", 1.5}};
    double ref = eval_number(dxt.canonical(), c);
    CHECK(std::fabs(j.derivative({1, 1}) - ref) < 1e-12 * std::fabs(ref));
    Expr dxxx = diff(e, P("x"), 3);
    double ref3 = eval_number(dxxx.canonical(), c);
    CHECK(std::fabs(j.derivative({3, 0}) - ref3) < 1e-12 * std::fabs(ref3));
}

TEST_CASE("opaque functions through a numeric table")
{
    FunctionTable fns;
    fns["g"] = [](double x, int count) {
        std::vector<double> v(static_cast<std::size_t>(count), std::sin(x));
        for (int k = 0; k < count; ++k)
            v[static_cast<std::size_t>(k)] = std::sin(x + k * M_PI / 2);
        return v;
    };
    EvalPoint p;
    p.variables = {{"t", 0.4}};
    TaylorJet j = eval_jet(P("g'(t^2)"), p, 2, fns);
    CHECK(std::fabs(j.value() - std::cos(0.16)) < 1e-15);
    CHECK(std::fabs(j.derivative({1}) - (-std::sin(0.16) * 0.8)) < 1e-14);
    EvalPoint q;
    q.variables = {{"x", 1.0}};
    CHECK_THROWS_AS(eval_jet(P("1/(x-1)"), q, 1), DivisionByZeroAtPoint);
}
