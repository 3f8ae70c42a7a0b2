#include "doctest.h"

#include "liereduce/calculus/diff.hpp"
#include "liereduce/lie/lie.hpp"
#include "liereduce/parser/parser.hpp"

using namespace liereduce;

namespace {

Expr P(const char* s) { return parse(s); }

bool same(const VectorField& a, const VectorField& b) { return same_field(a, b); }

} // namespace

TEST_CASE("generator coefficients")
{
    VectorField v0 = generator("v0");
    CHECK(is_zero(v0.xi()[0]));
    CHECK(equivalent(v0.xi()[1], P("2*x")));
    CHECK(equivalent(v0.xi()[2], P("y")));
    CHECK(equivalent(v0.phi(), P("2*u")));
    VectorField xg = generator("x", P("g(t)"));
    CHECK(equivalent(xg.xi()[1], P("g")));
    CHECK(equivalent(xg.phi(), P("-g'")));
    VectorField yh = generator("y", P("h(t)"));
    CHECK(equivalent(yh.xi()[1], P("y*h'/2")));
    CHECK(equivalent(yh.phi(), P("-y*h''/2")));
    VectorField z1 = generator("z", Expr(1));
    CHECK(equivalent(z1.xi()[0], Expr(1)));
    CHECK(is_zero(z1.xi()[1]));
    CHECK(is_zero(z1.phi()));
    CHECK_THROWS_AS(generator("q"), UnknownKind);
}

TEST_CASE("commutation table")
{
    auto v0 = generator("v0");
    auto X = [](const char* s) { return generator("x", P(s)); };
    auto Y = [](const char* s) { return generator("y", P(s)); };
    auto Z = [](const char* s) { return generator("z", P(s)); };
    CHECK(same(commutator(v0, X("g")), X("g").scaled(Expr(-2))));
    CHECK(same(commutator(v0, Y("h")), Y("h").scaled(Expr(-1))));
    CHECK(commutator(v0, Z("f")).is_zero());
    CHECK(commutator(X("g1"), X("g2")).is_zero());
    CHECK(same(commutator(Z("f1"), Z("f2")), Z("f1*f2' - f1'*f2")));
    CHECK(commutator(X("g"), Y("h")).is_zero());
    CHECK(same(commutator(X("g"), Z("f")), X("f'*g/3 - f*g'")));
    CHECK(same(commutator(Y("h"), Z("f")), Y("2/3*f'*h - f*h'")));
    CHECK(same(commutator(Y("h1"), Y("h2")), X("(h1*h2' - h1'*h2)/2")));
}

TEST_CASE("adjoint action")
{
    Expr eps = P("epsilon");
    auto v0 = generator("v0");
    auto xg = generator("x", P("g(t)"));
    CHECK(same(adjoint(generator("z", Expr(1)), v0, eps), v0));
    CHECK(same(adjoint(generator("x", P("g1(t)")), generator("x", P("g2(t)")), eps), generator("x", P("g2(t)"))));
    VectorField a = adjoint(v0, xg, eps);
    CHECK(same(a, xg.scaled(P("exp(2*epsilon)"))));
    auto comps = a.components();
    auto base = xg.components();
    auto br = commutator(v0, xg).components();
    for (std::size_t i = 0; i < comps.size(); ++i) {
        CHECK(equivalent(substitute(comps[i], {{eps, Expr(0)}}), base[i]));
        CHECK(equivalent(substitute(diff(comps[i], eps), {{eps, Expr(0)}}), -br[i]));
    }
    VectorField zt = adjoint(generator("z", P("t")), generator("z", Expr(1)), eps);
    CHECK(same(zt, generator("z", P("exp(epsilon)"))));
    VectorField shift = adjoint(generator("z", Expr(1)), generator("z", P("t")), eps);
    CHECK(same(shift, generator("z", P("t - epsilon"))));
}

TEST_CASE("second prolongation")
{
    auto pv0 = prolong2(generator("v0"));
    CHECK(is_zero(pv0.coefficients.at({1})));
    CHECK(equivalent(pv0.coefficients.at({2}), P("D(u,y)")));
    CHECK(equivalent(pv0.coefficients.at({0}), P("2*D(u,t)")));
    auto pdx = prolong2(VectorField(JetFrame::zk(), {Expr(0), Expr(1), Expr(0)}, Expr(0)));
    for (auto& [J, c] : pdx.coefficients)
        CHECK(is_zero(c));
    auto px = prolong2(generator("x", P("g(t)")));
    CHECK(equivalent(px.coefficients.at({0}), P("-g'' - g'*D(u,x)")));
    CHECK(equivalent(px.coefficients.at({0, 1}), P("-g'*D(u,x,x)")));
}

TEST_CASE("symmetries of ZK")
{
    Expr zk = zk_equation();
    CHECK(is_symmetry(generator("v0"), zk));
    CHECK(is_symmetry(generator("x", P("g(t)")), zk));
    CHECK(is_symmetry(generator("y", P("h(t)")), zk));
    CHECK(is_symmetry(generator("z", P("f(t)")), zk));
    CHECK_FALSE(is_symmetry(VectorField(JetFrame::zk(), {Expr(0), Expr(0), Expr(0)}, Expr(1)), zk));
    CHECK_FALSE(is_symmetry(VectorField(JetFrame::zk(), {Expr(0), P("t"), Expr(0)}, Expr(0)), zk));
}

TEST_CASE("ODE frame symmetries")
{
    JetFrame F = JetFrame::ode("z", "w");
    Expr red21 = P("-w^2 + 2*(w*z - 1)*w' - z^2*w'^2 - (4*z + w*z^2)*w''");
    CHECK(is_symmetry(VectorField(F, {P("z")}, P("-w")), red21));
    Expr b2 = P("2*w' + w'^2 + w*w''");
    CHECK(is_symmetry(VectorField(F, {Expr(1)}, Expr(0)), b2));
    CHECK_FALSE(is_symmetry(VectorField(F, {Expr(0)}, Expr(1)), b2));
}
