#include <doctest.h>

#include <random>

#include "liereduce/linearize/linearize.hpp"
#include "liereduce/parser/parser.hpp"

using namespace liereduce;

namespace {

const OdeVars ZW{};

Expr P(const char* s) { return parse(s, ZW.names()); }

const ReductionCase& C(const char* name) { return Catalog::embedded().find(name); }

// Reduced equation of a case with its let-bindings and fixed values applied.
Expr family(const char* name)
{
    const ReductionCase& c = C(name);
    return c.bind(*c.reduced, c.resolve({}));
}

std::vector<mpq_class> grid(std::initializer_list<const char*> v)
{
    std::vector<mpq_class> out;
    for (auto s : v)
        out.push_back(parse_rational(s));
    return out;
}

} // namespace

TEST_CASE("extract_cubic")
{
    CubicODE w2 = extract_cubic(P("w''"));
    CHECK(is_zero(w2.A));
    CHECK(is_zero(w2.B));
    CHECK(is_zero(w2.C));
    CHECK(is_zero(w2.D));

    Expr red27 = P("k0*w' + w'^2 + (w - z*k0)*w''");
    CubicODE c = extract_cubic(red27);
    CHECK(is_zero(c.A));
    CHECK(equivalent(c.B, P("1/(w - z*k0)")));
    CHECK(equivalent(c.C, P("k0/(w - z*k0)")));
    CHECK(is_zero(c.D));
    CHECK(proportional(c.reconstruct(), red27, {ZW.jet(1), ZW.jet(2)}));

    CHECK_THROWS_AS(extract_cubic(P("w'' + w'^4")), DegreeTooHigh);
    CHECK_THROWS_AS(extract_cubic(P("w''^2 + w")), NotLinearInSecondDerivative);
    CHECK_THROWS_AS(extract_cubic(P("w'*w'' + w")), NotLinearInSecondDerivative);
    CHECK_THROWS_AS(extract_cubic(P("w' - w^2")), VanishingLeadingCoefficient);
    CHECK_THROWS_AS(extract_cubic(P("w''' + w''")), DegreeTooHigh);
}

TEST_CASE("psi of red21 matches the displayed pair")
{
    auto [p1, p2] = psi(extract_cubic(*C("L2.1").reduced));
    CHECK(equivalent(p1, P("54*z/(4 + w*z)^3")));
    CHECK(equivalent(p2, P("-72*(-2 + w*z)/(z*(4 + w*z)^3)")));
    CHECK_FALSE(is_linearizable(extract_cubic(*C("L2.1").reduced)));
}

TEST_CASE("trivial and linearizable cases")
{
    auto [a, b] = psi(CubicODE{Expr(0), Expr(0), Expr(0), Expr(0), ZW});
    CHECK(is_zero(a));
    CHECK(is_zero(b));
    CHECK(is_linearizable(extract_cubic(P("w'^2 + w*w''"))));
    CHECK(is_linearizable(extract_cubic(P("w''"))));
}

TEST_CASE("red27 is linearizable exactly at k0 = 0")
{
    auto rep = linearizability_scan(family("L2.7"), "k0", grid({"0", "1", "-1", "1/2", "-1/2", "1/3"}));
    REQUIRE(rep.entries.size() == 6);
    CHECK(rep.entries[0].linearizable());
    for (std::size_t i = 1; i < 6; ++i) {
        CHECK_FALSE(rep.entries[i].linearizable());
        CHECK(rep.entries[i].witness.rfind("Psi1(", 0) == 0);
    }
    CHECK(equivalent(rep.entries[1].psi1, P("9/(w - z)^3")));
    CHECK(equivalent(rep.entries[3].psi2, P("18/(2*w - z)^3")));
}

TEST_CASE("red28a scan")
{
    auto rep = linearizability_scan(family("L2.8a"), "k0", grid({"1/9", "0", "1", "-1", "1/3", "2/9"}));
    REQUIRE(rep.entries.size() == 6);
    CHECK(rep.entries[0].psi1_zero);
    for (std::size_t i = 1; i < 6; ++i)
        CHECK_FALSE(rep.entries[i].psi1_zero);
    CHECK(equivalent(rep.entries[0].psi2, P("18*z^(4/5)/(25*(w + z^(14/5))^2)")));
    CHECK(rep.entries[0].witness.rfind("Psi2(", 0) == 0);
    CHECK(equivalent(rep.entries[4].psi1, P("-6*z/(w + z^2)^3")));
}

TEST_CASE("red212a scan: never both invariants")
{
    auto rep = linearizability_scan(family("L2.12a"), "k0", grid({"-1/15", "1/21", "0", "1/2"}));
    REQUIRE(rep.entries.size() == 4);
    CHECK(rep.entries[0].psi1_zero);
    CHECK_FALSE(rep.entries[0].psi2_zero);
    CHECK_FALSE(rep.entries[1].psi1_zero);
    CHECK(rep.entries[1].psi2_zero);
    for (std::size_t i = 2; i < 4; ++i) {
        CHECK_FALSE(rep.entries[i].psi1_zero);
        CHECK_FALSE(rep.entries[i].psi2_zero);
    }
}

TEST_CASE("b-branch scans are linearizable only at zero")
{
    struct Row {
        const char* name;
        const char* param;
    };
    for (Row row : {Row{"L2.8b1", "c1"}, Row{"L2.8b2", "c2"}, Row{"L2.12b1", "c3"}}) {
        CAPTURE(row.name);
        const ReductionCase& c = C(row.name);
        ScanOptions opt;
        opt.constraints = c.constraints;
        CHECK_THROWS_AS(linearizability_scan(family(row.name), row.param, grid({"0", "1"}), opt), ConstraintViolated);
        opt.flag_violations = true;
        auto rep = linearizability_scan(family(row.name), row.param, grid({"0", "1", "-1", "2"}), opt);
        REQUIRE(rep.entries.size() == 4);
        CHECK(rep.entries[0].linearizable());
        CHECK(rep.entries[0].constraint_violated);
        for (std::size_t i = 1; i < 4; ++i) {
            CHECK_FALSE(rep.entries[i].linearizable());
            CHECK_FALSE(rep.entries[i].constraint_violated);
            CHECK_FALSE(rep.entries[i].witness.empty());
        }
    }
}

TEST_CASE("classification")
{
    auto kind = [](const char* name, const char* ode_case = nullptr) {
        const ReductionCase& c = C(ode_case ? ode_case : name);
        return classify_family(c.bind(*c.reduced, c.resolve({})), c.symmetries.size()).kind;
    };
    using K = Classification::Kind;
    Classification lin = classify_family(P("7*w' + 6*z*w''"), 0);
    CHECK(lin.kind == K::Linear);
    CHECK(equivalent(lin.a1, Expr(7)));
    CHECK(equivalent(lin.a2, Expr(6)));
    CHECK(kind("L2.5a") == K::Linear);
    CHECK(kind("L2.10a") == K::Linear);
    CHECK(kind("L2.1") == K::TypeA1);
    CHECK(kind("L2.7") == K::TypeA1);
    CHECK(kind("L2.11") == K::TypeA2);
    CHECK(kind("L2.12b1") == K::TypeA2);
    CHECK(kind("L2.12b2") == K::TypeA2);
    CHECK(kind("L2.2") == K::TypeB);
    CHECK(kind("L2.8a") == K::TypeB);
    CHECK(kind("L2.12a") == K::TypeB);
    CHECK(classify_family(P("w''^2"), 1).kind == K::OutsideFamily);
    CHECK(classify_family(P("w^3 + w''"), 1).kind == K::TypeB);
}

TEST_CASE("linear family solutions")
{
    Expr z = ZW.var();
    CHECK(equivalent(solve_linear_family(Expr(7), Expr(6)), P("C1 + C2*z^(-1/6)")));
    CHECK(equivalent(solve_linear_family(Expr(0), Expr(1)), P("C1 + C2*z")));
    CHECK(equivalent(solve_linear_family(Expr(2), Expr(2)), P("C1 + C2*ln(z)")));
    CHECK(equivalent(solve_linear_family(Expr(4), Expr(3)), P("C1 + C2*z^(-1/3)")));
    CHECK_THROWS_AS(solve_linear_family(Expr(1), Expr(0)), DegenerateFamily);
    Expr k0 = Expr::parameter("k0");
    Expr s = solve_linear_family(Expr(9) * k0 - Expr(5), Expr(3) * (Expr(2) * k0 - Expr(1)));
    Expr ode = (Expr(9) * k0 - Expr(5)) * ZW.jet(1) + Expr(3) * z * (Expr(2) * k0 - Expr(1)) * ZW.jet(2);
    CHECK(verify_ode_solution(s, ode).ok);
}

TEST_CASE("linearizing substitutions")
{
    CHECK(verify_linearizing_substitution(P("w'^2 + w*w''"), P("w^2")));
    CHECK(verify_linearizing_substitution(P("w''"), P("w")));
    CHECK_FALSE(verify_linearizing_substitution(P("w'^2 + w*w''"), P("w^3")));
    Names zn = OdeVars{"z", "Z"}.names();
    CHECK(verify_linearizing_substitution(P("w'^2 + w*w''"), P("w^2"), ZW, parse("2*Z''", zn)));
    CHECK_FALSE(verify_linearizing_substitution(P("w'^2 + w*w''"), P("w^2"), ZW, parse("Z'' + Z'", zn)));
    CHECK(verify_linearizing_substitution(P("w'' + w'"), P("3*w - z"), ZW, parse("Z'' + Z' + 1", zn)));
    CHECK_THROWS_AS(verify_linearizing_substitution(P("w''"), P("z")), SingularTransform);
}

TEST_CASE("psi vanishes on random linear equations")
{
    std::mt19937 rng(20261017);
    std::uniform_int_distribution<int> coef(-9, 9);
    Expr z = ZW.var();
    auto poly = [&] {
        Expr p(0);
        for (int k = 0; k <= 3; ++k)
            p = p + Expr(coef(rng)) * Expr::power(z, mpq_class(k));
        return p;
    };
    for (int trial = 0; trial < 100; ++trial) {
        Expr ode = ZW.jet(2) + poly() * ZW.jet(1) + poly() * ZW.jet(0) + poly();
        auto [a, b] = psi(extract_cubic(ode));
        REQUIRE(is_zero(a));
        REQUIRE(is_zero(b));
        Expr scale = poly() + Expr(10) * Expr::power(z, mpq_class(4));
        CHECK(is_linearizable(extract_cubic(ode * scale / (Expr(1) + z * z))));
    }
}
