#include <algorithm>
#include <cmath>
#include <cstdio>

#include "liereduce/cli/suites.hpp"
#include "liereduce/lie/lie.hpp"
#include "liereduce/linearize/linearize.hpp"
#include "liereduce/parser/parser.hpp"

namespace liereduce {

namespace {

const OdeVars ZW{};
const OdeVars RW{"r", "W"};
const OdeVars XiX{"xi", "X"};
const OdeVars VQ{"v", "Q"};

Expr P(const std::string& s, const OdeVars& f = ZW) { return parse(s, f.names()); }

std::vector<Expr> derivs(const OdeVars& f)
{
    auto j = ode_jets(f);
    return {j.begin() + 1, j.end()};
}

std::string clip(const std::string& s, std::size_t n = 240)
{
    return s.size() <= n ? s : s.substr(0, n) + "...";
}

std::string show(const Expr& e, const OdeVars& f = ZW) { return clip(print(e, f.names())); }

Expr family(const Catalog& cat, const std::string& name)
{
    const ReductionCase& c = cat.find(name);
    if (!c.reduced)
        throw Error(name + " has no reduced equation");
    return c.bind(*c.reduced, c.resolve({}));
}

std::vector<mpq_class> grid(std::initializer_list<const char*> v)
{
    std::vector<mpq_class> out;
    for (auto s : v)
        out.push_back(parse_rational(s));
    return out;
}

std::string grid_text(const std::string& p, const std::vector<mpq_class>& g)
{
    std::string s = p + " in {";
    for (std::size_t i = 0; i < g.size(); ++i)
        s += (i ? ", " : "") + g[i].get_str();
    return s + "}";
}

std::string flags(const ScanEntry& e)
{
    std::string s = e.value.get_str() + ":" + (e.psi1_zero ? "0" : "*") + (e.psi2_zero ? "0" : "*");
    if (e.constraint_violated)
        s += "!";
    return s;
}

std::string scan_detail(const ScanReport& r)
{
    std::string s = "(Psi1,Psi2) zero flags";
    for (auto& e : r.entries)
        s += " " + flags(e);
    return s;
}

void expect_proportional(Check& c, const Expr& got, const Expr& want, const OdeVars& f)
{
    Expr mu;
    c.pass = proportional(got, want, derivs(f), &mu);
    c.verdict = c.pass ? "Match" : "Mismatch";
    c.detail = c.pass ? "factor " + show(mu, f) : "computed " + show(got, f);
}

} // namespace

std::vector<Check> symmetry_checks(SymmetryScope scope)
{
    std::vector<Check> out;
    if (scope != SymmetryScope::Commutators) {
        Expr zk = zk_equation();
        struct G {
            const char* id;
            const char* kind;
            const char* arg;
        };
        for (G g : {G{"sym.gen.v0", "v0", ""}, G{"sym.gen.x", "x", "g(t)"}, G{"sym.gen.y", "y", "h(t)"},
                    G{"sym.gen.z", "z", "f(t)"}}) {
            std::string in = *g.arg ? std::string(g.kind) + "{" + g.arg + "}" : g.kind;
            out.push_back(timed(g.id, in, [&](Check& c) {
                VectorField v = *g.arg ? generator(g.kind, parse(g.arg)) : generator(g.kind);
                c.pass = is_symmetry(v, zk);
                c.verdict = c.pass ? "Symmetry" : "NotSymmetry";
            }));
        }
    }
    if (scope != SymmetryScope::Generators) {
        struct R {
            const char* id;
            const char* lk;
            const char* la;
            const char* rk;
            const char* ra;
            const char* sk;  // expected kind, empty for zero
            const char* sa;
        };
        static const R rel[] = {
            {"sym.comm.1", "v0", "", "x", "g(t)", "x", "-2*g(t)"},
            {"sym.comm.2", "v0", "", "y", "h(t)", "y", "-h(t)"},
            {"sym.comm.3", "v0", "", "z", "f(t)", "", ""},
            {"sym.comm.4", "x", "g1(t)", "x", "g2(t)", "", ""},
            {"sym.comm.5", "x", "g(t)", "y", "h(t)", "", ""},
            {"sym.comm.6", "x", "g(t)", "z", "f(t)", "x", "f'(t)*g(t)/3 - f(t)*g'(t)"},
            {"sym.comm.7", "y", "h1(t)", "y", "h2(t)", "x", "(h1(t)*h2'(t) - h1'(t)*h2(t))/2"},
            {"sym.comm.8", "y", "h(t)", "z", "f(t)", "y", "2/3*f'(t)*h(t) - f(t)*h'(t)"},
            {"sym.comm.9", "z", "f1(t)", "z", "f2(t)", "z", "f1(t)*f2'(t) - f1'(t)*f2(t)"},
        };
        auto gen = [](const char* k, const char* a) { return *a ? generator(k, parse(a)) : generator(k); };
        auto text = [](const char* k, const char* a) {
            return *a ? std::string(k) + "{" + a + "}" : std::string(k);
        };
        for (const R& r : rel) {
            std::string in = "[" + text(r.lk, r.la) + ", " + text(r.rk, r.ra) + "] = " +
                             (*r.sk ? text(r.sk, r.sa) : std::string("0"));
            out.push_back(timed(r.id, in, [&](Check& c) {
                VectorField br = commutator(gen(r.lk, r.la), gen(r.rk, r.ra));
                c.pass = *r.sk ? same_field(br, gen(r.sk, r.sa)) : br.is_zero();
                c.verdict = c.pass ? "Verified" : "Mismatch";
            }));
        }
    }
    return out;
}

namespace {

std::string verdict_detail(const Verdict& v)
{
    switch (v.tag) {
    case Verdict::Tag::Match:
        return "factor " + show(v.factor);
    case Verdict::Tag::Mismatch:
        return "residual " + show(v.residual);
    case Verdict::Tag::Degenerate:
        return "condition " + clip(print(v.condition));
    case Verdict::Tag::TransversalityFailure:
        return v.detail;
    }
    return "";
}

} // namespace

Check reduce_check(const ReductionCase& c, const ParamMap& params, const std::optional<Expr>& target)
{
    std::string in = c.name;
    for (auto& [k, v] : params)
        in += " " + k + "=" + print(v);
    if (target)
        in += " target " + show(*target);
    return timed("reduce." + c.name, in, [&](Check& chk) {
        if (target) {
            Verdict v = verify_reduction(c, c.resolve(params), *target);
            chk.pass = v.tag == Verdict::Tag::Match;
            chk.verdict = to_string(v.tag);
            chk.detail = verdict_detail(v);
            return;
        }
        CaseCheck cc = check_case(c, params);
        chk.pass = cc.pass;
        chk.verdict = (cc.pass ? "expected " : "unexpected, wanted ") + to_string(c.expected);
        std::string d = cc.mode + ":";
        for (auto& [label, v] : cc.runs) {
            d += " [" + (label.empty() ? std::string("symbolic") : label) + " " + to_string(v.tag);
            if (!cc.pass)
                d += " " + verdict_detail(v);
            d += "]";
        }
        chk.detail = clip(d, 600);
    });
}

std::vector<Check> reduction_checks(const Catalog& cat)
{
    std::vector<Check> out;
    for (auto& c : cat.cases())
        out.push_back(reduce_check(c, {}, std::nullopt));
    return out;
}

std::vector<Check> linearization_checks(const Catalog& cat)
{
    std::vector<Check> out;
    out.push_back(timed("lin.red21.psi", "L2.1 reduced", [&](Check& c) {
        auto [p1, p2] = psi(extract_cubic(family(cat, "L2.1")));
        c.pass = equivalent(p1, P("54*z/(4 + w*z)^3")) && equivalent(p2, P("-72*(-2 + w*z)/(z*(4 + w*z)^3)"));
        c.verdict = c.pass ? "Match" : "Mismatch";
        c.detail = "Psi1 = " + show(p1) + "; Psi2 = " + show(p2);
    }));
    out.push_back(timed("lin.red27.k0=0", "L2.7 reduced at k0=0, Z = w^2", [&](Check& c) {
        Expr ode = substitute(family(cat, "L2.7"), {{Expr::parameter("k0"), Expr(0)}});
        bool lin = is_linearizable(extract_cubic(ode));
        Expr target = parse("Z''", OdeVars{"z", "Z"}.names());
        bool sub = verify_linearizing_substitution(ode, P("w^2"), ZW, target);
        c.pass = lin && sub;
        c.verdict = c.pass ? "Linearizable" : "Mismatch";
        c.detail = std::string("Psi = (0,0): ") + (lin ? "yes" : "no") + "; Z = w^2 gives Z'' = 0: " +
                   (sub ? "yes" : "no");
    }));
    auto g27 = grid({"1", "-1", "1/2", "-1/2", "1/3"});
    out.push_back(timed("lin.red27.scan", "L2.7 reduced, " + grid_text("k0", g27), [&](Check& c) {
        auto rep = linearizability_scan(family(cat, "L2.7"), "k0", g27);
        c.pass = std::none_of(rep.entries.begin(), rep.entries.end(), [](auto& e) { return e.linearizable(); });
        c.verdict = c.pass ? "NotLinearizable" : "Mismatch";
        c.detail = scan_detail(rep);
    }));
    auto g28 = grid({"1/9", "0", "1", "-1", "1/3", "2/9"});
    out.push_back(timed("lin.red28a.scan", "L2.8a reduced, " + grid_text("k0", g28), [&](Check& c) {
        auto rep = linearizability_scan(family(cat, "L2.8a"), "k0", g28);
        bool only = rep.entries[0].psi1_zero;
        for (std::size_t i = 1; i < rep.entries.size(); ++i)
            only = only && !rep.entries[i].psi1_zero;
        bool psi2 = equivalent(rep.entries[0].psi2, P("18*z^(4/5)/(25*(w + z^(14/5))^2)"));
        c.pass = only && psi2;
        c.verdict = c.pass ? "Match" : "Mismatch";
        c.detail = scan_detail(rep) + "; Psi2 at 1/9 = " + show(rep.entries[0].psi2);
    }));
    auto g212 = grid({"-1/15", "1/21", "0", "1/2"});
    out.push_back(timed("lin.red212a.scan", "L2.12a reduced, " + grid_text("k0", g212), [&](Check& c) {
        auto rep = linearizability_scan(family(cat, "L2.12a"), "k0", g212);
        bool ok = true;
        for (std::size_t i = 0; i < rep.entries.size(); ++i) {
            ok = ok && rep.entries[i].psi1_zero == (i == 0);
            ok = ok && rep.entries[i].psi2_zero == (i == 1);
        }
        c.pass = ok;
        c.verdict = c.pass ? "Match" : "Mismatch";
        c.detail = scan_detail(rep);
    }));
    struct B {
        const char* id;
        const char* name;
        const char* param;
    };
    auto gb = grid({"0", "1", "-1", "2"});
    for (B b : {B{"lin.red28b1.scan", "L2.8b1", "c1"}, B{"lin.red28b2.scan", "L2.8b2", "c2"},
                B{"lin.red212b1.scan", "L2.12b1", "c3"}}) {
        out.push_back(timed(b.id, std::string(b.name) + " reduced, " + grid_text(b.param, gb), [&](Check& c) {
            ScanOptions opt;
            opt.constraints = cat.find(b.name).constraints;
            opt.flag_violations = true;
            auto rep = linearizability_scan(family(cat, b.name), b.param, gb, opt);
            bool ok = true;
            for (std::size_t i = 0; i < rep.entries.size(); ++i)
                ok = ok && rep.entries[i].linearizable() == (i == 0);
            c.pass = ok;
            c.verdict = c.pass ? "LinearizableOnlyAtZero" : "Mismatch";
            c.detail = scan_detail(rep);
            if (rep.entries[0].constraint_violated)
                c.detail += "; " + std::string(b.param) + " = 0 violates a case constraint";
        }));
    }
    return out;
}

std::vector<Check> transform_checks(const Catalog& cat)
{
    std::vector<Check> out;
    out.push_back(timed("tr.red21t1", "L2.1 reduced, r = w*z, W = -ln(w)", [&](Check& c) {
        Transform rect{P("w*z"), P("-ln(w)"), P("r*exp(W)", RW), P("exp(-W)", RW), ZW, RW};
        Expr got = change_variables(family(cat, "L2.1"), rect);
        expect_proportional(
            c, got, P("-1 + (2 - 5*r)*W' + (-8*r + 11*r^2)*W'^2 - 6*r^2*(1 + r)*W'^3 + r*(4 + r)*W''", RW), RW);
    }));
    out.push_back(timed("tr.red212b2.swap", "L2.12b2 reduced, r = w, W = z", [&](Check& c) {
        Transform swap{P("w"), P("z"), std::nullopt, std::nullopt, ZW, RW};
        Expr got = change_variables(family(cat, "L2.12b2"), swap);
        expect_proportional(c, got, P("2*W'^2 + W' - r*W''", RW), RW);
    }));
    out.push_back(timed("tr.abred212b1", "L2.12b1 reduced, r = 2/z + c3*w, W = 3*c3*w/2 + 2/z", [&](Check& c) {
        Transform ab{P("2/z + c3*w"), P("3*c3*w/2 + 2/z"), std::nullopt, std::nullopt, ZW, RW};
        Expr got = change_variables(family(cat, "L2.12b1"), ab);
        expect_proportional(c, got, P("6/r - 16/r*W' + 14/r*W'^2 - 4/r*W'^3 + W''", RW), RW);
    }));
    const JetFrame F = JetFrame::ode("z", "w");
    VectorField v(F, {P("z^2")}, P("2/c3"));
    OrderReduction inv{P("2/z + c3*w"), P("z^2*w'"), ZW, XiX};
    out.push_back(timed("tr.red212b1t1", "L2.12b1 reduced by z^2*D(z) + 2/c3*D(w), xi = 2/z + c3*w, X = z^2*w'",
                        [&](Check& c) {
                            Expr got = reduce_order(family(cat, "L2.12b1"), v, inv);
                            expect_proportional(c, got, P("-c3*X^2 + xi*(2 - c3*X)*X'", XiX), XiX);
                        }));
    out.push_back(timed("tr.red212b1t2", "red212b1t1 in v = X, Q = -ln(xi) + X", [&](Check& c) {
        Expr t1 = reduce_order(family(cat, "L2.12b1"), v, inv);
        Transform second{P("X", XiX), P("-ln(xi) + X", XiX), P("exp(v - Q)", VQ), P("v", VQ), XiX, VQ};
        Expr got = change_variables(t1, second);
        expect_proportional(c, got, P("-2*c3*v*(1 + v) - c3*v^2*Q'", VQ), VQ);
    }));
    return out;
}

std::vector<Check> solution_checks(const Catalog& cat, SolutionSuite suite, double tol)
{
    std::vector<Check> out;
    auto report = [](Check& c, const SolutionReport& r) {
        c.pass = r.ok;
        c.verdict = r.ok ? "Verified" : "Failed";
        c.detail = clip(r.detail);
    };
    Expr red212b1 = family(cat, "L2.12b1");
    Expr so212afn = P("w - (2 + c3*z*w)/(c3*z*W(-2*exp(-A/c3)*(2 + c3*z*w)/(c3*z))) - B");
    Expr t2 = P("-2*c3*v*(1 + v) - c3*v^2*Q'", VQ);
    if (suite != SolutionSuite::Numeric) {
        out.push_back(timed("sol.trivial", "u = 0", [&](Check& c) { report(c, verify_pde_solution(Expr(0))); }));
        const ReductionCase& l26 = cat.find("L2.6");
        out.push_back(timed("sol.red26.general", l26.solution ? print(*l26.solution) : "", [&](Check& c) {
            report(c, verify_pde_solution(l26.bind(*l26.solution, l26.resolve({}))));
        }));
        out.push_back(timed("sol.red212b1t2.oracle", "Q = A - 2*v - 2*ln(v)", [&](Check& c) {
            report(c, verify_ode_solution(P("A - 2*v - 2*ln(v)", VQ), t2, VQ));
        }));
        out.push_back(timed("sol.sol212a", "Q = A + 2/(c3*v) + v*ln(v)", [&](Check& c) {
            SolutionReport r = verify_ode_solution(P("A + 2/(c3*v) + v*ln(v)", VQ), t2, VQ);
            c.pass = true;
            c.verdict = r.ok ? "Verified" : "DocumentedDiscrepancy";
            c.detail = "residual " + show(r.residual, VQ);
        }));
        out.push_back(timed("sol.so212afn.symbolic", print(so212afn, ZW.names()), [&](Check& c) {
            report(c, verify_implicit_solution(so212afn, red212b1));
        }));
        out.push_back(timed("sol.red25.linear", "7*w' + 6*z*w''", [&](Check& c) {
            Expr s = solve_linear_family(Expr(7), Expr(6));
            report(c, verify_ode_solution(s, family(cat, "L2.5a")));
            c.detail = "w = " + show(s) + "; " + c.detail;
        }));
    }
    if (suite != SolutionSuite::Symbolic) {
        const ReductionCase& b2 = cat.find("L2.12b2");
        out.push_back(timed("sol.red212b2.lambertw", b2.solution ? print(*b2.solution) : "", [&](Check& c) {
            std::vector<SamplePoint> pts;
            for (int i = 0; i < 20; ++i)
                pts.push_back({2.0 * (i % 5) / 4.0, -1.0 + 2.0 * (i / 5) / 3.0, 0.5});
            report(c, verify_pde_solution(*b2.solution, {{"A", 1}, {"B", 0}, {"c3", 1}}, pts, tol));
            c.detail += " (A=1, B=0, c3=1)";
        }));
        out.push_back(timed("sol.so212afn.numeric", print(so212afn, ZW.names()), [&](Check& c) {
            ImplicitNumeric num{{{"A", 1}, {"B", 0}, {"c3", 1}}, {{2, -2.46}, {-1, -5.36}, {3, -2.95}}, 1e-9, true};
            report(c, verify_implicit_solution(so212afn, red212b1, num));
            c.detail += " (A=1, B=0, c3=1)";
        }));
    }
    return out;
}

} // namespace liereduce
