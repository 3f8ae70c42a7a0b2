#include "liereduce/reduction/reduction.hpp"

#include <algorithm>
#include <cmath>

#include "liereduce/calculus/diff.hpp"

namespace liereduce {

DegenerateReduction::DegenerateReduction(const std::string& msg, Expr condition)
    : Error(msg), condition_(std::move(condition))
{
}

std::string to_string(Verdict::Tag t)
{
    switch (t) {
    case Verdict::Tag::Match:
        return "Match";
    case Verdict::Tag::Mismatch:
        return "Mismatch";
    case Verdict::Tag::Degenerate:
        return "Degenerate";
    case Verdict::Tag::TransversalityFailure:
        return "TransversalityFailure";
    }
    return "?";
}

Names OdeVars::names() const
{
    Names n = Names::standard();
    n.symbol(independent);
    n.function(dependent, var());
    return n;
}

std::vector<Expr> ode_jets(const OdeVars& f, int order)
{
    std::vector<Expr> out;
    for (int k = 0; k <= order; ++k)
        out.push_back(f.jet(k));
    return out;
}

bool proportional(const Expr& a, const Expr& b, const std::vector<Expr>& atoms, Expr* factor)
{
    if (is_zero(a) || is_zero(b))
        return false;
    Expr mu = a / b;
    const CanonicalForm& f = mu.canonical();
    for (auto& x : atoms)
        if (f.depends_on(atom_of(x)))
            return false;
    if (factor)
        *factor = mu;
    return true;
}

Expr zk_residual(const Expr& u)
{
    Expr t = Expr::symbol("t"), x = Expr::symbol("x"), y = Expr::symbol("y");
    Expr ux = diff(u, x);
    return diff(ux, t) - ux * ux - u * diff(ux, x) - diff(u, y, 2);
}

namespace {

const OdeVars kZW{};

std::vector<Expr> base_vars() { return {Expr::symbol("t"), Expr::symbol("x"), Expr::symbol("y")}; }

Expr from_poly(const Poly& p) { return Expr::from_form(CanonicalForm::from_poly(p)); }

Expr numerator(const Expr& e) { return from_poly(e.canonical().num()); }

// Integer-primitive numerator with a positive name-leading coefficient on
// the coefficient of the highest derivative present.
Expr normalize_ode(const Expr& e, const OdeVars& vars)
{
    Poly n = e.canonical().num();
    if (n.is_zero())
        return Expr(0);
    n = n.divexact_int(n.content());
    auto jets = ode_jets(vars);
    std::vector<AtomId> ids;
    for (auto& j : jets)
        ids.push_back(atom_of(j));
    try {
        // Common factor of the coefficients of the derivative monomials.
        auto by_derivs = collect_form(CanonicalForm::from_poly(n), {ids.begin() + 1, ids.end()});
        Poly g;
        for (auto& [k, v] : by_derivs)
            g = g.is_zero() ? v.num() : gcd(g, v.num());
        if (!g.is_zero() && !g.is_constant())
            if (auto q = divide_exact(n, g))
                n = *q;
    } catch (const NotPolynomialInAtoms&) {
    }
    n = n.divexact_int(n.content());
    Expr out = from_poly(n);
    try {
        auto c = collect_form(out.canonical(), ids);
        const CanonicalForm* lead = nullptr;
        int best = -1;
        for (auto& [k, v] : c) {
            int top = -1;
            for (int i = static_cast<int>(k.size()) - 1; i >= 0; --i)
                if (k[i] > 0) {
                    top = i;
                    break;
                }
            if (top >= best) {
                best = top;
                lead = &v;
            }
        }
        if (lead && name_leading_coefficient(lead->num()) < 0)
            out = -out;
    } catch (const NotPolynomialInAtoms&) {
        if (name_leading_coefficient(n) < 0)
            out = -out;
    }
    return out;
}

Expr solve_linear(const Expr& eq, const Expr& pivot) { return solve_for_pivot(numerator(eq), pivot); }

struct Residual {
    Expr value;
    Expr zE;
    ParamMap resolved;
};

Residual compute_residual(const ReductionCase& c, const ParamMap& params)
{
    ParamMap r = c.resolve(params);
    c.check_constraints(r);
    Expr z = Expr::symbol("z");
    Expr zE = c.bind(c.z, r);
    if (!c.u) {
        AtomId u = jet_atom("u", {});
        bool uses_u = zE.canonical().depends_on(u) || (c.w_invariant && c.bind(*c.w_invariant, r).canonical().depends_on(u));
        if (!uses_u)
            throw TransversalityFailure(c.name + ": the invariants do not involve u, so no ansatz u = U(t,x,y,w(z)) exists");
        throw Error(c.name + " has no ansatz");
    }
    Expr U = substitute(c.bind(*c.u, r), {{z, zE}});
    Expr D = zk_residual(U);
    ExprBindings rebind;
    for (int k = 0; k <= 3; ++k)
        rebind.emplace_back(Expr::function("w", k, zE), Expr::function("w", k, z));
    D = substitute(D, rebind);
    const auto& [var, inv] = *c.inverse;
    D = substitute(D, {{Expr::symbol(var), c.bind(inv, r)}});
    return {D, zE, r};
}

using Collected = std::map<MonomialKey, Expr>;

Collected collect_jets(const Expr& e, const std::string& what)
{
    try {
        return collect(e, ode_jets(kZW));
    } catch (const NotPolynomialInAtoms& err) {
        throw ResidualNotReducible(what + " is not polynomial in w, w', w'': " + err.what());
    }
}

bool has_derivative(const Collected& c)
{
    for (auto& [k, v] : c)
        for (std::size_t i = 1; i < k.size(); ++i)
            if (k[i] > 0)
                return true;
    return false;
}

// Highest-derivative monomial: largest top order, then largest exponent there.
MonomialKey reference_key(const Collected& c)
{
    MonomialKey best;
    int best_top = -2;
    long best_exp = -1;
    for (auto& [k, v] : c) {
        int top = -1;
        for (int i = static_cast<int>(k.size()) - 1; i >= 0; --i)
            if (k[i] > 0) {
                top = i;
                break;
            }
        long e = top >= 0 ? k[top] : 0;
        if (top > best_top || (top == best_top && e >= best_exp)) {
            best = k;
            best_top = top;
            best_exp = e;
        }
    }
    return best;
}

Expr degenerate_condition(const Expr& residual)
{
    Poly n = residual.canonical().num();
    if (n.is_zero())
        return Expr(0);
    std::vector<Mono::Factor> strip;
    Mono low = n.min_mono();
    for (auto& [a, e] : low.factors()) {
        const AtomInfo& info = atom_info(a);
        if (info.kind == AtomKind::Symbol && (info.name == "t" || info.name == "x" || info.name == "y"))
            strip.emplace_back(a, e);
    }
    Mono m = Mono::from_factors(strip);
    std::vector<Term> terms;
    for (auto& t : n.terms())
        terms.push_back({t.m / m, t.c});
    Poly p = Poly::from_terms(std::move(terms));
    p = p.divexact_int(p.content());
    if (name_leading_coefficient(p) < 0)
        p = -p;
    return from_poly(p);
}

Expr rebuild(const Collected& c, const std::vector<Expr>& jets)
{
    std::vector<Expr> terms;
    for (auto& [k, v] : c) {
        std::vector<Expr> f{v};
        for (std::size_t i = 0; i < k.size(); ++i)
            if (k[i])
                f.push_back(Expr::power(jets[i], mpq_class(k[i])));
        terms.push_back(Expr::product(f));
    }
    return Expr::sum(terms);
}

} // namespace

Expr reduce(const ReductionCase& c, const ParamMap& params)
{
    Residual res = compute_residual(c, params);
    Collected col = collect_jets(res.value, c.name + " residual");
    if (!has_derivative(col)) {
        Expr cond = degenerate_condition(res.value);
        throw DegenerateReduction(c.name + " forces " + print(cond, c.names) + " = 0", cond);
    }
    Expr ref = col.at(reference_key(col));
    Collected scaled;
    for (auto& [k, v] : col)
        scaled[k] = v / ref;
    Expr out = rebuild(scaled, ode_jets(kZW));
    for (auto& b : base_vars())
        if (out.canonical().depends_on(atom_of(b)))
            throw ResidualNotReducible(c.name + ": the reduced equation still depends on " + b.name());
    return normalize_ode(out, kZW);
}

Verdict verify_reduction(const ReductionCase& c, const ParamMap& params, const Expr& target)
{
    Verdict v;
    Residual res;
    try {
        res = compute_residual(c, params);
    } catch (const TransversalityFailure& e) {
        v.tag = Verdict::Tag::TransversalityFailure;
        v.detail = e.what();
        return v;
    }
    Collected got = collect_jets(res.value, c.name + " residual");
    if (!has_derivative(got)) {
        v.tag = Verdict::Tag::Degenerate;
        v.condition = degenerate_condition(res.value);
        v.detail = "residual forces " + print(v.condition, c.names) + " = 0";
        return v;
    }
    Expr tgt = c.bind(target, res.resolved);
    Collected want = collect_jets(tgt, "target");
    MonomialKey ref = reference_key(got);
    Expr residual_out = res.value;
    if (want.count(ref)) {
        Expr mu = got.at(ref) / want.at(ref);
        residual_out = res.value - mu * tgt;
        bool same_keys = got.size() == want.size();
        for (auto& [k, val] : got)
            same_keys = same_keys && want.count(k);
        bool ok = same_keys && !is_zero(mu);
        if (ok)
            for (auto& [k, val] : got)
                if (!is_zero(val - mu * want.at(k))) {
                    ok = false;
                    break;
                }
        if (ok) {
            v.tag = Verdict::Tag::Match;
            v.factor = substitute(mu, {{Expr::symbol("z"), res.zE}});
            v.detail = "factor " + print(v.factor, c.names);
            return v;
        }
    }
    v.tag = Verdict::Tag::Mismatch;
    v.residual = residual_out;
    try {
        v.detail = "computed " + print(reduce(c, params), c.names);
    } catch (const Error& e) {
        v.detail = std::string("computed residual is not reducible: ") + e.what();
    }
    return v;
}

namespace {

std::string sample_label(const std::map<std::string, mpq_class>& s)
{
    std::string out;
    for (auto& [k, v] : s) {
        if (!out.empty())
            out += ", ";
        out += k + "=" + v.get_str();
    }
    return out.empty() ? "symbolic" : out;
}

bool outcome_holds(const ReductionCase& c, const ParamMap& resolved, const Verdict& v)
{
    switch (c.expected) {
    case Outcome::ReducedODE:
        return v.tag == Verdict::Tag::Match;
    case Outcome::TransversalityFailure:
        return v.tag == Verdict::Tag::TransversalityFailure;
    case Outcome::Degenerate: {
        if (v.tag != Verdict::Tag::Degenerate)
            return false;
        Expr want = c.bind(*c.degenerate, resolved);
        std::vector<Expr> atoms;
        for (AtomId a : want.canonical().atoms())
            atoms.push_back(Expr::from_form(CanonicalForm::atom(a)));
        return proportional(v.condition, want, atoms);
    }
    }
    return false;
}

Verdict run_case(const ReductionCase& c, const ParamMap& params)
{
    if (c.expected == Outcome::ReducedODE)
        return verify_reduction(c, params, *c.reduced);
    return verify_reduction(c, params, Expr(0));
}

} // namespace

CaseCheck check_case(const ReductionCase& c, const ParamMap& params)
{
    CaseCheck out;
    out.mode = "symbolic";
    ParamMap resolved = c.resolve(params);
    Verdict sym;
    bool sym_ok = false;
    try {
        sym = run_case(c, params);
        sym_ok = outcome_holds(c, resolved, sym);
    } catch (const ConstraintViolated&) {
        throw;
    } catch (const Error& e) {
        sym.tag = Verdict::Tag::Mismatch;
        sym.detail = e.what();
    }
    std::string label = "symbolic";
    if (!params.empty()) {
        std::map<std::string, mpq_class> shown;
        for (auto& [k, v] : params)
            if (auto q = v.canonical().as_rational())
                shown[k] = *q;
        label = sample_label(shown);
    }
    out.runs.emplace_back(label, sym);
    if (sym_ok || !params.empty() || c.samples.empty()) {
        out.pass = sym_ok;
        return out;
    }
    out.mode = "sampled";
    out.pass = true;
    for (auto& s : c.samples) {
        ParamMap p;
        for (auto& [k, q] : s)
            p[k] = Expr(q);
        Verdict v;
        bool ok = false;
        try {
            v = run_case(c, p);
            ok = outcome_holds(c, c.resolve(p), v);
        } catch (const Error& e) {
            v.tag = Verdict::Tag::Mismatch;
            v.detail = e.what();
        }
        out.pass = out.pass && ok;
        out.runs.emplace_back(sample_label(s), v);
    }
    return out;
}

InvarianceReport invariance_diagnostics(const ReductionCase& c, const ParamMap& params)
{
    ParamMap r = c.resolve(params);
    InvarianceReport rep;
    Expr zE = c.bind(c.z, r);
    Expr winv;
    if (c.u) {
        Expr wp = Expr::parameter("w_");
        Expr uE = substitute(c.bind(*c.u, r), {{Expr::symbol("z"), zE}});
        uE = substitute(uE, {{Expr::function("w", 0, zE), wp}});
        winv = solve_linear(Expr::jet("u") - uE, wp);
    } else {
        winv = c.bind(*c.w_invariant, r);
    }
    for (auto& g : c.generators(r)) {
        rep.z_invariant.push_back(is_zero(g.apply(zE)));
        rep.w_invariant.push_back(is_zero(g.apply(winv)));
    }
    return rep;
}

namespace {

// Old coordinates (z, w) in terms of the new (r, W).
std::pair<Expr, Expr> invert_transform(const Transform& tr)
{
    Expr z = tr.from.var(), w = tr.from.jet(0);
    Expr r = tr.to.var(), W = tr.to.jet(0);
    if (tr.old_independent && tr.old_dependent)
        return {*tr.old_independent, *tr.old_dependent};
    Expr eqR = tr.R - r, eqS = tr.S - W;
    struct Attempt {
        const Expr& first;
        const Expr& p1;
        const Expr& second;
        const Expr& p2;
    };
    for (const Attempt& a : {Attempt{eqR, w, eqS, z}, Attempt{eqR, z, eqS, w}, Attempt{eqS, w, eqR, z},
                             Attempt{eqS, z, eqR, w}}) {
        try {
            Expr s1 = solve_linear(a.first, a.p1);
            Expr s2 = solve_linear(substitute(a.second, {{a.p1, s1}}), a.p2);
            s1 = substitute(s1, {{a.p2, s2}});
            if (s1.canonical().depends_on(atom_of(z)) || s1.canonical().depends_on(atom_of(w)) ||
                s2.canonical().depends_on(atom_of(z)) || s2.canonical().depends_on(atom_of(w)))
                continue;
            return &a.p1 == &z ? std::make_pair(s1, s2) : std::make_pair(s2, s1);
        } catch (const Error&) {
        }
    }
    throw InversionFailure("cannot solve the transform for the old variables; supply the inverse");
}

} // namespace

Expr change_variables(const Expr& ode, const Transform& tr)
{
    const OdeVars& F = tr.from;
    const OdeVars& G = tr.to;
    Expr z = F.var(), w = F.jet(0), w1 = F.jet(1), w2 = F.jet(2);
    Expr Rz = diff_frozen(tr.R, z), Rw = diff_frozen(tr.R, w);
    Expr Sz = diff_frozen(tr.S, z), Sw = diff_frozen(tr.S, w);
    if (is_zero(Rz * Sw - Rw * Sz))
        throw SingularTransform("the transform has a vanishing Jacobian");
    auto [oldz, oldw] = invert_transform(tr);

    Expr P = Expr::parameter("dW1_"), Q = Expr::parameter("dW2_");
    Expr w1sol = (Sz - P * Rz) / (P * Rw - Sw);
    Expr E1 = (Sz + Sw * w1) / (Rz + Rw * w1);
    Expr eq = diff(E1, z) - Q * diff(tr.R, z);
    Expr w2sol = substitute(solve_linear(eq, w2), {{w1, w1sol}});
    Expr out = substitute(ode, {{w2, w2sol}, {w1, w1sol}});
    out = substitute(out, {{w, oldw}, {z, oldz}, {P, G.jet(1)}, {Q, G.jet(2)}});
    return normalize_ode(out, G);
}

Expr reduce_order(const Expr& ode, const VectorField& v, const OrderReduction& inv)
{
    const OdeVars& F = inv.from;
    const OdeVars& G = inv.to;
    Expr z = F.var(), w = F.jet(0), w1 = F.jet(1), w2 = F.jet(2);
    ProlongedField pv = prolong(v, 1);
    if (!is_zero(pv.apply(inv.xi)) || !is_zero(pv.apply(inv.X)))
        throw NotInvariant("the supplied functions are not invariants of the first prolongation");

    Expr P = Expr::parameter("dX1_");
    Expr eq = P * diff(inv.xi, z) - diff(inv.X, z);
    Expr w2sol = solve_linear(eq, w2);
    Expr reduced = substitute(ode, {{w2, w2sol}});

    Expr xs = G.var(), Xs = G.jet(0);
    Expr ws, w1s;
    try {
        ws = solve_linear(inv.xi - xs, w);
        w1s = substitute(solve_linear(inv.X - Xs, w1), {{w, ws}});
    } catch (const Error& e) {
        throw InversionFailure(std::string("cannot express w, w' through the invariants: ") + e.what());
    }
    reduced = substitute(reduced, {{w1, w1s}});
    reduced = substitute(reduced, {{w, ws}, {P, G.jet(1)}});
    Expr N = numerator(reduced);
    std::vector<Expr> new_atoms{xs, Xs, G.jet(1)};
    for (long z0 : {1L, 2L, 3L, 5L, 7L, -1L, -2L}) {
        Expr N0;
        try {
            N0 = substitute(N, {{z, Expr(z0)}});
        } catch (const Error&) {
            continue;
        }
        if (is_zero(N0))
            continue;
        if (proportional(N, N0, new_atoms))
            return normalize_ode(N0, G);
        break;
    }
    throw ResidualNotReducible("the old independent variable does not cancel");
}

bool verify_ode_symmetry(const VectorField& v, const Expr& ode) { return is_symmetry(v, ode); }

SolutionReport verify_pde_solution(const Expr& u)
{
    SolutionReport rep;
    rep.residual = zk_residual(u);
    rep.ok = is_zero(rep.residual);
    rep.detail = rep.ok ? "residual is zero" : "residual " + print(rep.residual);
    return rep;
}

SolutionReport verify_pde_solution(const Expr& u, const std::map<std::string, double>& constants,
                                   const std::vector<SamplePoint>& points, double tol, const FunctionTable& fns)
{
    SolutionReport rep;
    rep.numeric = true;
    for (auto& p : points) {
        EvalPoint at{{{"t", p.t}, {"x", p.x}, {"y", p.y}}, constants};
        TaylorJet J = eval_jet(u, at, 2, fns);
        double r = J.derivative({1, 1, 0}) - J.derivative({0, 1, 0}) * J.derivative({0, 1, 0}) -
                   J.value() * J.derivative({0, 2, 0}) - J.derivative({0, 0, 2});
        rep.max_residual = std::max(rep.max_residual, std::fabs(r));
        ++rep.points;
    }
    rep.ok = rep.points > 0 && rep.max_residual < tol;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", rep.max_residual);
    rep.detail = "max |residual| " + std::string(buf) + " over " + std::to_string(rep.points) + " points";
    return rep;
}

SolutionReport verify_implicit_solution(const Expr& relation, const Expr& ode,
                                        const std::optional<ImplicitNumeric>& numeric, const OdeVars& vars)
{
    Expr z = vars.var(), w = vars.jet(0), w1 = vars.jet(1), w2 = vars.jet(2);
    Expr Fz = diff_frozen(relation, z), Fw = diff_frozen(relation, w);
    if (is_zero(Fw))
        throw ImplicitSingular("the relation does not involve w");
    Expr d1 = -Fz / Fw;
    Expr d2 = diff_frozen(d1, z) + diff_frozen(d1, w) * d1;
    Expr G = substitute(ode, {{w2, d2}, {w1, d1}});

    SolutionReport rep;
    rep.residual = G;
    bool symbolic = !(numeric && numeric->skip_symbolic);
    if (symbolic && is_zero(G)) {
        rep.ok = true;
        rep.detail = "residual is zero";
        return rep;
    }
    // Eliminate an atom in which the relation is linear.
    std::vector<Expr> pivots;
    for (AtomId a : relation.canonical().atoms())
        if (atom_info(a).kind == AtomKind::LambertW)
            pivots.push_back(Expr::from_form(CanonicalForm::atom(a)));
    pivots.push_back(w);
    for (auto& p : symbolic ? pivots : std::vector<Expr>{}) {
        try {
            Expr s = solve_linear(relation, p);
            if (is_zero(substitute(G, {{p, s}}))) {
                rep.ok = true;
                rep.detail = "residual vanishes modulo the relation";
                return rep;
            }
        } catch (const Error&) {
        }
    }
    if (!numeric) {
        rep.detail = "residual " + print(G, vars.names());
        return rep;
    }
    rep.numeric = true;
    Expr wp = Expr::parameter("w_");
    CanonicalForm Fn = substitute(relation, {{w, wp}}).canonical();
    CanonicalForm Fwn = substitute(Fw, {{w, wp}}).canonical();
    CanonicalForm Gn = substitute(G, {{w, wp}}).canonical();
    for (auto& [z0, start] : numeric->starts) {
        auto c = numeric->constants;
        c[vars.independent] = z0;
        double wv = start;
        bool converged = false;
        try {
            for (int it = 0; it < 100; ++it) {
                c["w_"] = wv;
                double f = eval_number(Fn, c);
                double fp = eval_number(Fwn, c);
                if (fp == 0)
                    throw ImplicitSingular("vanishing derivative of the relation");
                double step = f / fp;
                wv -= step;
                if (std::fabs(step) <= 1e-15 * std::max(1.0, std::fabs(wv))) {
                    converged = true;
                    break;
                }
            }
            c["w_"] = wv;
            if (!converged && std::fabs(eval_number(Fn, c)) > 1e-12)
                throw ImplicitSingular("Newton iteration did not converge");
            double g = std::fabs(eval_number(Gn, c));
            rep.max_residual = std::max(rep.max_residual, g);
            ++rep.points;
        } catch (const Error& e) {
            rep.detail = std::string("sample failed: ") + e.what();
            rep.ok = false;
            return rep;
        }
    }
    rep.ok = rep.points > 0 && rep.max_residual < numeric->tol;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", rep.max_residual);
    rep.detail = "max |residual| " + std::string(buf) + " over " + std::to_string(rep.points) + " points on the relation";
    return rep;
}

SolutionReport verify_ode_solution(const Expr& solution, const Expr& ode, const OdeVars& vars)
{
    Expr z = vars.var();
    ExprBindings b;
    Expr d = solution;
    for (int k = 0; k <= 3; ++k) {
        b.emplace_back(vars.jet(k), d);
        d = diff(d, z);
    }
    SolutionReport rep;
    rep.residual = substitute(ode, b);
    rep.ok = is_zero(rep.residual);
    rep.detail = rep.ok ? "residual is zero" : "residual " + print(rep.residual, vars.names());
    return rep;
}

} // namespace liereduce
