#include "liereduce/linearize/linearize.hpp"

#include <cmath>
#include <cstdio>
#include <optional>
#include <tuple>

#include "liereduce/calculus/diff.hpp"
#include "liereduce/calculus/taylor.hpp"
#include "liereduce/parser/parser.hpp"

namespace liereduce {

Expr CubicODE::reconstruct() const
{
    Expr p = vars.jet(1);
    return vars.jet(2) + A * p * p * p + B * p * p + C * p + D;
}

CubicODE extract_cubic(const Expr& ode, const OdeVars& vars)
{
    std::vector<Expr> jets{vars.jet(1), vars.jet(2), vars.jet(3)};
    Expr num = Expr::from_form(CanonicalForm::from_poly(ode.canonical().num()));
    std::map<MonomialKey, Expr> c;
    try {
        c = collect(num, jets);
    } catch (const NotPolynomialInAtoms& e) {
        throw NotLinearInSecondDerivative(std::string("not polynomial in the derivatives: ") + e.what());
    }
    Expr coef[4] = {Expr(0), Expr(0), Expr(0), Expr(0)};
    Expr lead(0);
    for (auto& [k, v] : c) {
        if (k[2] > 0)
            throw DegreeTooHigh("third derivative present");
        if (k[1] > 1)
            throw NotLinearInSecondDerivative("w'' occurs with degree " + std::to_string(k[1]));
        if (k[1] == 1) {
            if (k[0] > 0)
                throw NotLinearInSecondDerivative("the coefficient of w'' involves w'");
            lead = v;
            continue;
        }
        if (k[0] > 3)
            throw DegreeTooHigh("w' occurs with degree " + std::to_string(k[0]));
        coef[k[0]] = v;
    }
    if (is_zero(lead))
        throw VanishingLeadingCoefficient("the coefficient of w'' vanishes");
    return CubicODE{coef[3] / lead, coef[2] / lead, coef[1] / lead, coef[0] / lead, vars};
}

std::pair<Expr, Expr> psi(const CubicODE& c)
{
    Expr z = c.vars.var(), w = c.vars.jet(0);
    auto dz = [&](const Expr& e) { return diff_frozen(e, z); };
    auto dw = [&](const Expr& e) { return diff_frozen(e, w); };
    const Expr &A = c.A, &B = c.B, &C = c.C, &D = c.D;
    Expr psi1 = Expr(3) * dz(dz(A)) - Expr(2) * dz(dw(B)) + dw(dw(C)) - Expr(3) * dz(C * A) + Expr(3) * dw(D * A) +
                dz(B * B) + Expr(3) * A * dw(D) - B * dw(C);
    Expr psi2 = Expr(3) * dw(dw(D)) - Expr(2) * dz(dw(C)) + dz(dz(B)) - Expr(3) * dz(D * A) + Expr(3) * dw(D * B) -
                dw(C * C) - Expr(3) * D * dz(A) + C * dz(B);
    return {Expr::from_form(psi1.canonical()), Expr::from_form(psi2.canonical())};
}

bool is_linearizable(const CubicODE& c)
{
    auto [p1, p2] = psi(c);
    return is_zero(p1) && is_zero(p2);
}

namespace {

std::string fmt(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// Numeric value of a nonzero expression at the first admissible point.
std::string witness(const std::string& label, const Expr& e, const OdeVars& vars)
{
    Expr wp = Expr::parameter("w_");
    CanonicalForm f = substitute(e, {{vars.jet(0), wp}}).canonical();
    std::vector<std::string> others;
    for (AtomId a : f.atoms()) {
        const AtomInfo& info = atom_info(a);
        if ((info.kind == AtomKind::Symbol || info.kind == AtomKind::Parameter) && info.name != vars.independent &&
            info.name != "w_")
            others.push_back(info.name);
    }
    static const double zs[] = {2, 3, 5, 0.5};
    static const double ws[] = {3, 7, 11, -2};
    for (double z0 : zs)
        for (double w0 : ws) {
            std::map<std::string, double> at{{vars.independent, z0}, {"w_", w0}};
            std::string where = vars.independent + "=" + fmt(z0) + ", " + vars.dependent + "=" + fmt(w0);
            double c0 = 2;
            for (auto& n : others) {
                at[n] = c0;
                where += ", " + n + "=" + fmt(c0);
                c0 += 1;
            }
            try {
                double v = eval_number(f, at);
                if (std::isfinite(v) && std::fabs(v) > 1e-12)
                    return label + "(" + where + ") = " + fmt(v);
            } catch (const Error&) {
            }
        }
    return label + " nonzero (no numeric witness found)";
}

} // namespace

ScanReport linearizability_scan(const Expr& family, const std::string& parameter,
                                const std::vector<mpq_class>& samples, const ScanOptions& opt)
{
    ScanReport rep;
    rep.parameter = parameter;
    Expr p = Expr::parameter(parameter);
    for (auto& q : samples) {
        ScanEntry e;
        e.value = q;
        bool violated = false;
        for (auto& con : opt.constraints)
            if (is_zero(substitute(con, {{p, Expr(q)}}))) {
                violated = true;
                if (!opt.flag_violations)
                    throw ConstraintViolated("constraint " + print(con) + " vanishes at " + parameter + " = " +
                                             q.get_str());
            }
        e.constraint_violated = violated;
        CubicODE c = extract_cubic(substitute(family, {{p, Expr(q)}}), opt.vars);
        std::tie(e.psi1, e.psi2) = psi(c);
        e.psi1_zero = is_zero(e.psi1);
        e.psi2_zero = is_zero(e.psi2);
        if (!e.psi1_zero)
            e.witness = witness("Psi1", e.psi1, opt.vars);
        else if (!e.psi2_zero)
            e.witness = witness("Psi2", e.psi2, opt.vars);
        rep.entries.push_back(std::move(e));
    }
    return rep;
}

std::string to_string(Classification::Kind k)
{
    switch (k) {
    case Classification::Kind::Linear:
        return "Linear";
    case Classification::Kind::TypeA1:
        return "TypeA1";
    case Classification::Kind::TypeA2:
        return "TypeA2";
    case Classification::Kind::TypeB:
        return "TypeB";
    case Classification::Kind::OutsideFamily:
        return "OutsideFamily";
    }
    return "?";
}

namespace {

// Every atom other than z and w must be free of both.
bool free_compounds(const CanonicalForm& f, AtomId z, AtomId w)
{
    for (AtomId a : f.atoms()) {
        if (a == z || a == w)
            continue;
        CanonicalForm fa = CanonicalForm::atom(a);
        if (fa.depends_on(z) || fa.depends_on(w))
            return false;
    }
    return true;
}

bool constant_in(const Expr& e, AtomId z, AtomId w)
{
    const CanonicalForm& f = e.canonical();
    return !f.depends_on(z) && !f.depends_on(w);
}

// Polynomial in (z, w) with degree at most max_w in w.
bool polynomial_in(const Expr& e, const Expr& z, const Expr& w, long max_w)
{
    const CanonicalForm& f = e.canonical();
    if (!free_compounds(f, atom_of(z), atom_of(w)))
        return false;
    // w(z) would count as depending on z.
    Expr wp = Expr::parameter("w_");
    try {
        for (auto& [k, v] : collect_form(substitute(e, {{w, wp}}).canonical(), {atom_of(z), atom_of(wp)}))
            if (k[1] > max_w)
                return false;
    } catch (const NotPolynomialInAtoms&) {
        return false;
    }
    return true;
}

// c * w^a * z^b with c free of z and w; returns b.
std::optional<mpq_class> monomial_z_exponent(const Expr& e, const Expr& z, const Expr& w, long w_degree)
{
    const CanonicalForm& f = e.canonical();
    if (!free_compounds(f, atom_of(z), atom_of(w)))
        return std::nullopt;
    Expr dz = diff_frozen(e, z), dw = diff_frozen(e, w);
    Expr a = w * dw / e, b = z * dz / e;
    if (!constant_in(a, atom_of(z), atom_of(w)) || !constant_in(b, atom_of(z), atom_of(w)))
        return std::nullopt;
    auto qa = a.canonical().as_rational(), qb = b.canonical().as_rational();
    if (!qa || !qb || *qa != w_degree)
        return std::nullopt;
    return *qb;
}

} // namespace

Classification classify_family(const Expr& ode, std::size_t symmetry_count, const OdeVars& vars)
{
    using Kind = Classification::Kind;
    Classification out;
    Expr z = vars.var(), w = vars.jet(0);
    AtomId zi = atom_of(z), wi = atom_of(w);
    Expr num = Expr::from_form(CanonicalForm::from_poly(ode.canonical().num()));
    std::map<MonomialKey, Expr> c;
    try {
        c = collect(num, {vars.jet(1), vars.jet(2), vars.jet(3)});
    } catch (const NotPolynomialInAtoms&) {
        out.detail = "not polynomial in the derivatives";
        return out;
    }
    Expr A1(0), A2(0), A3(0), A4(0);
    for (auto& [k, v] : c) {
        if (k == MonomialKey{0, 0, 0})
            A1 = v;
        else if (k == MonomialKey{1, 0, 0})
            A2 = v;
        else if (k == MonomialKey{2, 0, 0})
            A3 = v;
        else if (k == MonomialKey{0, 1, 0})
            A4 = v;
        else {
            out.detail = "monomial outside A1 + A2 w' + A3 w'^2 + A4 w''";
            return out;
        }
    }

    if (is_zero(A1) && is_zero(A3) && !is_zero(A2) && !is_zero(A4) && constant_in(A2, zi, wi)) {
        Expr a2 = A4 / z;
        if (constant_in(a2, zi, wi)) {
            out.kind = Kind::Linear;
            out.a1 = A2;
            out.a2 = a2;
            out.detail = "a1 w' + a2 z w'' = 0";
            return out;
        }
    }

    // Overall power of z fixed by A3 = beta z^2 or A1 = alpha w^2.
    std::optional<mpq_class> m;
    bool shape = true;
    if (!is_zero(A3)) {
        auto e = monomial_z_exponent(A3, z, w, 0);
        if (e)
            m = mpq_class(2) - *e;
        else
            shape = false;
    }
    if (shape && !is_zero(A1)) {
        auto e = monomial_z_exponent(A1, z, w, 2);
        if (!e || (m && *m != -*e))
            shape = false;
        else
            m = -*e;
    }
    if (shape && !m) {
        mpq_class lowest(0);
        bool first = true;
        for (const Expr* a : {&A2, &A4}) {
            if (is_zero(*a))
                continue;
            const Poly& n = a->canonical().num();
            if (!a->canonical().is_polynomial() || !free_compounds(a->canonical(), zi, wi)) {
                shape = false;
                break;
            }
            mpq_class lo = n.contains(zi) ? n.min_exponent(zi).to_mpq() : mpq_class(0);
            if (first || lo < lowest)
                lowest = lo;
            first = false;
        }
        m = -lowest;
    }
    if (shape) {
        Expr zm = Expr::power(z, *m);
        shape = polynomial_in(zm * A2, z, w, 1) && polynomial_in(zm * A4, z, w, 1);
    }
    if (!shape) {
        out.kind = Kind::TypeB;
        out.detail = "coefficients are not of the simple polynomial shape";
        return out;
    }
    out.kind = symmetry_count >= 2 ? Kind::TypeA2 : Kind::TypeA1;
    out.detail = "A1 = alpha w^2, A3 = beta z^2 after multiplying by z^(" + m->get_str() + ")";
    return out;
}

Expr solve_linear_family(const Expr& a1, const Expr& a2, const OdeVars& vars)
{
    if (is_zero(a2))
        throw DegenerateFamily("a2 = 0: the equation is first order");
    Expr z = vars.var();
    Expr C1 = Expr::parameter("C1"), C2 = Expr::parameter("C2");
    Expr sol;
    if (is_zero(a1 - a2))
        sol = C1 + C2 * ln(z);
    else
        sol = C1 + C2 * Expr::power(z, Expr(1) - a1 / a2);
    Expr ode = a1 * vars.jet(1) + a2 * z * vars.jet(2);
    SolutionReport r = verify_ode_solution(sol, ode, vars);
    if (!r.ok)
        throw Error("internal: linear family solution fails: " + r.detail);
    return sol;
}

bool verify_linearizing_substitution(const Expr& ode, const Expr& Z, const OdeVars& vars,
                                     const std::optional<Expr>& target)
{
    Expr z = vars.var(), w = vars.jet(0);
    OdeVars to{vars.independent, vars.dependent == "Z" ? "Y" : "Z"};
    Expr Wn = to.jet(0);
    Expr Zw = diff_frozen(Z, w);
    if (is_zero(Zw))
        throw SingularTransform("the substitution does not involve " + vars.dependent);
    std::optional<Expr> inverse;
    if (is_zero(diff_frozen(Zw, w))) {
        inverse = (Wn - substitute(Z, {{w, Expr(0)}})) / Zw;
    } else {
        Expr p = w * Zw / Z;
        if (constant_in(p, atom_of(z), atom_of(w))) {
            Expr coef = Z / Expr::power(w, p);
            if (!coef.canonical().depends_on(atom_of(w)))
                inverse = Expr::power(Wn / coef, Expr(1) / p);
        }
    }
    if (!inverse)
        throw InversionFailure("cannot invert the substitution for " + vars.dependent);
    Transform tr{z, Z, z, *inverse, vars, to};
    Expr out = change_variables(ode, tr);
    Expr want = target ? *target : to.jet(2);
    return proportional(out, want, {to.jet(1), to.jet(2), to.jet(3)});
}

} // namespace liereduce
