#include "liereduce/calculus/diff.hpp"

#include <algorithm>
#include <unordered_map>

#include "liereduce/expr/errors.hpp"

namespace liereduce {

namespace {

class Differ {
public:
    Differ(AtomId v, DiffOptions opt) : v_(v), opt_(opt)
    {
        if (opt_.total && atom_info(v).kind != AtomKind::Symbol)
            throw Error("total derivative needs an independent variable");
    }

    CanonicalForm form(const CanonicalForm& f)
    {
        if (f.is_constant())
            return CanonicalForm();
        CanonicalForm dn = poly(f.num());
        if (f.den().is_constant())
            return dn * CanonicalForm(mpq_class(1, f.den().constant_value()));
        CanonicalForm dd = poly(f.den());
        CanonicalForm den = CanonicalForm::from_poly(f.den());
        if (dd.is_zero())
            return dn / den;
        return (dn - f * dd) / den;
    }

private:
    bool may_depend(AtomId a) const
    {
        const auto& l = atom_info(a).leaves;
        if (std::binary_search(l.begin(), l.end(), v_))
            return true;
        if (opt_.total)
            for (AtomId b : l)
                if (atom_info(b).kind == AtomKind::Jet)
                    return true;
        return false;
    }

    const CanonicalForm& atom(AtomId a)
    {
        if (auto it = memo_.find(a); it != memo_.end())
            return it->second;
        CanonicalForm d = compute(a);
        return memo_.emplace(a, std::move(d)).first->second;
    }

    CanonicalForm compute(AtomId a)
    {
        if (a == v_)
            return CanonicalForm(1);
        if (!may_depend(a))
            return CanonicalForm();
        const AtomInfo& info = atom_info(a);
        switch (info.kind) {
        case AtomKind::Symbol:
        case AtomKind::Parameter:
        case AtomKind::Surd:
            return CanonicalForm();
        case AtomKind::Jet: {
            if (!opt_.total)
                return CanonicalForm();
            std::vector<std::string> idx = info.index;
            idx.push_back(atom_info(v_).name);
            return CanonicalForm::atom(jet_atom(info.name, std::move(idx)));
        }
        case AtomKind::Function: {
            if (opt_.freeze_functions)
                return CanonicalForm();
            CanonicalForm da = form(*info.arg);
            if (da.is_zero())
                return da;
            return make_function(info.name, info.order + 1, *info.arg) * da;
        }
        case AtomKind::Exp: {
            CanonicalForm da = form(*info.arg);
            if (da.is_zero())
                return da;
            return CanonicalForm::atom(a) * da;
        }
        case AtomKind::Ln:
            return form(*info.arg) / *info.arg;
        case AtomKind::LambertW: {
            CanonicalForm da = form(*info.arg);
            if (da.is_zero())
                return da;
            CanonicalForm w = CanonicalForm::atom(a);
            return w * da / (*info.arg * (CanonicalForm(1) + w));
        }
        case AtomKind::Radical:
            return form(*info.arg);
        }
        throw UnsupportedNode("unknown atom kind");
    }

    CanonicalForm poly(const Poly& p)
    {
        CanonicalForm acc;
        for (AtomId a : p.atoms()) {
            const CanonicalForm& da = atom(a);
            if (da.is_zero())
                continue;
            std::int64_t lcm = p.exponent_lcm_den(a);
            Mono inv = Mono::atom(a, QExp(-1));
            std::vector<Term> ts;
            for (auto& t : p.terms()) {
                QExp e = t.m.exponent(a);
                if (e.is_zero())
                    continue;
                QExp s = e * QExp(lcm);
                ts.push_back({t.m * inv, t.c * mpz_class(static_cast<long>(s.num()))});
            }
            CanonicalForm part = CanonicalForm::fraction(Poly::from_terms(std::move(ts)), Poly(mpz_class(lcm)));
            acc += part * da;
        }
        return acc;
    }

    AtomId v_;
    DiffOptions opt_;
    std::unordered_map<AtomId, CanonicalForm> memo_;
};

} // namespace

CanonicalForm diff(const CanonicalForm& f, AtomId v, DiffOptions opt) { return Differ(v, opt).form(f); }

Expr diff(const Expr& e, const Expr& v) { return Expr::from_form(diff(e.canonical(), atom_of(v))); }

Expr diff(const Expr& e, const Expr& v, int times)
{
    CanonicalForm f = e.canonical();
    AtomId a = atom_of(v);
    for (int i = 0; i < times; ++i)
        f = diff(f, a);
    return Expr::from_form(f);
}

Expr diff_frozen(const Expr& e, const Expr& v)
{
    return Expr::from_form(diff(e.canonical(), atom_of(v), {.freeze_functions = true}));
}

Expr total_derivative(const Expr& e, const Expr& v)
{
    return Expr::from_form(diff(e.canonical(), atom_of(v), {.total = true}));
}

} // namespace liereduce
