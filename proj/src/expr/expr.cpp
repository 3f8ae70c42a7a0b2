#include "liereduce/expr/expr.hpp"

#include <algorithm>
#include <mutex>

#include "liereduce/expr/errors.hpp"

namespace liereduce {

struct Node {
    NodeKind kind = NodeKind::Rational;
    mpq_class value;
    std::string name;
    int order = 0;
    std::vector<std::string> index;
    std::vector<Expr> children;
    mpq_class exponent;
    Builtin fn = Builtin::Exp;

    mutable std::once_flag once;
    mutable std::unique_ptr<CanonicalForm> form;
};

namespace {

std::shared_ptr<Node> fresh(NodeKind k)
{
    auto n = std::make_shared<Node>();
    n->kind = k;
    return n;
}

CanonicalForm compute(const Node& n)
{
    switch (n.kind) {
    case NodeKind::Rational:
        return CanonicalForm(n.value);
    case NodeKind::Symbol:
        return CanonicalForm::atom(symbol_atom(n.name));
    case NodeKind::Parameter:
        return CanonicalForm::atom(parameter_atom(n.name));
    case NodeKind::Function:
        return make_function(n.name, n.order, n.children[0].canonical());
    case NodeKind::Jet:
        return CanonicalForm::atom(jet_atom(n.name, n.index));
    case NodeKind::Sum: {
        CanonicalForm acc;
        for (auto& c : n.children)
            acc += c.canonical();
        return acc;
    }
    case NodeKind::Product: {
        CanonicalForm acc(1);
        for (auto& c : n.children)
            acc *= c.canonical();
        return acc;
    }
    case NodeKind::Power:
        return n.children[0].canonical().pow(QExp::from_mpq(n.exponent));
    case NodeKind::Apply: {
        const CanonicalForm& a = n.children[0].canonical();
        switch (n.fn) {
        case Builtin::Exp:
            return make_exp(a);
        case Builtin::Ln:
            return make_ln(a);
        case Builtin::LambertW:
            return make_lambertw(a);
        }
    }
    }
    throw UnsupportedNode("unknown node kind");
}

} // namespace

Expr::Expr() : Expr(mpq_class(0)) {}
Expr::Expr(long v) : Expr(mpq_class(v)) {}

Expr::Expr(const mpq_class& q)
{
    auto n = fresh(NodeKind::Rational);
    n->value = q;
    n->value.canonicalize();
    n_ = std::move(n);
}

Expr Expr::symbol(const std::string& name)
{
    auto n = fresh(NodeKind::Symbol);
    n->name = name;
    return Expr(std::move(n));
}

Expr Expr::parameter(const std::string& name)
{
    auto n = fresh(NodeKind::Parameter);
    n->name = name;
    return Expr(std::move(n));
}

Expr Expr::function(const std::string& name, int order, Expr arg)
{
    auto n = fresh(NodeKind::Function);
    n->name = name;
    n->order = order;
    n->children.push_back(std::move(arg));
    return Expr(std::move(n));
}

Expr Expr::jet(const std::string& dependent, std::vector<std::string> index)
{
    std::sort(index.begin(), index.end());
    auto n = fresh(NodeKind::Jet);
    n->name = dependent;
    n->index = std::move(index);
    return Expr(std::move(n));
}

Expr Expr::sum(std::vector<Expr> terms)
{
    std::vector<Expr> flat;
    mpq_class c = 0;
    for (auto& t : terms) {
        if (t.kind() == NodeKind::Sum) {
            for (auto& s : t.children()) {
                if (s.kind() == NodeKind::Rational)
                    c += s.value();
                else
                    flat.push_back(s);
            }
        } else if (t.kind() == NodeKind::Rational) {
            c += t.value();
        } else {
            flat.push_back(t);
        }
    }
    if (c != 0)
        flat.emplace_back(c);
    if (flat.empty())
        return Expr();
    if (flat.size() == 1)
        return flat[0];
    auto n = fresh(NodeKind::Sum);
    n->children = std::move(flat);
    return Expr(std::move(n));
}

Expr Expr::product(std::vector<Expr> factors)
{
    std::vector<Expr> flat;
    mpq_class c = 1;
    for (auto& t : factors) {
        if (t.kind() == NodeKind::Product) {
            for (auto& s : t.children()) {
                if (s.kind() == NodeKind::Rational)
                    c *= s.value();
                else
                    flat.push_back(s);
            }
        } else if (t.kind() == NodeKind::Rational) {
            c *= t.value();
        } else {
            flat.push_back(t);
        }
    }
    if (c == 0)
        return Expr();
    if (c != 1)
        flat.insert(flat.begin(), Expr(c));
    if (flat.empty())
        return Expr(1);
    if (flat.size() == 1)
        return flat[0];
    auto n = fresh(NodeKind::Product);
    n->children = std::move(flat);
    return Expr(std::move(n));
}

Expr Expr::power(Expr base, const mpq_class& exponent)
{
    if (exponent == 0)
        return Expr(1);
    if (exponent == 1)
        return base;
    if (base.kind() == NodeKind::Rational && exponent.get_den() == 1 && exponent.get_num().fits_slong_p()) {
        long k = exponent.get_num().get_si();
        if (base.value() == 0) {
            if (k < 0)
                throw DivisionByZero("zero to a negative power");
            return Expr();
        }
        mpz_class n, d;
        unsigned long e = static_cast<unsigned long>(k < 0 ? -k : k);
        mpz_pow_ui(n.get_mpz_t(), base.value().get_num_mpz_t(), e);
        mpz_pow_ui(d.get_mpz_t(), base.value().get_den_mpz_t(), e);
        mpq_class q = k < 0 ? mpq_class(d, n) : mpq_class(n, d);
        q.canonicalize();
        return Expr(q);
    }
    auto n = fresh(NodeKind::Power);
    n->children.push_back(std::move(base));
    n->exponent = exponent;
    n->exponent.canonicalize();
    return Expr(std::move(n));
}

Expr Expr::power(Expr base, const Expr& exponent)
{
    if (exponent.kind() == NodeKind::Rational)
        return power(std::move(base), exponent.value());
    if (auto q = exponent.canonical().as_rational())
        return power(std::move(base), *q);
    return apply(Builtin::Exp, exponent * apply(Builtin::Ln, std::move(base)));
}

Expr Expr::apply(Builtin fn, Expr arg)
{
    if (fn == Builtin::Exp && arg.kind() == NodeKind::Apply && arg.builtin() == Builtin::Ln)
        return arg.children()[0];
    if (fn == Builtin::Exp && arg.kind() == NodeKind::Rational && arg.value() == 0)
        return Expr(1);
    if (fn == Builtin::Ln && arg.kind() == NodeKind::Rational && arg.value() == 1)
        return Expr();
    if (fn == Builtin::LambertW && arg.kind() == NodeKind::Rational && arg.value() == 0)
        return Expr();
    auto n = fresh(NodeKind::Apply);
    n->fn = fn;
    n->children.push_back(std::move(arg));
    return Expr(std::move(n));
}

namespace {

Expr atom_expr(AtomId a)
{
    const AtomInfo& info = atom_info(a);
    switch (info.kind) {
    case AtomKind::Symbol:
        return Expr::symbol(info.name);
    case AtomKind::Parameter:
        return Expr::parameter(info.name);
    case AtomKind::Jet:
        return Expr::jet(info.name, info.index);
    case AtomKind::Function:
        return Expr::function(info.name, info.order, Expr::from_form(*info.arg));
    case AtomKind::Exp:
        return Expr::apply(Builtin::Exp, Expr::from_form(*info.arg));
    case AtomKind::Ln:
        return Expr::apply(Builtin::Ln, Expr::from_form(*info.arg));
    case AtomKind::LambertW:
        return Expr::apply(Builtin::LambertW, Expr::from_form(*info.arg));
    case AtomKind::Radical:
        return Expr::from_form(*info.arg);
    case AtomKind::Surd:
        return Expr(mpq_class(info.integer));
    }
    throw UnsupportedNode("unknown atom kind");
}

Expr poly_expr(const Poly& p)
{
    std::vector<Expr> terms;
    for (const Term* t : name_ordered(p)) {
        std::vector<Mono::Factor> f = t->m.factors();
        std::sort(f.begin(), f.end(), [](auto& x, auto& y) { return compare_atom_names(x.first, y.first) < 0; });
        std::vector<Expr> factors;
        factors.emplace_back(mpq_class(t->c));
        for (auto& [a, e] : f) {
            factors.push_back(Expr::power(atom_expr(a), e.to_mpq()));
        }
        terms.push_back(Expr::product(std::move(factors)));
    }
    return Expr::sum(std::move(terms));
}

} // namespace

Expr Expr::from_form(const CanonicalForm& f)
{
    Expr e = poly_expr(f.num());
    if (!f.den().is_one())
        e = Expr::product({e, Expr::power(poly_expr(f.den()), mpq_class(-1))});
    std::call_once(e.n_->once, [&] { e.n_->form = std::make_unique<CanonicalForm>(f); });
    return e;
}

NodeKind Expr::kind() const { return n_->kind; }
const mpq_class& Expr::value() const { return n_->value; }
const std::string& Expr::name() const { return n_->name; }
int Expr::order() const { return n_->order; }
const std::vector<std::string>& Expr::index() const { return n_->index; }
const std::vector<Expr>& Expr::children() const { return n_->children; }
const mpq_class& Expr::exponent() const { return n_->exponent; }
Builtin Expr::builtin() const { return n_->fn; }

const CanonicalForm& Expr::canonical() const
{
    std::call_once(n_->once, [this] { n_->form = std::make_unique<CanonicalForm>(compute(*n_)); });
    return *n_->form;
}

Expr operator-(const Expr& a, const Expr& b) { return Expr::sum({a, Expr::product({Expr(-1), b})}); }

Expr operator/(const Expr& a, const Expr& b) { return Expr::product({a, Expr::power(b, mpq_class(-1))}); }

Expr Expr::operator-() const { return Expr::product({Expr(-1), *this}); }

Expr exp(const Expr& a) { return Expr::apply(Builtin::Exp, a); }
Expr ln(const Expr& a) { return Expr::apply(Builtin::Ln, a); }
Expr lambertw(const Expr& a) { return Expr::apply(Builtin::LambertW, a); }

CanonicalForm normalize(const Expr& e) { return e.canonical(); }

bool is_zero(const Expr& e) { return e.canonical().is_zero(); }

bool equivalent(const Expr& a, const Expr& b) { return (a.canonical() - b.canonical()).is_zero(); }

AtomId atom_of(const Expr& e)
{
    auto a = e.canonical().as_atom();
    if (!a)
        throw Error("binding key is not an atom");
    return *a;
}

Expr substitute(const Expr& e, const ExprBindings& bindings)
{
    Bindings b;
    for (auto& [k, v] : bindings)
        b.emplace(atom_of(k), v.canonical());
    return Expr::from_form(substitute(e.canonical(), b));
}

std::map<MonomialKey, CanonicalForm> collect_form(const CanonicalForm& f, const std::vector<AtomId>& atoms)
{
    std::map<MonomialKey, CanonicalForm> out;
    if (f.is_zero())
        return out;
    for (AtomId a : atoms) {
        if (f.den().contains(a))
            throw NotPolynomialInAtoms("atom occurs in a denominator: " + atom_info(a).key);
        for (AtomId b : f.atoms())
            if (b != a && atom_info(b).is_compound()) {
                const auto& l = atom_info(b).leaves;
                if (std::binary_search(l.begin(), l.end(), a))
                    throw NotPolynomialInAtoms("atom occurs inside " + atom_info(b).key);
            }
    }
    std::map<MonomialKey, std::vector<Term>> groups;
    for (auto& t : f.num().terms()) {
        MonomialKey key(atoms.size(), 0);
        std::vector<Mono::Factor> rest;
        for (auto& [a, e] : t.m.factors()) {
            auto it = std::find(atoms.begin(), atoms.end(), a);
            if (it == atoms.end()) {
                rest.emplace_back(a, e);
                continue;
            }
            if (!e.is_integer() || e.is_negative())
                throw NotPolynomialInAtoms("non-integer power of " + atom_info(a).key);
            key[static_cast<std::size_t>(it - atoms.begin())] = static_cast<long>(e.num());
        }
        groups[key].push_back({Mono::from_factors(std::move(rest)), t.c});
    }
    for (auto& [k, ts] : groups)
        out.emplace(k, CanonicalForm::fraction(Poly::from_terms(std::move(ts)), f.den()));
    return out;
}

std::map<MonomialKey, Expr> collect(const Expr& e, const std::vector<Expr>& atoms)
{
    std::vector<AtomId> ids;
    for (auto& a : atoms)
        ids.push_back(atom_of(a));
    std::map<MonomialKey, Expr> out;
    for (auto& [k, c] : collect_form(e.canonical(), ids))
        out.emplace(k, Expr::from_form(c));
    return out;
}

} // namespace liereduce
