#include "liereduce/expr/canonical.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "liereduce/expr/errors.hpp"

namespace liereduce {

namespace {

Poly divide_mono(const Poly& p, const Mono& m)
{
    std::vector<Term> ts;
    ts.reserve(p.size());
    for (auto& t : p.terms())
        ts.push_back({t.m / m, t.c});
    return Poly::from_sorted(std::move(ts));
}

bool relation_overflow(const Poly& p)
{
    for (auto& t : p.terms())
        for (auto& [a, e] : t.m.factors())
            if ((e.num() >= e.den() || e.is_negative()) && atom_info(a).has_relation())
                return true;
    return false;
}

Poly relation_base(AtomId a)
{
    const AtomInfo& info = atom_info(a);
    if (info.kind == AtomKind::Surd)
        return Poly(info.integer);
    return info.arg->num();
}

// Moves integer parts of relation exponents into the base polynomials.
Poly reduce_relations(const Poly& p)
{
    std::vector<Term> plain;
    Poly expanded;
    for (auto& t : p.terms()) {
        std::vector<Mono::Factor> keep;
        std::vector<std::pair<AtomId, std::int64_t>> lift;
        for (auto& [a, e] : t.m.factors()) {
            if (atom_info(a).has_relation() && (e.num() >= e.den() || e.is_negative())) {
                std::int64_t f = e.floor();
                if (f < 0)
                    throw Error("internal: negative relation exponent after clearing");
                QExp r = e.frac();
                if (!r.is_zero())
                    keep.emplace_back(a, r);
                lift.emplace_back(a, f);
            } else {
                keep.emplace_back(a, e);
            }
        }
        if (lift.empty()) {
            plain.push_back(t);
            continue;
        }
        Poly acc = Poly::monomial(Mono::from_factors(std::move(keep)), t.c);
        for (auto& [a, f] : lift)
            acc = acc * relation_base(a).pow(static_cast<unsigned>(f));
        expanded = expanded + acc;
    }
    return Poly::from_sorted(std::move(plain)) + expanded;
}

Mono joint_min(const Poly& n, const Poly& d)
{
    std::vector<AtomId> as = n.atoms();
    auto bs = d.atoms();
    as.insert(as.end(), bs.begin(), bs.end());
    std::sort(as.begin(), as.end());
    as.erase(std::unique(as.begin(), as.end()), as.end());
    std::vector<Mono::Factor> f;
    for (AtomId a : as) {
        QExp e = std::min(n.min_exponent(a), d.min_exponent(a));
        if (!e.is_zero())
            f.emplace_back(a, e);
    }
    return Mono::from_factors(std::move(f));
}

std::vector<std::pair<mpz_class, long>> factor_integer(mpz_class n)
{
    std::vector<std::pair<mpz_class, long>> out;
    if (n < 0)
        n = -n;
    for (unsigned long p = 2; p < 100000 && n > 1; ++p) {
        if (static_cast<unsigned long>(p) * p > n && n.fits_ulong_p())
            break;
        long k = 0;
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
            ++k;
        }
        if (k)
            out.emplace_back(mpz_class(p), k);
    }
    if (n > 1)
        out.emplace_back(n, 1);
    return out;
}

// (c)^q for a positive integer c as a product of surd atoms and a rational.
CanonicalForm integer_power(const mpz_class& c, QExp q)
{
    CanonicalForm r(1);
    for (auto& [p, k] : factor_integer(c)) {
        QExp e = QExp(k) * q;
        std::int64_t f = e.floor();
        mpz_class pf;
        mpz_pow_ui(pf.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(f < 0 ? -f : f));
        r *= f < 0 ? CanonicalForm(mpq_class(1, pf)) : CanonicalForm(mpq_class(pf));
        if (!e.frac().is_zero())
            r *= CanonicalForm::atom(surd_atom(p), e.frac());
    }
    return r;
}

// Exact k-th root of a polynomial with integer coefficients, found term by
// term from the leading monomial downwards.
std::optional<Poly> poly_root(const Poly& p, unsigned k)
{
    const Term& lead = p.lead();
    if (lead.c < 0 && k % 2 == 0)
        return std::nullopt;
    mpz_class r0;
    if (!mpz_root(r0.get_mpz_t(), lead.c.get_mpz_t(), k))
        return std::nullopt;
    QExp low = lead.m.degree();
    for (auto& t : p.terms())
        low = std::min(low, t.m.degree());
    low = low / QExp(k);
    Mono m0 = lead.m.pow(QExp(1, k));
    Poly b = Poly::monomial(m0, r0);
    mpz_class d;
    mpz_pow_ui(d.get_mpz_t(), r0.get_mpz_t(), k - 1);
    d *= k;
    Mono dm = m0.pow(QExp(k - 1));
    for (std::size_t it = 0; it < 2 * p.size() + 8; ++it) {
        Poly r = p - b.pow(k);
        if (r.is_zero())
            return b;
        const Term& t = r.lead();
        if (!mpz_divisible_p(t.c.get_mpz_t(), d.get_mpz_t()))
            return std::nullopt;
        Mono m = t.m / dm;
        if (m.degree() < low)
            return std::nullopt;
        b = b + Poly::monomial(m, t.c / d);
    }
    return std::nullopt;
}

// Writes p = root^k with k maximal over small primes.
std::pair<Poly, long> perfect_power(Poly p)
{
    long mult = 1;
    if (p.size() < 3)
        return {p, mult};
    for (unsigned k : {2u, 3u, 5u, 7u}) {
        while (p.size() >= 3) {
            auto r = poly_root(p, k);
            if (!r)
                break;
            p = (k % 2 == 0 && name_leading_coefficient(*r) < 0) ? -*r : *r;
            mult *= k;
        }
    }
    return {p, mult};
}

// Fractional power of a nonzero polynomial under the positivity convention.
CanonicalForm poly_power(const Poly& p, QExp q)
{
    mpz_class c = p.content();
    Mono m = p.min_mono();
    Poly rest = divide_mono(p.divexact_int(c), m);
    int sign = 1;
    if (rest.is_constant()) {
        if (rest.constant_value() < 0)
            sign = -1;
        rest = Poly(1);
    } else if (name_leading_coefficient(rest) < 0 && q.den() % 2 == 1) {
        rest = -rest;
        sign = -1;
    }
    CanonicalForm r = integer_power(c, q);
    if (sign < 0) {
        if (q.den() % 2 == 0)
            throw UnsupportedNode("even root of a negative constant");
        if (q.num() % 2 != 0)
            r = -r;
    }
    r *= CanonicalForm::fraction(Poly::monomial(m.pow(q)), Poly(1));
    if (!rest.is_one()) {
        auto [root, k] = perfect_power(rest);
        if (k > 1)
            return r * poly_power(root, q * QExp(k));
        r *= CanonicalForm::atom(radical_atom(rest), q);
    }
    return r;
}

std::string coeff_str(const mpz_class& c) { return c.get_str(); }

std::string mono_key(const Mono& m)
{
    std::vector<Mono::Factor> f = m.factors();
    std::sort(f.begin(), f.end(), [](auto& x, auto& y) { return compare_atom_names(x.first, y.first) < 0; });
    std::string s;
    for (auto& [a, e] : f) {
        s += '*';
        s += atom_info(a).key;
        if (!(e == QExp(1)))
            s += "^" + e.str();
    }
    return s;
}

std::string poly_key(const Poly& p)
{
    std::string s;
    for (const Term* t : name_ordered(p)) {
        if (!s.empty() || t->c < 0)
            s += t->c < 0 ? "-" : "+";
        mpz_class a = abs(t->c);
        s += coeff_str(a) + mono_key(t->m);
    }
    return s.empty() ? "0" : s;
}

} // namespace

CanonicalForm CanonicalForm::build(Poly n, Poly d, bool coprime)
{
    if (d.is_zero())
        throw DivisionByZero("division by zero");
    if (n.is_zero())
        return CanonicalForm();
    for (int round = 0; round < 16; ++round) {
        bool changed = false;
        Mono m = joint_min(n, d);
        if (!m.is_one()) {
            n = divide_mono(n, m);
            d = divide_mono(d, m);
        }
        if (relation_overflow(n)) {
            n = reduce_relations(n);
            changed = true;
        }
        if (relation_overflow(d)) {
            d = reduce_relations(d);
            changed = true;
        }
        std::vector<Mono::Factor> lift;
        Mono dm = d.min_mono();
        for (auto& [a, e] : dm.factors())
            if (atom_info(a).has_relation() && !e.is_integer())
                lift.emplace_back(a, QExp(1) - e.frac());
        if (!lift.empty()) {
            Mono mu = Mono::from_factors(std::move(lift));
            n = n.mul_term(mu, 1);
            d = d.mul_term(mu, 1);
            changed = true;
        }
        if (!changed)
            break;
        coprime = false;
        if (n.is_zero())
            return CanonicalForm();
    }
    if (!coprime && !d.is_monomial()) {
        Poly g = gcd(n, d);
        if (!g.is_constant()) {
            n = *divide_exact(n, g);
            d = *divide_exact(d, g);
        }
    }
    mpz_class cn = n.content(), cd = d.content(), c;
    mpz_gcd(c.get_mpz_t(), cn.get_mpz_t(), cd.get_mpz_t());
    if (c != 1) {
        n = n.divexact_int(c);
        d = d.divexact_int(c);
    }
    if (name_leading_coefficient(d) < 0) {
        n = -n;
        d = -d;
    }
    return CanonicalForm(Raw{}, std::move(n), std::move(d));
}

CanonicalForm::CanonicalForm(const mpq_class& q) : num_(q.get_num()), den_(q.get_den()) {}

CanonicalForm CanonicalForm::atom(AtomId a, QExp e)
{
    return build(Poly::monomial(Mono::atom(a, e)), Poly(1), true);
}

CanonicalForm CanonicalForm::from_poly(Poly p) { return build(std::move(p), Poly(1), true); }

CanonicalForm CanonicalForm::fraction(Poly n, Poly d) { return build(std::move(n), std::move(d), false); }

std::optional<mpq_class> CanonicalForm::as_rational() const
{
    if (!is_constant())
        return std::nullopt;
    mpq_class q(num_.constant_value(), den_.constant_value());
    q.canonicalize();
    return q;
}

std::optional<AtomId> CanonicalForm::as_atom() const
{
    if (!den_.is_one() || !num_.is_monomial() || num_.lead().c != 1)
        return std::nullopt;
    const auto& f = num_.lead().m.factors();
    if (f.size() != 1 || !(f[0].second == QExp(1)))
        return std::nullopt;
    return f[0].first;
}

CanonicalForm CanonicalForm::operator-() const { return CanonicalForm(Raw{}, -num_, den_); }

CanonicalForm operator+(const CanonicalForm& a, const CanonicalForm& b)
{
    if (a.is_zero())
        return b;
    if (b.is_zero())
        return a;
    if (a.den_ == b.den_)
        return CanonicalForm::build(a.num_ + b.num_, a.den_, a.den_.is_constant());
    if (a.den_.is_constant() || b.den_.is_constant() || a.den_.is_monomial() || b.den_.is_monomial())
        return CanonicalForm::build(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_, false);
    Poly g = gcd(a.den_, b.den_);
    Poly da = *divide_exact(a.den_, g), db = *divide_exact(b.den_, g);
    return CanonicalForm::build(a.num_ * db + b.num_ * da, a.den_ * db, false);
}

CanonicalForm operator-(const CanonicalForm& a, const CanonicalForm& b) { return a + (-b); }

CanonicalForm operator*(const CanonicalForm& a, const CanonicalForm& b)
{
    if (a.is_zero() || b.is_zero())
        return CanonicalForm();
    if (a.den_.is_constant() && b.den_.is_constant())
        return CanonicalForm::build(a.num_ * b.num_, a.den_ * b.den_, false);
    Poly an = a.num_, ad = a.den_, bn = b.num_, bd = b.den_;
    if (!bd.is_constant()) {
        Poly g = gcd(an, bd);
        if (!g.is_constant()) {
            an = *divide_exact(an, g);
            bd = *divide_exact(bd, g);
        }
    }
    if (!ad.is_constant()) {
        Poly g = gcd(bn, ad);
        if (!g.is_constant()) {
            bn = *divide_exact(bn, g);
            ad = *divide_exact(ad, g);
        }
    }
    return CanonicalForm::build(an * bn, ad * bd, true);
}

CanonicalForm operator/(const CanonicalForm& a, const CanonicalForm& b)
{
    if (b.is_zero())
        throw DivisionByZero("division by zero");
    return a * CanonicalForm::build(b.den_, b.num_, true);
}

CanonicalForm CanonicalForm::powi(long k) const
{
    if (k == 0)
        return CanonicalForm(1);
    if (is_zero()) {
        if (k < 0)
            throw DivisionByZero("zero to a negative power");
        return *this;
    }
    unsigned e = static_cast<unsigned>(k < 0 ? -k : k);
    if (k > 0)
        return build(num_.pow(e), den_.pow(e), true);
    return build(den_.pow(e), num_.pow(e), true);
}

CanonicalForm CanonicalForm::pow(QExp e) const
{
    if (e.is_integer())
        return powi(static_cast<long>(e.num()));
    if (is_zero()) {
        if (e.is_negative())
            throw DivisionByZero("zero to a negative power");
        return *this;
    }
    return poly_power(num_, e) / poly_power(den_, e);
}

std::vector<AtomId> CanonicalForm::atoms() const
{
    auto a = num_.atoms();
    auto b = den_.atoms();
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return a;
}

bool CanonicalForm::depends_on(AtomId x) const
{
    for (AtomId a : atoms()) {
        const auto& l = atom_info(a).leaves;
        if (std::binary_search(l.begin(), l.end(), x))
            return true;
    }
    return false;
}

std::string CanonicalForm::key() const
{
    if (den_.is_one())
        return poly_key(num_);
    return "(" + poly_key(num_) + ")/(" + poly_key(den_) + ")";
}

std::vector<const Term*> name_ordered(const Poly& p)
{
    std::vector<const Term*> v;
    v.reserve(p.size());
    for (auto& t : p.terms())
        v.push_back(&t);
    std::stable_sort(v.begin(), v.end(), [](const Term* a, const Term* b) { return compare_names(a->m, b->m) > 0; });
    return v;
}

mpz_class name_leading_coefficient(const Poly& p)
{
    if (p.is_zero())
        return 0;
    const Term* best = &p.terms().front();
    for (auto& t : p.terms())
        if (compare_names(t.m, best->m) > 0)
            best = &t;
    return best->c;
}

// --- elementary constructors ------------------------------------------------

namespace {

CanonicalForm mono_form(const Mono& m)
{
    std::vector<Mono::Factor> pos, neg;
    for (auto& [a, e] : m.factors())
        (e.is_negative() ? neg : pos).emplace_back(a, e.is_negative() ? -e : e);
    return CanonicalForm::fraction(Poly::monomial(Mono::from_factors(std::move(pos))),
                                   Poly::monomial(Mono::from_factors(std::move(neg))));
}

CanonicalForm ln_integer(const mpz_class& c)
{
    CanonicalForm r;
    for (auto& [p, k] : factor_integer(c))
        r += CanonicalForm(k) * CanonicalForm::atom(ln_atom(CanonicalForm(mpq_class(p))));
    return r;
}

CanonicalForm ln_poly(const Poly& p);

CanonicalForm ln_of_atom(AtomId a)
{
    const AtomInfo& info = atom_info(a);
    switch (info.kind) {
    case AtomKind::Exp:
        return *info.arg;
    case AtomKind::Surd:
        return CanonicalForm::atom(ln_atom(CanonicalForm(mpq_class(info.integer))));
    case AtomKind::Radical:
        return ln_poly(info.arg->num());
    default:
        return CanonicalForm::atom(ln_atom(CanonicalForm::atom(a)));
    }
}

CanonicalForm ln_poly(const Poly& p)
{
    if (p.is_zero())
        throw UnsupportedNode("logarithm of zero");
    mpz_class c = p.content();
    Mono m = p.min_mono();
    Poly rest = divide_mono(p.divexact_int(c), m);
    CanonicalForm r = ln_integer(c);
    for (auto& [a, e] : m.factors())
        r += CanonicalForm(e.to_mpq()) * ln_of_atom(a);
    if (!rest.is_one())
        r += CanonicalForm::atom(ln_atom(CanonicalForm::from_poly(rest)));
    return r;
}

} // namespace

CanonicalForm make_exp(const CanonicalForm& arg)
{
    if (arg.is_zero())
        return CanonicalForm(1);
    if (arg.den().is_monomial()) {
        const Term& dt = arg.den().lead();
        CanonicalForm r(1);
        for (auto& t : arg.num().terms()) {
            mpq_class q(t.c, dt.c);
            q.canonicalize();
            Mono k = t.m / dt.m;
            const auto& f = k.factors();
            if (f.size() == 1 && f[0].second == QExp(1) && atom_info(f[0].first).kind == AtomKind::Ln) {
                r *= atom_info(f[0].first).arg->pow(QExp::from_mpq(q));
                continue;
            }
            r *= CanonicalForm::atom(exp_atom(mono_form(k)), QExp::from_mpq(q));
        }
        return r;
    }
    mpz_class c = arg.num().content();
    if (name_leading_coefficient(arg.num()) < 0)
        c = -c;
    CanonicalForm key = CanonicalForm::fraction(arg.num().divexact_int(c), arg.den());
    return CanonicalForm::atom(exp_atom(key), QExp::from_mpq(mpq_class(c)));
}

CanonicalForm make_ln(const CanonicalForm& arg)
{
    if (arg.is_zero())
        throw UnsupportedNode("logarithm of zero");
    if (arg.is_one())
        return CanonicalForm();
    return ln_poly(arg.num()) - ln_poly(arg.den());
}

CanonicalForm make_lambertw(const CanonicalForm& arg)
{
    if (arg.is_zero())
        return CanonicalForm();
    return CanonicalForm::atom(lambertw_atom(arg));
}

CanonicalForm make_function(const std::string& name, int order, const CanonicalForm& arg)
{
    return CanonicalForm::atom(function_atom(name, order, arg));
}

// --- substitution --------------------------------------------------------------

namespace {

class Substituter {
public:
    explicit Substituter(const Bindings& b) : b_(b)
    {
        for (auto& [a, f] : b)
            bound_.push_back(a);
        std::sort(bound_.begin(), bound_.end());
    }

    bool touches(AtomId a) const
    {
        const auto& l = atom_info(a).leaves;
        for (AtomId x : l)
            if (std::binary_search(bound_.begin(), bound_.end(), x))
                return true;
        return false;
    }

    CanonicalForm run(const CanonicalForm& f)
    {
        bool any = false;
        for (AtomId a : f.atoms())
            if (touches(a)) {
                any = true;
                break;
            }
        if (!any)
            return f;
        return poly(f.num()) / poly(f.den());
    }

private:
    const std::optional<CanonicalForm>& image(AtomId a)
    {
        if (auto it = img_.find(a); it != img_.end())
            return it->second;
        std::optional<CanonicalForm> r;
        if (auto it = b_.find(a); it != b_.end()) {
            r = it->second;
        } else if (touches(a)) {
            const AtomInfo& info = atom_info(a);
            CanonicalForm arg = run(*info.arg);
            switch (info.kind) {
            case AtomKind::Function:
                r = make_function(info.name, info.order, arg);
                break;
            case AtomKind::Ln:
                r = make_ln(arg);
                break;
            case AtomKind::LambertW:
                r = make_lambertw(arg);
                break;
            case AtomKind::Exp:
            case AtomKind::Radical:
                r = arg;
                break;
            default:
                break;
            }
        }
        return img_.emplace(a, std::move(r)).first->second;
    }

    CanonicalForm factor(AtomId a, QExp e)
    {
        const auto& im = image(a);
        if (!im)
            return CanonicalForm::atom(a, e);
        switch (atom_info(a).kind) {
        case AtomKind::Exp:
            return make_exp(*im * CanonicalForm(e.to_mpq()));
        default:
            return im->pow(e);
        }
    }

    CanonicalForm poly(const Poly& p)
    {
        std::map<std::pair<std::size_t, std::size_t>, std::vector<CanonicalForm>> by_den;
        std::vector<Term> untouched;
        CanonicalForm acc;
        for (auto& t : p.terms()) {
            std::vector<Mono::Factor> keep;
            CanonicalForm prod(mpq_class(t.c));
            bool changed = false;
            for (auto& [a, e] : t.m.factors()) {
                if (touches(a)) {
                    prod = prod * factor(a, e);
                    changed = true;
                } else {
                    keep.emplace_back(a, e);
                }
            }
            if (!changed) {
                untouched.push_back(t);
                continue;
            }
            prod = prod * mono_form(Mono::from_factors(std::move(keep)));
            by_den[{prod.den().hash(), prod.den().size()}].push_back(prod);
        }
        CanonicalForm total = CanonicalForm::fraction(Poly::from_sorted(std::move(untouched)), Poly(1));
        for (auto& [k, group] : by_den) {
            Poly num;
            std::vector<CanonicalForm> odd;
            const Poly& d = group.front().den();
            for (auto& g : group) {
                if (g.den() == d)
                    num = num + g.num();
                else
                    odd.push_back(g);
            }
            total += CanonicalForm::fraction(num, d);
            for (auto& g : odd)
                total += g;
        }
        return total;
    }

    const Bindings& b_;
    std::vector<AtomId> bound_;
    std::unordered_map<AtomId, std::optional<CanonicalForm>> img_;
};

} // namespace

CanonicalForm substitute(const CanonicalForm& f, const Bindings& b)
{
    if (b.empty())
        return f;
    Substituter s(b);
    return s.run(f);
}

CanonicalForm substitute_fixpoint(const CanonicalForm& f, const Bindings& b)
{
    CanonicalForm cur = f;
    for (int round = 0; round < 64; ++round) {
        bool pending = false;
        for (auto& [a, v] : b)
            if (cur.depends_on(a)) {
                pending = true;
                break;
            }
        if (!pending)
            return cur;
        cur = substitute(cur, b);
    }
    throw CyclicBinding("bindings do not terminate");
}

} // namespace liereduce
