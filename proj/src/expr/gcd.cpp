#include <algorithm>
#include <random>

#include "liereduce/expr/errors.hpp"
#include "liereduce/expr/poly.hpp"

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

Poly positive_lead(Poly p)
{
    if (!p.is_zero() && p.lead().c < 0)
        return -p;
    return p;
}

// --- arithmetic modulo the Mersenne prime 2^61 - 1 -------------------------

constexpr std::uint64_t kP = (1ULL << 61) - 1;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b)
{
    unsigned __int128 r = static_cast<unsigned __int128>(a) * b;
    std::uint64_t lo = static_cast<std::uint64_t>(r & kP);
    std::uint64_t hi = static_cast<std::uint64_t>(r >> 61);
    std::uint64_t s = lo + hi;
    if (s >= kP)
        s -= kP;
    return s;
}

std::uint64_t addmod(std::uint64_t a, std::uint64_t b)
{
    std::uint64_t s = a + b;
    return s >= kP ? s - kP : s;
}

std::uint64_t submod(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + kP - b; }

std::uint64_t powmod(std::uint64_t b, std::uint64_t e)
{
    std::uint64_t r = 1;
    while (e) {
        if (e & 1)
            r = mulmod(r, b);
        b = mulmod(b, b);
        e >>= 1;
    }
    return r;
}

std::uint64_t invmod(std::uint64_t a) { return powmod(a, kP - 2); }

std::uint64_t reduce_mpz(const mpz_class& c)
{
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), c.get_mpz_t(), kP);
    return r.get_ui();
}

using UMod = std::vector<std::uint64_t>;

void trim(UMod& u)
{
    while (!u.empty() && u.back() == 0)
        u.pop_back();
}

std::size_t gcd_degree_mod(UMod a, UMod b)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        if (a.size() < b.size())
            std::swap(a, b);
        std::uint64_t inv = invmod(b.back());
        while (a.size() >= b.size() && !a.empty()) {
            std::uint64_t f = mulmod(a.back(), inv);
            std::size_t shift = a.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i)
                a[i + shift] = submod(a[i + shift], mulmod(f, b[i]));
            trim(a);
        }
        std::swap(a, b);
    }
    return a.empty() ? 0 : a.size() - 1;
}

std::mt19937_64& rng()
{
    thread_local std::mt19937_64 g(0x2545F4914F6CDD1DULL);
    return g;
}

// Upper bound for deg_v gcd(a, b) from one evaluation, or -1 if the
// evaluation point was unlucky.
long modular_degree(const Poly& a, const Poly& b, AtomId v)
{
    std::int64_t lv = lcm_den(a.exponent_lcm_den(v), b.exponent_lcm_den(v));
    std::vector<AtomId> others;
    for (AtomId x : a.atoms())
        if (x != v)
            others.push_back(x);
    for (AtomId x : b.atoms())
        if (x != v)
            others.push_back(x);
    std::sort(others.begin(), others.end());
    others.erase(std::unique(others.begin(), others.end()), others.end());
    std::vector<std::pair<AtomId, std::pair<std::uint64_t, std::int64_t>>> vals;
    for (AtomId x : others)
        vals.push_back({x, {rng()() % (kP - 3) + 2, lcm_den(a.exponent_lcm_den(x), b.exponent_lcm_den(x))}});
    auto image = [&](const Poly& p) -> UMod {
        QExp top = p.max_exponent(v) * QExp(lv);
        if (!top.is_integer() || top.num() > 200000)
            return {};
        UMod u(static_cast<std::size_t>(top.num()) + 1, 0);
        for (auto& t : p.terms()) {
            std::uint64_t c = reduce_mpz(t.c);
            for (auto& [x, e] : t.m.factors()) {
                if (x == v)
                    continue;
                auto it = std::lower_bound(vals.begin(), vals.end(), x, [](auto& q, AtomId id) { return q.first < id; });
                QExp scaled = e * QExp(it->second.second);
                c = mulmod(c, powmod(it->second.first, static_cast<std::uint64_t>(scaled.num())));
            }
            QExp d = t.m.exponent(v) * QExp(lv);
            u[static_cast<std::size_t>(d.num())] = addmod(u[static_cast<std::size_t>(d.num())], c);
        }
        return u;
    };
    UMod ia = image(a), ib = image(b);
    if (ia.empty() || ib.empty() || ia.back() == 0 || ib.back() == 0)
        return -1;
    return static_cast<long>(gcd_degree_mod(std::move(ia), std::move(ib)));
}

// --- recursive univariate view for the subresultant sequence ---------------

using UPoly = std::vector<Poly>;

UPoly to_upoly(const Poly& p, AtomId v)
{
    UPoly u;
    for (auto& [e, c] : p.coefficients_in(v)) {
        auto d = static_cast<std::size_t>(e.num());
        if (u.size() <= d)
            u.resize(d + 1);
        u[d] = c;
    }
    return u;
}

Poly from_upoly(const UPoly& u, AtomId v)
{
    Poly r;
    for (std::size_t d = 0; d < u.size(); ++d)
        if (!u[d].is_zero())
            r = r + u[d].mul_term(Mono::atom(v, QExp(static_cast<std::int64_t>(d))), 1);
    return r;
}

void utrim(UPoly& u)
{
    while (!u.empty() && u.back().is_zero())
        u.pop_back();
}

long udeg(const UPoly& u) { return static_cast<long>(u.size()) - 1; }

UPoly uscale(const UPoly& u, const Poly& c)
{
    UPoly r(u.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        r[i] = u[i] * c;
    return r;
}

Poly exact(const Poly& a, const Poly& b)
{
    auto q = divide_exact(a, b);
    if (!q)
        throw Error("internal: inexact division in subresultant sequence");
    return *q;
}

UPoly udivexact(const UPoly& u, const Poly& c)
{
    UPoly r(u.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        r[i] = u[i].is_zero() ? Poly() : exact(u[i], c);
    return r;
}

UPoly prem(UPoly a, const UPoly& b)
{
    long db = udeg(b);
    long e = udeg(a) - db + 1;
    const Poly& lb = b.back();
    while (!a.empty() && udeg(a) >= db) {
        Poly la = a.back();
        long shift = udeg(a) - db;
        for (auto& c : a)
            c = c * lb;
        for (long i = 0; i <= db; ++i)
            a[static_cast<std::size_t>(i + shift)] = a[static_cast<std::size_t>(i + shift)] - b[static_cast<std::size_t>(i)] * la;
        utrim(a);
        --e;
    }
    if (e > 0)
        a = uscale(a, lb.pow(static_cast<unsigned>(e)));
    return a;
}

Poly gcd_list(const std::vector<Poly>& ps);

Poly ucontent(const UPoly& u)
{
    std::vector<Poly> cs;
    for (auto& c : u)
        if (!c.is_zero())
            cs.push_back(c);
    return gcd_list(cs);
}

Poly subresultant_gcd(const Poly& pa, const Poly& pb, AtomId v)
{
    UPoly a = to_upoly(pa, v), b = to_upoly(pb, v);
    if (udeg(a) < udeg(b))
        std::swap(a, b);
    Poly ca = ucontent(a), cb = ucontent(b);
    Poly d = gcd(ca, cb);
    a = udivexact(a, ca);
    b = udivexact(b, cb);
    Poly g(1), h(1);
    for (;;) {
        long delta = udeg(a) - udeg(b);
        UPoly r = prem(a, b);
        if (r.empty())
            break;
        if (udeg(r) == 0)
            return d;
        a = b;
        Poly div = g * h.pow(static_cast<unsigned>(delta));
        b = udivexact(r, div);
        g = a.back();
        if (delta == 0) {
        } else if (delta == 1) {
            h = g;
        } else {
            h = exact(g.pow(static_cast<unsigned>(delta)), h.pow(static_cast<unsigned>(delta - 1)));
        }
    }
    Poly cbb = ucontent(b);
    b = udivexact(b, cbb);
    return positive_lead(from_upoly(b, v) * d);
}

Poly gcd_primitive(const Poly& a, const Poly& b);

Poly gcd_list(const std::vector<Poly>& ps)
{
    Poly g;
    for (auto& p : ps) {
        g = gcd(g, p);
        if (g.is_one())
            break;
    }
    return g;
}

std::vector<Poly> coeff_polys(const Poly& p, AtomId v)
{
    std::vector<Poly> out;
    for (auto& [e, c] : p.coefficients_in(v))
        out.push_back(c);
    std::sort(out.begin(), out.end(), [](const Poly& x, const Poly& y) { return x.size() < y.size(); });
    return out;
}

Poly gcd_primitive(const Poly& a, const Poly& b)
{
    if (a.is_constant() || b.is_constant())
        return Poly(1);
    if (a == b || a == -b)
        return positive_lead(a);
    auto va = a.atoms(), vb = b.atoms();
    for (AtomId v : va)
        if (!std::binary_search(vb.begin(), vb.end(), v)) {
            auto cs = coeff_polys(a, v);
            cs.push_back(b);
            return gcd_list(cs);
        }
    for (AtomId v : vb)
        if (!std::binary_search(va.begin(), va.end(), v)) {
            auto cs = coeff_polys(b, v);
            cs.push_back(a);
            return gcd_list(cs);
        }
    AtomId best = va.front();
    QExp best_deg(-1);
    for (AtomId v : va) {
        long d = -1;
        for (int attempt = 0; attempt < 3 && d < 0; ++attempt)
            d = modular_degree(a, b, v);
        if (d == 0) {
            auto cs = coeff_polys(a, v);
            auto cb = coeff_polys(b, v);
            cs.insert(cs.end(), cb.begin(), cb.end());
            std::sort(cs.begin(), cs.end(), [](const Poly& x, const Poly& y) { return x.size() < y.size(); });
            return gcd_list(cs);
        }
        std::int64_t l = lcm_den(a.exponent_lcm_den(v), b.exponent_lcm_den(v));
        QExp dv = std::max(a.max_exponent(v), b.max_exponent(v)) * QExp(l);
        if (best_deg.is_negative() || dv < best_deg) {
            best = v;
            best_deg = dv;
        }
    }
    if (a.size() <= b.size()) {
        if (auto q = divide_exact(b, a))
            return positive_lead(a);
    } else if (auto q = divide_exact(a, b)) {
        return positive_lead(b);
    }
    std::int64_t l = lcm_den(a.exponent_lcm_den(best), b.exponent_lcm_den(best));
    if (l == 1)
        return subresultant_gcd(a, b, best);
    Poly sa = a.scale_exponent(best, QExp(l)), sb = b.scale_exponent(best, QExp(l));
    return positive_lead(subresultant_gcd(sa, sb, best).scale_exponent(best, QExp(1, l)));
}

} // namespace

std::optional<Poly> divide_exact(const Poly& a, const Poly& b)
{
    if (b.is_zero())
        throw DivisionByZero("polynomial division by zero");
    if (a.is_zero())
        return Poly();
    if (b.is_monomial()) {
        const Term& bt = b.lead();
        std::vector<Term> ts;
        ts.reserve(a.size());
        for (auto& t : a.terms()) {
            if (!mpz_divisible_p(t.c.get_mpz_t(), bt.c.get_mpz_t()))
                return std::nullopt;
            Mono q = t.m / bt.m;
            if (q.has_negative())
                return std::nullopt;
            mpz_class c;
            mpz_divexact(c.get_mpz_t(), t.c.get_mpz_t(), bt.c.get_mpz_t());
            ts.push_back({std::move(q), std::move(c)});
        }
        return Poly::from_sorted(std::move(ts));
    }
    for (auto& [x, e] : b.lead().m.factors())
        if (a.max_exponent(x) < e)
            return std::nullopt;
    std::vector<Term> quot;
    Poly r = a;
    const Term& bl = b.lead();
    while (!r.is_zero()) {
        const Term& rl = r.lead();
        if (!mpz_divisible_p(rl.c.get_mpz_t(), bl.c.get_mpz_t()))
            return std::nullopt;
        Mono q = rl.m / bl.m;
        if (q.has_negative())
            return std::nullopt;
        mpz_class c;
        mpz_divexact(c.get_mpz_t(), rl.c.get_mpz_t(), bl.c.get_mpz_t());
        r = r - b.mul_term(q, c);
        quot.push_back({std::move(q), std::move(c)});
    }
    return Poly::from_terms(std::move(quot));
}

Poly gcd(const Poly& a, const Poly& b)
{
    if (a.is_zero())
        return positive_lead(b);
    if (b.is_zero())
        return positive_lead(a);
    mpz_class ca = a.content(), cb = b.content(), c;
    mpz_gcd(c.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    Mono ma = a.min_mono(), mb = b.min_mono();
    std::vector<Mono::Factor> common;
    for (auto& [x, e] : ma.factors()) {
        QExp f = mb.exponent(x);
        QExp m = std::min(e, f);
        if (m.is_positive())
            common.emplace_back(x, m);
    }
    Mono m = Mono::from_factors(std::move(common));
    if (a.is_monomial() || b.is_monomial())
        return Poly::monomial(m, c);
    Poly pa = divide_mono(a.divexact_int(ca), ma);
    Poly pb = divide_mono(b.divexact_int(cb), mb);
    Poly g = gcd_primitive(pa, pb);
    return positive_lead(g.mul_term(m, c));
}

} // namespace liereduce
