#include "liereduce/expr/poly.hpp"

#include <algorithm>
#include <unordered_map>

#include "liereduce/expr/errors.hpp"

namespace liereduce {

namespace {

std::size_t mix(std::size_t h, std::size_t v) { return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)); }

} // namespace

Mono Mono::atom(AtomId a, QExp e)
{
    Mono m;
    if (!e.is_zero())
        m.f_.emplace_back(a, e);
    m.finish();
    return m;
}

Mono Mono::from_factors(std::vector<Factor> f)
{
    std::sort(f.begin(), f.end(), [](const Factor& x, const Factor& y) { return x.first < y.first; });
    Mono m;
    for (auto& [a, e] : f) {
        if (!m.f_.empty() && m.f_.back().first == a)
            m.f_.back().second += e;
        else
            m.f_.emplace_back(a, e);
    }
    std::erase_if(m.f_, [](const Factor& x) { return x.second.is_zero(); });
    m.finish();
    return m;
}

void Mono::finish()
{
    deg_ = QExp(0);
    hash_ = 0x51ed27;
    for (auto& [a, e] : f_) {
        deg_ += e;
        hash_ = mix(hash_, a);
        hash_ = mix(hash_, static_cast<std::size_t>(e.num()));
        hash_ = mix(hash_, static_cast<std::size_t>(e.den()));
    }
}

QExp Mono::exponent(AtomId a) const
{
    auto it = std::lower_bound(f_.begin(), f_.end(), a, [](const Factor& x, AtomId id) { return x.first < id; });
    if (it != f_.end() && it->first == a)
        return it->second;
    return QExp(0);
}

bool Mono::has_negative() const
{
    return std::any_of(f_.begin(), f_.end(), [](const Factor& x) { return x.second.is_negative(); });
}

Mono Mono::without(AtomId a) const
{
    Mono m;
    for (auto& x : f_)
        if (x.first != a)
            m.f_.push_back(x);
    m.finish();
    return m;
}

Mono Mono::scaled(AtomId a, QExp factor) const
{
    Mono m = *this;
    for (auto& x : m.f_)
        if (x.first == a)
            x.second = x.second * factor;
    m.finish();
    return m;
}

Mono operator*(const Mono& a, const Mono& b)
{
    if (a.f_.empty())
        return b;
    if (b.f_.empty())
        return a;
    Mono m;
    m.f_.reserve(a.f_.size() + b.f_.size());
    std::size_t i = 0, j = 0;
    while (i < a.f_.size() || j < b.f_.size()) {
        if (j == b.f_.size() || (i < a.f_.size() && a.f_[i].first < b.f_[j].first)) {
            m.f_.push_back(a.f_[i++]);
        } else if (i == a.f_.size() || b.f_[j].first < a.f_[i].first) {
            m.f_.push_back(b.f_[j++]);
        } else {
            QExp e = a.f_[i].second + b.f_[j].second;
            if (!e.is_zero())
                m.f_.emplace_back(a.f_[i].first, e);
            ++i;
            ++j;
        }
    }
    m.finish();
    return m;
}

Mono operator/(const Mono& a, const Mono& b) { return a * b.pow(QExp(-1)); }

Mono Mono::pow(QExp e) const
{
    Mono m;
    if (e.is_zero()) {
        m.finish();
        return m;
    }
    m.f_ = f_;
    for (auto& x : m.f_)
        x.second = x.second * e;
    m.finish();
    return m;
}

int compare_internal(const Mono& a, const Mono& b)
{
    if (auto c = a.degree() <=> b.degree(); c != 0)
        return c < 0 ? -1 : 1;
    const auto& fa = a.factors();
    const auto& fb = b.factors();
    std::size_t i = 0, j = 0;
    while (i < fa.size() || j < fb.size()) {
        if (j == fb.size() || (i < fa.size() && fa[i].first < fb[j].first))
            return fa[i].second.is_positive() ? 1 : -1;
        if (i == fa.size() || fb[j].first < fa[i].first)
            return fb[j].second.is_positive() ? -1 : 1;
        if (auto c = fa[i].second <=> fb[j].second; c != 0)
            return c < 0 ? -1 : 1;
        ++i;
        ++j;
    }
    return 0;
}

namespace {

bool term_greater(const Term& x, const Term& y) { return compare_internal(x.m, y.m) > 0; }

} // namespace

Poly::Poly(mpz_class c)
{
    if (c != 0)
        t_.push_back({Mono(), std::move(c)});
}

Poly Poly::monomial(Mono m, mpz_class c)
{
    Poly p;
    if (c != 0)
        p.t_.push_back({std::move(m), std::move(c)});
    return p;
}

Poly Poly::from_terms(std::vector<Term> terms)
{
    std::unordered_map<Mono, mpz_class, MonoHash> acc;
    acc.reserve(terms.size() * 2);
    for (auto& t : terms) {
        auto [it, fresh] = acc.try_emplace(std::move(t.m), t.c);
        if (!fresh)
            it->second += t.c;
    }
    Poly p;
    p.t_.reserve(acc.size());
    for (auto& [m, c] : acc)
        if (c != 0)
            p.t_.push_back({m, c});
    std::sort(p.t_.begin(), p.t_.end(), term_greater);
    return p;
}

Poly Poly::from_sorted(std::vector<Term> terms)
{
    Poly p;
    p.t_ = std::move(terms);
    return p;
}

mpz_class Poly::constant_value() const
{
    if (t_.empty())
        return 0;
    if (!is_constant())
        throw Error("polynomial is not constant");
    return t_[0].c;
}

std::size_t Poly::hash() const
{
    std::size_t h = t_.size();
    for (auto& t : t_) {
        h = mix(h, t.m.hash());
        h = mix(h, mpz_get_ui(t.c.get_mpz_t()));
    }
    return h;
}

Poly Poly::operator-() const
{
    Poly p = *this;
    for (auto& t : p.t_)
        t.c = -t.c;
    return p;
}

namespace {

Poly merge(const Poly& a, const Poly& b, bool subtract)
{
    const auto& x = a.terms();
    const auto& y = b.terms();
    std::vector<Term> out;
    out.reserve(x.size() + y.size());
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        int c;
        if (i == x.size())
            c = -1;
        else if (j == y.size())
            c = 1;
        else
            c = compare_internal(x[i].m, y[j].m);
        if (c > 0) {
            out.push_back(x[i++]);
        } else if (c < 0) {
            out.push_back({y[j].m, subtract ? mpz_class(-y[j].c) : y[j].c});
            ++j;
        } else {
            mpz_class s = subtract ? mpz_class(x[i].c - y[j].c) : mpz_class(x[i].c + y[j].c);
            if (s != 0)
                out.push_back({x[i].m, std::move(s)});
            ++i;
            ++j;
        }
    }
    return Poly::from_sorted(std::move(out));
}

} // namespace

Poly operator+(const Poly& a, const Poly& b)
{
    if (a.is_zero())
        return b;
    if (b.is_zero())
        return a;
    return merge(a, b, false);
}

Poly operator-(const Poly& a, const Poly& b)
{
    if (b.is_zero())
        return a;
    if (a.is_zero())
        return -b;
    return merge(a, b, true);
}

Poly operator*(const Poly& a, const Poly& b)
{
    if (a.is_zero() || b.is_zero())
        return Poly();
    if (a.size() == 1)
        return b.mul_term(a.t_[0].m, a.t_[0].c);
    if (b.size() == 1)
        return a.mul_term(b.t_[0].m, b.t_[0].c);
    std::unordered_map<Mono, mpz_class, MonoHash> acc;
    acc.reserve(a.size() * b.size());
    mpz_class prod;
    for (auto& x : a.t_)
        for (auto& y : b.t_) {
            prod = x.c * y.c;
            auto [it, fresh] = acc.try_emplace(x.m * y.m, prod);
            if (!fresh)
                it->second += prod;
        }
    Poly p;
    p.t_.reserve(acc.size());
    for (auto& [m, c] : acc)
        if (c != 0)
            p.t_.push_back({m, c});
    std::sort(p.t_.begin(), p.t_.end(), term_greater);
    return p;
}

Poly Poly::mul_term(const Mono& m, const mpz_class& c) const
{
    if (c == 0)
        return Poly();
    Poly p;
    p.t_.reserve(t_.size());
    for (auto& t : t_)
        p.t_.push_back({t.m * m, t.c * c});
    return p;
}

Poly Poly::scale(const mpz_class& c) const
{
    if (c == 0)
        return Poly();
    Poly p = *this;
    for (auto& t : p.t_)
        t.c *= c;
    return p;
}

Poly Poly::divexact_int(const mpz_class& c) const
{
    Poly p = *this;
    for (auto& t : p.t_) {
        if (!mpz_divisible_p(t.c.get_mpz_t(), c.get_mpz_t()))
            throw Error("inexact integer division");
        mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), c.get_mpz_t());
    }
    return p;
}

Poly Poly::pow(unsigned k) const
{
    Poly r(1), b = *this;
    while (k) {
        if (k & 1)
            r = r * b;
        k >>= 1;
        if (k)
            b = b * b;
    }
    return r;
}

bool operator==(const Poly& a, const Poly& b)
{
    if (a.t_.size() != b.t_.size())
        return false;
    for (std::size_t i = 0; i < a.t_.size(); ++i)
        if (a.t_[i].c != b.t_[i].c || !(a.t_[i].m == b.t_[i].m))
            return false;
    return true;
}

mpz_class Poly::content() const
{
    mpz_class g = 0;
    for (auto& t : t_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.get_mpz_t());
        if (g == 1)
            break;
    }
    return g;
}

Mono Poly::min_mono() const
{
    std::vector<Mono::Factor> acc;
    for (AtomId a : atoms()) {
        QExp m = min_exponent(a);
        if (!m.is_zero())
            acc.emplace_back(a, m);
    }
    return Mono::from_factors(std::move(acc));
}

std::vector<AtomId> Poly::atoms() const
{
    std::vector<AtomId> out;
    for (auto& t : t_)
        for (auto& f : t.m.factors())
            out.push_back(f.first);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool Poly::contains(AtomId a) const
{
    for (auto& t : t_)
        if (!t.m.exponent(a).is_zero())
            return true;
    return false;
}

QExp Poly::max_exponent(AtomId a) const
{
    QExp m(0);
    bool first = true;
    for (auto& t : t_) {
        QExp e = t.m.exponent(a);
        if (first || e > m)
            m = e;
        first = false;
    }
    return m;
}

QExp Poly::min_exponent(AtomId a) const
{
    QExp m(0);
    bool first = true;
    for (auto& t : t_) {
        QExp e = t.m.exponent(a);
        if (first || e < m)
            m = e;
        first = false;
    }
    return m;
}

std::int64_t Poly::exponent_lcm_den(AtomId a) const
{
    std::int64_t l = 1;
    for (auto& t : t_)
        l = lcm_den(l, t.m.exponent(a).den());
    return l;
}

std::vector<std::pair<QExp, Poly>> Poly::coefficients_in(AtomId a) const
{
    std::vector<std::pair<QExp, std::vector<Term>>> groups;
    for (auto& t : t_) {
        QExp e = t.m.exponent(a);
        auto it = std::find_if(groups.begin(), groups.end(), [&](auto& g) { return g.first == e; });
        if (it == groups.end()) {
            groups.emplace_back(e, std::vector<Term>{});
            it = std::prev(groups.end());
        }
        it->second.push_back({t.m.without(a), t.c});
    }
    std::vector<std::pair<QExp, Poly>> out;
    for (auto& [e, ts] : groups) {
        std::sort(ts.begin(), ts.end(), term_greater);
        out.emplace_back(e, Poly::from_sorted(std::move(ts)));
    }
    std::sort(out.begin(), out.end(), [](auto& x, auto& y) { return x.first > y.first; });
    return out;
}

Poly Poly::scale_exponent(AtomId a, QExp factor) const
{
    std::vector<Term> ts;
    ts.reserve(t_.size());
    for (auto& t : t_)
        ts.push_back({t.m.scaled(a, factor), t.c});
    return from_terms(std::move(ts));
}

} // namespace liereduce
