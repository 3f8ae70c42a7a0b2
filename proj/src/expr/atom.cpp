#include "liereduce/expr/atom.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <unordered_map>

#include "liereduce/expr/canonical.hpp"
#include "liereduce/expr/errors.hpp"

namespace liereduce {

namespace {

constexpr std::size_t kCapacity = 1u << 20;

struct Registry {
    Registry() { slots.resize(kCapacity, nullptr); }
    std::mutex mu;
    std::vector<const AtomInfo*> slots;
    std::atomic<std::size_t> count{0};
    std::unordered_map<std::string, AtomId> by_key;
};

Registry& registry()
{
    static Registry* r = new Registry();
    return *r;
}

std::string structural(const Poly& p)
{
    std::string s;
    for (auto& t : p.terms()) {
        s += t.c.get_str(16);
        for (auto& [a, e] : t.m.factors()) {
            s += ':';
            s += std::to_string(a);
            s += '^';
            s += e.str();
        }
        s += ';';
    }
    return s;
}

std::string structural(const CanonicalForm& f) { return structural(f.num()) + "|" + structural(f.den()); }

void add_leaves(std::vector<AtomId>& out, const CanonicalForm& f)
{
    for (AtomId a : f.atoms()) {
        const auto& l = atom_info(a).leaves;
        out.insert(out.end(), l.begin(), l.end());
    }
}

AtomId intern(const std::string& skey, AtomInfo info)
{
    Registry& r = registry();
    std::lock_guard lock(r.mu);
    if (auto it = r.by_key.find(skey); it != r.by_key.end())
        return it->second;
    std::size_t id = r.count.load(std::memory_order_relaxed);
    if (id >= kCapacity)
        throw Error("atom table exhausted");
    info.leaves.push_back(static_cast<AtomId>(id));
    std::sort(info.leaves.begin(), info.leaves.end());
    info.leaves.erase(std::unique(info.leaves.begin(), info.leaves.end()), info.leaves.end());
    r.slots[id] = new AtomInfo(std::move(info));
    r.by_key.emplace(skey, static_cast<AtomId>(id));
    r.count.store(id + 1, std::memory_order_release);
    return static_cast<AtomId>(id);
}

} // namespace

const AtomInfo& atom_info(AtomId id)
{
    Registry& r = registry();
    if (id >= r.count.load(std::memory_order_acquire))
        throw Error("unknown atom id");
    return *r.slots[id];
}

AtomId symbol_atom(const std::string& name)
{
    AtomInfo i;
    i.kind = AtomKind::Symbol;
    i.name = name;
    i.key = name;
    return intern("S" + name, std::move(i));
}

AtomId parameter_atom(const std::string& name)
{
    AtomInfo i;
    i.kind = AtomKind::Parameter;
    i.name = name;
    i.key = name;
    return intern("P" + name, std::move(i));
}

AtomId jet_atom(const std::string& dependent, std::vector<std::string> index)
{
    std::sort(index.begin(), index.end());
    AtomInfo i;
    i.kind = AtomKind::Jet;
    i.name = dependent;
    i.key = dependent;
    if (!index.empty()) {
        i.key += '_';
        for (auto& v : index)
            i.key += v;
    }
    std::string sk = "J" + dependent;
    for (auto& v : index)
        sk += "," + v;
    i.index = std::move(index);
    return intern(sk, std::move(i));
}

AtomId function_atom(const std::string& name, int order, const CanonicalForm& arg)
{
    if (order < 0)
        throw Error("negative derivative order");
    AtomInfo i;
    i.kind = AtomKind::Function;
    i.name = name;
    i.order = order;
    i.arg = std::make_shared<const CanonicalForm>(arg);
    i.key = name + std::string(static_cast<std::size_t>(order), '\'') + "(" + arg.key() + ")";
    add_leaves(i.leaves, arg);
    return intern("F" + name + "#" + std::to_string(order) + "#" + structural(arg), std::move(i));
}

AtomId exp_atom(const CanonicalForm& key)
{
    AtomInfo i;
    i.kind = AtomKind::Exp;
    i.arg = std::make_shared<const CanonicalForm>(key);
    i.key = "exp(" + key.key() + ")";
    add_leaves(i.leaves, key);
    return intern("E" + structural(key), std::move(i));
}

AtomId ln_atom(const CanonicalForm& arg)
{
    AtomInfo i;
    i.kind = AtomKind::Ln;
    i.arg = std::make_shared<const CanonicalForm>(arg);
    i.key = "ln(" + arg.key() + ")";
    add_leaves(i.leaves, arg);
    return intern("L" + structural(arg), std::move(i));
}

AtomId lambertw_atom(const CanonicalForm& arg)
{
    AtomInfo i;
    i.kind = AtomKind::LambertW;
    i.arg = std::make_shared<const CanonicalForm>(arg);
    i.key = "LambertW(" + arg.key() + ")";
    add_leaves(i.leaves, arg);
    return intern("W" + structural(arg), std::move(i));
}

AtomId radical_atom(const Poly& base)
{
    AtomInfo i;
    i.kind = AtomKind::Radical;
    CanonicalForm f = CanonicalForm::from_poly(base);
    i.arg = std::make_shared<const CanonicalForm>(f);
    i.key = "(" + f.key() + ")";
    add_leaves(i.leaves, f);
    return intern("R" + structural(base), std::move(i));
}

AtomId surd_atom(const mpz_class& base)
{
    AtomInfo i;
    i.kind = AtomKind::Surd;
    i.integer = base;
    i.key = base.get_str();
    return intern("N" + base.get_str(), std::move(i));
}

int compare_atom_names(AtomId a, AtomId b)
{
    if (a == b)
        return 0;
    const auto& x = atom_info(a);
    const auto& y = atom_info(b);
    if (int c = x.key.compare(y.key); c != 0)
        return c < 0 ? -1 : 1;
    if (x.kind != y.kind)
        return x.kind < y.kind ? -1 : 1;
    return a < b ? -1 : 1;
}

namespace {

std::vector<Mono::Factor> name_sorted(const Mono& m)
{
    std::vector<Mono::Factor> f = m.factors();
    std::sort(f.begin(), f.end(), [](const Mono::Factor& x, const Mono::Factor& y) {
        return compare_atom_names(x.first, y.first) < 0;
    });
    return f;
}

} // namespace

int compare_names(const Mono& a, const Mono& b)
{
    if (auto c = a.degree() <=> b.degree(); c != 0)
        return c < 0 ? -1 : 1;
    auto fa = name_sorted(a), fb = name_sorted(b);
    std::size_t i = 0, j = 0;
    while (i < fa.size() || j < fb.size()) {
        int order;
        if (i == fa.size())
            order = 1;
        else if (j == fb.size())
            order = -1;
        else
            order = compare_atom_names(fa[i].first, fb[j].first);
        if (order < 0)
            return fa[i].second.is_positive() ? 1 : -1;
        if (order > 0)
            return fb[j].second.is_positive() ? -1 : 1;
        if (auto c = fa[i].second <=> fb[j].second; c != 0)
            return c < 0 ? -1 : 1;
        ++i;
        ++j;
    }
    return 0;
}

} // namespace liereduce
