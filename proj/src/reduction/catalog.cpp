#include "liereduce/reduction/catalog.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "catalog_data.hpp"

namespace liereduce {

CatalogError::CatalogError(const std::string& msg, std::size_t line)
    : Error("catalog line " + std::to_string(line) + ": " + msg), line_(line)
{
}

std::string to_string(Outcome o)
{
    switch (o) {
    case Outcome::ReducedODE:
        return "ReducedODE";
    case Outcome::Degenerate:
        return "Degenerate";
    case Outcome::TransversalityFailure:
        return "TransversalityFailure";
    }
    return "?";
}

namespace {

std::string trim(std::string_view s)
{
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a])))
        ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1])))
        --b;
    return std::string(s.substr(a, b - a));
}

std::vector<std::string> split(std::string_view s, char sep)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    int depth = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        char c = i < s.size() ? s[i] : sep;
        if (c == '(' || c == '{')
            ++depth;
        else if (c == ')' || c == '}')
            --depth;
        if (c == sep && depth == 0) {
            std::string part = trim(s.substr(start, i - start));
            if (!part.empty())
                out.push_back(part);
            start = i + 1;
        }
    }
    return out;
}

struct RawEntry {
    std::string key;
    std::string value;
    std::size_t line;
};

struct RawCase {
    std::string name;
    std::size_t line;
    std::vector<RawEntry> entries;
};

ReductionCase build_case(const RawCase& rc)
{
    ReductionCase c;
    c.name = rc.name;
    c.names = Names::standard();
    bool have_z = false;
    bool transversality = false;

    for (auto& e : rc.entries) {
        c.raw.emplace_back(e.key, e.value);
        if (e.key == "params") {
            for (auto& p : split(e.value, ',')) {
                c.params.push_back(p);
                c.names.parameter(p);
            }
        } else if (e.key == "let") {
            auto eq = e.value.find('=');
            if (eq == std::string::npos)
                throw CatalogError("let needs NAME = expr", e.line);
            c.names.parameter(trim(std::string_view(e.value).substr(0, eq)));
        }
    }

    auto parse_at = [&](const std::string& text, std::size_t line) {
        try {
            return parse(text, c.names);
        } catch (const ParseError& err) {
            throw CatalogError("case " + c.name + ": " + err.what() + " in '" + text + "'", line);
        }
    };

    for (auto& e : rc.entries) {
        const std::string& k = e.key;
        const std::string& v = e.value;
        if (k == "params") {
        } else if (k == "subalgebra") {
            c.generator_text = split(v, ';');
            for (auto& g : c.generator_text) {
                try {
                    parse_generator(g, c.names);
                } catch (const Error& err) {
                    throw CatalogError("case " + c.name + ": " + err.what(), e.line);
                }
            }
        } else if (k == "let") {
            auto eq = v.find('=');
            c.lets.emplace_back(trim(std::string_view(v).substr(0, eq)), parse_at(v.substr(eq + 1), e.line));
        } else if (k == "fixed") {
            auto eq = v.find('=');
            if (eq == std::string::npos)
                throw CatalogError("fixed needs NAME = rational", e.line);
            try {
                c.fixed[trim(std::string_view(v).substr(0, eq))] = parse_rational(trim(std::string_view(v).substr(eq + 1)));
            } catch (const Error& err) {
                throw CatalogError(err.what(), e.line);
            }
        } else if (k == "constraint") {
            auto ne = v.find("!=");
            if (ne == std::string::npos)
                throw CatalogError("constraint needs 'expr != 0'", e.line);
            Expr lhs = parse_at(v.substr(0, ne), e.line);
            Expr rhs = parse_at(v.substr(ne + 2), e.line);
            c.constraints.push_back(lhs - rhs);
            c.constraint_text.push_back(v);
        } else if (k == "z") {
            c.z = parse_at(v, e.line);
            if (c.z.canonical().depends_on(jet_atom("u", {})))
                throw CatalogError("case " + c.name + ": z depends on u", e.line);
            have_z = true;
        } else if (k == "u") {
            c.u = parse_at(v, e.line);
        } else if (k == "w") {
            c.w_invariant = parse_at(v, e.line);
        } else if (k == "inverse") {
            auto eq = v.find('=');
            if (eq == std::string::npos)
                throw CatalogError("inverse needs VAR = expr", e.line);
            std::string var = trim(std::string_view(v).substr(0, eq));
            if (var != "t" && var != "x" && var != "y")
                throw CatalogError("inverse must solve for t, x or y", e.line);
            c.inverse = std::make_pair(var, parse_at(v.substr(eq + 1), e.line));
        } else if (k == "reduced") {
            c.reduced = parse_at(v, e.line);
            c.expected = Outcome::ReducedODE;
        } else if (k == "degenerate") {
            c.degenerate = parse_at(v, e.line);
            c.expected = Outcome::Degenerate;
        } else if (k == "transversality") {
            transversality = true;
        } else if (k == "solution") {
            c.solution = parse_at(v, e.line);
        } else if (k == "symmetry") {
            auto parts = split(v, ';');
            if (parts.size() != 2)
                throw CatalogError("symmetry needs 'xi ; phi'", e.line);
            c.symmetries.push_back({parse_at(parts[0], e.line), parse_at(parts[1], e.line), v});
        } else if (k == "sample") {
            std::map<std::string, mpq_class> s;
            for (auto& a : split(v, ',')) {
                auto eq = a.find('=');
                if (eq == std::string::npos)
                    throw CatalogError("sample needs NAME=value pairs", e.line);
                try {
                    s[trim(std::string_view(a).substr(0, eq))] = parse_rational(trim(std::string_view(a).substr(eq + 1)));
                } catch (const Error& err) {
                    throw CatalogError(err.what(), e.line);
                }
            }
            c.samples.push_back(std::move(s));
        } else if (k == "notes") {
            c.notes = c.notes.empty() ? v : c.notes + " " + v;
        } else {
            throw CatalogError("unknown key '" + k + "'", e.line);
        }
    }
    if (transversality)
        c.expected = Outcome::TransversalityFailure;
    if (!have_z)
        throw CatalogError("case " + c.name + " has no z", rc.line);
    if (c.generator_text.size() != 2)
        throw CatalogError("case " + c.name + " needs two generators", rc.line);
    if (c.expected != Outcome::TransversalityFailure && !c.u)
        throw CatalogError("case " + c.name + " has no ansatz", rc.line);
    if (c.expected == Outcome::TransversalityFailure && !c.w_invariant)
        throw CatalogError("case " + c.name + " needs the invariant w", rc.line);
    if (c.u && !c.inverse)
        throw CatalogError("case " + c.name + " has no inverse", rc.line);
    if (c.expected == Outcome::ReducedODE && !c.reduced)
        throw CatalogError("case " + c.name + " has no expected outcome", rc.line);
    return c;
}

} // namespace

VectorField parse_generator(std::string_view text, const Names& names)
{
    std::optional<VectorField> total;
    for (auto& term : split(text, '+')) {
        std::string kind;
        Expr arg(0);
        std::string prefix;
        if (term.back() == '}') {
            auto open = term.rfind('{');
            if (open == std::string::npos || open == 0)
                throw Error("malformed generator term '" + term + "'");
            kind = term.substr(open - 1, 1);
            if (open >= 2 && std::isalnum(static_cast<unsigned char>(term[open - 2])))
                throw Error("unknown generator in '" + term + "'");
            arg = parse(term.substr(open + 1, term.size() - open - 2), names);
            prefix = trim(std::string_view(term).substr(0, open - 1));
        } else if (term.size() >= 2 && term.compare(term.size() - 2, 2, "v0") == 0) {
            kind = "v0";
            prefix = trim(std::string_view(term).substr(0, term.size() - 2));
        } else {
            throw Error("malformed generator term '" + term + "'");
        }
        Expr coef(1);
        if (prefix == "-") {
            coef = Expr(-1);
        } else if (!prefix.empty()) {
            if (prefix.back() != '*')
                throw Error("generator coefficient must end with '*' in '" + term + "'");
            coef = parse(prefix.substr(0, prefix.size() - 1), names);
        }
        VectorField g = generator(kind, arg).scaled(coef);
        total = total ? *total + g : g;
    }
    if (!total)
        throw Error("empty generator");
    return *total;
}

ParamMap ReductionCase::resolve(const ParamMap& given) const
{
    ParamMap out = given;
    for (auto& [name, q] : fixed) {
        auto it = given.find(name);
        if (it != given.end() && !equivalent(it->second, Expr(q)))
            throw ConstraintViolated(this->name + " requires " + name + " = " + q.get_str());
        out[name] = Expr(q);
    }
    for (auto& [name, v] : out) {
        bool known = false;
        for (auto& p : params)
            known = known || p == name;
        if (!known)
            throw ConstraintViolated(this->name + " has no parameter " + name);
    }
    return out;
}

Expr ReductionCase::bind(const Expr& e, const ParamMap& resolved) const
{
    Bindings lb;
    for (auto& [name, v] : lets)
        lb.emplace(parameter_atom(name), v.canonical());
    CanonicalForm f = substitute_fixpoint(e.canonical(), lb);
    Bindings pb;
    for (auto& [name, v] : resolved)
        pb.emplace(parameter_atom(name), v.canonical());
    return Expr::from_form(substitute(f, pb));
}

void ReductionCase::check_constraints(const ParamMap& resolved) const
{
    for (std::size_t i = 0; i < constraints.size(); ++i)
        if (is_zero(bind(constraints[i], resolved)))
            throw ConstraintViolated(name + ": constraint " + constraint_text[i] + " fails");
}

std::vector<VectorField> ReductionCase::generators(const ParamMap& resolved) const
{
    std::vector<VectorField> out;
    for (auto& g : generator_text) {
        VectorField v = parse_generator(g, names);
        std::vector<Expr> xi;
        for (auto& c : v.xi())
            xi.push_back(bind(c, resolved));
        out.emplace_back(v.frame(), xi, bind(v.phi(), resolved));
    }
    return out;
}

Catalog Catalog::parse(std::string_view text)
{
    Catalog cat;
    cat.text_ = std::string(text);
    std::vector<RawCase> raw;
    std::istringstream in(cat.text_);
    std::string line;
    std::size_t lineno = 0;
    RawEntry* last = nullptr;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#')
            continue;
        bool continuation = std::isspace(static_cast<unsigned char>(line[0]));
        if (continuation) {
            if (!last)
                throw CatalogError("continuation without a key", lineno);
            last->value += " " + t;
            continue;
        }
        if (t.front() == '[') {
            if (t.back() != ']' || t.rfind("[case ", 0) != 0)
                throw CatalogError("malformed header '" + t + "'", lineno);
            std::string name = trim(std::string_view(t).substr(6, t.size() - 7));
            for (auto& r : raw)
                if (r.name == name)
                    throw CatalogError("duplicate case " + name, lineno);
            raw.push_back({name, lineno, {}});
            last = nullptr;
            continue;
        }
        if (raw.empty())
            throw CatalogError("entry outside a case", lineno);
        std::size_t i = 0;
        while (i < t.size() && (std::isalnum(static_cast<unsigned char>(t[i])) || t[i] == '_'))
            ++i;
        std::string key = t.substr(0, i);
        std::string rest = trim(std::string_view(t).substr(i));
        if (key.empty())
            throw CatalogError("expected a key in '" + t + "'", lineno);
        std::string value;
        if (rest.empty()) {
            value.clear();
        } else if (rest[0] == ':') {
            value = trim(std::string_view(rest).substr(1));
        } else if (rest[0] == '=' && (key == "z" || key == "u" || key == "w")) {
            value = trim(std::string_view(rest).substr(1));
        } else {
            throw CatalogError("expected ':' after '" + key + "'", lineno);
        }
        raw.back().entries.push_back({key, value, lineno});
        last = &raw.back().entries.back();
    }
    for (auto& r : raw)
        cat.cases_.push_back(build_case(r));
    return cat;
}

Catalog Catalog::load(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot read catalog " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

const Catalog& Catalog::embedded()
{
    static const Catalog cat = parse(embedded_catalog_text());
    return cat;
}

const ReductionCase& Catalog::find(const std::string& name) const
{
    for (auto& c : cases_)
        if (c.name == name)
            return c;
    throw UnknownCase("unknown case " + name);
}

const std::string& embedded_catalog_text()
{
    static const std::string text(detail::kEmbeddedCatalog);
    return text;
}

} // namespace liereduce
