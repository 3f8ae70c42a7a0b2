#include "liereduce/parser/parser.hpp"

#include <cctype>
#include <vector>

namespace liereduce {

ParseError::ParseError(const std::string& msg, SourceSpan span)
    : Error(msg + " at " + std::to_string(span.start) + ".." + std::to_string(span.end)), span_(span)
{
}

Names& Names::symbol(const std::string& n)
{
    symbols.insert(n);
    return *this;
}

Names& Names::parameter(const std::string& n)
{
    parameters.insert(n);
    return *this;
}

Names& Names::dependent(const std::string& n)
{
    dependents.insert(n);
    return *this;
}

Names& Names::function(const std::string& n, const Expr& default_arg)
{
    functions.insert_or_assign(n, default_arg);
    return *this;
}

bool Names::declared(const std::string& n) const
{
    return symbols.count(n) || parameters.count(n) || dependents.count(n) || functions.count(n);
}

Names Names::standard()
{
    Names n;
    for (const char* s : {"t", "x", "y", "z"})
        n.symbol(s);
    n.dependent("u");
    n.function("w", Expr::symbol("z"));
    for (const char* f : {"f", "g", "h", "f1", "f2", "f3", "g1", "g2", "g3", "h1", "h2", "h3"})
        n.function(f, Expr::symbol("t"));
    for (const char* p : {"k0", "k1", "c1", "c2", "c3", "A", "B", "C1", "C2", "alpha", "beta", "epsilon", "α", "β",
                          "ε"})
        n.parameter(p);
    return n;
}

namespace {

enum class Tok { Number, Ident, LParen, RParen, Comma, Plus, Minus, Star, Slash, Caret, Prime, End };

struct Token {
    Tok kind;
    std::string text;
    SourceSpan span;
};

bool ident_start(unsigned char c) { return std::isalpha(c) || c == '_' || c >= 0x80; }
bool ident_char(unsigned char c) { return std::isalnum(c) || c == '_' || c >= 0x80; }

std::vector<Token> lex(std::string_view s)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        unsigned char c = static_cast<unsigned char>(s[i]);
        if (std::isspace(c)) {
            ++i;
            continue;
        }
        std::size_t st = i;
        if (std::isdigit(c)) {
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
                ++i;
            if (i < s.size() && (s[i] == '.' || s[i] == 'e' || s[i] == 'E'))
                throw SyntaxError("floating-point literals are not allowed", {st, i + 1});
            out.push_back({Tok::Number, std::string(s.substr(st, i - st)), {st, i}});
            continue;
        }
        if (ident_start(c)) {
            while (i < s.size() && ident_char(static_cast<unsigned char>(s[i])))
                ++i;
            out.push_back({Tok::Ident, std::string(s.substr(st, i - st)), {st, i}});
            continue;
        }
        Tok k;
        switch (c) {
        case '(': k = Tok::LParen; break;
        case ')': k = Tok::RParen; break;
        case ',': k = Tok::Comma; break;
        case '+': k = Tok::Plus; break;
        case '-': k = Tok::Minus; break;
        case '*': k = Tok::Star; break;
        case '/': k = Tok::Slash; break;
        case '^': k = Tok::Caret; break;
        case '\'': k = Tok::Prime; break;
        default: {
            std::size_t len = 1;
            if (c >= 0xC0)
                while (st + len < s.size() && (static_cast<unsigned char>(s[st + len]) & 0xC0) == 0x80)
                    ++len;
            throw SyntaxError("unexpected character '" + std::string(s.substr(st, len)) + "'", {st, st + len});
        }
        }
        ++i;
        out.push_back({k, std::string(1, static_cast<char>(c)), {st, i}});
    }
    out.push_back({Tok::End, "", {s.size(), s.size()}});
    return out;
}

constexpr int kSum = 10;
constexpr int kProduct = 20;
constexpr int kUnary = 25;
constexpr int kPower = 30;

class Parser {
public:
    Parser(std::string_view text, const Names& names) : toks_(lex(text)), names_(names) {}

    Expr run()
    {
        Expr e = expr(0);
        if (peek().kind != Tok::End)
            fail_here(peek().kind == Tok::Prime ? "prime not allowed here" : "unexpected token '" + peek().text + "'");
        return e;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_++]; }

    [[noreturn]] void fail_here(const std::string& msg) const { throw SyntaxError(msg, peek().span); }

    void expect(Tok k, const char* what)
    {
        if (peek().kind != k)
            fail_here(std::string("expected ") + what);
        ++pos_;
    }

    static int infix_prec(Tok k)
    {
        switch (k) {
        case Tok::Plus:
        case Tok::Minus:
            return kSum;
        case Tok::Star:
        case Tok::Slash:
            return kProduct;
        case Tok::Caret:
            return kPower;
        default:
            return -1;
        }
    }

    Expr expr(int min_prec)
    {
        Expr lhs = prefix();
        for (;;) {
            Tok k = peek().kind;
            if (k == Tok::Prime)
                fail_here("prime not allowed here");
            int p = infix_prec(k);
            if (p < 0 || p < min_prec)
                return lhs;
            ++pos_;
            if (k == Tok::Caret) {
                Expr rhs = expr(kPower);
                lhs = Expr::power(lhs, rhs);
            } else {
                Expr rhs = expr(p + 1);
                switch (k) {
                case Tok::Plus: lhs = lhs + rhs; break;
                case Tok::Minus: lhs = lhs - rhs; break;
                case Tok::Star: lhs = lhs * rhs; break;
                default:
                    if (rhs.kind() == NodeKind::Rational && rhs.value() == 0)
                        throw SyntaxError("division by zero", toks_[pos_ - 1].span);
                    lhs = lhs / rhs;
                    break;
                }
            }
        }
    }

    Expr prefix()
    {
        const Token& t = peek();
        switch (t.kind) {
        case Tok::Number:
            ++pos_;
            return Expr(mpq_class(mpz_class(t.text)));
        case Tok::Minus:
            ++pos_;
            return -expr(kUnary);
        case Tok::Plus:
            ++pos_;
            return expr(kUnary);
        case Tok::LParen: {
            ++pos_;
            Expr e = expr(0);
            expect(Tok::RParen, "')'");
            return e;
        }
        case Tok::Ident:
            return identifier();
        case Tok::Prime:
            fail_here("prime not allowed here");
        case Tok::End:
            fail_here("unexpected end of input");
        default:
            fail_here("unexpected token '" + t.text + "'");
        }
    }

    Expr identifier()
    {
        Token id = next();
        int primes = 0;
        SourceSpan span = id.span;
        while (peek().kind == Tok::Prime && peek().span.start == span.end) {
            span.end = peek().span.end;
            ++primes;
            ++pos_;
        }
        auto fn = names_.functions.find(id.text);
        if (peek().kind == Tok::LParen) {
            if (fn != names_.functions.end()) {
                ++pos_;
                Expr arg = expr(0);
                expect(Tok::RParen, "')'");
                return Expr::function(id.text, primes, arg);
            }
            if (primes > 0)
                throw UnknownIdentifier("primes on undeclared function '" + id.text + "'", span);
            if (id.text == "D" && !names_.declared("D"))
                return jet(span);
            Builtin b;
            if (id.text == "exp")
                b = Builtin::Exp;
            else if (id.text == "ln" || id.text == "log")
                b = Builtin::Ln;
            else if (id.text == "W" || id.text == "LambertW" || id.text == "ProductLog")
                b = Builtin::LambertW;
            else if (names_.declared(id.text))
                throw SyntaxError("'" + id.text + "' is not a function", span);
            else
                throw UnknownIdentifier("unknown function '" + id.text + "'", span);
            ++pos_;
            Expr arg = expr(0);
            expect(Tok::RParen, "')'");
            return Expr::apply(b, arg);
        }
        if (fn != names_.functions.end())
            return Expr::function(id.text, primes, fn->second);
        if (primes > 0) {
            if (names_.declared(id.text))
                throw SyntaxError("prime not allowed on '" + id.text + "'", span);
            throw UnknownIdentifier("unknown function '" + id.text + "'", span);
        }
        if (names_.symbols.count(id.text))
            return Expr::symbol(id.text);
        if (names_.parameters.count(id.text))
            return Expr::parameter(id.text);
        if (names_.dependents.count(id.text))
            return Expr::jet(id.text);
        throw UnknownIdentifier("unknown identifier '" + id.text + "'", span);
    }

    Expr jet(SourceSpan span)
    {
        ++pos_;
        if (peek().kind != Tok::Ident || !names_.dependents.count(peek().text))
            fail_here("D expects a dependent variable");
        std::string dep = next().text;
        std::vector<std::string> index;
        while (peek().kind == Tok::Comma) {
            ++pos_;
            if (peek().kind != Tok::Ident || !names_.symbols.count(peek().text))
                fail_here("D expects independent variables");
            index.push_back(next().text);
        }
        span.end = peek().span.end;
        expect(Tok::RParen, "')'");
        if (index.empty())
            throw SyntaxError("D needs at least one variable", span);
        return Expr::jet(dep, std::move(index));
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    const Names& names_;
};

// Printer

struct Out {
    std::string s;
    int prec;
};

std::string paren(const Out& o, int need) { return o.prec < need ? "(" + o.s + ")" : o.s; }

class Printer {
public:
    explicit Printer(const Names& n) : names_(n) {}

    Out render(const Expr& e) const
    {
        switch (e.kind()) {
        case NodeKind::Rational: {
            const mpq_class& q = e.value();
            if (q < 0)
                return {q.get_str(), kUnary};
            return {q.get_str(), q.get_den() == 1 ? 40 : kProduct};
        }
        case NodeKind::Symbol:
        case NodeKind::Parameter:
            return {e.name(), 40};
        case NodeKind::Jet: {
            if (e.index().empty())
                return {e.name(), 40};
            std::string s = "D(" + e.name();
            for (auto& v : e.index())
                s += "," + v;
            return {s + ")", 40};
        }
        case NodeKind::Function: {
            std::string s = e.name() + std::string(static_cast<std::size_t>(e.order()), '\'');
            auto it = names_.functions.find(e.name());
            if (it == names_.functions.end() || !equivalent(it->second, e.children()[0]))
                s += "(" + render(e.children()[0]).s + ")";
            return {s, 40};
        }
        case NodeKind::Apply: {
            const char* f = "exp";
            if (e.builtin() == Builtin::Ln)
                f = "ln";
            else if (e.builtin() == Builtin::LambertW)
                f = names_.declared("W") ? "LambertW" : "W";
            return {std::string(f) + "(" + render(e.children()[0]).s + ")", 40};
        }
        case NodeKind::Power:
            if (e.exponent() < 0) {
                Out d = power(e.children()[0], -e.exponent());
                return {"1/" + paren(d, kProduct + 1), kProduct};
            }
            return power(e.children()[0], e.exponent());
        case NodeKind::Product:
            return product(e);
        case NodeKind::Sum:
            return sum(e);
        }
        return {"?", 40};
    }

private:
    Out power(const Expr& base, const mpq_class& q) const
    {
        if (q == 1)
            return render(base);
        std::string ex = q.get_den() == 1 && q > 0 ? q.get_str() : "(" + q.get_str() + ")";
        return {paren(render(base), kPower + 1) + "^" + ex, kPower};
    }

    static bool negative(const Expr& t)
    {
        if (t.kind() == NodeKind::Rational)
            return t.value() < 0;
        return t.kind() == NodeKind::Product && t.children()[0].kind() == NodeKind::Rational &&
               t.children()[0].value() < 0;
    }

    Out sum(const Expr& e) const
    {
        std::string s;
        bool first = true;
        for (auto& t : e.children()) {
            bool neg = negative(t);
            Out o = render(neg ? -t : t);
            if (first)
                s = neg ? "-" + paren(o, kUnary) : o.s;
            else
                s += (neg ? " - " : " + ") + paren(o, kSum + 1);
            first = false;
        }
        return {s, kSum};
    }

    Out product(const Expr& e) const
    {
        mpq_class c = 1;
        std::vector<std::string> num, den;
        for (auto& f : e.children()) {
            if (f.kind() == NodeKind::Rational) {
                c *= f.value();
            } else if (f.kind() == NodeKind::Power && f.exponent() < 0) {
                den.push_back(paren(power(f.children()[0], -f.exponent()), kProduct + 1));
            } else {
                num.push_back(paren(render(f), kProduct + 1));
            }
        }
        bool neg = c < 0;
        if (neg)
            c = -c;
        if (c.get_num() != 1 || num.empty())
            num.insert(num.begin(), c.get_num().get_str());
        if (c.get_den() != 1)
            den.insert(den.begin(), c.get_den().get_str());
        std::string s;
        for (std::size_t i = 0; i < num.size(); ++i)
            s += (i ? "*" : "") + num[i];
        if (!den.empty()) {
            std::string d;
            for (std::size_t i = 0; i < den.size(); ++i)
                d += (i ? "*" : "") + den[i];
            s += "/" + (den.size() > 1 ? "(" + d + ")" : d);
        }
        if (neg)
            return {"-" + s, kUnary};
        return {s, kProduct};
    }

    const Names& names_;
};

} // namespace

Expr parse(std::string_view text, const Names& names) { return Parser(text, names).run(); }

Expr parse(std::string_view text)
{
    static const Names standard = Names::standard();
    return parse(text, standard);
}

std::string print(const CanonicalForm& f, const Names& names)
{
    return Printer(names).render(Expr::from_form(f)).s;
}

std::string print(const CanonicalForm& f)
{
    static const Names standard = Names::standard();
    return print(f, standard);
}

std::string print(const Expr& e, const Names& names) { return print(e.canonical(), names); }

std::string print(const Expr& e) { return print(e.canonical()); }

mpq_class parse_rational(std::string_view text)
{
    std::string s(text);
    mpq_class q;
    if (s.empty() || q.set_str(s, 10) != 0)
        throw SyntaxError("not a rational literal: '" + s + "'", {0, text.size()});
    if (q.get_den() == 0)
        throw SyntaxError("zero denominator in '" + s + "'", {0, text.size()});
    q.canonicalize();
    return q;
}

} // namespace liereduce
