#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>

#include "liereduce/expr/errors.hpp"
#include "liereduce/expr/expr.hpp"

namespace liereduce {

struct SourceSpan {
    std::size_t start = 0;
    std::size_t end = 0;
};

class ParseError : public Error {
public:
    ParseError(const std::string& msg, SourceSpan span);
    SourceSpan span() const { return span_; }

private:
    SourceSpan span_;
};

class SyntaxError : public ParseError {
public:
    using ParseError::ParseError;
};

class UnknownIdentifier : public ParseError {
public:
    using ParseError::ParseError;
};

// Declared names for the parser and printer. Functions carry the argument
// used when the call parentheses are omitted (w' means w'(z)).
struct Names {
    std::set<std::string> symbols;
    std::set<std::string> parameters;
    std::set<std::string> dependents;
    std::map<std::string, Expr> functions;

    Names& symbol(const std::string& n);
    Names& parameter(const std::string& n);
    Names& dependent(const std::string& n);
    Names& function(const std::string& n, const Expr& default_arg);

    bool declared(const std::string& n) const;

    // t, x, y, z; dependent u; w(z); f, g, h (and indexed variants) of t;
    // the catalog parameters.
    static Names standard();
};

Expr parse(std::string_view text, const Names& names);
Expr parse(std::string_view text);

std::string print(const Expr& e, const Names& names);
std::string print(const Expr& e);
std::string print(const CanonicalForm& f, const Names& names);
std::string print(const CanonicalForm& f);

// Parses "p", "-p" or "p/q" into an exact rational.
mpq_class parse_rational(std::string_view text);

} // namespace liereduce
