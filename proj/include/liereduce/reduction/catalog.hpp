#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "liereduce/expr/errors.hpp"
#include "liereduce/expr/expr.hpp"
#include "liereduce/lie/lie.hpp"
#include "liereduce/parser/parser.hpp"

namespace liereduce {

class CatalogError : public Error {
public:
    CatalogError(const std::string& msg, std::size_t line);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

class UnknownCase : public Error {
public:
    using Error::Error;
};

class ConstraintViolated : public Error {
public:
    using Error::Error;
};

enum class Outcome { ReducedODE, Degenerate, TransversalityFailure };

std::string to_string(Outcome o);

// Parameter values: rationals or expressions in other parameters.
using ParamMap = std::map<std::string, Expr>;

struct OdeSymmetry {
    Expr xi;
    Expr phi;
    std::string text;
};

struct ReductionCase {
    std::string name;
    std::vector<std::string> generator_text;
    std::vector<std::string> params;
    std::vector<std::pair<std::string, Expr>> lets;
    std::map<std::string, mpq_class> fixed;
    std::vector<Expr> constraints;
    std::vector<std::string> constraint_text;
    Expr z;
    std::optional<Expr> u;
    std::optional<Expr> w_invariant;
    // Base variable and its expression in z and the remaining base variables.
    std::optional<std::pair<std::string, Expr>> inverse;
    Outcome expected = Outcome::ReducedODE;
    std::optional<Expr> reduced;
    std::optional<Expr> degenerate;
    std::optional<Expr> solution;
    std::vector<OdeSymmetry> symmetries;
    std::vector<std::map<std::string, mpq_class>> samples;
    std::string notes;
    Names names;
    // Raw key/value lines in file order, for display.
    std::vector<std::pair<std::string, std::string>> raw;

    // Fixed values merged with the supplied ones; a conflicting value for a
    // fixed parameter is a constraint violation.
    ParamMap resolve(const ParamMap& given) const;
    // Substitutes let-bindings and then parameter values.
    Expr bind(const Expr& e, const ParamMap& resolved) const;
    // Throws ConstraintViolated when a constraint evaluates to zero.
    void check_constraints(const ParamMap& resolved) const;
    std::vector<VectorField> generators(const ParamMap& resolved) const;
};

// Parses "k0*v0 + x{g} + y{h} + z{f}" into a ZK vector field.
VectorField parse_generator(std::string_view text, const Names& names);

class Catalog {
public:
    static Catalog parse(std::string_view text);
    static Catalog load(const std::string& path);
    // The catalog shipped with the library.
    static const Catalog& embedded();

    const std::vector<ReductionCase>& cases() const { return cases_; }
    const ReductionCase& find(const std::string& name) const;
    const std::string& text() const { return text_; }

private:
    std::vector<ReductionCase> cases_;
    std::string text_;
};

const std::string& embedded_catalog_text();

} // namespace liereduce
