#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "liereduce/expr/canonical.hpp"

namespace liereduce {

enum class NodeKind { Rational, Symbol, Parameter, Function, Jet, Sum, Product, Power, Apply };
enum class Builtin { Exp, Ln, LambertW };

struct Node;

// Immutable expression tree. The canonical form is computed on demand and
// cached inside the node.
class Expr {
public:
    Expr();
    Expr(long v);
    Expr(const mpq_class& q);

    static Expr symbol(const std::string& name);
    static Expr parameter(const std::string& name);
    static Expr function(const std::string& name, int order, Expr arg);
    static Expr jet(const std::string& dependent, std::vector<std::string> index = {});
    static Expr sum(std::vector<Expr> terms);
    static Expr product(std::vector<Expr> factors);
    static Expr power(Expr base, const mpq_class& exponent);
    // Rational exponents give a power node; anything else becomes exp(b*ln(a)).
    static Expr power(Expr base, const Expr& exponent);
    static Expr apply(Builtin fn, Expr arg);
    static Expr from_form(const CanonicalForm& f);

    NodeKind kind() const;
    const mpq_class& value() const;
    const std::string& name() const;
    int order() const;
    const std::vector<std::string>& index() const;
    const std::vector<Expr>& children() const;
    const mpq_class& exponent() const;
    Builtin builtin() const;

    const CanonicalForm& canonical() const;
    const Node* node() const { return n_.get(); }

    friend Expr operator+(const Expr& a, const Expr& b) { return sum({a, b}); }
    friend Expr operator-(const Expr& a, const Expr& b);
    friend Expr operator*(const Expr& a, const Expr& b) { return product({a, b}); }
    friend Expr operator/(const Expr& a, const Expr& b);
    Expr operator-() const;

private:
    explicit Expr(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
    std::shared_ptr<const Node> n_;
};

Expr exp(const Expr& a);
Expr ln(const Expr& a);
Expr lambertw(const Expr& a);

CanonicalForm normalize(const Expr& e);
bool is_zero(const Expr& e);
bool equivalent(const Expr& a, const Expr& b);

// Bindings keyed by symbol, parameter, jet or function-atom expressions.
using ExprBindings = std::vector<std::pair<Expr, Expr>>;
Expr substitute(const Expr& e, const ExprBindings& bindings);
AtomId atom_of(const Expr& e);

// Exponent vector over the requested atoms, in the order given.
using MonomialKey = std::vector<long>;
std::map<MonomialKey, Expr> collect(const Expr& e, const std::vector<Expr>& atoms);
std::map<MonomialKey, CanonicalForm> collect_form(const CanonicalForm& f, const std::vector<AtomId>& atoms);

} // namespace liereduce
