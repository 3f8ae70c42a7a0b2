#pragma once

#include "liereduce/expr/expr.hpp"

namespace liereduce {

struct DiffOptions {
    // Treat opaque-function atoms as independent coordinates (partial
    // derivatives in (z, w) with w = w(z) held fixed).
    bool freeze_functions = false;
    // Total derivative: jet atoms of dependent variables are extended by v.
    bool total = false;
};

CanonicalForm diff(const CanonicalForm& f, AtomId v, DiffOptions opt = {});

// Partial derivative with respect to an atom, using the chain rule through
// opaque-function arguments and elementary functions.
Expr diff(const Expr& e, const Expr& v);
Expr diff(const Expr& e, const Expr& v, int times);
// Partial derivative with opaque-function atoms held fixed; v may itself be
// a function atom such as w(z).
Expr diff_frozen(const Expr& e, const Expr& v);
Expr total_derivative(const Expr& e, const Expr& v);

} // namespace liereduce
