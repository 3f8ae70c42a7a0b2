#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "liereduce/calculus/taylor.hpp"
#include "liereduce/expr/errors.hpp"
#include "liereduce/expr/expr.hpp"
#include "liereduce/lie/lie.hpp"
#include "liereduce/reduction/catalog.hpp"

namespace liereduce {

class ResidualNotReducible : public Error {
public:
    using Error::Error;
};

class DegenerateReduction : public Error {
public:
    DegenerateReduction(const std::string& msg, Expr condition);
    const Expr& condition() const { return condition_; }

private:
    Expr condition_;
};

class TransversalityFailure : public Error {
public:
    using Error::Error;
};

class SingularTransform : public Error {
public:
    using Error::Error;
};

class InversionFailure : public Error {
public:
    using Error::Error;
};

class NotInvariant : public Error {
public:
    using Error::Error;
};

class ImplicitSingular : public Error {
public:
    using Error::Error;
};

// Names of an ODE frame: independent variable and dependent function.
struct OdeVars {
    std::string independent = "z";
    std::string dependent = "w";

    Expr var() const { return Expr::symbol(independent); }
    // k-th derivative atom of the dependent function.
    Expr jet(int k) const { return Expr::function(dependent, k, var()); }
    // Standard names with this frame's variable and function declared.
    Names names() const;
};

struct Verdict {
    enum class Tag { Match, Mismatch, Degenerate, TransversalityFailure };
    Tag tag = Tag::Mismatch;
    Expr factor;     // Match
    Expr residual;   // Mismatch
    Expr condition;  // Degenerate
    std::string detail;
};

std::string to_string(Verdict::Tag t);

// Reduced ODE in (z, w, w', w''), normalized with a positive leading
// coefficient on the highest derivative and integer-primitive coefficients.
Expr reduce(const ReductionCase& c, const ParamMap& params);
Verdict verify_reduction(const ReductionCase& c, const ParamMap& params, const Expr& target);

// Checks a case against its catalog outcome.
struct CaseCheck {
    bool pass = false;
    std::string mode;  // "symbolic" or "sampled"
    std::vector<std::pair<std::string, Verdict>> runs;  // sample label, verdict
};
CaseCheck check_case(const ReductionCase& c, const ParamMap& params = {});

// Generators annihilating the invariant z and the invariant solved from the ansatz.
struct InvarianceReport {
    std::vector<bool> z_invariant;
    std::vector<bool> w_invariant;
};
InvarianceReport invariance_diagnostics(const ReductionCase& c, const ParamMap& params);

struct Transform {
    Expr R;  // new independent variable in (z, w)
    Expr S;  // new dependent variable in (z, w)
    // Old variables in terms of the new ones; derived by linear solving when absent.
    std::optional<Expr> old_independent;
    std::optional<Expr> old_dependent;
    OdeVars from;
    OdeVars to{"r", "W"};
};

Expr change_variables(const Expr& ode, const Transform& tr);

struct OrderReduction {
    Expr xi;  // invariant in (z, w)
    Expr X;   // invariant in (z, w, w')
    OdeVars from;
    OdeVars to{"xi", "X"};
};

Expr reduce_order(const Expr& ode, const VectorField& v, const OrderReduction& inv);

bool verify_ode_symmetry(const VectorField& v, const Expr& ode);

// True iff a/b is nonzero and free of the given atoms.
bool proportional(const Expr& a, const Expr& b, const std::vector<Expr>& atoms, Expr* factor = nullptr);
// Jet atoms w, w', w'', w''' of a frame.
std::vector<Expr> ode_jets(const OdeVars& f, int order = 3);

// Delta(u) for u in (t, x, y).
Expr zk_residual(const Expr& u);

struct SolutionReport {
    bool ok = false;
    bool numeric = false;
    Expr residual;
    double max_residual = 0;
    std::size_t points = 0;
    std::string detail;
};

struct SamplePoint {
    double t = 0, x = 0, y = 0;
};

SolutionReport verify_pde_solution(const Expr& u);
SolutionReport verify_pde_solution(const Expr& u, const std::map<std::string, double>& constants,
                                   const std::vector<SamplePoint>& points, double tol,
                                   const FunctionTable& fns = {});

// Implicit relation F(z, w) = 0; numeric fallback at the given z values with
// Newton started from the given guesses.
struct ImplicitNumeric {
    std::map<std::string, double> constants;
    std::vector<std::pair<double, double>> starts;  // (z, initial w)
    double tol = 1e-9;
    bool skip_symbolic = false;
};
SolutionReport verify_implicit_solution(const Expr& relation, const Expr& ode,
                                        const std::optional<ImplicitNumeric>& numeric = std::nullopt,
                                        const OdeVars& vars = {});

// Explicit w = expr in the frame variable.
SolutionReport verify_ode_solution(const Expr& solution, const Expr& ode, const OdeVars& vars = {});

} // namespace liereduce
