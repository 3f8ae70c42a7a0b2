#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "liereduce/expr/errors.hpp"
#include "liereduce/expr/expr.hpp"
#include "liereduce/reduction/reduction.hpp"

namespace liereduce {

class DegreeTooHigh : public Error {
public:
    using Error::Error;
};

class NotLinearInSecondDerivative : public Error {
public:
    using Error::Error;
};

class VanishingLeadingCoefficient : public Error {
public:
    using Error::Error;
};

class DegenerateFamily : public Error {
public:
    using Error::Error;
};

// w'' + A w'^3 + B w'^2 + C w' + D = 0 with A..D in (z, w).
struct CubicODE {
    Expr A, B, C, D;
    OdeVars vars;

    Expr reconstruct() const;
};

CubicODE extract_cubic(const Expr& ode, const OdeVars& vars = {});
std::pair<Expr, Expr> psi(const CubicODE& c);
bool is_linearizable(const CubicODE& c);

struct ScanOptions {
    // Each must be nonzero at the sample.
    std::vector<Expr> constraints;
    // Evaluate and mark violating samples instead of throwing ConstraintViolated.
    bool flag_violations = false;
    OdeVars vars;
};

struct ScanEntry {
    mpq_class value;
    Expr psi1, psi2;
    bool psi1_zero = false;
    bool psi2_zero = false;
    bool constraint_violated = false;
    // Numeric evaluation of the first nonzero component, if any.
    std::string witness;

    bool linearizable() const { return psi1_zero && psi2_zero; }
};

struct ScanReport {
    std::string parameter;
    std::vector<ScanEntry> entries;
};

ScanReport linearizability_scan(const Expr& family, const std::string& parameter,
                                const std::vector<mpq_class>& samples, const ScanOptions& opt = {});

struct Classification {
    enum class Kind { Linear, TypeA1, TypeA2, TypeB, OutsideFamily };
    Kind kind = Kind::OutsideFamily;
    // Linear: a1 w' + a2 z w'' = 0.
    Expr a1, a2;
    std::string detail;
};

std::string to_string(Classification::Kind k);

// symmetry_count is the number of known point symmetries (A1 vs A2).
Classification classify_family(const Expr& ode, std::size_t symmetry_count, const OdeVars& vars = {});

// General solution of a1 w' + a2 z w'' = 0 with constants C1, C2.
Expr solve_linear_family(const Expr& a1, const Expr& a2, const OdeVars& vars = {});

// True iff the change of dependent variable Z = Z(w) turns ode into an
// equation proportional to target (Z'' by default).
bool verify_linearizing_substitution(const Expr& ode, const Expr& Z, const OdeVars& vars = {},
                                     const std::optional<Expr>& target = std::nullopt);

} // namespace liereduce
