#pragma once

#include <map>
#include <string>
#include <vector>

#include "liereduce/expr/errors.hpp"
#include "liereduce/expr/expr.hpp"

namespace liereduce {

class UnknownKind : public Error {
public:
    using Error::Error;
};

class SeriesDoesNotClose : public Error {
public:
    using Error::Error;
};

class NotSolvableForPivot : public Error {
public:
    using Error::Error;
};

// Coordinates of a jet space: independent variables and one dependent
// variable. In a PDE frame the dependent variable is a jet atom (u); in an
// ODE frame it is an opaque-function atom w(z), whose derivatives are w', w''.
class JetFrame {
public:
    static JetFrame pde(std::vector<std::string> independent, const std::string& dependent);
    static JetFrame ode(const std::string& independent, const std::string& dependent);
    static const JetFrame& zk();

    const std::vector<Expr>& independent() const { return indep_; }
    const Expr& dependent() const { return dep_; }
    bool is_ode() const { return ode_; }

    // Jet coordinate for a multi-index of independent-variable positions.
    Expr jet(const std::vector<std::size_t>& index) const;
    Expr total_derivative(const Expr& e, std::size_t i) const;
    // Partial derivative with jet coordinates held fixed.
    Expr partial(const Expr& e, const Expr& coordinate) const;

private:
    std::vector<Expr> indep_;
    Expr dep_;
    std::string dep_name_;
    bool ode_ = false;
};

class VectorField {
public:
    VectorField(const JetFrame& frame, std::vector<Expr> xi, Expr phi);

    const JetFrame& frame() const { return *frame_; }
    const std::vector<Expr>& xi() const { return xi_; }
    const Expr& phi() const { return phi_; }
    // Coefficients in coordinate order (independent..., dependent).
    std::vector<Expr> components() const;

    Expr apply(const Expr& f) const;
    bool is_zero() const;

    VectorField operator+(const VectorField& o) const;
    VectorField operator-(const VectorField& o) const;
    VectorField scaled(const Expr& s) const;

private:
    std::shared_ptr<const JetFrame> frame_;
    std::vector<Expr> xi_;
    Expr phi_;
};

bool same_field(const VectorField& a, const VectorField& b);

// ZK generators. kind is one of v0, x, y, z; arg is a function of t or a constant.
VectorField generator(const std::string& kind, const Expr& arg = Expr(0));
VectorField commutator(const VectorField& v, const VectorField& w);
// Ad(exp(eps v)) w0 = sum (-eps)^k/k! ad_v^k w0, resummed in closed form.
VectorField adjoint(const VectorField& v, const VectorField& w0, const Expr& eps, int max_terms = 12);

struct ProlongedField {
    VectorField base;
    // Keyed by multi-index of independent-variable positions.
    std::map<std::vector<std::size_t>, Expr> coefficients;

    Expr apply(const Expr& f) const;
};

ProlongedField prolong(const VectorField& v, int order);
ProlongedField prolong2(const VectorField& v);

// The ZK operator u_xt - (u u_x)_x - u_yy.
Expr zk_equation();

// Solves eq = 0 for the pivot jet coordinate (eq must be linear in it).
Expr solve_for_pivot(const Expr& eq, const Expr& pivot);
bool is_symmetry(const VectorField& v, const Expr& equation, const Expr& pivot);
bool is_symmetry(const VectorField& v, const Expr& equation);

} // namespace liereduce
