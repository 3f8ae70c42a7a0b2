#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "liereduce/expr/errors.hpp"
#include "liereduce/expr/expr.hpp"

namespace liereduce {

class DivisionByZeroAtPoint : public Error {
public:
    using Error::Error;
};

class LambertWDomain : public Error {
public:
    using Error::Error;
};

// Monomials of total degree <= d in n variables, graded order.
class JetSpace {
public:
    JetSpace(std::size_t nvars, int degree);
    static std::shared_ptr<const JetSpace> get(std::size_t nvars, int degree);

    std::size_t nvars() const { return n_; }
    int degree() const { return d_; }
    std::size_t size() const { return monos_.size(); }
    const std::vector<int>& monomial(std::size_t i) const { return monos_[i]; }
    std::size_t index(const std::vector<int>& alpha) const;

    struct Product {
        std::uint32_t i, j, k;
    };
    const std::vector<Product>& products() const { return prod_; }
    const std::vector<int>& total_degree() const { return deg_; }

private:
    std::size_t n_;
    int d_;
    std::vector<std::vector<int>> monos_;
    std::map<std::vector<int>, std::size_t> index_;
    std::vector<Product> prod_;
    std::vector<int> deg_;
};

// Truncated multivariate Taylor polynomial around a base point.
class TaylorJet {
public:
    TaylorJet(std::shared_ptr<const JetSpace> space, double value);
    static TaylorJet variable(std::shared_ptr<const JetSpace> space, std::size_t i, double value);

    const JetSpace& space() const { return *space_; }
    std::shared_ptr<const JetSpace> space_ptr() const { return space_; }
    double value() const { return c_[0]; }
    double coefficient(const std::vector<int>& alpha) const;
    // Partial derivative at the base point: coefficient times alpha!.
    double derivative(const std::vector<int>& alpha) const;
    const std::vector<double>& coefficients() const { return c_; }

    TaylorJet operator-() const;
    friend TaylorJet operator+(const TaylorJet& a, const TaylorJet& b);
    friend TaylorJet operator-(const TaylorJet& a, const TaylorJet& b);
    friend TaylorJet operator*(const TaylorJet& a, const TaylorJet& b);
    friend TaylorJet operator/(const TaylorJet& a, const TaylorJet& b);
    friend TaylorJet operator*(double s, const TaylorJet& a);
    TaylorJet reciprocal() const;

    // f(a) from the derivatives f(a0), f'(a0), ..., f^(d)(a0).
    TaylorJet compose(const std::vector<double>& derivs) const;

private:
    std::shared_ptr<const JetSpace> space_;
    std::vector<double> c_;
};

TaylorJet exp(const TaylorJet& a);
TaylorJet log(const TaylorJet& a);
TaylorJet pow(const TaylorJet& a, const mpq_class& q);
TaylorJet lambertw(const TaylorJet& a);

// Principal branch by Halley iteration.
double lambertw(double x);

// Numeric implementation of an opaque function: values f(x), f'(x), ...
// for the requested count.
using NumericFunction = std::function<std::vector<double>(double x, int count)>;
using FunctionTable = std::map<std::string, NumericFunction>;

struct EvalPoint {
    // Jet variables, in order, with their base values.
    std::vector<std::pair<std::string, double>> variables;
    // Constant bindings for parameters and remaining symbols.
    std::map<std::string, double> constants;
};

TaylorJet eval_jet(const CanonicalForm& f, const EvalPoint& point, int degree, const FunctionTable& fns = {});
TaylorJet eval_jet(const Expr& e, const EvalPoint& point, int degree, const FunctionTable& fns = {});
double eval_number(const CanonicalForm& f, const std::map<std::string, double>& constants,
                   const FunctionTable& fns = {});

} // namespace liereduce
