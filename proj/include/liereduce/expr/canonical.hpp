#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <gmpxx.h>

#include "liereduce/expr/atom.hpp"
#include "liereduce/expr/poly.hpp"

namespace liereduce {

// Reduced fraction N/D of Laurent-Puiseux polynomials over the atoms.
// gcd(N, D) = 1, N and D jointly integer-primitive, D has no negative
// exponents and a positive leading coefficient in name order.
class CanonicalForm {
public:
    CanonicalForm() : den_(1) {}
    CanonicalForm(long v) : num_(mpz_class(v)), den_(1) {}
    CanonicalForm(const mpq_class& q);

    static CanonicalForm atom(AtomId a, QExp e = QExp(1));
    static CanonicalForm from_poly(Poly p);
    static CanonicalForm fraction(Poly n, Poly d);

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    bool is_polynomial() const { return den_.is_constant(); }
    std::optional<mpq_class> as_rational() const;
    std::optional<AtomId> as_atom() const;

    CanonicalForm operator-() const;
    friend CanonicalForm operator+(const CanonicalForm& a, const CanonicalForm& b);
    friend CanonicalForm operator-(const CanonicalForm& a, const CanonicalForm& b);
    friend CanonicalForm operator*(const CanonicalForm& a, const CanonicalForm& b);
    friend CanonicalForm operator/(const CanonicalForm& a, const CanonicalForm& b);
    CanonicalForm& operator+=(const CanonicalForm& o) { return *this = *this + o; }
    CanonicalForm& operator-=(const CanonicalForm& o) { return *this = *this - o; }
    CanonicalForm& operator*=(const CanonicalForm& o) { return *this = *this * o; }

    CanonicalForm powi(long k) const;
    CanonicalForm pow(QExp e) const;

    friend bool operator==(const CanonicalForm& a, const CanonicalForm& b)
    {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    std::size_t hash() const { return num_.hash() * 31 + den_.hash(); }

    // Atoms occurring at top level of N or D.
    std::vector<AtomId> atoms() const;
    // True if the atom occurs anywhere, including inside function arguments.
    bool depends_on(AtomId a) const;
    // Deterministic structural string ordered by atom names.
    std::string key() const;

private:
    struct Raw {};
    CanonicalForm(Raw, Poly n, Poly d) : num_(std::move(n)), den_(std::move(d)) {}
    static CanonicalForm build(Poly n, Poly d, bool coprime);

    Poly num_;
    Poly den_;
};

struct CanonicalFormHash {
    std::size_t operator()(const CanonicalForm& f) const { return f.hash(); }
};

using Bindings = std::unordered_map<AtomId, CanonicalForm>;

CanonicalForm make_exp(const CanonicalForm& arg);
CanonicalForm make_ln(const CanonicalForm& arg);
CanonicalForm make_lambertw(const CanonicalForm& arg);
CanonicalForm make_function(const std::string& name, int order, const CanonicalForm& arg);

// Simultaneous substitution of atoms (symbols, parameters, jets, function atoms).
CanonicalForm substitute(const CanonicalForm& f, const Bindings& b);
// Repeats substitution until no bound atom remains.
CanonicalForm substitute_fixpoint(const CanonicalForm& f, const Bindings& b);

// Terms of a polynomial ordered by descending name order.
std::vector<const Term*> name_ordered(const Poly& p);
mpz_class name_leading_coefficient(const Poly& p);

} // namespace liereduce
