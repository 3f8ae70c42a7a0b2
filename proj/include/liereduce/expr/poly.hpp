#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "liereduce/expr/qexp.hpp"

namespace liereduce {

using AtomId = std::uint32_t;

// Laurent-Puiseux monomial: atoms sorted by id, every exponent nonzero.
class Mono {
public:
    using Factor = std::pair<AtomId, QExp>;

    Mono() = default;
    static Mono atom(AtomId a, QExp e = QExp(1));
    static Mono from_factors(std::vector<Factor> f);

    const std::vector<Factor>& factors() const { return f_; }
    const QExp& degree() const { return deg_; }
    bool is_one() const { return f_.empty(); }
    QExp exponent(AtomId a) const;
    bool has_negative() const;
    std::size_t hash() const { return hash_; }

    Mono without(AtomId a) const;
    Mono scaled(AtomId a, QExp factor) const;

    friend Mono operator*(const Mono& a, const Mono& b);
    friend Mono operator/(const Mono& a, const Mono& b);
    Mono pow(QExp e) const;

    friend bool operator==(const Mono& a, const Mono& b) { return a.hash_ == b.hash_ && a.f_ == b.f_; }

private:
    void finish();

    std::vector<Factor> f_;
    QExp deg_;
    std::size_t hash_ = 0;
};

// Internal term order: graded, then lexicographic by atom id.
int compare_internal(const Mono& a, const Mono& b);

struct MonoHash {
    std::size_t operator()(const Mono& m) const { return m.hash(); }
};

struct Term {
    Mono m;
    mpz_class c;
};

// Sparse polynomial with integer coefficients. Terms are kept sorted in
// descending internal order with distinct monomials and nonzero coefficients.
class Poly {
public:
    Poly() = default;
    explicit Poly(mpz_class c);
    static Poly monomial(Mono m, mpz_class c = 1);
    static Poly from_terms(std::vector<Term> terms);
    // Terms must already be sorted, distinct and nonzero.
    static Poly from_sorted(std::vector<Term> terms);

    const std::vector<Term>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].m.is_one()); }
    bool is_monomial() const { return t_.size() == 1; }
    bool is_one() const { return t_.size() == 1 && t_[0].m.is_one() && t_[0].c == 1; }
    mpz_class constant_value() const;
    const Term& lead() const { return t_.front(); }
    std::size_t size() const { return t_.size(); }
    std::size_t hash() const;

    Poly operator-() const;
    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly mul_term(const Mono& m, const mpz_class& c) const;
    Poly scale(const mpz_class& c) const;
    Poly divexact_int(const mpz_class& c) const;
    Poly pow(unsigned k) const;

    friend bool operator==(const Poly& a, const Poly& b);

    mpz_class content() const;
    // Per-atom minimum exponent over all terms (missing atoms count as 0).
    Mono min_mono() const;
    std::vector<AtomId> atoms() const;
    bool contains(AtomId a) const;
    QExp max_exponent(AtomId a) const;
    QExp min_exponent(AtomId a) const;
    std::int64_t exponent_lcm_den(AtomId a) const;

    // Collects the polynomial by exponent of one atom.
    std::vector<std::pair<QExp, Poly>> coefficients_in(AtomId a) const;
    Poly scale_exponent(AtomId a, QExp factor) const;

private:
    std::vector<Term> t_;
};

// Exact division; nullopt when b does not divide a in the polynomial ring.
std::optional<Poly> divide_exact(const Poly& a, const Poly& b);
Poly gcd(const Poly& a, const Poly& b);

} // namespace liereduce
