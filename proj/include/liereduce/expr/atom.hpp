#pragma once

#include <memory>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "liereduce/expr/poly.hpp"

namespace liereduce {

class CanonicalForm;

enum class AtomKind : std::uint8_t {
    Symbol,
    Parameter,
    Jet,       // derivative of a dependent variable of several variables, e.g. u_xt
    Function,  // opaque single-argument function with derivative order, e.g. g''(t)
    Exp,       // exp(key); rational powers encode exp(c*key)
    Ln,
    LambertW,
    Radical,   // stands for a polynomial base; fractional powers carry the relation
    Surd,      // positive integer base with the same convention
};

struct AtomInfo {
    AtomKind kind = AtomKind::Symbol;
    std::string name;
    std::vector<std::string> index;
    int order = 0;
    std::shared_ptr<const CanonicalForm> arg;
    mpz_class integer;
    std::string key;
    std::vector<AtomId> leaves;

    bool has_relation() const { return kind == AtomKind::Radical || kind == AtomKind::Surd; }
    bool is_compound() const
    {
        return kind == AtomKind::Function || kind == AtomKind::Exp || kind == AtomKind::Ln ||
               kind == AtomKind::LambertW || kind == AtomKind::Radical;
    }
};

const AtomInfo& atom_info(AtomId id);

AtomId symbol_atom(const std::string& name);
AtomId parameter_atom(const std::string& name);
AtomId jet_atom(const std::string& dependent, std::vector<std::string> index);
AtomId function_atom(const std::string& name, int order, const CanonicalForm& arg);
AtomId exp_atom(const CanonicalForm& key);
AtomId ln_atom(const CanonicalForm& arg);
AtomId lambertw_atom(const CanonicalForm& arg);
AtomId radical_atom(const Poly& base);
AtomId surd_atom(const mpz_class& base);

// Deterministic comparison by display key, independent of interning order.
int compare_atom_names(AtomId a, AtomId b);
int compare_names(const Mono& a, const Mono& b);

} // namespace liereduce
