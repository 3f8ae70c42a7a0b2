#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "liereduce/reduction/catalog.hpp"
#include "liereduce/reduction/reduction.hpp"

namespace liereduce {

struct Check {
    std::string id;
    std::string inputs;   // parser grammar
    std::string verdict;
    std::string detail;   // factor, residual or Psi rendering
    bool pass = false;
    double wall_ms = 0;
};

struct Report {
    std::string command;
    std::string version;
    std::string catalog_checksum;
    std::vector<Check> checks;

    bool all_pass() const;
    // Sorts by id; throws Error on a duplicate id.
    void finalize();
};

std::string tool_version();
std::string render_text(const Report& r, bool timing);
// Deterministic: wall times are emitted only when timing is set.
std::string render_json(const Report& r, bool timing);

// Runs body and records its wall time; exceptions become failed checks.
Check timed(const std::string& id, const std::string& inputs, const std::function<void(Check&)>& body);

enum class SymmetryScope { All, Generators, Commutators };
std::vector<Check> symmetry_checks(SymmetryScope scope = SymmetryScope::All);

std::vector<Check> reduction_checks(const Catalog& cat);
Check reduce_check(const ReductionCase& c, const ParamMap& params, const std::optional<Expr>& target);

std::vector<Check> linearization_checks(const Catalog& cat);
std::vector<Check> transform_checks(const Catalog& cat);

enum class SolutionSuite { Symbolic, Numeric, All };
std::vector<Check> solution_checks(const Catalog& cat, SolutionSuite suite, double tol);

struct PropertyOptions {
    std::uint64_t seed = 20260917;
    int trials = 100;
};
std::vector<Check> property_checks(const PropertyOptions& opt);

} // namespace liereduce
