#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "liereduce/cli/suites.hpp"

using namespace liereduce;

namespace {

const char* kTitles[] = {
    "",
    "symmetry suite: generators and commutation table, exact",
    "reduction suite: every catalog case against its printed outcome",
    "linearization checkpoints: Psi values and scans, exact",
    "transform suite: changes of variables and order reduction, up to factor",
    "solution suite: symbolic, and numeric with max |residual| < 1e-10",
    "property suites: >= 100 randomized trials each, fixed seed",
};

std::vector<Check> run(int n, const PropertyOptions& popt)
{
    const Catalog& cat = Catalog::embedded();
    switch (n) {
    case 1:
        return symmetry_checks();
    case 2:
        return reduction_checks(cat);
    case 3:
        return linearization_checks(cat);
    case 4:
        return transform_checks(cat);
    case 5:
        return solution_checks(cat, SolutionSuite::All, 1e-10);
    default:
        return property_checks(popt);
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Acceptance criteria"};
    std::vector<int> which;
    bool verbose = false;
    PropertyOptions popt;
    app.add_option("--criterion", which, "Criterion number 1-6 (repeatable; default all)")
        ->check(CLI::Range(1, 6));
    app.add_flag("-v,--verbose", verbose, "Print every check");
    app.add_option("--seed", popt.seed, "Seed for the property suites");
    CLI11_PARSE(app, argc, argv);
    if (which.empty())
        which = {1, 2, 3, 4, 5, 6};

    bool all = true;
    for (int n : which) {
        Report r;
        r.checks = run(n, popt);
        r.finalize();
        bool ok = !r.checks.empty() && r.all_pass();
        all = all && ok;
        std::size_t passed = 0;
        for (auto& c : r.checks)
            passed += c.pass;
        std::printf("criterion %d: %s  %s (%zu/%zu checks)", n, ok ? "PASS" : "FAIL", kTitles[n], passed,
                    r.checks.size());
        if (n == 6)
            std::printf(" seed=%llu trials=%d", static_cast<unsigned long long>(popt.seed), popt.trials);
        std::printf("\n");
        for (auto& c : r.checks)
            if (verbose || !c.pass)
                std::printf("    %s %s  %s  %s\n", c.pass ? "pass" : "FAIL", c.id.c_str(), c.verdict.c_str(),
                            c.detail.c_str());
    }
    return all ? 0 : 1;
}
