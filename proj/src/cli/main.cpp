#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include "liereduce/cli/suites.hpp"
#include "liereduce/linearize/linearize.hpp"
#include "liereduce/parser/parser.hpp"

using namespace liereduce;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string sha256_hex(const std::string& data)
{
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("SHA-256 digest failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw UsageError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Globals {
    bool json = false;
    bool timing = false;
    std::string catalog_path;
};

const Catalog& load_catalog(const Globals& g, std::optional<Catalog>& storage)
{
    std::string path = g.catalog_path;
    if (path.empty())
        if (const char* env = std::getenv("LIE_REDUCE_CATALOG"))
            path = env;
    if (path.empty())
        return Catalog::embedded();
    storage = Catalog::parse(read_file(path));
    return *storage;
}

int emit(const Globals& g, Report r, const Catalog& cat)
{
    r.version = tool_version();
    r.catalog_checksum = sha256_hex(cat.text());
    r.finalize();
    std::cout << (g.json ? render_json(r, g.timing) : render_text(r, g.timing));
    return r.all_pass() ? 0 : kExitFail;
}

// "lhs = rhs" becomes lhs - rhs.
Expr parse_equation(const std::string& text, const Names& names)
{
    auto eq = text.find('=');
    if (eq == std::string::npos)
        return parse(text, names);
    Expr lhs = parse(std::string_view(text).substr(0, eq), names);
    Expr rhs;
    try {
        rhs = parse(std::string_view(text).substr(eq + 1), names);
    } catch (const ParseError& e) {
        SourceSpan s = e.span();
        throw ParseError(e.what(), {s.start + eq + 1, s.end + eq + 1});
    }
    return lhs - rhs;
}

std::string caret(const std::string& text, SourceSpan s)
{
    std::string line = "  " + text + "\n  ";
    line += std::string(std::min(s.start, text.size()), ' ');
    line += std::string(std::max<std::size_t>(1, s.end > s.start ? s.end - s.start : 1), '^');
    return line;
}

std::pair<std::string, std::vector<mpq_class>> parse_scan(const std::string& spec)
{
    auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0)
        throw UsageError("--scan expects NAME=v1,v2,...");
    std::vector<mpq_class> vals;
    std::stringstream ss(spec.substr(eq + 1));
    std::string item;
    while (std::getline(ss, item, ','))
        vals.push_back(parse_rational(item));
    if (vals.empty())
        throw UsageError("--scan needs at least one value");
    return {spec.substr(0, eq), vals};
}

std::string join(const std::vector<std::string>& v, const std::string& sep)
{
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out += (i ? sep : "") + v[i];
    return out;
}

std::string two_digits(std::size_t i)
{
    char buf[16];
    std::snprintf(buf, sizeof buf, "%02zu", i);
    return buf;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Symmetry reductions of the Zabolotskaya-Khokhlov equation: verification tool", "lie-reduce"};
    app.set_version_flag("--version", tool_version());
    app.require_subcommand(1);
    app.fallthrough();
    app.allow_extras();
    Globals g;
    app.add_flag("--json", g.json, "Machine-readable JSON report");
    app.add_flag("--timing", g.timing, "Include wall times (JSON output is then not byte-stable)");
    app.add_option("--catalog", g.catalog_path, "Catalog file (default: LIE_REDUCE_CATALOG, else embedded)");

    auto* sym = app.add_subcommand("verify-symmetries", "Generators and commutation table");
    std::string only;
    sym->add_option("--only", only, "generators | commutators")->check(CLI::IsMember({"generators", "commutators"}));

    auto* red = app.add_subcommand("reduce", "Similarity reduction of one catalog case");
    std::string case_name, target_text;
    std::vector<std::string> param_specs;
    red->add_option("case", case_name, "Case name, e.g. L2.7")->required();
    red->add_option("--target", target_text, "Expected reduced ODE in (z, w, w', w'')");
    red->add_option("--param", param_specs, "NAME=p/q (repeatable); --NAME p/q also works");
    red->allow_extras();

    auto* lin = app.add_subcommand("linearize", "Lie linearization test for a second-order ODE");
    std::string ode_text, ode_file, lin_case, scan_spec, expect;
    std::vector<std::string> constraint_texts;
    lin->add_option("ode,--ode", ode_text, "Inline ODE, e.g. \"w'' = 0\" (use --ode or -- for a leading minus)");
    lin->add_option("--file", ode_file, "Read the ODE from a file");
    lin->add_option("--case", lin_case, "Use the reduced ODE of a catalog case");
    lin->add_option("--scan", scan_spec, "NAME=v1,v2,... parameter grid");
    lin->add_option("--constraint", constraint_texts, "Expression required nonzero at scan samples");
    lin->add_option("--expect", expect, "linearizable | not-linearizable")
        ->check(CLI::IsMember({"linearizable", "not-linearizable"}));

    auto* sol = app.add_subcommand("verify-solutions", "Exact solutions of the ZK equation and reduced ODEs");
    std::string suite = "all";
    double tol = 1e-10;
    sol->add_option("--suite", suite, "symbolic | numeric | all");
    sol->add_option("--tol", tol, "Numeric tolerance");

    auto* prop = app.add_subcommand("verify-properties", "Randomized property suites");
    PropertyOptions popt;
    prop->add_option("--seed", popt.seed, "RNG seed");
    prop->add_option("--trials", popt.trials, "Trials per property")->check(CLI::PositiveNumber);

    auto* cat_cmd = app.add_subcommand("catalog", "Inspect the reduction catalog");
    cat_cmd->require_subcommand(1);
    auto* cat_list = cat_cmd->add_subcommand("list", "List cases");
    auto* cat_show = cat_cmd->add_subcommand("show", "Show one case");
    std::string show_name;
    cat_show->add_option("case", show_name)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    std::string command;
    for (int i = 1; i < argc; ++i)
        if (std::string(argv[i]) != "--timing")
            command += (command.empty() ? "" : " ") + std::string(argv[i]);

    try {
        std::optional<Catalog> storage;
        const Catalog& cat = load_catalog(g, storage);
        Report rep;
        rep.command = command;

        if (!*red && !app.remaining().empty())
            throw UsageError("unexpected argument " + app.remaining().front());

        if (*sym) {
            SymmetryScope scope = only == "generators"    ? SymmetryScope::Generators
                                  : only == "commutators" ? SymmetryScope::Commutators
                                                          : SymmetryScope::All;
            rep.checks = symmetry_checks(scope);
            return emit(g, rep, cat);
        }

        if (*red) {
            const ReductionCase& c = cat.find(case_name);
            ParamMap params;
            auto add = [&](const std::string& name, const std::string& value) {
                if (params.count(name))
                    throw UsageError("parameter " + name + " given twice");
                params[name] = Expr(parse_rational(value));
            };
            for (auto& s : param_specs) {
                auto eq = s.find('=');
                if (eq == std::string::npos)
                    throw UsageError("--param expects NAME=p/q");
                add(s.substr(0, eq), s.substr(eq + 1));
            }
            auto extras = red->remaining();
            for (auto& a : app.remaining())
                extras.push_back(a);
            for (std::size_t i = 0; i < extras.size(); ++i) {
                std::string a = extras[i];
                if (a.rfind("--", 0) != 0)
                    throw UsageError("unexpected argument " + a);
                a = a.substr(2);
                auto eq = a.find('=');
                if (eq != std::string::npos)
                    add(a.substr(0, eq), a.substr(eq + 1));
                else if (i + 1 < extras.size())
                    add(a, extras[++i]);
                else
                    throw UsageError("missing value for --" + a);
            }
            c.check_constraints(c.resolve(params));
            std::optional<Expr> target;
            if (!target_text.empty())
                target = parse_equation(target_text, c.names);
            rep.checks.push_back(reduce_check(c, params, target));
            return emit(g, rep, cat);
        }

        if (*lin) {
            int sources = !ode_text.empty() + !ode_file.empty() + !lin_case.empty();
            if (sources != 1)
                throw UsageError("give exactly one of ODE, --file or --case");
            OdeVars vars;
            Names names = vars.names();
            Expr ode;
            std::vector<Expr> constraints;
            std::string source = ode_text;
            if (!lin_case.empty()) {
                const ReductionCase& c = cat.find(lin_case);
                if (!c.reduced)
                    throw UsageError(lin_case + " has no reduced equation");
                ode = c.bind(*c.reduced, c.resolve({}));
                constraints = c.constraints;
                names = c.names;
                source = lin_case + " reduced";
            } else {
                if (!ode_file.empty()) {
                    source = read_file(ode_file);
                    while (!source.empty() && (source.back() == '\n' || source.back() == '\r'))
                        source.pop_back();
                }
                try {
                    ode = parse_equation(source, names);
                } catch (const ParseError& e) {
                    std::cerr << "error: " << e.what() << "\n" << caret(source, e.span()) << "\n";
                    return kExitUsage;
                }
            }
            for (auto& t : constraint_texts) {
                std::string s = t;
                if (auto p = s.find("!="); p != std::string::npos)
                    s = s.substr(0, p) + "-(" + s.substr(p + 2) + ")";
                constraints.push_back(parse(s, names));
            }
            auto render = [&](const Expr& p1, const Expr& p2) {
                return "Psi1 = " + print(p1, names) + "; Psi2 = " + print(p2, names);
            };
            if (scan_spec.empty()) {
                rep.checks.push_back(timed("linearize", source, [&](Check& c) {
                    auto [p1, p2] = psi(extract_cubic(ode, vars));
                    bool yes = is_zero(p1) && is_zero(p2);
                    c.verdict = yes ? "Linearizable" : "NotLinearizable";
                    c.detail = render(p1, p2);
                    c.pass = expect.empty() || (expect == "linearizable") == yes;
                }));
                if (rep.checks.back().verdict == "Error") {
                    std::cerr << "error: " << rep.checks.back().detail << "\n";
                    return kExitUsage;
                }
            } else {
                auto [param, values] = parse_scan(scan_spec);
                ScanOptions opt;
                opt.constraints = constraints;
                opt.flag_violations = true;
                opt.vars = vars;
                ScanReport sr = linearizability_scan(ode, param, values, opt);
                for (std::size_t i = 0; i < sr.entries.size(); ++i) {
                    const ScanEntry& e = sr.entries[i];
                    Check c;
                    c.id = "linearize.scan." + two_digits(i);
                    c.inputs = source + " at " + param + "=" + e.value.get_str();
                    c.verdict = e.linearizable() ? "Linearizable" : "NotLinearizable";
                    if (e.constraint_violated)
                        c.verdict += " (constraint violated)";
                    c.detail = render(e.psi1, e.psi2);
                    if (!e.witness.empty())
                        c.detail += "; witness " + e.witness;
                    c.pass = true;
                    rep.checks.push_back(std::move(c));
                }
                rep.command += "  [iff claims rest on this finite sample grid]";
            }
            return emit(g, rep, cat);
        }

        if (*sol) {
            SolutionSuite s;
            if (suite == "symbolic")
                s = SolutionSuite::Symbolic;
            else if (suite == "numeric")
                s = SolutionSuite::Numeric;
            else if (suite == "all")
                s = SolutionSuite::All;
            else {
                std::cerr << "error: unknown suite '" << suite << "' (symbolic | numeric | all)\n";
                return kExitUsage;
            }
            rep.checks = solution_checks(cat, s, tol);
            return emit(g, rep, cat);
        }

        if (*prop) {
            rep.checks = property_checks(popt);
            return emit(g, rep, cat);
        }

        if (*cat_list) {
            if (g.json) {
                nlohmann::ordered_json j = nlohmann::ordered_json::array();
                for (auto& c : cat.cases())
                    j.push_back({{"name", c.name}, {"subalgebra", join(c.generator_text, " ; ")}, {"expected", to_string(c.expected)}});
                std::cout << j.dump(2) << "\n";
            } else {
                for (auto& c : cat.cases())
                    std::cout << c.name << "  " << to_string(c.expected) << "  " << join(c.generator_text, " ; ") << "\n";
            }
            return 0;
        }

        if (*cat_show) {
            const ReductionCase& c = cat.find(show_name);
            if (g.json) {
                nlohmann::ordered_json j;
                j["name"] = c.name;
                j["subalgebra"] = join(c.generator_text, " ; ");
                j["params"] = c.params;
                j["expected"] = to_string(c.expected);
                j["notes"] = c.notes;
                nlohmann::ordered_json fields = nlohmann::ordered_json::array();
                for (auto& [k, v] : c.raw)
                    fields.push_back({k, v});
                j["fields"] = fields;
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << "[case " << c.name << "]\n";
                for (auto& [k, v] : c.raw)
                    std::cout << k << ": " << v << "\n";
            }
            return 0;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const UnknownCase& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ConstraintViolated& e) {
        std::cerr << "error: constraint violated: " << e.what() << "\n";
        return kExitUsage;
    } catch (const CatalogError& e) {
        std::cerr << "error: catalog line " << e.line() << ": " << e.what() << "\n";
        return kExitUsage;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFail;
    }
    return kExitUsage;
}
