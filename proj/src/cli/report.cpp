#include <algorithm>
#include <chrono>
#include <cstdio>
#include <set>

#include <json.hpp>

#include "liereduce/cli/suites.hpp"

namespace liereduce {

std::string tool_version() { return "0.1.0"; }

bool Report::all_pass() const
{
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

void Report::finalize()
{
    std::stable_sort(checks.begin(), checks.end(), [](const Check& a, const Check& b) { return a.id < b.id; });
    for (std::size_t i = 1; i < checks.size(); ++i)
        if (checks[i].id == checks[i - 1].id)
            throw Error("duplicate check id " + checks[i].id);
}

std::string render_text(const Report& r, bool timing)
{
    std::string out;
    std::size_t passed = 0;
    for (auto& c : r.checks) {
        out += c.pass ? "PASS  " : "FAIL  ";
        out += c.id + "  " + c.verdict;
        if (!c.detail.empty())
            out += "  " + c.detail;
        if (timing) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "  [%.1f ms]", c.wall_ms);
            out += buf;
        }
        out += "\n";
        passed += c.pass;
    }
    out += std::to_string(passed) + "/" + std::to_string(r.checks.size()) + " checks passed\n";
    return out;
}

std::string render_json(const Report& r, bool timing)
{
    using nlohmann::ordered_json;
    ordered_json j;
    j["tool"] = "lie-reduce";
    j["version"] = r.version;
    j["command"] = r.command;
    j["catalog_sha256"] = r.catalog_checksum;
    std::size_t passed = 0;
    ordered_json arr = ordered_json::array();
    for (auto& c : r.checks) {
        ordered_json e;
        e["id"] = c.id;
        e["inputs"] = c.inputs;
        e["verdict"] = c.verdict;
        e["detail"] = c.detail;
        e["pass"] = c.pass;
        if (timing)
            e["wall_ms"] = c.wall_ms;
        arr.push_back(std::move(e));
        passed += c.pass;
    }
    j["summary"] = {{"checks", r.checks.size()},
                    {"passed", passed},
                    {"failed", r.checks.size() - passed},
                    {"status", passed == r.checks.size() ? "pass" : "fail"}};
    j["checks"] = std::move(arr);
    return j.dump(2) + "\n";
}

Check timed(const std::string& id, const std::string& inputs, const std::function<void(Check&)>& body)
{
    Check c;
    c.id = id;
    c.inputs = inputs;
    auto t0 = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.pass = false;
        c.verdict = "Error";
        c.detail = e.what();
    }
    c.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return c;
}

} // namespace liereduce
