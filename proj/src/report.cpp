#include "curvelab/report.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>

#include "json.hpp"

namespace curvelab::report {

void RunReport::add(std::string name, CheckStatus status, double value, double tol,
                    std::string note) {
    checks.push_back({std::move(name), status, value, tol, std::move(note)});
}

bool RunReport::any_fail() const { return fail_count() > 0; }

int RunReport::fail_count() const {
    int n = 0;
    for (const auto& c : checks) {
        if (c.status == CheckStatus::Fail) ++n;
    }
    return n;
}

int RunReport::skip_count() const {
    int n = 0;
    for (const auto& c : checks) {
        if (c.status == CheckStatus::Skip || c.status == CheckStatus::PremiseNotMet) ++n;
    }
    return n;
}

std::string digest(const std::string& payload) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char byte : payload) {
        h ^= byte;
        h *= 0x100000001b3ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string to_json(const RunReport& r) {
    nlohmann::ordered_json j;
    j["version"] = r.version;
    j["command"] = r.command;
    j["input_digest"] = r.input_digest;
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : r.checks) {
        nlohmann::ordered_json row;
        row["name"] = c.name;
        row["status"] = to_string(c.status);
        if (std::isfinite(c.value)) {
            row["value"] = c.value;
        } else {
            row["value"] = nullptr;
        }
        row["tol"] = c.tol;
        if (!c.note.empty()) row["note"] = c.note;
        j["checks"].push_back(row);
    }
    return j.dump(2) + "\n";
}

void print(const RunReport& r, std::ostream& os) {
    for (const auto& c : r.checks) {
        char line[512];
        std::snprintf(line, sizeof(line), "[%-15s] %-48s value=%-12.5g tol=%-9.3g %s",
                      to_string(c.status), c.name.c_str(), c.value, c.tol, c.note.c_str());
        os << line << "\n";
    }
    char tail[160];
    std::snprintf(tail, sizeof(tail), "result: %s (%zu checks, %d failed, %d skipped)",
                  r.any_fail() ? "FAIL" : "PASS", r.checks.size(), r.fail_count(),
                  r.skip_count());
    os << tail << "\n";
}

}  // namespace curvelab::report
