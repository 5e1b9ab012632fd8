#ifndef CURVELAB_REPORT_HPP
#define CURVELAB_REPORT_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "curvelab/check.hpp"

namespace curvelab::report {

inline constexpr const char* kToolVersion = "0.1.0";

/// Flat run report: command echo, input digest and one record per executed
/// check. Serialized as JSON for regression diffing.
struct RunReport {
    std::string command;
    std::string version = kToolVersion;
    std::string input_digest;
    std::vector<CheckRow> checks;

    void add(std::string name, CheckStatus status, double value, double tol,
             std::string note = {});
    bool any_fail() const;
    int fail_count() const;
    int skip_count() const;
};

/// FNV-1a 64-bit digest, rendered as 16 hex digits.
std::string digest(const std::string& payload);

std::string to_json(const RunReport& r);

/// Human-readable lines, one per check, plus a summary line.
void print(const RunReport& r, std::ostream& os);

}  // namespace curvelab::report

#endif
