#ifndef CURVELAB_CHECK_HPP
#define CURVELAB_CHECK_HPP

#include <string>
#include <vector>

namespace curvelab {

enum class CheckStatus { Pass, Fail, Skip, PremiseNotMet };

const char* to_string(CheckStatus s);

/// One verification record: a named check with its measured value and the
/// tolerance it was held to.
struct CheckRow {
    std::string name;
    CheckStatus status = CheckStatus::Pass;
    double value = 0.0;
    double tol = 0.0;
    std::string note;
};

inline const char* to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "PASS";
        case CheckStatus::Fail: return "FAIL";
        case CheckStatus::Skip: return "SKIP";
        case CheckStatus::PremiseNotMet: return "PREMISE-NOT-MET";
    }
    return "?";
}

}  // namespace curvelab

#endif
