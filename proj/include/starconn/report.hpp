#pragma once

#include <string>
#include <vector>

namespace starconn {

enum class Status { Pass, Fail, NotApplicable };

/// Outcome of a single verification. `witness` names the first differing
/// coefficient with its address when the check fails.
struct CheckResult {
    std::string name;
    std::string anchor;
    Status status = Status::Pass;
    std::string witness;

    bool passed() const { return status != Status::Fail; }
};

inline CheckResult make_check(std::string name, std::string anchor, bool ok, std::string witness = {}) {
    return {std::move(name), std::move(anchor), ok ? Status::Pass : Status::Fail, ok ? std::string() : std::move(witness)};
}

inline bool all_passed(const std::vector<CheckResult>& checks) {
    for (const auto& c : checks)
        if (!c.passed()) return false;
    return true;
}

inline const char* status_name(Status s) {
    switch (s) {
        case Status::Pass: return "pass";
        case Status::Fail: return "fail";
        default: return "n/a";
    }
}

}  // namespace starconn
