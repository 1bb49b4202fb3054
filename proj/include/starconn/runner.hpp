#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "starconn/report.hpp"
#include "starconn/scenario.hpp"

namespace starconn {

struct ReportTable {
    std::string title;
    std::vector<std::pair<std::string, std::string>> rows;
};

struct Report {
    std::string command;
    std::string scenario;
    int order = 0;
    std::uint64_t seed = 0;
    std::vector<ReportTable> tables;
    std::vector<CheckResult> checks;

    int count(Status s) const;
    /// 0 when no check failed, 1 otherwise.
    int exit_code() const { return all_passed(checks) ? 0 : 1; }
};

/// quantize, family, gauge, kahler or verify-all. Throws std::invalid_argument
/// for other commands and ScenarioError for unusable Kahler input.
Report run_command(const std::string& command, const Scenario& sc);
const std::vector<std::string>& commands();

std::string report_text(const Report& r);
std::string report_json(const Report& r);

struct CheckInfo {
    std::string command;
    std::string name;  // parameter indices written as t<j>
    std::string anchor;
};
/// Every check a command can emit.
const std::vector<CheckInfo>& check_catalog();
/// Check name with parameter indices replaced by t<j>, as in the catalog.
std::string catalog_name(const std::string& name);

}  // namespace starconn
