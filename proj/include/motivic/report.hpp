#pragma once

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

#include "motivic/errors.hpp"

namespace motivic {

inline constexpr const char* kToolVersion = "0.1.0";

enum class ReportFormat { text, json };

struct Report {
    std::string version = kToolVersion;
    std::string universe;
    std::string command;
    nlohmann::json payload = nlohmann::json::object();
    std::vector<Violation> violations;

    nlohmann::json to_json() const;
};

/// JSON output is the canonical form; the text rendering is derived from it.
std::string emit_report(const Report& r, ReportFormat format);

/// CLI entry point; argv excludes the program name.  Exit codes: 0 success,
/// 1 validation violations, 2 parse/schema/usage errors, 3 internal
/// inconsistency.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace motivic
