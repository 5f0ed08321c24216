#pragma once

#include <optional>
#include <string>

#include "meancomp/report.hpp"

namespace meancomp {

inline constexpr const char* kToolVersion = "0.1.0";

// Output file paths requested by the configuration (the CLI does the actual
// writing; the library only renders text).
struct OutputPaths {
    std::optional<std::string> report;
    std::optional<std::string> csv;
    std::optional<std::string> summary;
};

struct RunOutputs {
    std::string report_json;
    std::string summary;
    std::optional<std::string> csv;  // n = 2 only
    bool refuted = false;
    OutputPaths paths;
};

// Full pipeline: parse the JSON configuration (with optional JSON merge-patch
// overrides), build both means, run every enabled check, the power-family
// classifier when both means are power presets, and the gap search; then
// merge the evidence into final conclusions and render all outputs.
//
// Throws ConfigError (or ParseError/CertificationError/InvalidArgument) for
// malformed configurations and DomainError/OverflowError/InversionError when
// a check fails to evaluate.
RunOutputs run_compare_config(const std::string& config_json,
                              const std::string& overrides_json = "");

}  // namespace meancomp
