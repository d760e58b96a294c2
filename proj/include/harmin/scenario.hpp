#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace harmin {

struct CriterionResult {
    std::string name;
    bool pass = false;
    double value = 0.0;
    double threshold = 0.0;
    std::string detail;
};

struct RunReport {
    std::string scenario_name;
    std::string kind;
    std::vector<CriterionResult> criteria;
    bool all_pass = false;
    std::string csv;          // per-point / per-case records
    nlohmann::json summary;   // criteria + provenance (config hash, seed, resolution)
};

struct RunOptions {
    int refine = 0;                            // multiplies resolutions by 2^refine
    std::optional<std::uint64_t> seed_override;
    std::optional<std::filesystem::path> out_dir;  // default: beside the input
};

// Parses, dispatches on scenario kind, evaluates every configured criterion.
// Throws SchemaError for malformed input and GuardError for guard violations.
RunReport run_scenario(const nlohmann::json& config, const RunOptions& opts = {});

// Convenience: load from file, run, write <name>.csv and <name>.summary.json.
RunReport run_scenario_file(const std::filesystem::path& path, const RunOptions& opts = {});

// Stable catalog of the verification criteria.
std::string list_checks();

std::uint64_t fnv1a64(const std::string& s);

}  // namespace harmin
