#pragma once

// Serializable description of one CLI run. Every field is always written, so
// the canonical text of a parsed canonical file is byte-identical to it, and
// running from that file alone reproduces the run.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "burstkit/params_json.hpp"

namespace burstkit {

struct ExperimentConfig {
    std::string command;
    ParameterSet parameters = BinaryParams{1.0, 100.0, 1.0, 1000.0};
    std::string simulator = "binary";  // binary | two-stage
    std::uint64_t seed = 2011;
    std::uint64_t replicas = 1;
    double burn_in = 10.0;
    double t_end = 1000.0;
    double dt = 0.0;  // trajectory sampling step, 0 disables
    std::vector<double> resolutions{0.1, 1e-4};
    double tail_tol = 1e-10;
    std::uint64_t n_max = 2000;
    std::uint64_t m_max = 6;
    double delta = 0.0;
    bool grid = false;          // oracle-check over the full parameter grid
    std::string event_log;      // burst-scan input log (binary format), empty to simulate
    std::string out_dir = "out";
    std::vector<std::string> formats{"csv", "json"};

    bool wants(std::string_view format) const;
    bool operator==(const ExperimentConfig&) const = default;
};

nlohmann::json to_json(const ExperimentConfig& config);
// Unknown keys are rejected; missing keys take the defaults above.
ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig load_config(const std::filesystem::path& path);

// Two-space indented JSON with sorted keys and a trailing newline.
std::string canonical_text(const ExperimentConfig& config);

std::uint64_t fnv1a64(std::string_view bytes);
// Hash of the canonical text with out_dir left empty, so a run moved to
// another directory keeps its hash.
std::uint64_t config_hash(const ExperimentConfig& config);

}  // namespace burstkit
