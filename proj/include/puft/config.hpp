// Copyright (c) 2026 The Puft developers
// Distributed under the MIT software license, see the accompanying
// file LICENSE or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "puft/cycle.hpp"
#include "puft/model.hpp"

namespace puft {

enum class Behavior {
    Honest,
    Lazy,       // returns the shard untouched, claims work anyway
    Falsifier,  // submits random weights with fabricated metrics
    Offline,    // registers, then never responds
};

const char* behavior_name(Behavior b);

struct MinerConfig {
    Behavior behavior = Behavior::Honest;
    double compute_budget = 1.0;
};

struct PowBaselineConfig {
    bool enabled = false;
    unsigned difficulty_bits = 8;
    uint64_t max_attempts = 1u << 20;
};

struct LatencyConfig {
    uint64_t min_ticks = 0;
    uint64_t max_ticks = 2;
};

struct ScenarioConfig {
    uint64_t seed = 0;
    uint64_t cycles = 1;
    std::vector<MinerConfig> miners;
    ModelSpec model;
    size_t n_examples = 0;
    double noise_std = 0.0;
    CycleConfig cycle;
    PowBaselineConfig pow_baseline;
    LatencyConfig latency;          // optional in the file
    double per_hash_op_cost = 1.0;  // optional in the file
    std::string out_dir = "out";    // optional in the file
};

// Strict parse of the JSON schema documented in docs/FORMATS.md: unknown
// keys anywhere are a ParseError; defaults exist only for alpha, latency,
// per_hash_op_cost, and out_dir. Field-level invariant violations raise
// ValidationError naming the field.
ScenarioConfig parse_config(const std::filesystem::path& path);
ScenarioConfig parse_config_text(const std::string& text);

// Cross-field checks shared by parse_config and run_scenario (counts
// positive, partitions feasible, alpha range).
void validate_config(const ScenarioConfig& config);

}  // namespace puft
