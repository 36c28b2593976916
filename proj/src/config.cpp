// Copyright (c) 2026 The Puft developers
// Distributed under the MIT software license, see the accompanying
// file LICENSE or http://www.opensource.org/licenses/mit-license.php.

#include "puft/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "puft/errors.hpp"

namespace puft {

using nlohmann::json;

const char* behavior_name(Behavior b) {
    switch (b) {
        case Behavior::Honest: return "honest";
        case Behavior::Lazy: return "lazy";
        case Behavior::Falsifier: return "falsifier";
        case Behavior::Offline: return "offline";
    }
    return "?";
}

namespace {

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& context) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!allowed.count(it.key()))
            raise(Errc::ParseError, "unknown key \"" + it.key() + "\" in " + context);
    }
}

const json& require(const json& obj, const char* key, const std::string& context) {
    auto it = obj.find(key);
    if (it == obj.end())
        raise(Errc::ParseError, std::string("missing key \"") + key + "\" in " + context);
    return *it;
}

uint64_t as_u64(const json& v, const std::string& what) {
    if (!v.is_number_unsigned())
        raise(Errc::ParseError, what + " must be a non-negative integer");
    return v.get<uint64_t>();
}

double as_number(const json& v, const std::string& what) {
    if (!v.is_number()) raise(Errc::ParseError, what + " must be a number");
    return v.get<double>();
}

std::string as_string(const json& v, const std::string& what) {
    if (!v.is_string()) raise(Errc::ParseError, what + " must be a string");
    return v.get<std::string>();
}

Behavior parse_behavior(const std::string& s) {
    if (s == "honest") return Behavior::Honest;
    if (s == "lazy") return Behavior::Lazy;
    if (s == "falsifier") return Behavior::Falsifier;
    if (s == "offline") return Behavior::Offline;
    raise(Errc::ParseError, "unknown miner behavior \"" + s + "\"");
}

}  // namespace

ScenarioConfig parse_config_text(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        raise(Errc::ParseError, e.what());
    }
    if (!root.is_object()) raise(Errc::ParseError, "top level must be an object");

    reject_unknown_keys(root,
                        {"seed", "cycles", "miners", "model", "dataset", "cycle",
                         "pow_baseline", "latency", "per_hash_op_cost", "out_dir"},
                        "top level");

    ScenarioConfig cfg;
    cfg.seed = as_u64(require(root, "seed", "top level"), "seed");
    cfg.cycles = as_u64(require(root, "cycles", "top level"), "cycles");

    const json& miners = require(root, "miners", "top level");
    if (!miners.is_array()) raise(Errc::ParseError, "miners must be an array");
    for (const json& m : miners) {
        if (!m.is_object()) raise(Errc::ParseError, "miners entries must be objects");
        reject_unknown_keys(m, {"behavior", "compute_budget"}, "miners entry");
        MinerConfig mc;
        mc.behavior = parse_behavior(as_string(require(m, "behavior", "miners entry"),
                                               "miner behavior"));
        mc.compute_budget =
            as_number(require(m, "compute_budget", "miners entry"), "compute_budget");
        cfg.miners.push_back(mc);
    }

    const json& dataset = require(root, "dataset", "top level");
    reject_unknown_keys(dataset, {"n_examples", "input_dim", "noise_std"}, "dataset");
    cfg.n_examples = as_u64(require(dataset, "n_examples", "dataset"), "n_examples");
    size_t input_dim = as_u64(require(dataset, "input_dim", "dataset"), "input_dim");
    cfg.noise_std = as_number(require(dataset, "noise_std", "dataset"), "noise_std");

    const json& model = require(root, "model", "top level");
    reject_unknown_keys(model, {"architecture", "hidden_width"}, "model");
    std::string arch = as_string(require(model, "architecture", "model"), "architecture");
    cfg.model.input_dim = input_dim;
    if (arch == "linear") {
        cfg.model.arch = Architecture::Linear;
        if (model.contains("hidden_width") && as_u64(model["hidden_width"], "hidden_width") != 0)
            raise(Errc::ValidationError, "hidden_width must be 0 for a linear model");
    } else if (arch == "two_layer") {
        cfg.model.arch = Architecture::TwoLayer;
        cfg.model.hidden_width = as_u64(require(model, "hidden_width", "model"),
                                        "hidden_width");
    } else {
        raise(Errc::ParseError, "architecture must be \"linear\" or \"two_layer\"");
    }

    const json& cycle = require(root, "cycle", "top level");
    reject_unknown_keys(cycle, {"steps", "alpha", "reward", "learning_rate", "batch_size"},
                        "cycle");
    cfg.cycle.cycle_steps = as_u64(require(cycle, "steps", "cycle"), "steps");
    if (cycle.contains("alpha"))
        cfg.cycle.alpha = as_number(cycle["alpha"], "alpha");
    cfg.cycle.reward = as_u64(require(cycle, "reward", "cycle"), "reward");
    cfg.cycle.learning_rate =
        as_number(require(cycle, "learning_rate", "cycle"), "learning_rate");
    cfg.cycle.batch_size = as_u64(require(cycle, "batch_size", "cycle"), "batch_size");

    const json& pow = require(root, "pow_baseline", "top level");
    reject_unknown_keys(pow, {"enabled", "difficulty_bits", "max_attempts"}, "pow_baseline");
    const json& enabled = require(pow, "enabled", "pow_baseline");
    if (!enabled.is_boolean()) raise(Errc::ParseError, "enabled must be a boolean");
    cfg.pow_baseline.enabled = enabled.get<bool>();
    cfg.pow_baseline.difficulty_bits =
        unsigned(as_u64(require(pow, "difficulty_bits", "pow_baseline"), "difficulty_bits"));
    cfg.pow_baseline.max_attempts =
        as_u64(require(pow, "max_attempts", "pow_baseline"), "max_attempts");

    if (root.contains("latency")) {
        const json& lat = root["latency"];
        reject_unknown_keys(lat, {"min_ticks", "max_ticks"}, "latency");
        cfg.latency.min_ticks = as_u64(require(lat, "min_ticks", "latency"), "min_ticks");
        cfg.latency.max_ticks = as_u64(require(lat, "max_ticks", "latency"), "max_ticks");
    }
    if (root.contains("per_hash_op_cost"))
        cfg.per_hash_op_cost = as_number(root["per_hash_op_cost"], "per_hash_op_cost");
    if (root.contains("out_dir")) cfg.out_dir = as_string(root["out_dir"], "out_dir");

    validate_config(cfg);
    return cfg;
}

ScenarioConfig parse_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) raise(Errc::IoError, "cannot open config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

void validate_config(const ScenarioConfig& cfg) {
    auto bad = [](const std::string& msg) { raise(Errc::ValidationError, msg); };
    if (cfg.cycles < 1) bad("cycles must be >= 1");
    if (cfg.miners.empty()) bad("at least one miner is required");
    for (const MinerConfig& m : cfg.miners)
        if (m.compute_budget < 0.0 || !std::isfinite(m.compute_budget))
            bad("compute_budget must be finite and >= 0");
    if (cfg.model.input_dim < 1) bad("input_dim must be >= 1");
    if (cfg.model.arch == Architecture::TwoLayer && cfg.model.hidden_width < 1)
        bad("hidden_width must be >= 1 for two_layer");
    if (cfg.n_examples < 2) bad("n_examples must be >= 2");
    if (cfg.noise_std < 0.0) bad("noise_std must be >= 0");
    if (cfg.cycle.alpha < 0.0 || cfg.cycle.alpha > 1.0) bad("alpha must be in [0,1]");
    if (cfg.cycle.learning_rate < 0.0) bad("learning_rate must be >= 0");
    if (cfg.cycle.batch_size < 1) bad("batch_size must be >= 1");
    if (cfg.pow_baseline.difficulty_bits > 255) bad("difficulty_bits must be <= 255");
    if (cfg.pow_baseline.enabled && cfg.pow_baseline.max_attempts < 1)
        bad("max_attempts must be >= 1");
    if (cfg.latency.min_ticks > cfg.latency.max_ticks)
        bad("latency min_ticks must be <= max_ticks");
    if (cfg.per_hash_op_cost < 0.0 || !std::isfinite(cfg.per_hash_op_cost))
        bad("per_hash_op_cost must be finite and >= 0");

    size_t k = cfg.miners.size();
    if (cfg.model.parameter_count() < k)
        bad("model has fewer parameters than miners");
    if (cfg.n_examples * 4 / 5 < k) bad("training rows fewer than miners");
}

}  // namespace puft
