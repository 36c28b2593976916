// Copyright (c) 2026 The Puft developers
// Distributed under the MIT software license, see the accompanying
// file LICENSE or http://www.opensource.org/licenses/mit-license.php.
//
// puft run <config>      simulate a training-consensus scenario, write the
//                        audit log, metrics CSV, and chain dump (plus the
//                        PoW baseline artifacts when enabled)
// puft verify <dump> <server_pubkey_hex> [--audit <records.jsonl>]
//                        re-validate a chain dump from public data only
// puft compare <config>  run both the training scenario and the PoW
//                        baseline and report the usefulness comparison
//
// Exit codes: 0 success, 1 configuration, 2 simulation, 3 I/O,
// 4 verification failure.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "puft/config.hpp"
#include "puft/errors.hpp"
#include "puft/iofmt.hpp"
#include "puft/netsim.hpp"

namespace fs = std::filesystem;
using namespace puft;

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitSimulation = 2;
constexpr int kExitIo = 3;
constexpr int kExitVerify = 4;

struct CommonOpts {
    std::string out_dir_override;
    bool quiet = false;
    int64_t seed_override = -1;
};

int classify(const Error& e) {
    switch (e.code()) {
        case Errc::ParseError:
        case Errc::ValidationError:
        case Errc::ConfigInvalid:
            return kExitConfig;
        case Errc::IoError:
            return kExitIo;
        default:
            return kExitSimulation;
    }
}

ScenarioConfig load_config(const std::string& path, const CommonOpts& opts) {
    ScenarioConfig cfg = parse_config(path);
    if (!opts.out_dir_override.empty()) cfg.out_dir = opts.out_dir_override;
    if (opts.seed_override >= 0) cfg.seed = uint64_t(opts.seed_override);
    return cfg;
}

// The training chain carries no PoW blocks; the dump still records a target
// so one format serves both chains.
PowTarget scenario_target(const ScenarioConfig& cfg) {
    return PowTarget::from_difficulty_bits(cfg.pow_baseline.difficulty_bits);
}

int run_and_write(const ScenarioConfig& cfg, const CommonOpts& opts, bool force_compare) {
    ScenarioResult training = run_scenario(cfg);

    fs::path out_dir(cfg.out_dir);
    std::error_code ec;
    fs::create_directories(out_dir, ec);

    write_audit_log(out_dir / "audit.jsonl", training.records);
    write_metrics_csv(out_dir / "metrics.csv", training);
    write_chain_dump(out_dir / "chain.dump", training.chain, scenario_target(cfg));
    {
        std::ofstream key(out_dir / "server_pubkey.txt", std::ios::binary);
        if (!key) raise(Errc::IoError, "cannot write server_pubkey.txt");
        key << to_hex(ByteSpan(training.server_pubkey.data(),
                               training.server_pubkey.size()))
            << "\n";
    }

    if (!opts.quiet) {
        std::cout << "cycles: " << training.records.size()
                  << "  chain height: " << training.chain.height()
                  << "  useful fraction: " << training.metric.useful_fraction() << "\n";
        std::cout << "artifacts in " << out_dir.string() << "\n";
    }

    if (cfg.pow_baseline.enabled || force_compare) {
        BaselineResult baseline = run_baseline_pow(cfg);
        write_chain_dump(out_dir / "baseline_chain.dump", baseline.chain,
                         scenario_target(cfg));
        ComparisonReport report = compare_usefulness(training, baseline);
        std::string comparison = comparison_to_json(report, training, baseline);
        {
            std::ofstream out(out_dir / "comparison.json", std::ios::binary);
            if (!out) raise(Errc::IoError, "cannot write comparison.json");
            out << comparison;
        }
        if (!opts.quiet) {
            std::cout << "useful fraction: training " << report.training_useful_fraction
                      << " vs baseline " << report.baseline_useful_fraction
                      << " (difference " << report.difference << ")\n";
        }
    }
    return 0;
}

int cmd_run(const std::string& config_path, const CommonOpts& opts, bool force_compare) {
    ScenarioConfig cfg;
    try {
        cfg = load_config(config_path, opts);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return classify(e) == kExitIo ? kExitIo : kExitConfig;
    }
    try {
        return run_and_write(cfg, opts, force_compare);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return classify(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSimulation;
    }
}

int cmd_verify(const std::string& dump_path, const std::string& pubkey_hex,
               const std::string& audit_path, bool quiet) {
    ChainDump dump;
    Bytes pubkey;
    std::vector<CycleRecord> records;
    bool have_records = false;
    try {
        dump = read_chain_dump(dump_path);
        pubkey = from_hex_or_throw(pubkey_hex);
        if (!audit_path.empty()) {
            records = read_audit_log(audit_path);
            have_records = true;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == Errc::IoError ? kExitIo : kExitConfig;
    }

    FullVerifyResult result =
        full_verify(dump.chain, dump.target, pubkey, have_records ? &records : nullptr);

    if (!quiet) {
        for (size_t i = 0; i < result.structural.blocks.size(); ++i) {
            const BlockCheck& c = result.structural.blocks[i];
            std::cout << "block " << i << ": linkage " << (c.linkage_ok ? "ok" : "FAIL")
                      << ", merkle " << (c.merkle_ok ? "ok" : "FAIL") << ", proof "
                      << (c.proof_ok ? "ok" : "FAIL") << "\n";
        }
        if (have_records)
            std::cout << "audit records: " << records.size() << " checked\n";
    }
    if (!result.ok) {
        std::cerr << "verification FAILED: "
                  << (result.failures.empty() ? "unknown" : result.failures.front())
                  << "\n";
        return kExitVerify;
    }
    if (!quiet) std::cout << "verification OK (" << dump.chain.height() << " blocks)\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"proof-of-useful-training consensus simulator"};
    app.require_subcommand(1);

    CommonOpts opts;
    app.add_option("--out-dir", opts.out_dir_override, "override the configured output directory");
    app.add_flag("--quiet", opts.quiet, "suppress console summaries");
    app.add_option("--seed-override", opts.seed_override, "override the configured scenario seed");

    std::string config_path;
    auto* run = app.add_subcommand("run", "run a scenario from a config file");
    run->add_option("config", config_path, "scenario config (JSON)")->required();

    std::string dump_path, pubkey_hex, audit_path;
    auto* verify = app.add_subcommand("verify", "re-validate a chain dump");
    verify->add_option("dump", dump_path, "chain dump file")->required();
    verify->add_option("pubkey", pubkey_hex, "server public key (66 hex chars)")->required();
    verify->add_option("--audit", audit_path, "audit log for closure checks");

    std::string compare_config;
    auto* compare = app.add_subcommand("compare", "training scenario vs PoW baseline");
    compare->add_option("config", compare_config, "scenario config (JSON)")->required();

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) return cmd_run(config_path, opts, false);
    if (verify->parsed()) return cmd_verify(dump_path, pubkey_hex, audit_path, opts.quiet);
    if (compare->parsed()) return cmd_run(compare_config, opts, true);
    return kExitConfig;
}
