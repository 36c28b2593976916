// Copyright (c) 2026 The Puft developers
// Distributed under the MIT software license, see the accompanying
// file LICENSE or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "puft/netsim.hpp"

namespace puft {

// All artifact formats are documented bit-exactly in docs/FORMATS.md. Hashes
// and keys are lowercase hex everywhere; doubles round-trip exactly.

// --- audit log: one CycleRecord as one JSON object per line ---------------
std::string cycle_record_to_json_line(const CycleRecord& record);
CycleRecord cycle_record_from_json_line(const std::string& line);
void write_audit_log(const std::filesystem::path& path,
                     const std::vector<CycleRecord>& records);
std::vector<CycleRecord> read_audit_log(const std::filesystem::path& path);

// --- metrics CSV -----------------------------------------------------------
std::string metrics_csv_text(const ScenarioResult& result);
void write_metrics_csv(const std::filesystem::path& path, const ScenarioResult& result);

// --- chain dump: line-oriented hex records ---------------------------------
struct ChainDump {
    PowTarget target;
    Chain chain;
};
std::string chain_dump_text(const Chain& chain, PowTarget target);
void write_chain_dump(const std::filesystem::path& path, const Chain& chain,
                      PowTarget target);
ChainDump parse_chain_dump_text(const std::string& text);
ChainDump read_chain_dump(const std::filesystem::path& path);

// --- comparison report ------------------------------------------------------
std::string comparison_to_json(const ComparisonReport& report,
                               const ScenarioResult& training,
                               const BaselineResult& baseline);

// --- independent verification ------------------------------------------------
// Structural chain validation plus, when records are supplied, audit
// closure: every succeeded record must match its block's hash and
// certificate, its lottery seed must recompute from the accepted report
// bytes, the weights must recompute from the published metrics, and the
// recorded winner must fall out of the recorded seed and weights.
struct FullVerifyResult {
    bool ok = false;
    ValidationReport structural;
    std::vector<std::string> failures;
};
FullVerifyResult full_verify(const Chain& chain, PowTarget target,
                             ByteSpan server_pub33,
                             const std::vector<CycleRecord>* records);

}  // namespace puft
