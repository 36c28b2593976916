// Copyright (c) 2026 The Puft developers
// Distributed under the MIT software license, see the accompanying
// file LICENSE or http://www.opensource.org/licenses/mit-license.php.

#include "puft/iofmt.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "puft/errors.hpp"
#include "puft/sha256.hpp"

namespace puft {

using nlohmann::json;

namespace {

json finite_or_null(double v) {
    if (std::isfinite(v)) return json(v);
    return json(nullptr);
}

double from_finite_or_null(const json& v) {
    if (v.is_null()) return std::numeric_limits<double>::infinity();
    return v.get<double>();
}

Hash256 hash_from_hex(const std::string& hex) {
    Bytes raw = from_hex_or_throw(hex);
    if (raw.size() != 32) raise(Errc::ParseError, "hash must be 32 bytes of hex");
    Hash256 h;
    std::copy(raw.begin(), raw.end(), h.begin());
    return h;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) raise(Errc::IoError, "cannot open " + path.string() + " for writing");
    out << text;
    if (!out) raise(Errc::IoError, "write failed for " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(Errc::IoError, "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

// --------------------------------------------------------------------------

std::string cycle_record_to_json_line(const CycleRecord& r) {
    json miners = json::array();
    for (const MinerCycleRecord& m : r.miners) {
        json entry = {
            {"miner_id", m.miner_id},
            {"label", m.label},
            {"pubkey", to_hex(ByteSpan(m.pubkey.data(), m.pubkey.size()))},
            {"responded", m.responded},
            {"accepted", m.accepted},
            {"params_assigned", m.params_assigned},
            {"params_trained", m.params_trained},
            {"reported_loss_before", finite_or_null(m.reported_loss_before)},
            {"reported_loss_after", finite_or_null(m.reported_loss_after)},
            {"measured_loss_after", finite_or_null(m.measured_loss_after)},
            {"loss_delta", m.loss_delta},
            {"param_component", m.param_component},
            {"loss_component", m.loss_component},
            {"weight", m.weight},
            {"report", m.responded ? json(to_hex(m.report_bytes)) : json(nullptr)},
            {"contribution_certificate",
             m.contribution_certificate
                 ? json(to_hex(m.contribution_certificate->serialize()))
                 : json(nullptr)},
        };
        miners.push_back(std::move(entry));
    }

    json obj = {
        {"cycle_id", r.cycle_id},
        {"alpha", r.alpha},
        {"succeeded", r.succeeded},
        {"failure", r.failure},
        {"base_validation_loss", finite_or_null(r.base_validation_loss)},
        {"miners", std::move(miners)},
        {"lottery_seed", to_hex(r.lottery_seed)},
        {"winner_id", r.winner_id},
        {"winner_responded", r.winner_responded},
        {"certificate_hash", to_hex(r.certificate_hash)},
        {"block_hash", to_hex(r.block_hash)},
        {"reward", r.reward},
    };
    return obj.dump();
}

CycleRecord cycle_record_from_json_line(const std::string& line) {
    json obj;
    try {
        obj = json::parse(line);
    } catch (const json::parse_error& e) {
        raise(Errc::ParseError, e.what());
    }
    try {
        CycleRecord r;
        r.cycle_id = obj.at("cycle_id").get<uint64_t>();
        r.alpha = obj.at("alpha").get<double>();
        r.succeeded = obj.at("succeeded").get<bool>();
        r.failure = obj.at("failure").get<std::string>();
        r.base_validation_loss = from_finite_or_null(obj.at("base_validation_loss"));
        r.lottery_seed = hash_from_hex(obj.at("lottery_seed").get<std::string>());
        r.winner_id = obj.at("winner_id").get<uint32_t>();
        r.winner_responded = obj.at("winner_responded").get<bool>();
        r.certificate_hash = hash_from_hex(obj.at("certificate_hash").get<std::string>());
        r.block_hash = hash_from_hex(obj.at("block_hash").get<std::string>());
        r.reward = obj.at("reward").get<uint64_t>();
        for (const json& m : obj.at("miners")) {
            MinerCycleRecord mr;
            mr.miner_id = m.at("miner_id").get<uint32_t>();
            mr.label = m.at("label").get<std::string>();
            Bytes pk = from_hex_or_throw(m.at("pubkey").get<std::string>());
            if (pk.size() != mr.pubkey.size())
                raise(Errc::ParseError, "pubkey must be 33 bytes of hex");
            std::copy(pk.begin(), pk.end(), mr.pubkey.begin());
            mr.responded = m.at("responded").get<bool>();
            mr.accepted = m.at("accepted").get<bool>();
            mr.params_assigned = m.at("params_assigned").get<uint64_t>();
            mr.params_trained = m.at("params_trained").get<uint64_t>();
            mr.reported_loss_before = from_finite_or_null(m.at("reported_loss_before"));
            mr.reported_loss_after = from_finite_or_null(m.at("reported_loss_after"));
            mr.measured_loss_after = from_finite_or_null(m.at("measured_loss_after"));
            mr.loss_delta = m.at("loss_delta").get<double>();
            mr.param_component = m.at("param_component").get<double>();
            mr.loss_component = m.at("loss_component").get<double>();
            mr.weight = m.at("weight").get<double>();
            if (!m.at("report").is_null())
                mr.report_bytes = from_hex_or_throw(m.at("report").get<std::string>());
            if (!m.at("contribution_certificate").is_null()) {
                Bytes raw =
                    from_hex_or_throw(m.at("contribution_certificate").get<std::string>());
                mr.contribution_certificate = Certificate::deserialize(raw);
            }
            r.miners.push_back(std::move(mr));
        }
        return r;
    } catch (const json::exception& e) {
        raise(Errc::ParseError, e.what());
    }
}

void write_audit_log(const std::filesystem::path& path,
                     const std::vector<CycleRecord>& records) {
    std::string text;
    for (const CycleRecord& r : records) {
        text += cycle_record_to_json_line(r);
        text += '\n';
    }
    write_text_file(path, text);
}

std::vector<CycleRecord> read_audit_log(const std::filesystem::path& path) {
    std::istringstream in(read_text_file(path));
    std::vector<CycleRecord> records;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        records.push_back(cycle_record_from_json_line(line));
    }
    return records;
}

// --------------------------------------------------------------------------

std::string metrics_csv_text(const ScenarioResult& result) {
    size_t n_miners = result.records.empty() ? 0 : result.records[0].miners.size();
    std::string text = "cycle_id,winner_id";
    for (size_t i = 0; i < n_miners; ++i) text += ",weight_" + std::to_string(i);
    text += ",chain_height,hash_ops,training_flops,useful_fraction\n";

    size_t height = 0;
    for (size_t i = 0; i < result.records.size(); ++i) {
        const CycleRecord& r = result.records[i];
        if (r.succeeded) ++height;
        text += std::to_string(r.cycle_id);
        text += ',';
        text += r.succeeded ? std::to_string(r.winner_id) : std::string("-1");
        for (const MinerCycleRecord& m : r.miners) {
            text += ',';
            text += format_double(m.weight);
        }
        const MetricSnapshot& snap = result.per_cycle[i];
        UsefulnessMetric cumulative{snap.hash_ops, snap.training_flops,
                                    result.metric.per_hash_op_cost};
        text += ',' + std::to_string(height);
        text += ',' + std::to_string(snap.hash_ops);
        text += ',' + std::to_string(snap.training_flops);
        text += ',' + format_double(cumulative.useful_fraction());
        text += '\n';
    }
    return text;
}

void write_metrics_csv(const std::filesystem::path& path, const ScenarioResult& result) {
    write_text_file(path, metrics_csv_text(result));
}

// --------------------------------------------------------------------------

std::string chain_dump_text(const Chain& chain, PowTarget target) {
    std::string text = "# puft-chain v1\n";
    text += "target " + target.value.to_hex() + "\n";
    text += "blocks " + std::to_string(chain.height()) + "\n";
    for (size_t i = 0; i < chain.blocks.size(); ++i) {
        const Block& b = chain.blocks[i];
        text += "block " + std::to_string(i) + "\n";
        text += "header " + to_hex(b.header.serialize()) + "\n";
        for (const Bytes& tx : b.transactions) text += "tx " + to_hex(tx) + "\n";
        if (b.certificate)
            text += "cert " + to_hex(b.certificate->serialize()) + "\n";
        text += "end\n";
    }
    return text;
}

void write_chain_dump(const std::filesystem::path& path, const Chain& chain,
                      PowTarget target) {
    write_text_file(path, chain_dump_text(chain, target));
}

ChainDump parse_chain_dump_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            if (!line.empty()) return true;
        }
        return false;
    };
    auto expect_prefix = [&](const std::string& prefix) -> std::string {
        if (!next_line() || line.rfind(prefix, 0) != 0)
            raise(Errc::ParseError, "chain dump: expected \"" + prefix + "\"");
        return line.substr(prefix.size());
    };

    ChainDump dump;
    if (!next_line() || line != "# puft-chain v1")
        raise(Errc::ParseError, "chain dump: bad magic line");
    dump.target.value = U256::from_hex(expect_prefix("target "));
    size_t count = std::stoull(expect_prefix("blocks "));

    for (size_t i = 0; i < count; ++i) {
        if (std::stoull(expect_prefix("block ")) != i)
            raise(Errc::ParseError, "chain dump: blocks out of order");
        Block b;
        Bytes header_raw = from_hex_or_throw(expect_prefix("header "));
        b.header = BlockHeader::deserialize(header_raw);
        for (;;) {
            if (!next_line()) raise(Errc::ParseError, "chain dump: truncated block");
            if (line == "end") break;
            if (line.rfind("tx ", 0) == 0) {
                b.transactions.push_back(from_hex_or_throw(line.substr(3)));
            } else if (line.rfind("cert ", 0) == 0) {
                b.certificate = Certificate::deserialize(from_hex_or_throw(line.substr(5)));
            } else {
                raise(Errc::ParseError, "chain dump: unexpected line \"" + line + "\"");
            }
        }
        dump.chain.blocks.push_back(std::move(b));
    }
    if (next_line()) raise(Errc::ParseError, "chain dump: trailing content");
    return dump;
}

ChainDump read_chain_dump(const std::filesystem::path& path) {
    return parse_chain_dump_text(read_text_file(path));
}

// --------------------------------------------------------------------------

std::string comparison_to_json(const ComparisonReport& report,
                               const ScenarioResult& training,
                               const BaselineResult& baseline) {
    json obj = {
        {"chain_height", report.chain_height},
        {"training_useful_fraction", report.training_useful_fraction},
        {"baseline_useful_fraction", report.baseline_useful_fraction},
        {"difference", report.difference},
        {"training_hash_ops", training.metric.hash_ops},
        {"training_flops", training.metric.training_flops},
        {"baseline_hash_ops", baseline.metric.hash_ops},
        {"baseline_training_flops", baseline.metric.training_flops},
    };
    return obj.dump(2) + "\n";
}

// --------------------------------------------------------------------------

FullVerifyResult full_verify(const Chain& chain, PowTarget target,
                             ByteSpan server_pub33,
                             const std::vector<CycleRecord>* records) {
    FullVerifyResult result;
    result.structural = validate_chain(chain, server_pub33, target);
    result.ok = result.structural.valid;
    for (size_t i = 0; i < result.structural.blocks.size(); ++i) {
        const BlockCheck& c = result.structural.blocks[i];
        if (!c.ok()) {
            std::string what = "block " + std::to_string(i) + ":";
            if (!c.linkage_ok) what += " linkage";
            if (!c.merkle_ok) what += " merkle";
            if (!c.proof_ok) what += " proof";
            result.failures.push_back(what);
        }
    }
    if (!records) return result;

    auto fail = [&](uint64_t cycle, const std::string& what) {
        result.ok = false;
        result.failures.push_back("cycle " + std::to_string(cycle) + ": " + what);
    };

    size_t block_index = 0;
    for (const CycleRecord& r : *records) {
        if (!r.succeeded) continue;
        if (block_index >= chain.height()) {
            fail(r.cycle_id, "no block for succeeded record");
            continue;
        }
        const Block& block = chain.blocks[block_index++];

        if (block.header.timestamp != r.cycle_id)
            fail(r.cycle_id, "block timestamp does not match cycle id");
        if (block.header.hash() != r.block_hash)
            fail(r.cycle_id, "block hash does not match record");
        if (block.header.certificate_hash != r.certificate_hash)
            fail(r.cycle_id, "certificate hash does not match record");
        if (!block.certificate) {
            fail(r.cycle_id, "certificate missing from block");
            continue;
        }
        const Certificate& cert = *block.certificate;
        if (cert.cycle_id != r.cycle_id) fail(r.cycle_id, "certificate cycle id mismatch");

        // Recompute seed from the published accepted reports.
        Bytes preimage;
        put_u64_be(preimage, r.cycle_id);
        for (const MinerCycleRecord& m : r.miners)
            if (m.accepted) put_bytes(preimage, m.report_bytes);
        if (double_sha256(preimage) != r.lottery_seed)
            fail(r.cycle_id, "lottery seed does not recompute from reports");

        // Recompute weights from the published raw metrics.
        std::vector<RawContribution> raw;
        for (const MinerCycleRecord& m : r.miners)
            raw.push_back(RawContribution{m.miner_id, m.params_trained, m.loss_delta});
        std::vector<ContributionScore> scores;
        try {
            scores = score_contribution(raw, r.alpha);
        } catch (const Error& e) {
            fail(r.cycle_id, std::string("scores do not recompute: ") + e.what());
            continue;
        }
        bool weights_match = scores.size() == r.miners.size();
        std::vector<double> weights;
        for (size_t i = 0; weights_match && i < scores.size(); ++i) {
            weights_match = scores[i].weight == r.miners[i].weight &&
                            scores[i].param_component == r.miners[i].param_component &&
                            scores[i].loss_component == r.miners[i].loss_component;
        }
        for (const ContributionScore& s : scores) weights.push_back(s.weight);
        if (!weights_match) {
            fail(r.cycle_id, "weights do not recompute from metrics");
            continue;
        }

        // Recompute the winner.
        size_t winner_index;
        try {
            winner_index = weighted_lottery(weights, r.lottery_seed);
        } catch (const Error& e) {
            fail(r.cycle_id, std::string("lottery does not recompute: ") + e.what());
            continue;
        }
        if (r.miners[winner_index].miner_id != r.winner_id)
            fail(r.cycle_id, "winner does not recompute from seed and weights");

        // Certificate binds the recorded winner and metrics.
        const MinerCycleRecord& w = r.miners[winner_index];
        if (cert.miner_pubkey != w.pubkey)
            fail(r.cycle_id, "certificate pubkey is not the winner's");
        if (cert.params_trained != w.params_trained)
            fail(r.cycle_id, "certificate params_trained mismatch");
        if (cert.loss_before != r.base_validation_loss)
            fail(r.cycle_id, "certificate loss_before mismatch");
        double expect_after = std::isfinite(w.measured_loss_after)
                                  ? w.measured_loss_after
                                  : r.base_validation_loss;
        if (cert.loss_after != expect_after)
            fail(r.cycle_id, "certificate loss_after mismatch");
        if (!verify_certificate(server_pub33, cert))
            fail(r.cycle_id, "certificate signature invalid");
        for (const MinerCycleRecord& m : r.miners) {
            if (m.contribution_certificate &&
                !verify_certificate(server_pub33, *m.contribution_certificate))
                fail(r.cycle_id, "contribution certificate signature invalid");
        }
    }
    if (block_index != chain.height())
        fail(block_index, "chain has blocks with no corresponding record");
    return result;
}

}  // namespace puft
