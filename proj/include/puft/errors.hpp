// Copyright (c) 2026 The Puft developers
// Distributed under the MIT software license, see the accompanying
// file LICENSE or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include <stdexcept>
#include <string>

namespace puft {

enum class Errc {
    EmptyTransactionSet,
    LinkageMismatch,
    MerkleMismatch,
    ProofInvalid,
    TargetUnreachable,
    NonFiniteMetric,
    NonFiniteLoss,
    ShardRangeMismatch,
    TooManyMiners,
    OverlappingShards,
    DivergenceDetected,
    NoRegisteredMiners,
    DegenerateWeights,
    HeightMismatch,
    ConfigInvalid,
    ParseError,
    ValidationError,
    IoError,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace puft
