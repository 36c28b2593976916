// Copyright (c) 2026 The Puft developers
// Distributed under the MIT software license, see the accompanying
// file LICENSE or http://www.opensource.org/licenses/mit-license.php.

#include "puft/errors.hpp"

namespace puft {

const char* errc_name(Errc code) {
    switch (code) {
        case Errc::EmptyTransactionSet: return "EmptyTransactionSet";
        case Errc::LinkageMismatch: return "LinkageMismatch";
        case Errc::MerkleMismatch: return "MerkleMismatch";
        case Errc::ProofInvalid: return "ProofInvalid";
        case Errc::TargetUnreachable: return "TargetUnreachable";
        case Errc::NonFiniteMetric: return "NonFiniteMetric";
        case Errc::NonFiniteLoss: return "NonFiniteLoss";
        case Errc::ShardRangeMismatch: return "ShardRangeMismatch";
        case Errc::TooManyMiners: return "TooManyMiners";
        case Errc::OverlappingShards: return "OverlappingShards";
        case Errc::DivergenceDetected: return "DivergenceDetected";
        case Errc::NoRegisteredMiners: return "NoRegisteredMiners";
        case Errc::DegenerateWeights: return "DegenerateWeights";
        case Errc::HeightMismatch: return "HeightMismatch";
        case Errc::ConfigInvalid: return "ConfigInvalid";
        case Errc::ParseError: return "ParseError";
        case Errc::ValidationError: return "ValidationError";
        case Errc::IoError: return "IoError";
    }
    return "UnknownError";
}

}  // namespace puft
