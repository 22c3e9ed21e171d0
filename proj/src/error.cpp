// SPDX-License-Identifier: Apache-2.0
#include "qsarbench/error.hpp"

namespace qsarbench {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::UnbalancedParenthesis: return "UnbalancedParenthesis";
    case ErrorCode::UnclosedRingBond: return "UnclosedRingBond";
    case ErrorCode::UnknownElement: return "UnknownElement";
    case ErrorCode::InvalidCharge: return "InvalidCharge";
    case ErrorCode::InvalidSyntax: return "InvalidSyntax";
    case ErrorCode::EmptyMolecule: return "EmptyMolecule";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::UnreadableFile: return "UnreadableFile";
    case ErrorCode::MissingColumn: return "MissingColumn";
    case ErrorCode::NonBinaryLabel: return "NonBinaryLabel";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::UnknownId: return "UnknownId";
    case ErrorCode::SingleClass: return "SingleClass";
    case ErrorCode::EmptyTrainSet: return "EmptyTrainSet";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::KTooLarge: return "KTooLarge";
    case ErrorCode::EmptyBatch: return "EmptyBatch";
    case ErrorCode::NotPowerOfTwo: return "NotPowerOfTwo";
    case ErrorCode::QubitOutOfRange: return "QubitOutOfRange";
    case ErrorCode::SameQubit: return "SameQubit";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::NoLargeClusters: return "NoLargeClusters";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::NoPositives: return "NoPositives";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

}  // namespace qsarbench
