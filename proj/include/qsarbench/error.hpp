// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qsarbench {

/// Failure categories shared by every module. The CLI maps these onto exit
/// codes (config -> 1, data -> 2, invariant -> 3).
enum class ErrorCode {
  // smiles
  UnbalancedParenthesis,
  UnclosedRingBond,
  UnknownElement,
  InvalidCharge,
  InvalidSyntax,
  // fingerprint
  EmptyMolecule,
  LengthMismatch,
  // data
  UnreadableFile,
  MissingColumn,
  NonBinaryLabel,
  DimensionMismatch,
  UnknownId,
  SingleClass,
  EmptyTrainSet,
  // pca
  DegenerateInput,
  KTooLarge,
  // models / simulator
  EmptyBatch,
  NotPowerOfTwo,
  QubitOutOfRange,
  SameQubit,
  InvalidArgument,
  // clustering
  EmptyInput,
  NoLargeClusters,
  // harness
  ConfigError,
  NoPositives,
  IoError,
  InvariantViolation,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parse failure carrying the byte offset of the offending character.
class SmilesError : public Error {
 public:
  SmilesError(ErrorCode code, std::size_t offset, const std::string& message)
      : Error(code, message + " at offset " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace qsarbench
