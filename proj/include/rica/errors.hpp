// Copyright (c) 2026 The rica authors
// SPDX-License-Identifier: Apache-2.0

#ifndef RICA_ERRORS_HPP_
#define RICA_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace rica {

enum class ErrorCode {
  // matcore
  SingularMatrix,
  NotSymmetric,
  NoConvergence,
  KTooLarge,
  // model / grad
  NonPositiveScale,
  SingularUnmixing,
  NonFiniteGradient,
  // train
  DegreeTooHigh,
  ZeroVariance,
  WindowTooLong,
  NonFiniteUpdate,
  // synth
  InvalidStochasticMatrix,
  NotPositiveDefinite,
  InvalidHrfParams,
  // io
  BadMagic,
  TruncatedFile,
  DimOverflow,
  DuplicateName,
  ConfigMismatch,
  UnknownKey,
  TypeError,
  MissingRequired,
  FileError,
  // analysis
  RankDeficient,
  TooFewSamples,
  LengthMismatch,
  EmptyGraph,
  // misc
  InvalidArgument,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace rica

#endif  // RICA_ERRORS_HPP_
