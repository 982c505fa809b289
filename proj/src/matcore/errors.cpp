// Copyright (c) 2026 The rica authors
// SPDX-License-Identifier: Apache-2.0

#include "rica/errors.hpp"

namespace rica {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::KTooLarge: return "KTooLarge";
    case ErrorCode::NonPositiveScale: return "NonPositiveScale";
    case ErrorCode::SingularUnmixing: return "SingularUnmixing";
    case ErrorCode::NonFiniteGradient: return "NonFiniteGradient";
    case ErrorCode::DegreeTooHigh: return "DegreeTooHigh";
    case ErrorCode::ZeroVariance: return "ZeroVariance";
    case ErrorCode::WindowTooLong: return "WindowTooLong";
    case ErrorCode::NonFiniteUpdate: return "NonFiniteUpdate";
    case ErrorCode::InvalidStochasticMatrix: return "InvalidStochasticMatrix";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::InvalidHrfParams: return "InvalidHrfParams";
    case ErrorCode::BadMagic: return "BadMagic";
    case ErrorCode::TruncatedFile: return "TruncatedFile";
    case ErrorCode::DimOverflow: return "DimOverflow";
    case ErrorCode::DuplicateName: return "DuplicateName";
    case ErrorCode::ConfigMismatch: return "ConfigMismatch";
    case ErrorCode::UnknownKey: return "UnknownKey";
    case ErrorCode::TypeError: return "TypeError";
    case ErrorCode::MissingRequired: return "MissingRequired";
    case ErrorCode::FileError: return "FileError";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::EmptyGraph: return "EmptyGraph";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "UnknownError";
}

}  // namespace rica
