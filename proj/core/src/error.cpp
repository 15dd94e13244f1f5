/*
 * Copyright 2026 The kakeya-lab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "kakeya/error.hpp"

namespace kakeya {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonPrime: return "NonPrime";
    case ErrorCode::ReducibleModulus: return "ReducibleModulus";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::EnumerationTooLarge: return "EnumerationTooLarge";
    case ErrorCode::BadDeclaration: return "BadDeclaration";
    case ErrorCode::CurveContained: return "CurveContained";
    case ErrorCode::AnchorMissing: return "AnchorMissing";
    case ErrorCode::ContainmentViolation: return "ContainmentViolation";
    case ErrorCode::BadExponent: return "BadExponent";
    case ErrorCode::ExponentOutOfRange: return "ExponentOutOfRange";
    case ErrorCode::IntersectionTooSmall: return "IntersectionTooSmall";
    case ErrorCode::MatrixTooLarge: return "MatrixTooLarge";
    case ErrorCode::EvenCharacteristic: return "EvenCharacteristic";
    case ErrorCode::DegreeTooLarge: return "DegreeTooLarge";
    case ErrorCode::NotHomogeneous: return "NotHomogeneous";
    case ErrorCode::BadParameters: return "BadParameters";
    case ErrorCode::ZeroFunction: return "ZeroFunction";
    case ErrorCode::NonUnitDivisor: return "NonUnitDivisor";
    case ErrorCode::DegenerateDirection: return "DegenerateDirection";
    case ErrorCode::UnsupportedRing: return "UnsupportedRing";
    case ErrorCode::NotKakeya: return "NotKakeya";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InternalError: return "InternalError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(error_name(code)) + ": " + detail), code_(code) {}

void fail(ErrorCode code, const std::string& detail) { throw Error(code, detail); }

std::uint64_t checked_pow(std::uint64_t base, unsigned exp, std::uint64_t cap,
                          std::string_view what) {
  std::uint64_t result = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && result > cap / base) {
      fail(ErrorCode::EnumerationTooLarge,
           std::string(what) + " exceeds cap " + std::to_string(cap));
    }
    result *= base;
  }
  if (result > cap) {
    fail(ErrorCode::EnumerationTooLarge, std::string(what) + " exceeds cap " + std::to_string(cap));
  }
  return result;
}

}  // namespace kakeya
