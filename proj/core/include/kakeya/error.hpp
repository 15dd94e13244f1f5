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

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace kakeya {

enum class ErrorCode {
  NonPrime,
  ReducibleModulus,
  DivisionByZero,
  DimensionMismatch,
  ZeroPolynomial,
  EnumerationTooLarge,
  BadDeclaration,
  CurveContained,
  AnchorMissing,
  ContainmentViolation,
  BadExponent,
  ExponentOutOfRange,
  IntersectionTooSmall,
  MatrixTooLarge,
  EvenCharacteristic,
  DegreeTooLarge,
  NotHomogeneous,
  BadParameters,
  ZeroFunction,
  NonUnitDivisor,
  DegenerateDirection,
  UnsupportedRing,
  NotKakeya,
  EmptySet,
  InvalidArgument,
  ParseError,
  InternalError,
};

std::string_view error_name(ErrorCode code) noexcept;

/// Every failure in the library is reported as an Error carrying a code, so
/// callers (and the CLI exit-code mapping) can branch without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& detail);

inline void require(bool condition, ErrorCode code, const std::string& detail) {
  if (!condition) fail(code, detail);
}

/// Enumeration and matrix-size limits shared by every exhaustive routine.
struct Caps {
  std::uint64_t enumeration = 10'000'000;
  std::uint64_t matrix_entries = 100'000'000;
};

/// Returns base^exp, throwing EnumerationTooLarge once the result exceeds cap.
std::uint64_t checked_pow(std::uint64_t base, unsigned exp, std::uint64_t cap,
                          std::string_view what);

}  // namespace kakeya
