// Copyright 2026 The stgeo Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef STGEO_ERROR_HPP
#define STGEO_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace stgeo {

enum class ErrorCode {
  kInvalidArgument,
  kNonPositiveDepth,
  kDegenerateBox,
  kFilterOnWrongSource,
  kNonPositiveResolution,
  kEmptyWindow,
  kSizeMismatch,
  kDegenerateCloud,
  kPointAtViewpoint,
  kEmptyPrompt,
  kOffsetOutOfRange,
  kDensifierContractViolation,
  kEmptyOverlap,
  kNonPositiveGT,
  kIo,
  kFormat,
  kBackendFailure,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (and tests) can branch on the kind without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised by multi-stage pipelines; wraps the failing stage's error.
class StageError : public Error {
 public:
  StageError(std::string stage, const Error& cause)
      : Error(cause.code(), "stage '" + stage + "': " + cause.what()),
        stage_(std::move(stage)) {}

  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

}  // namespace stgeo

#endif  // STGEO_ERROR_HPP
