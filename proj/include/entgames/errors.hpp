// Copyright 2026 The entgames Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ENTGAMES_ERRORS_HPP_
#define ENTGAMES_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace entgames {

enum class ErrorCode {
  kShapeMismatch,
  kDimensionMismatch,
  kNonNormalizedMu,
  kNegativeProbability,
  kNotProjection,
  kSearchSpaceTooLarge,
  kSizeOverflow,
  kInvalidPsd,
  kNumericalFailure,
  kDegenerateState,
  kZeroInput,
  kInvalidArgument,
  kParseError,
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

// Raised by projection_map; carries the first (u, v, b) with two accepted a.
class NotProjectionError : public Error {
 public:
  NotProjectionError(int u, int v, int b);

  int u() const { return u_; }
  int v() const { return v_; }
  int b() const { return b_; }

 private:
  int u_, v_, b_;
};

}  // namespace entgames

#endif  // ENTGAMES_ERRORS_HPP_
