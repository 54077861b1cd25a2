// Copyright 2026 The Authors.
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

#include "clinch/errors.hpp"

namespace clinch {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::parse_error:
      return "PARSE_ERROR";
    case ErrorCode::validation_error:
      return "VALIDATION_ERROR";
    case ErrorCode::invalid_instance:
      return "INVALID_INSTANCE";
    case ErrorCode::guard_exceeded:
      return "GUARD_EXCEEDED";
    case ErrorCode::ground_set_too_large:
      return "GROUND_SET_TOO_LARGE";
    case ErrorCode::subset_limit:
      return "SUBSET_LIMIT";
    case ErrorCode::not_in_polymatroid:
      return "NOT_IN_POLYMATROID";
    case ErrorCode::no_active_buyers:
      return "NO_ACTIVE_BUYERS";
    case ErrorCode::malformed_trace:
      return "MALFORMED_TRACE";
    case ErrorCode::unknown_fixture:
      return "UNKNOWN_FIXTURE";
    case ErrorCode::generation_failed:
      return "GENERATION_FAILED";
  }
  return "UNKNOWN_ERROR";
}

}  // namespace clinch
