// Copyright 2026 The pprlab Authors.
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

#ifndef PPRLAB_ERROR_HPP_
#define PPRLAB_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace pprlab {

enum class ErrorCode {
  InvalidArgument,
  ZeroVolume,
  NotConverged,
  SizeGuard,
  DegenerateModel,
  SingularSystem,
  InvalidShape,
  OutOfRange,
  DanglingSeed,
  DanglingNode,
  EmptySupport,
  BudgetExceeded,
  ZeroNorm,
  UnknownPreset,
  IoError,
};

std::string_view to_string(ErrorCode code);

/// The single exception type thrown by the library. Callers that need to
/// branch on the failure inspect code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline void require(bool condition, ErrorCode code, const std::string& what) {
  if (!condition) throw Error(code, what);
}

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ZeroVolume: return "ZeroVolume";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::SizeGuard: return "SizeGuard";
    case ErrorCode::DegenerateModel: return "DegenerateModel";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::InvalidShape: return "InvalidShape";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::DanglingSeed: return "DanglingSeed";
    case ErrorCode::DanglingNode: return "DanglingNode";
    case ErrorCode::EmptySupport: return "EmptySupport";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::ZeroNorm: return "ZeroNorm";
    case ErrorCode::UnknownPreset: return "UnknownPreset";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace pprlab

#endif  // PPRLAB_ERROR_HPP_
