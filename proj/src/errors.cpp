// Copyright 2026 The cantorprod Authors
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

#include "cantorprod/errors.hpp"

namespace cantorprod {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidM: return "InvalidM";
    case ErrorCode::InvalidRatio: return "InvalidRatio";
    case ErrorCode::OutOfTheoremRange: return "OutOfTheoremRange";
    case ErrorCode::DigitOutOfRange: return "DigitOutOfRange";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::NotInFamilyA: return "NotInFamilyA";
    case ErrorCode::ResourceBudgetExceeded: return "ResourceBudgetExceeded";
    case ErrorCode::NonpositiveFactor: return "NonpositiveFactor";
    case ErrorCode::RemarkRangeError: return "RemarkRangeError";
    case ErrorCode::GridOutOfRange: return "GridOutOfRange";
    case ErrorCode::AlphaOutOfRange: return "AlphaOutOfRange";
    case ErrorCode::UnsortedInput: return "UnsortedInput";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UsageError: return "UsageError";
  }
  return "Unknown";
}

}  // namespace cantorprod
